#pragma once

#include <string_view>

#include "catramsey/category.hpp"

namespace catramsey {

// Category ids: R, P, P~, HJ<k0>, T, prod(<category>).
CategoryPtr category_by_id(std::string_view id);

// Functor ids:
//   atom   := dR | dP | dP~ | dHJ<k0> | dT | id(<category>)
//           | prod(<functor>[,<index>:<functor>]*) | (<functor>)
//   power  := atom [^<n>]
//   functor := power [.power]*      (leftmost is applied last)
FunctorPtr functor_by_id(std::string_view id);

} // namespace catramsey
