#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catramsey/category.hpp"

namespace catramsey {

struct LawReport {
    std::size_t checks = 0;
    std::size_t violation_count = 0;
    // At most the first 32 violations are kept verbatim.
    std::vector<std::string> violations;

    bool ok() const { return violation_count == 0; }
    void record(std::string what);
    void merge(const LawReport &other);
};

// Associativity on every composable triple and both identity laws on every
// morphism among the given objects. Also checks that composites land in the
// enumerated hom-set.
LawReport check_category_laws(const Category &cat, const std::vector<Object> &objects,
                              std::size_t cap = 1u << 22);

// F(id) = id, source/target consistency, and F(g·f) = F(g)·F(f).
LawReport check_functor_laws(const Functor &f, const std::vector<Object> &objects,
                             std::size_t cap = 1u << 22);

struct FrankResult {
    bool pass = false;
    std::optional<Object> witness;
    std::size_t image_size = 0;
    std::size_t target_size = 0;
    std::string reason;
};

// Runs frank_lift(a, b_prime) and checks δ(b) = b′ and δ(hom(a,b)) = hom(δa, b′).
FrankResult check_frank_at(const Functor &f, const Object &a, const Object &b_prime,
                           std::size_t cap = 1u << 22);

// Chains frank_lift twice: c1 over d1, then c2 over d2 relative to c1, and
// checks δ(hom(c1,c2)) = hom(d1,d2).
FrankResult check_double_lift(const Functor &f, const Object &d1, const Object &d2,
                              std::size_t cap = 1u << 22);

} // namespace catramsey
