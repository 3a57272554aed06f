#pragma once

#include <map>
#include <utility>
#include <vector>

#include "catramsey/category.hpp"
#include "catramsey/tree.hpp"

namespace catramsey {

// R: objects n ≥ 0, morphisms (x,n) with x ⊆ [n], |x| = m, payload x ascending.
// Encoding "R/1": object payload [n].
CategoryPtr r_category();
FunctorPtr r_partial();
Object r_object(std::int64_t n);
Morphism r_morph(std::vector<std::int64_t> x, std::int64_t m, std::int64_t n);

// P: objects (k,i), payload [k,i]. Morphisms into (l,2) carry their value
// vector over [l]; identities at (k,0) and (k,1) carry an empty payload.
// mirror = false takes x(1) = k₁, x(l) = k₁−1 for (k₁,1)→(l,2) arrows;
// mirror = true swaps the two boundary values.
CategoryPtr p_category(bool mirror = false);
FunctorPtr p_partial(bool mirror = false);
Object p_object(std::int64_t k, std::int64_t i, bool mirror = false);

// HJ_k0: object l has payload [0,l]; a surjection v : [−k0,0] → [k] has payload
// [1, v(−k0), …, v(0)]. v→l arrows carry f(1..l); l1→l2 arrows carry g(1..l2).
CategoryPtr hj_category(std::int64_t k0);
FunctorPtr hj_partial(std::int64_t k0);
Object hj_word_object(std::int64_t k0, std::int64_t l);
Object hj_alphabet_object(std::int64_t k0, const std::vector<std::int64_t> &v);
bool hj_is_alphabet(const Object &o);
std::int64_t hj_alphabet_size(const Object &v);
std::int64_t hj_cap(std::int64_t k);

// Ordered trees; payload is the preorder child-count sequence. Morphisms are
// height-preserving embeddings, payload = preorder index of the image of each
// node of the source in preorder.
CategoryPtr tree_category();
FunctorPtr tree_partial();
Object tree_object(const OrderedTree &t);
OrderedTree tree_of(const Object &o);

// Finitely supported product over ℕ of copies of one category. Payload is
// [count, (index, length, payload…)…] with ascending indices.
using Coordinates = std::vector<std::pair<std::int64_t, Object>>;
using MorphCoordinates = std::vector<std::pair<std::int64_t, Morphism>>;

CategoryPtr product_category(CategoryPtr factor);
CategoryPtr product_factor(const Category &product);
Object product_object(const Category &product, const Coordinates &coords);
Coordinates product_coordinates(const Category &product, const Object &o);
Morphism product_morph(const Category &product, const MorphCoordinates &coords, const Object &source,
                       const Object &target);
MorphCoordinates product_morph_coordinates(const Category &product, const Morphism &m);

// ⊗δᵢ acting as fallback on every index without an override.
FunctorPtr product_functor(FunctorPtr fallback, std::map<std::int64_t, FunctorPtr> overrides = {});

struct ProductFunctorParts {
    FunctorPtr fallback;
    std::map<std::int64_t, FunctorPtr> overrides;

    const FunctorPtr &at(std::int64_t idx) const
    {
        auto it = overrides.find(idx);
        return it == overrides.end() ? fallback : it->second;
    }
};
std::optional<ProductFunctorParts> as_product_functor(const Functor &f);

} // namespace catramsey
