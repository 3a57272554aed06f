#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "catramsey/categories.hpp"
#include "catramsey/engine.hpp"
#include "catramsey/laws.hpp"

namespace catramsey {

using json = nlohmann::json;

// A (P)-witness c for some functor at (a, b) with r colors.
struct Witness {
    Object c;
    // "constructed", "search" or "trivial".
    std::string provenance;
    json trace;
};

using WitnessProvider = std::function<Witness(const Object &a, const Object &b, const BigInt &r)>;

// (FP) instance with an arbitrary-precision number of colors.
struct FpProblem {
    Object a, b;
    std::vector<Morphism> s;
    BigInt r;
};

struct FpChoice {
    Object c;
    Morphism f_prime, g_prime;
    json trace;
};

using FpOracle = std::function<FpChoice(const FpProblem &)>;

struct ProviderOptions {
    // Try an engine search over a small pool before constructing.
    bool prefer_search = false;
    SearchBudget search_budget;
    std::int64_t search_pool = 16;
    // Exhaustively check cross relations whose quadruple count is in cap.
    bool verify_relations = true;
    std::size_t relation_cap = 1u << 20;
};

// Fully built construction, ready to be certified.
struct Construction {
    std::string theorem;
    FunctorPtr functor;
    Object a, b, c;
    BigInt r;
    json inputs;
    json trace;
    // Present for (FP) constructions: the instance and the choice of f′, g′.
    std::optional<FpProblem> fp;
    std::optional<FpChoice> fp_choice;
};

// (m,2) with m = (l−1)r+2, a (P)-witness for ∂_P at ((k1,1),(l,2)).
Object p_pigeonhole_witness(std::int64_t k1, std::int64_t l, const BigInt &r, bool mirror = false);

// (FP) oracle for ∂_R: m = (r+1)l, f′ the element of s with the largest
// maximum, g′ = ([l−1], m−1).
FpChoice r_fp_witness(const FpProblem &inst);

using ProductRamseyFn =
    std::function<std::vector<BigInt>(const std::vector<std::int64_t> &k, const std::vector<std::int64_t> &p,
                                      const BigInt &r)>;

// (FP) oracle for ∂* on trees: f′ = min s, g′ = id on T*, V* = T* with the
// fans over f′(vᵢ) sized by product Ramsey numbers.
FpChoice tree_fp_witness(const FpProblem &inst, const ProductRamseyFn &product_ramsey);

// Recursion from (FP) to (P): c₀ = b, then one oracle call per element of
// δ(hom(a,b)).
Witness fp_to_p_construct(const Functor &delta, const Object &a, const Object &b, const BigInt &r,
                          const FpOracle &oracle);

// (P)-witness for δ∘γ at (a,b): d from `inner` at (γa, γb), c′ a frank lift
// of d over b, c from `outer` at (a, c′).
Witness composition_witness(const Functor &gamma, const Object &a, const Object &b, const BigInt &r,
                            const WitnessProvider &inner, const WitnessProvider &outer);

// δⁿ through repeated composition_witness.
Witness power_witness(FunctorPtr delta, unsigned n, const Object &a, const Object &b, const BigInt &r,
                      const WitnessProvider &provider);

// ⊗δᵢ over the common support of a and b, one coordinate at a time with
// R = r^M colors for the active coordinate.
Witness product_witness(const Category &product, const std::function<FunctorPtr(std::int64_t)> &coordinate_functor,
                        const std::function<WitnessProvider(std::int64_t)> &coordinate_provider, const Object &a,
                        const Object &b, const BigInt &r);

// c₁,c₂,c₃ in C and d₁,d₂,d₃ in D with φ, ψ and optional ζ.
struct CrossRelation {
    CategoryPtr C, D;
    Object c1, c2, c3, d1, d2, d3;
    std::function<Morphism(const Morphism &f, const Morphism &g)> phi;
    std::function<Morphism(const Morphism &g)> psi;
    std::function<Morphism(const Morphism &h)> zeta;
};

// Typing of φ and ψ, g·φ(f,g) = g′·φ(f′,g′) ⇒ ψ(g)·f = ψ(g′)·f′, and the ζ
// identity when ζ is present.
LawReport check_cross_relation(const CrossRelation &rel, std::size_t cap = 1u << 22);

// γ(f) = γ(f′) ⇒ δ(φ(f,g)) = δ(φ(f′,g)) for all f, f′ and g.
LawReport check_modeling_compatibility(const CrossRelation &rel, const Functor &gamma, const Functor &delta,
                                       std::size_t cap = 1u << 22);

CrossRelation identity_relation(CategoryPtr cat, const Object &a, const Object &b, const Object &c);

using RelationProvider = std::function<CrossRelation(const Object &d3)>;

// c = c₃ from the relation built for a (P)-witness d₃ of δ at (d₁,d₂). With
// gamma/delta set the modeling compatibility is checked too; without them
// only cross-relatedness is checked (R-modeling, for degree transfer).
Witness modeling_transfer(const RelationProvider &relation, const WitnessProvider &delta_witness,
                          const Object &d1, const Object &d2, const BigInt &r, const Functor *gamma,
                          const Functor *delta, const ProviderOptions &opts);

// The relation modeling ∂_{k0} at (v,l) by ⊗∂_P at ((k1,1)ᵢ, (3,2)ᵢ), indices
// 1..l, for c = ((mᵢ,2))ᵢ; c₃ = l′ = Σ mᵢ.
CrossRelation hj_modeling(std::int64_t k0, const Object &v, std::int64_t l, const Object &c);

// v ⌢ (φ₁(f)∘p₁) ⌢ ⋯ ⌢ (φ_l(f)∘p_l) = f∘ψ(p) for every f ∈ hom(v,l) and p ∈ hom(b,c).
LawReport check_hj_concatenation(std::int64_t k0, const Object &v, std::int64_t l, const Object &c,
                                 std::size_t cap = 1u << 22);

// Bijection [−k,0] → [k+1] in HJ_k.
Object hj_full_alphabet(std::int64_t k);

// Provider for δ built from its structure: pigeonhole for ∂_P, (FP) recursion
// for ∂_R and ∂*, modeling for ∂_{k0}, staging for products, composition for
// composites and powers, c = b for identities and injective fibers.
WitnessProvider default_provider(FunctorPtr delta, const ProviderOptions &opts = {});

// q with every r-coloring of ∏ hom(kᵢ, qᵢ) admitting a monochromatic product of
// pᵢ-sets, through (⊗∂_R)^K with K = max kᵢ.
std::vector<BigInt> product_ramsey_numbers(const std::vector<std::int64_t> &k, const std::vector<std::int64_t> &p,
                                           const BigInt &r, json *trace = nullptr);

struct MinimalQ {
    // Pareto-minimal passing q within the bound, ascending.
    std::vector<std::vector<std::int64_t>> minimal;
    std::vector<std::vector<std::int64_t>> undetermined;
};

// Exhaustive search over qᵢ ∈ [pᵢ, bound] in order of increasing sum; candidates
// dominating a passing one are skipped.
MinimalQ minimal_product_q(const std::vector<std::int64_t> &k, const std::vector<std::int64_t> &p, unsigned r,
                           std::int64_t bound, const SearchBudget &budget);

// V with ht(V) = ht(T) witnessing rd(S,T) ≤ 1 for r colors.
Witness fouche_witness(const OrderedTree &S, const OrderedTree &T, const BigInt &r);

// m for the (P)-witness of ∂_k^k at (v, l) with v the full alphabet.
Witness hj_witness(std::int64_t k, std::int64_t l, const BigInt &r);

// Builds the construction named by `theorem` from its JSON inputs:
// p-pigeonhole, r-fp, tree-fp, fp2p, compose, product, modeling, hj, fouche,
// product-ramsey.
Construction run_construction(const std::string &theorem, const json &inputs, const ProviderOptions &opts = {});

std::vector<std::string> construction_theorems();

} // namespace catramsey
