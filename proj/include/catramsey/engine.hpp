#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catramsey/category.hpp"

namespace catramsey {

enum class Mode { exhaustive, sampled };
enum class Outcome { pass, fail, probable_pass };

std::string to_string(Mode m);
std::string to_string(Outcome o);
Mode mode_from_string(std::string_view s);
Outcome outcome_from_string(std::string_view s);

inline constexpr std::uint64_t default_seed = 0x5eed0f2a7c3b9d41ull;

struct SearchBudget {
    std::uint64_t max_hom_size = 1u << 22;
    std::uint64_t max_colorings = std::uint64_t{1} << 26;
    std::uint64_t sample_count = 10000;
    std::uint64_t seed = default_seed;
    Mode mode = Mode::exhaustive;
    // Worker threads; never affects any result.
    unsigned jobs = 1;

    // Defaults overridden by CATRAMSEY_MAX_HOM, CATRAMSEY_MAX_COLORINGS,
    // CATRAMSEY_SAMPLES and CATRAMSEY_SEED when set.
    static SearchBudget from_env();
};

// Colors indexed by the canonical order of hom(a,c).
struct Coloring {
    std::string category;
    Object a, c;
    unsigned r = 0;
    std::vector<std::uint32_t> colors;
};

struct Verdict {
    Outcome outcome = Outcome::fail;
    Mode mode = Mode::exhaustive;
    std::uint64_t colorings_examined = 0;
    // Number of hom(a,c) positions the verdict depends on.
    std::uint64_t relevant_positions = 0;
    std::optional<Coloring> counterexample;
    // Sampled failures: index of the failing sample.
    std::optional<std::uint64_t> failing_sample;
    std::uint64_t hom_fingerprint = 0;

    bool passed() const { return outcome != Outcome::fail; }
};

struct FpInstance {
    Object a, b;
    std::vector<Morphism> s;
    unsigned r = 0;
};

// Hash of the category encoding, the endpoints, |hom(a,c)| and the first
// 4096 morphisms of the canonical enumeration.
std::uint64_t hom_fingerprint(const Category &cat, const Object &a, const Object &c);

// Color of morphism m in sample `sample` of a sampled run.
std::uint32_t sampled_color(std::uint64_t seed, std::uint64_t sample, const Morphism &m, unsigned r);

// hom(a,b)_h = { f ∈ hom(a,b) | δf = h }, canonical order.
std::vector<Morphism> fiber(const Functor &delta, const Object &a, const Object &b, const Morphism &h,
                            std::size_t cap = 1u << 22);

// The fibers of δ on hom(a,b), ordered by their image.
std::vector<std::vector<Morphism>> fibers(const Functor &delta, const Object &a, const Object &b,
                                          std::size_t cap = 1u << 22);

// For every r-coloring χ of hom(a,c): some g ∈ hom(b,c) with δf₁ = δf₂ ⇒ χ(g·f₁) = χ(g·f₂).
// Throws BudgetRefusal when exhaustive enumeration exceeds the budget.
Verdict check_p_witness(const Functor &delta, const Object &a, const Object &b, const Object &c, unsigned r,
                        const SearchBudget &budget);

// For every r-coloring: some g with g·hom(a,b)_{f′} monochromatic and
// (δg)·e = g′·e for every e ∈ s.
Verdict check_fp_witness(const Functor &delta, const FpInstance &inst, const Object &c, const Morphism &f_prime,
                         const Morphism &g_prime, const SearchBudget &budget);

// For every r-coloring: some g with at most k colors on g·hom(a,b).
Verdict check_degree_at(const Category &cat, const Object &a, const Object &b, const Object &c, unsigned r,
                        std::uint64_t k, const SearchBudget &budget);

// First pool object passing check_p_witness. Throws BudgetRefusal if an
// earlier pool object could not be decided within the budget.
std::optional<Object> search_p_witness(const Functor &delta, const Object &a, const Object &b, unsigned r,
                                       const std::vector<Object> &pool, const SearchBudget &budget);

struct DegreeResult {
    Object a, b;
    unsigned r = 0;
    std::uint64_t hom_size = 0;
    // Smallest k with a passing pool object; nullopt if none was found.
    std::optional<std::uint64_t> degree;
    std::optional<Object> witness;
    // Values below `degree` that some pool object could not decide.
    std::vector<std::uint64_t> undetermined;
    std::vector<Object> pool;
    bool ceiling_from_trivial_bound = false;

    bool exact() const { return degree && undetermined.empty(); }
};

DegreeResult ramsey_degree(const Category &cat, const Object &a, const Object &b, unsigned r,
                           const std::vector<Object> &pool, const SearchBudget &budget);

struct DegreeBoundReport {
    std::uint64_t bound = 0;
    std::string best_word;
    DegreeResult degree;
    // The pool exhibits a witness of degree ≤ bound. A larger pool degree is
    // inconclusive, since rd may be attained beyond the pool.
    bool confirmed = false;
};

// min over words of length ≤ word_cap in Δ of |δ̄(hom(a,b))|, compared with
// the degree found over the pool.
DegreeBoundReport check_degree_bound(const std::vector<FunctorPtr> &deltas, const Object &a, const Object &b,
                                     unsigned r, const std::vector<Object> &pool, const SearchBudget &budget,
                                     unsigned word_cap);

} // namespace catramsey
