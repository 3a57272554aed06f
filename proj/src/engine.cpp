#include "catramsey/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <map>
#include <thread>

namespace catramsey {

std::string to_string(Mode m) { return m == Mode::exhaustive ? "exhaustive" : "sampled"; }

std::string to_string(Outcome o)
{
    switch (o) {
    case Outcome::pass:
        return "pass";
    case Outcome::fail:
        return "fail";
    default:
        return "probable_pass";
    }
}

Mode mode_from_string(std::string_view s)
{
    if (s == "exhaustive")
        return Mode::exhaustive;
    if (s == "sampled")
        return Mode::sampled;
    throw ParseError("unknown mode '" + std::string(s) + "'", 0);
}

Outcome outcome_from_string(std::string_view s)
{
    if (s == "pass")
        return Outcome::pass;
    if (s == "fail")
        return Outcome::fail;
    if (s == "probable_pass")
        return Outcome::probable_pass;
    throw ParseError("unknown outcome '" + std::string(s) + "'", 0);
}

namespace {

std::optional<std::uint64_t> env_u64(const char *name)
{
    const char *v = std::getenv(name);
    if (!v || !*v)
        return std::nullopt;
    char *end = nullptr;
    auto out = std::strtoull(v, &end, 0);
    if (*end != '\0')
        throw ParseError(std::string("environment variable ") + name + " is not a number", 0);
    return out;
}

} // namespace

SearchBudget SearchBudget::from_env()
{
    SearchBudget b;
    if (auto v = env_u64("CATRAMSEY_MAX_HOM"))
        b.max_hom_size = *v;
    if (auto v = env_u64("CATRAMSEY_MAX_COLORINGS"))
        b.max_colorings = *v;
    if (auto v = env_u64("CATRAMSEY_SAMPLES"))
        b.sample_count = *v;
    if (auto v = env_u64("CATRAMSEY_SEED"))
        b.seed = *v;
    return b;
}

std::uint64_t hom_fingerprint(const Category &cat, const Object &a, const Object &c)
{
    std::string bytes = cat.encoding() + "|" + encode(a) + "|" + encode(c) + "|" + cat.hom_count(a, c).str();
    std::size_t seen = 0;
    cat.for_each_hom(a, c, [&](const Morphism &m) {
        bytes += "|" + to_hex(m.data);
        return ++seen < 4096;
    });
    return fnv1a64(bytes);
}

// Source and target are fixed within hom(a,c), so only the payload is hashed.
std::uint32_t sampled_color(std::uint64_t seed, std::uint64_t sample, const Morphism &m, unsigned r)
{
    auto h = splitmix64(seed ^ splitmix64(sample ^ splitmix64(fnv1a64(payload_bytes(m.data)))));
    return static_cast<std::uint32_t>((static_cast<unsigned __int128>(h) * r) >> 64);
}

std::vector<Morphism> fiber(const Functor &delta, const Object &a, const Object &b, const Morphism &h,
                            std::size_t cap)
{
    std::vector<Morphism> out;
    for (auto &f : delta.dom()->hom(a, b, cap))
        if (delta.map_morph(f) == h)
            out.push_back(std::move(f));
    return out;
}

std::vector<std::vector<Morphism>> fibers(const Functor &delta, const Object &a, const Object &b, std::size_t cap)
{
    std::map<Morphism, std::vector<Morphism>> by_image;
    for (auto &f : delta.dom()->hom(a, b, cap)) {
        auto h = delta.map_morph(f);
        by_image[h].push_back(std::move(f));
    }
    std::vector<std::vector<Morphism>> out;
    for (auto &[h, fs] : by_image)
        out.push_back(std::move(fs));
    return out;
}

namespace {

// One instance of "for every coloring of hom(a,c) some admissible g ∈ hom(b,c)
// satisfies a condition on the images g·f of fixed groups of f ∈ hom(a,b)".
struct Problem {
    const Category *cat = nullptr;
    Object a, b, c;
    unsigned r = 0;
    // Each group must be monochromatic, or (at_most > 0) the single group may
    // use at most that many colors.
    std::vector<std::vector<Morphism>> groups;
    std::uint64_t at_most = 0;
    std::function<bool(const Morphism &)> admissible;
};

using Group = std::vector<std::uint32_t>;
using Selector = std::vector<Group>;

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t limit, bool &over)
{
    std::uint64_t out = 1;
    over = false;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && out > limit / base) {
            over = true;
            return 0;
        }
        out *= base;
    }
    if (out > limit)
        over = true;
    return out;
}

template <class Body>
void parallel_ranges(std::uint64_t total, unsigned jobs, Body body)
{
    jobs = std::max(1u, jobs);
    if (jobs == 1 || total < 2 * jobs) {
        body(0, total);
        return;
    }
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (total + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
        auto lo = j * chunk, hi = std::min(total, lo + chunk);
        if (lo >= hi)
            break;
        threads.emplace_back([=] { body(lo, hi); });
    }
    for (auto &t : threads)
        t.join();
}

void lower_to(std::atomic<std::uint64_t> &best, std::uint64_t v)
{
    auto cur = best.load();
    while (v < cur && !best.compare_exchange_weak(cur, v)) {
    }
}

constexpr auto none = std::numeric_limits<std::uint64_t>::max();

Verdict run_exhaustive(const Problem &p, const SearchBudget &budget)
{
    Verdict v;
    v.mode = Mode::exhaustive;
    v.hom_fingerprint = hom_fingerprint(*p.cat, p.a, p.c);

    if (p.cat->hom_count(p.a, p.c) > budget.max_hom_size)
        throw BudgetRefusal(hom_name(*p.cat, p.a, p.c) + " has more than " + std::to_string(budget.max_hom_size) +
                            " morphisms; exhaustive mode refused");
    auto positions = p.cat->hom(p.a, p.c, budget.max_hom_size);
    if (p.r == 0 && !positions.empty())
        throw PreconditionViolation("0 colors are only possible on an empty hom-set");

    auto index_of = [&](const Morphism &m) -> std::uint32_t {
        auto it = std::lower_bound(positions.begin(), positions.end(), m);
        if (it == positions.end() || *it != m)
            throw DomainMismatch("composite " + p.cat->format(m) + " is not in " + hom_name(*p.cat, p.a, p.c));
        return static_cast<std::uint32_t>(it - positions.begin());
    };

    std::vector<Selector> selectors;
    bool trivial = false;
    std::uint64_t entries = 0;
    p.cat->for_each_hom(p.b, p.c, [&](const Morphism &g) {
        if (p.admissible && !p.admissible(g))
            return true;
        Selector sel;
        for (const auto &grp : p.groups) {
            Group out;
            for (const auto &f : grp)
                out.push_back(index_of(p.cat->compose(g, f)));
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            if (out.size() > 1 && (p.at_most == 0 || out.size() > p.at_most))
                sel.push_back(std::move(out));
        }
        if (sel.empty()) {
            trivial = true;
            return false;
        }
        entries += sel.size();
        if (entries > budget.max_colorings)
            throw BudgetRefusal("selector table for " + hom_name(*p.cat, p.b, p.c) + " exceeds the budget");
        selectors.push_back(std::move(sel));
        return true;
    });

    auto full_coloring = [&](const std::vector<std::uint32_t> &colors) {
        return Coloring{p.cat->id(), p.a, p.c, p.r, colors};
    };

    if (trivial) {
        v.outcome = Outcome::pass;
        v.colorings_examined = 1;
        return v;
    }
    if (selectors.empty()) {
        v.outcome = Outcome::fail;
        v.colorings_examined = 1;
        v.counterexample = full_coloring(std::vector<std::uint32_t>(positions.size(), 0));
        return v;
    }
    std::sort(selectors.begin(), selectors.end());
    selectors.erase(std::unique(selectors.begin(), selectors.end()), selectors.end());

    // Project onto the positions some selector looks at.
    std::vector<std::uint32_t> relevant;
    for (const auto &sel : selectors)
        for (const auto &grp : sel)
            relevant.insert(relevant.end(), grp.begin(), grp.end());
    std::sort(relevant.begin(), relevant.end());
    relevant.erase(std::unique(relevant.begin(), relevant.end()), relevant.end());
    for (auto &sel : selectors)
        for (auto &grp : sel)
            for (auto &x : grp)
                x = static_cast<std::uint32_t>(std::lower_bound(relevant.begin(), relevant.end(), x) - relevant.begin());
    v.relevant_positions = relevant.size();

    const unsigned r = std::max(p.r, 1u);
    bool over = false;
    auto total = checked_pow(r, relevant.size(), budget.max_colorings, over);
    if (over)
        throw BudgetRefusal(std::to_string(r) + "^" + std::to_string(relevant.size()) + " colorings of " +
                            hom_name(*p.cat, p.a, p.c) + " exceed the budget of " +
                            std::to_string(budget.max_colorings));

    const std::size_t n = relevant.size();
    const std::uint64_t at_most = p.at_most;
    std::atomic<std::uint64_t> first_fail{none};

    if (r == 2 && n <= 64 && at_most <= 1) {
        std::vector<std::vector<std::uint64_t>> masks;
        for (const auto &sel : selectors) {
            std::vector<std::uint64_t> ms;
            for (const auto &grp : sel) {
                std::uint64_t m = 0;
                for (auto x : grp)
                    m |= std::uint64_t{1} << x;
                ms.push_back(m);
            }
            masks.push_back(std::move(ms));
        }
        parallel_ranges(total, budget.jobs, [&](std::uint64_t lo, std::uint64_t hi) {
            for (std::uint64_t x = lo; x < hi; ++x) {
                if ((x & 0xfff) == 0 && first_fail.load(std::memory_order_relaxed) < x)
                    return;
                bool ok = false;
                for (const auto &ms : masks) {
                    bool sat = true;
                    for (auto m : ms) {
                        auto t = x & m;
                        if (t != 0 && t != m) {
                            sat = false;
                            break;
                        }
                    }
                    if (sat) {
                        ok = true;
                        break;
                    }
                }
                if (!ok) {
                    lower_to(first_fail, x);
                    return;
                }
            }
        });
    } else {
        parallel_ranges(total, budget.jobs, [&](std::uint64_t lo, std::uint64_t hi) {
            std::vector<std::uint32_t> digits(n, 0);
            auto rest = lo;
            for (std::size_t i = 0; i < n; ++i) {
                digits[i] = static_cast<std::uint32_t>(rest % r);
                rest /= r;
            }
            std::vector<std::uint32_t> seen;
            for (std::uint64_t x = lo; x < hi; ++x) {
                if ((x & 0xfff) == 0 && first_fail.load(std::memory_order_relaxed) < x)
                    return;
                bool ok = false;
                for (const auto &sel : selectors) {
                    bool sat = true;
                    for (const auto &grp : sel) {
                        if (at_most == 0) {
                            auto c0 = digits[grp[0]];
                            for (std::size_t i = 1; i < grp.size() && sat; ++i)
                                sat = digits[grp[i]] == c0;
                        } else {
                            seen.clear();
                            for (auto q : grp) {
                                auto c = digits[q];
                                if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
                                    seen.push_back(c);
                                    if (seen.size() > at_most) {
                                        sat = false;
                                        break;
                                    }
                                }
                            }
                        }
                        if (!sat)
                            break;
                    }
                    if (sat) {
                        ok = true;
                        break;
                    }
                }
                if (!ok) {
                    lower_to(first_fail, x);
                    return;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    if (++digits[i] < r)
                        break;
                    digits[i] = 0;
                }
            }
        });
    }

    auto failing = first_fail.load();
    if (failing == none) {
        v.outcome = Outcome::pass;
        v.colorings_examined = total;
        return v;
    }
    v.outcome = Outcome::fail;
    v.colorings_examined = failing + 1;
    std::vector<std::uint32_t> colors(positions.size(), 0);
    auto rest = failing;
    for (std::size_t i = 0; i < n; ++i) {
        colors[relevant[i]] = static_cast<std::uint32_t>(rest % r);
        rest /= r;
    }
    v.counterexample = full_coloring(colors);
    return v;
}

Verdict run_sampled(const Problem &p, const SearchBudget &budget)
{
    Verdict v;
    v.mode = Mode::sampled;
    v.hom_fingerprint = hom_fingerprint(*p.cat, p.a, p.c);
    if (p.r == 0 && p.cat->hom_count(p.a, p.c) > 0)
        throw PreconditionViolation("0 colors are only possible on an empty hom-set");
    const unsigned r = std::max(p.r, 1u);

    std::atomic<std::uint64_t> first_fail{none};
    parallel_ranges(budget.sample_count, budget.jobs, [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint32_t> seen;
        for (std::uint64_t s = lo; s < hi; ++s) {
            if (first_fail.load(std::memory_order_relaxed) < s)
                return;
            bool ok = false;
            p.cat->for_each_hom(p.b, p.c, [&](const Morphism &g) {
                if (p.admissible && !p.admissible(g))
                    return true;
                bool sat = true;
                for (const auto &grp : p.groups) {
                    seen.clear();
                    for (const auto &f : grp) {
                        auto col = sampled_color(budget.seed, s, p.cat->compose(g, f), r);
                        if (std::find(seen.begin(), seen.end(), col) == seen.end())
                            seen.push_back(col);
                        if (seen.size() > std::max<std::uint64_t>(p.at_most, 1)) {
                            sat = false;
                            break;
                        }
                    }
                    if (!sat)
                        break;
                }
                ok = sat;
                return !sat;
            });
            if (!ok) {
                lower_to(first_fail, s);
                return;
            }
        }
    });

    auto failing = first_fail.load();
    if (failing == none) {
        v.outcome = Outcome::probable_pass;
        v.colorings_examined = budget.sample_count;
        return v;
    }
    v.outcome = Outcome::fail;
    v.colorings_examined = failing + 1;
    v.failing_sample = failing;
    if (p.cat->hom_count(p.a, p.c) <= budget.max_hom_size) {
        std::vector<std::uint32_t> colors;
        p.cat->for_each_hom(p.a, p.c, [&](const Morphism &m) {
            colors.push_back(sampled_color(budget.seed, failing, m, r));
            return true;
        });
        v.counterexample = Coloring{p.cat->id(), p.a, p.c, p.r, std::move(colors)};
    }
    return v;
}

Verdict run(const Problem &p, const SearchBudget &budget)
{
    return budget.mode == Mode::exhaustive ? run_exhaustive(p, budget) : run_sampled(p, budget);
}

std::vector<Morphism> hom_or_refuse(const Category &cat, const Object &a, const Object &b,
                                    const SearchBudget &budget)
{
    try {
        return cat.hom(a, b, budget.max_hom_size);
    } catch (const CapExceeded &e) {
        throw BudgetRefusal(e.what());
    }
}

} // namespace

Verdict check_p_witness(const Functor &delta, const Object &a, const Object &b, const Object &c, unsigned r,
                        const SearchBudget &budget)
{
    Problem p;
    p.cat = delta.dom().get();
    p.a = a;
    p.b = b;
    p.c = c;
    p.r = r;
    hom_or_refuse(*p.cat, a, b, budget);
    for (auto &grp : fibers(delta, a, b, budget.max_hom_size))
        if (grp.size() > 1)
            p.groups.push_back(std::move(grp));
    return run(p, budget);
}

Verdict check_fp_witness(const Functor &delta, const FpInstance &inst, const Object &c, const Morphism &f_prime,
                         const Morphism &g_prime, const SearchBudget &budget)
{
    const auto &dom = *delta.dom();
    const auto &cod = *delta.cod();
    if (inst.s.empty())
        throw PreconditionViolation("the set s of an (FP) instance must be non-empty");
    if (std::find(inst.s.begin(), inst.s.end(), f_prime) == inst.s.end())
        throw PreconditionViolation("f' = " + cod.format(f_prime) + " is not an element of s");
    auto image = image_of_hom(delta, inst.a, inst.b, budget.max_hom_size);
    for (const auto &e : inst.s)
        if (!std::binary_search(image.begin(), image.end(), e))
            throw PreconditionViolation(cod.format(e) + " is not in the image of " +
                                        hom_name(dom, inst.a, inst.b));
    bool found = false;
    dom.for_each_hom(inst.b, c, [&](const Morphism &g) {
        found = delta.map_morph(g) == g_prime;
        return !found;
    });
    if (!found)
        throw PreconditionViolation("g' = " + cod.format(g_prime) + " is not in the image of " +
                                    hom_name(dom, inst.b, c));

    Problem p;
    p.cat = &dom;
    p.a = inst.a;
    p.b = inst.b;
    p.c = c;
    p.r = inst.r;
    auto fib = fiber(delta, inst.a, inst.b, f_prime, budget.max_hom_size);
    if (fib.size() > 1)
        p.groups.push_back(std::move(fib));
    std::vector<Morphism> targets;
    for (const auto &e : inst.s)
        targets.push_back(cod.compose(g_prime, e));
    p.admissible = [&delta, &cod, &inst, targets](const Morphism &g) {
        auto dg = delta.map_morph(g);
        for (std::size_t i = 0; i < inst.s.size(); ++i)
            if (cod.compose(dg, inst.s[i]) != targets[i])
                return false;
        return true;
    };
    return run(p, budget);
}

Verdict check_degree_at(const Category &cat, const Object &a, const Object &b, const Object &c, unsigned r,
                        std::uint64_t k, const SearchBudget &budget)
{
    Problem p;
    p.cat = &cat;
    p.a = a;
    p.b = b;
    p.c = c;
    p.r = r;
    p.at_most = std::max<std::uint64_t>(k, 1);
    auto h = hom_or_refuse(cat, a, b, budget);
    if (h.size() > k)
        p.groups.push_back(std::move(h));
    if (k == 0 && !p.groups.empty())
        throw PreconditionViolation("degree 0 is only possible on an empty hom-set");
    return run(p, budget);
}

std::optional<Object> search_p_witness(const Functor &delta, const Object &a, const Object &b, unsigned r,
                                       const std::vector<Object> &pool, const SearchBudget &budget)
{
    for (const auto &c : pool) {
        Verdict v;
        try {
            v = check_p_witness(delta, a, b, c, r, budget);
        } catch (const BudgetRefusal &e) {
            throw BudgetRefusal("pool object " + delta.dom()->format(c) + " undecided: " + e.what());
        }
        if (v.passed())
            return c;
    }
    return std::nullopt;
}

DegreeResult ramsey_degree(const Category &cat, const Object &a, const Object &b, unsigned r,
                           const std::vector<Object> &pool, const SearchBudget &budget)
{
    DegreeResult out;
    out.a = a;
    out.b = b;
    out.r = r;
    out.pool = pool;
    const auto ceiling = static_cast<std::uint64_t>(hom_or_refuse(cat, a, b, budget).size());
    out.hom_size = ceiling;
    if (ceiling == 0) {
        out.degree = 0;
        out.witness = b;
        return out;
    }
    for (std::uint64_t k = 1; k <= ceiling; ++k) {
        bool undecided = false;
        for (const auto &c : pool) {
            try {
                if (check_degree_at(cat, a, b, c, r, k, budget).passed()) {
                    out.degree = k;
                    out.witness = c;
                    return out;
                }
            } catch (const BudgetRefusal &) {
                undecided = true;
            }
        }
        if (undecided)
            out.undetermined.push_back(k);
    }
    // c = b with g = id always attains the trivial bound.
    if (!check_degree_at(cat, a, b, b, r, ceiling, budget).passed())
        throw Error("trivial bound failed at " + cat.format(b));
    out.degree = ceiling;
    out.witness = b;
    out.ceiling_from_trivial_bound = true;
    out.undetermined.erase(std::remove(out.undetermined.begin(), out.undetermined.end(), ceiling),
                           out.undetermined.end());
    return out;
}

DegreeBoundReport check_degree_bound(const std::vector<FunctorPtr> &deltas, const Object &a, const Object &b,
                                     unsigned r, const std::vector<Object> &pool, const SearchBudget &budget,
                                     unsigned word_cap)
{
    if (deltas.empty())
        throw PreconditionViolation("the family of functors is empty");
    DegreeBoundReport out;
    const auto &cat = *deltas.front()->dom();
    for (const auto &d : deltas)
        if (d->dom()->id() != cat.id() || d->cod()->id() != cat.id())
            throw DomainMismatch(d->id() + " is not an endofunctor of " + cat.id());

    out.bound = hom_or_refuse(cat, a, b, budget).size();
    out.best_word = "id(" + cat.id() + ")";
    std::vector<FunctorPtr> words(deltas.begin(), deltas.end());
    for (unsigned len = 1; len <= word_cap && !words.empty(); ++len) {
        std::vector<FunctorPtr> next;
        for (const auto &w : words) {
            auto size = image_of_hom(*w, a, b, budget.max_hom_size).size();
            if (size < out.bound) {
                out.bound = size;
                out.best_word = w->id();
            }
            if (len < word_cap)
                for (const auto &d : deltas)
                    next.push_back(compose_functors(w, d));
        }
        words = std::move(next);
    }
    out.degree = ramsey_degree(cat, a, b, r, pool, budget);
    // A pool degree is an upper bound on rd, so it can confirm rd ≤ bound but
    // never refute it.
    out.confirmed = out.degree.degree && *out.degree.degree <= out.bound;
    return out;
}

} // namespace catramsey
