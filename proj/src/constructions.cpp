#include "catramsey/constructions.hpp"

#include <algorithm>
#include <climits>
#include <map>

#include "catramsey/registry.hpp"

namespace catramsey {

namespace {

std::string fmt(const Object &o) { return category_by_id(o.category)->format(o); }
std::string fmt(const Morphism &m) { return category_by_id(m.source.category)->format(m); }

Witness trivial_witness(const Object &b, const std::string &why)
{
    return Witness{b, "trivial", json{{"theorem", "trivial"}, {"reason", why}, {"c", fmt(b)}}};
}

std::int64_t top(const Morphism &m) { return m.data.empty() ? 0 : m.data.back(); }

} // namespace

Object p_pigeonhole_witness(std::int64_t k1, std::int64_t l, const BigInt &r, bool mirror)
{
    if (k1 < 2 || l < 1 || r < 1)
        throw PreconditionViolation("pigeonhole witness needs k1 >= 2, l >= 1, r >= 1");
    BigInt m = BigInt(l - 1) * r + 2;
    return p_object(to_int64(m, "pigeonhole witness (l-1)r+2"), 2, mirror);
}

FpChoice r_fp_witness(const FpProblem &inst)
{
    if (inst.s.empty())
        throw PreconditionViolation("the set s of an (FP) instance must be non-empty");
    auto s = inst.s;
    std::sort(s.begin(), s.end());
    const auto cat = r_category();
    const auto l = inst.b.data.at(0);
    FpChoice out;
    if (cat->hom_count(inst.a, inst.b) <= 1) {
        out.c = inst.b;
        out.f_prime = s.front();
        out.g_prime = r_partial()->map_morph(cat->identity(inst.b));
        out.trace = json{{"rule", "trivial"}, {"m", l}};
        return out;
    }
    const auto m = to_int64((inst.r + 1) * l, "R witness (r+1)l");
    const Morphism *best = &s.front();
    for (const auto &e : s)
        if (top(e) > top(*best))
            best = &e;
    std::vector<std::int64_t> y;
    for (std::int64_t i = 1; i < l; ++i)
        y.push_back(i);
    out.c = r_object(m);
    out.f_prime = *best;
    out.g_prime = r_morph(y, l - 1, m - 1);
    out.trace = json{{"rule", "m=(r+1)l"}, {"m", m}};
    return out;
}

FpChoice tree_fp_witness(const FpProblem &inst, const ProductRamseyFn &product_ramsey)
{
    if (inst.s.empty())
        throw PreconditionViolation("the set s of an (FP) instance must be non-empty");
    const auto S = tree_of(inst.a);
    const auto T = tree_of(inst.b);
    if (S.height() != T.height())
        throw PreconditionViolation("a non-empty s needs ht(S) = ht(T)");
    const auto cat = tree_category();
    FpChoice out;
    out.f_prime = *std::min_element(inst.s.begin(), inst.s.end());
    if (T.height() == 1) {
        out.c = inst.b;
        out.g_prime = cat->identity(inst.b);
        out.trace = json{{"rule", "height 1"}};
        return out;
    }
    const auto h = T.height();
    const auto Tstar = T.truncated();
    const auto s_map = S.truncation_map();
    const auto t_map = T.truncation_map();
    std::vector<std::size_t> t_node(Tstar.size());
    for (std::size_t v = 0; v < T.size(); ++v)
        if (t_map[v] >= 0)
            t_node[static_cast<std::size_t>(t_map[v])] = v;

    std::map<std::size_t, std::size_t> coordinate_of;
    std::vector<std::int64_t> ks, ps;
    for (std::size_t v = 0; v < S.size(); ++v) {
        if (S.node_height(v) != h - 1)
            continue;
        auto w = static_cast<std::size_t>(out.f_prime.data.at(static_cast<std::size_t>(s_map[v])));
        coordinate_of[w] = ks.size();
        ks.push_back(static_cast<std::int64_t>(S.children(v).size()));
        ps.push_back(static_cast<std::int64_t>(T.children(t_node[w]).size()));
    }
    std::vector<BigInt> qs;
    if (!ks.empty())
        qs = product_ramsey(ks, ps, inst.r);

    std::vector<std::pair<std::size_t, std::int64_t>> additions;
    json fans = json::array();
    for (std::size_t w = 0; w < Tstar.size(); ++w) {
        if (Tstar.node_height(w) != h - 1)
            continue;
        std::int64_t count = static_cast<std::int64_t>(T.children(t_node[w]).size());
        auto it = coordinate_of.find(w);
        if (it != coordinate_of.end()) {
            count = to_int64(qs[it->second], "tree fan size");
            fans.push_back(json{{"node", w}, {"k", ks[it->second]}, {"p", ps[it->second]}, {"q", count}});
        }
        if (count > 0)
            additions.emplace_back(w, count);
    }
    out.c = tree_object(Tstar.with_new_leaves(additions));
    out.g_prime = cat->identity(tree_object(Tstar));
    out.trace = json{{"rule", "fans over f'"}, {"fans", fans}};
    return out;
}

Witness fp_to_p_construct(const Functor &delta, const Object &a, const Object &b, const BigInt &r,
                          const FpOracle &oracle)
{
    const auto &cod = *delta.cod();
    auto remaining = image_of_hom(delta, a, b);
    const auto n = remaining.size();
    Object c = b;
    Morphism G = cod.identity(delta.map_obj(b));
    json stages = json::array();
    for (std::size_t k = 1; k <= n; ++k) {
        FpProblem inst{a, c, {}, r};
        for (const auto &f : remaining)
            inst.s.push_back(cod.compose(G, f));
        auto choice = oracle(inst);
        auto it = std::find(inst.s.begin(), inst.s.end(), choice.f_prime);
        if (it == inst.s.end())
            throw PreconditionViolation("stage " + std::to_string(k) + ": oracle chose f' = " +
                                        cod.format(choice.f_prime) + " outside s");
        auto idx = static_cast<std::size_t>(it - inst.s.begin());
        stages.push_back(json{{"stage", k},
                              {"b", fmt(c)},
                              {"s_size", inst.s.size()},
                              {"f_prime", cod.format(remaining[idx])},
                              {"g_prime", cod.format(choice.g_prime)},
                              {"c", fmt(choice.c)},
                              {"oracle", choice.trace}});
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(idx));
        G = cod.compose(choice.g_prime, G);
        c = choice.c;
    }
    return Witness{c, "constructed",
                   json{{"theorem", "fp2p"}, {"functor", delta.id()}, {"n", n}, {"stages", stages}, {"c", fmt(c)}}};
}

Witness composition_witness(const Functor &gamma, const Object &a, const Object &b, const BigInt &r,
                            const WitnessProvider &inner, const WitnessProvider &outer)
{
    auto d = inner(gamma.map_obj(a), gamma.map_obj(b), r);
    auto lifted = gamma.frank_lift(b, d.c);
    if (!lifted)
        throw Unsupported(gamma.id() + " has no lift of " + fmt(d.c) + " over " + fmt(b));
    auto c = outer(a, *lifted, r);
    return Witness{c.c, "constructed",
                   json{{"theorem", "composition"},
                        {"gamma", gamma.id()},
                        {"d", fmt(d.c)},
                        {"c_prime", fmt(*lifted)},
                        {"c", fmt(c.c)},
                        {"inner", d.trace},
                        {"outer", c.trace}}};
}

Witness power_witness(FunctorPtr delta, unsigned n, const Object &a, const Object &b, const BigInt &r,
                      const WitnessProvider &provider)
{
    if (n == 0)
        return trivial_witness(b, "identity functor");
    if (n == 1)
        return provider(a, b, r);
    return composition_witness(
        *delta, a, b, r,
        [&](const Object &x, const Object &y, const BigInt &rr) {
            return power_witness(delta, n - 1, x, y, rr, provider);
        },
        provider);
}

Witness product_witness(const Category &product, const std::function<FunctorPtr(std::int64_t)> &coordinate_functor,
                        const std::function<WitnessProvider(std::int64_t)> &coordinate_provider, const Object &a,
                        const Object &b, const BigInt &r)
{
    const auto ca = product_coordinates(product, a);
    const auto cb = product_coordinates(product, b);
    std::vector<std::int64_t> support;
    for (const auto &[i, x] : ca)
        support.push_back(i);
    std::vector<std::int64_t> support_b;
    for (const auto &[i, x] : cb)
        support_b.push_back(i);
    if (support != support_b)
        return trivial_witness(b, "supports differ, hom(a,b) is empty");
    if (support.empty())
        return trivial_witness(b, "empty support");

    const auto factor = product_factor(product);
    const auto same_support = [&](const Coordinates &x) {
        if (x.size() != support.size())
            return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i].first != support[i])
                return false;
        return true;
    };

    std::vector<FunctorPtr> stages;
    for (auto i : support)
        stages.push_back(product_functor(identity_functor(factor), {{i, coordinate_functor(i)}}));

    auto stage_provider = [&](std::size_t p) -> WitnessProvider {
        return [&, p](const Object &x, const Object &y, const BigInt &rr) {
            auto cx = product_coordinates(product, x);
            auto cy = product_coordinates(product, y);
            if (!same_support(cx) || !same_support(cy))
                return trivial_witness(y, "supports differ, hom(a,b) is empty");
            BigInt M = 1;
            for (std::size_t j = 0; j < support.size(); ++j)
                if (j != p)
                    M *= factor->hom_count(cx[j].second, cy[j].second);
            auto R = big_pow(rr, M, "color blow-up r^M");
            auto w = coordinate_provider(support[p])(cx[p].second, cy[p].second, R);
            auto out = cy;
            out[p].second = w.c;
            auto c = product_object(product, out);
            return Witness{c, "constructed",
                           json{{"theorem", "product_stage"},
                                {"index", support[p]},
                                {"M", M.str()},
                                {"R", R.str()},
                                {"coordinate", w.trace},
                                {"c", fmt(c)}}};
        };
    };

    std::function<Witness(std::size_t, const Object &, const Object &, const BigInt &)> chain =
        [&](std::size_t p, const Object &x, const Object &y, const BigInt &rr) -> Witness {
        if (p + 1 == stages.size())
            return stage_provider(p)(x, y, rr);
        return composition_witness(
            *stages[p], x, y, rr,
            [&, p](const Object &x2, const Object &y2, const BigInt &r2) { return chain(p + 1, x2, y2, r2); },
            stage_provider(p));
    };
    auto w = chain(0, a, b, r);
    w.trace = json{{"theorem", "product"}, {"support", support}, {"c", fmt(w.c)}, {"stages", w.trace}};
    return w;
}

LawReport check_cross_relation(const CrossRelation &rel, std::size_t cap)
{
    LawReport rep;
    const auto F = rel.C->hom(rel.c1, rel.c2, cap);
    const auto G = rel.D->hom(rel.d2, rel.d3, cap);
    if (!F.empty() && G.size() > cap / F.size())
        throw CapExceeded("cross relation has more than " + std::to_string(cap) + " pairs");
    std::map<Morphism, Morphism> seen;
    for (const auto &g : G) {
        auto pg = rel.psi(g);
        ++rep.checks;
        if (pg.source != rel.c2 || pg.target != rel.c3) {
            rep.record("psi(" + rel.D->format(g) + ") = " + rel.C->format(pg) + " is not in " +
                       hom_name(*rel.C, rel.c2, rel.c3));
            continue;
        }
        for (const auto &f : F) {
            auto ph = rel.phi(f, g);
            ++rep.checks;
            if (ph.source != rel.d1 || ph.target != rel.d2) {
                rep.record("phi(" + rel.C->format(f) + ", " + rel.D->format(g) + ") is not in " +
                           hom_name(*rel.D, rel.d1, rel.d2));
                continue;
            }
            auto lhs = rel.D->compose(g, ph);
            auto rhs = rel.C->compose(pg, f);
            ++rep.checks;
            auto [it, fresh] = seen.emplace(lhs, rhs);
            if (!fresh && it->second != rhs)
                rep.record("g.phi(f,g) = " + rel.D->format(lhs) + " determines both " + rel.C->format(it->second) +
                           " and " + rel.C->format(rhs));
            if (rel.zeta) {
                ++rep.checks;
                if (rel.zeta(lhs) != rhs)
                    rep.record("zeta(" + rel.D->format(lhs) + ") != psi(g).f = " + rel.C->format(rhs));
            }
        }
    }
    return rep;
}

LawReport check_modeling_compatibility(const CrossRelation &rel, const Functor &gamma, const Functor &delta,
                                       std::size_t cap)
{
    LawReport rep;
    const auto F = rel.C->hom(rel.c1, rel.c2, cap);
    const auto G = rel.D->hom(rel.d2, rel.d3, cap);
    if (!F.empty() && G.size() > cap / F.size())
        throw CapExceeded("modeling check has more than " + std::to_string(cap) + " pairs");
    for (const auto &g : G) {
        std::map<Morphism, std::pair<Morphism, Morphism>> by_gamma;
        for (const auto &f : F) {
            auto key = gamma.map_morph(f);
            auto val = delta.map_morph(rel.phi(f, g));
            ++rep.checks;
            auto [it, fresh] = by_gamma.emplace(key, std::make_pair(val, f));
            if (!fresh && it->second.first != val)
                rep.record("gamma identifies " + rel.C->format(it->second.second) + " and " + rel.C->format(f) +
                           " but delta separates their phi-images at g = " + rel.D->format(g));
        }
    }
    return rep;
}

CrossRelation identity_relation(CategoryPtr cat, const Object &a, const Object &b, const Object &c)
{
    CrossRelation rel;
    rel.C = cat;
    rel.D = cat;
    rel.c1 = rel.d1 = a;
    rel.c2 = rel.d2 = b;
    rel.c3 = rel.d3 = c;
    rel.phi = [](const Morphism &f, const Morphism &) { return f; };
    rel.psi = [](const Morphism &g) { return g; };
    rel.zeta = [](const Morphism &h) { return h; };
    return rel;
}

Witness modeling_transfer(const RelationProvider &relation, const WitnessProvider &delta_witness,
                          const Object &d1, const Object &d2, const BigInt &r, const Functor *gamma,
                          const Functor *delta, const ProviderOptions &opts)
{
    auto d3 = delta_witness(d1, d2, r);
    auto rel = relation(d3.c);
    json checks;
    if (opts.verify_relations) {
        auto pairs = rel.C->hom_count(rel.c1, rel.c2) * rel.D->hom_count(rel.d2, rel.d3);
        if (pairs <= opts.relation_cap) {
            auto rep = check_cross_relation(rel, opts.relation_cap);
            if (!rep.ok())
                throw PreconditionViolation("cross relation fails: " + rep.violations.front());
            checks["cross_relation"] = rep.checks;
            if (gamma && delta) {
                auto comp = check_modeling_compatibility(rel, *gamma, *delta, opts.relation_cap);
                if (!comp.ok())
                    throw PreconditionViolation("modeling compatibility fails: " + comp.violations.front());
                checks["compatibility"] = comp.checks;
            }
        } else {
            checks["skipped"] = pairs.str() + " pairs exceed the relation cap";
        }
    }
    return Witness{rel.c3, "constructed",
                   json{{"theorem", gamma && delta ? "modeling" : "r_modeling"},
                        {"d3", fmt(d3.c)},
                        {"c", fmt(rel.c3)},
                        {"relation_checks", checks},
                        {"delta_witness", d3.trace}}};
}

namespace {

struct HjSetup {
    CategoryPtr hj, prodP;
    std::int64_t k1 = 0, lo = 0, top_u = 0, lo_u = 0;
};

HjSetup hj_setup(std::int64_t k0, const Object &v)
{
    HjSetup s;
    s.hj = hj_category(k0);
    s.prodP = product_category(p_category(false));
    s.k1 = hj_alphabet_size(v);
    s.lo = std::max<std::int64_t>(1, s.k1 - 1);
    // v.data = [1, v(−k0), …, v(0)]; u = j − 1 − k0 for data index j.
    auto smallest = [&](std::int64_t value) {
        for (std::size_t j = 1; j < v.data.size(); ++j)
            if (v.data[j] == value)
                return static_cast<std::int64_t>(j) - 1 - k0;
        throw PreconditionViolation("alphabet object does not take the value " + std::to_string(value));
    };
    s.top_u = smallest(s.k1);
    s.lo_u = smallest(s.lo);
    return s;
}

} // namespace

CrossRelation hj_modeling(std::int64_t k0, const Object &v, std::int64_t l, const Object &c)
{
    if (!hj_is_alphabet(v))
        throw PreconditionViolation("hj_modeling needs an alphabet object v");
    auto s = hj_setup(k0, v);
    if (s.k1 < 2)
        throw PreconditionViolation("hj_modeling needs an alphabet of size at least 2");
    const auto coords = product_coordinates(*s.prodP, c);
    if (static_cast<std::int64_t>(coords.size()) != l)
        throw PreconditionViolation("c must have coordinates 1..l");
    std::int64_t total = 0;
    std::vector<std::int64_t> m;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const auto &[idx, o] = coords[i];
        if (idx != static_cast<std::int64_t>(i) + 1 || o.data.at(1) != 2 || o.data.at(0) < 3)
            throw PreconditionViolation("coordinate " + std::to_string(idx) + " of c must be (m,2) with m >= 3");
        m.push_back(o.data[0]);
        total += o.data[0];
    }

    Coordinates d1, d2;
    for (std::int64_t i = 1; i <= l; ++i) {
        d1.emplace_back(i, p_object(s.k1, 1));
        d2.emplace_back(i, p_object(3, 2));
    }
    CrossRelation rel;
    rel.C = s.hj;
    rel.D = s.prodP;
    rel.c1 = v;
    rel.c2 = hj_word_object(k0, l);
    rel.c3 = hj_word_object(k0, total);
    rel.d1 = product_object(*s.prodP, d1);
    rel.d2 = product_object(*s.prodP, d2);
    rel.d3 = c;
    const auto prodP = s.prodP;
    const auto D1 = rel.d1, D2 = rel.d2, C1 = rel.c1, C2 = rel.c2, C3 = rel.c3;
    const auto k1 = s.k1, lo = s.lo, top_u = s.top_u, lo_u = s.lo_u;
    rel.phi = [=](const Morphism &f, const Morphism &) {
        MorphCoordinates out;
        for (std::int64_t i = 1; i <= l; ++i)
            out.emplace_back(i, Morphism{p_object(k1, 1), p_object(3, 2),
                                         {k1, f.data.at(static_cast<std::size_t>(i - 1)), lo}});
        return product_morph(*prodP, out, D1, D2);
    };
    rel.psi = [=](const Morphism &p) {
        Payload g;
        for (const auto &[i, pi] : product_morph_coordinates(*prodP, p))
            for (auto x : pi.data)
                g.push_back(x == 2 ? i : (x == 1 ? top_u : lo_u));
        return Morphism{C2, C3, std::move(g)};
    };
    rel.zeta = [=](const Morphism &h) {
        Payload word;
        for (const auto &[i, hi] : product_morph_coordinates(*prodP, h))
            word.insert(word.end(), hi.data.begin(), hi.data.end());
        return Morphism{C1, C3, std::move(word)};
    };
    return rel;
}

LawReport check_hj_concatenation(std::int64_t k0, const Object &v, std::int64_t l, const Object &c,
                                 std::size_t cap)
{
    auto rel = hj_modeling(k0, v, l, c);
    const auto &P = *product_factor(*rel.D);
    LawReport rep;
    const auto F = rel.C->hom(rel.c1, rel.c2, cap);
    const auto G = rel.D->hom(rel.d2, rel.d3, cap);
    if (!F.empty() && G.size() > cap / F.size())
        throw CapExceeded("concatenation check has more than " + std::to_string(cap) + " pairs");
    for (const auto &p : G) {
        const auto pc = product_morph_coordinates(*rel.D, p);
        const auto g = rel.psi(p);
        for (const auto &f : F) {
            const auto phc = product_morph_coordinates(*rel.D, rel.phi(f, p));
            Payload left;
            for (std::size_t i = 0; i < pc.size(); ++i) {
                auto part = P.compose(pc[i].second, phc[i].second);
                left.insert(left.end(), part.data.begin(), part.data.end());
            }
            ++rep.checks;
            auto right = rel.C->compose(g, f);
            if (left != right.data)
                rep.record("concatenation differs from f.psi(p) at f = " + rel.C->format(f) + ", p = " +
                           rel.D->format(p));
        }
    }
    return rep;
}

Object hj_full_alphabet(std::int64_t k)
{
    std::vector<std::int64_t> v;
    for (std::int64_t i = 1; i <= k + 1; ++i)
        v.push_back(i);
    return hj_alphabet_object(k, v);
}

namespace {

std::optional<Witness> try_search(const Functor &delta, const Object &a, const Object &b, const BigInt &r,
                                  const ProviderOptions &opts)
{
    if (r > 1'000'000)
        return std::nullopt;
    const auto &cat = *delta.dom();
    std::vector<Object> pool;
    for (auto &c : cat.objects(opts.search_pool))
        if (cat.hom_count(b, c) > 0)
            pool.push_back(std::move(c));
    try {
        auto c = search_p_witness(delta, a, b, static_cast<unsigned>(r), pool, opts.search_budget);
        if (!c)
            return std::nullopt;
        return Witness{*c, "search",
                       json{{"theorem", "search"}, {"functor", delta.id()}, {"pool_size", pool.size()}, {"c", fmt(*c)}}};
    } catch (const BudgetRefusal &) {
        return std::nullopt;
    }
}

bool injective_on(const Functor &delta, const Object &a, const Object &b)
{
    const auto &cat = *delta.dom();
    return cat.hom_count(a, b) == image_of_hom(delta, a, b).size();
}

std::vector<BigInt> product_ramsey_impl(const std::vector<std::int64_t> &k, const std::vector<std::int64_t> &p,
                                        const BigInt &r, json *trace);

WitnessProvider leaf_provider(FunctorPtr delta, const ProviderOptions &opts)
{
    const auto id = delta->id();
    if (id == "dR")
        return [delta](const Object &a, const Object &b, const BigInt &r) {
            return fp_to_p_construct(*delta, a, b, r, r_fp_witness);
        };
    if (id == "dT")
        return [delta](const Object &a, const Object &b, const BigInt &r) {
            return fp_to_p_construct(*delta, a, b, r, [](const FpProblem &inst) {
                return tree_fp_witness(inst, [](const auto &k, const auto &p, const BigInt &rr) {
                    return product_ramsey_impl(k, p, rr, nullptr);
                });
            });
        };
    if (id == "dP" || id == "dP~") {
        const bool mirror = id == "dP~";
        return [delta, opts, mirror](const Object &a, const Object &b, const BigInt &r) -> Witness {
            if (a.data.at(1) == 1 && b.data.at(1) == 2 && a.data[0] >= 2) {
                auto c = p_pigeonhole_witness(a.data[0], b.data[0], r, mirror);
                return Witness{c, "constructed",
                               json{{"theorem", "p_pigeonhole"}, {"m", c.data[0]}, {"c", fmt(c)}}};
            }
            if (injective_on(*delta, a, b))
                return trivial_witness(b, "fibers are singletons");
            if (auto w = try_search(*delta, a, b, r, opts))
                return *w;
            throw Unsupported("no construction for " + delta->id() + " at " + fmt(a) + ", " + fmt(b));
        };
    }
    if (id.rfind("dHJ", 0) == 0) {
        const auto k0 = std::stoll(id.substr(3));
        return [delta, opts, k0](const Object &a, const Object &b, const BigInt &r) -> Witness {
            if (!hj_is_alphabet(a) || hj_is_alphabet(b))
                return trivial_witness(b, "the functor is the identity on this hom-set");
            const auto l = b.data.at(1);
            if (l == 0 || injective_on(*delta, a, b))
                return trivial_witness(b, "fibers are singletons");
            const auto k1 = hj_alphabet_size(a);
            auto prodP = product_category(p_category(false));
            Coordinates d1, d2;
            for (std::int64_t i = 1; i <= l; ++i) {
                d1.emplace_back(i, p_object(k1, 1));
                d2.emplace_back(i, p_object(3, 2));
            }
            auto dP = p_partial(false);
            auto prod_dP = product_functor(dP);
            auto coordinate = default_provider(dP, opts);
            WitnessProvider delta_witness = [prodP, dP, coordinate](const Object &x, const Object &y,
                                                                   const BigInt &rr) {
                return product_witness(
                    *prodP, [dP](std::int64_t) { return dP; },
                    [coordinate](std::int64_t) { return coordinate; }, x, y, rr);
            };
            auto w = modeling_transfer([k0, a, l](const Object &d3) { return hj_modeling(k0, a, l, d3); },
                                       delta_witness, product_object(*prodP, d1), product_object(*prodP, d2), r,
                                       delta.get(), prod_dP.get(), opts);
            return w;
        };
    }
    return [delta, opts](const Object &a, const Object &b, const BigInt &r) -> Witness {
        if (injective_on(*delta, a, b))
            return trivial_witness(b, "fibers are singletons");
        if (auto w = try_search(*delta, a, b, r, opts))
            return *w;
        throw Unsupported("no construction for " + delta->id() + " at " + fmt(a) + ", " + fmt(b));
    };
}

} // namespace

WitnessProvider default_provider(FunctorPtr delta, const ProviderOptions &opts)
{
    if (is_identity_functor(*delta))
        return [](const Object &, const Object &b, const BigInt &) { return trivial_witness(b, "identity functor"); };
    if (auto pw = as_power(*delta)) {
        auto base = default_provider(pw->base, opts);
        return [pw = *pw, base](const Object &a, const Object &b, const BigInt &r) {
            return power_witness(pw.base, pw.n, a, b, r, base);
        };
    }
    if (auto cp = as_composite(*delta)) {
        // The inner functor plays γ (frank), the outer one δ at (γa, γb).
        auto for_delta = default_provider(cp->outer, opts);
        auto for_gamma = default_provider(cp->inner, opts);
        return [cp = *cp, for_delta, for_gamma](const Object &a, const Object &b, const BigInt &r) {
            return composition_witness(*cp.inner, a, b, r, for_delta, for_gamma);
        };
    }
    if (auto pp = as_product_functor(*delta)) {
        auto dom = delta->dom();
        return [pp = *pp, dom, opts](const Object &a, const Object &b, const BigInt &r) {
            return product_witness(
                *dom, [&pp](std::int64_t i) { return pp.at(i); },
                [&pp, &opts](std::int64_t i) { return default_provider(pp.at(i), opts); }, a, b, r);
        };
    }
    auto leaf = leaf_provider(delta, opts);
    if (!opts.prefer_search)
        return leaf;
    return [delta, opts, leaf](const Object &a, const Object &b, const BigInt &r) {
        if (auto w = try_search(*delta, a, b, r, opts))
            return *w;
        return leaf(a, b, r);
    };
}

namespace {

std::vector<BigInt> product_ramsey_impl(const std::vector<std::int64_t> &k, const std::vector<std::int64_t> &p,
                                        const BigInt &r, json *trace)
{
    if (k.empty() || k.size() != p.size())
        throw PreconditionViolation("k and p must be non-empty and of equal length");
    auto prodR = product_category(r_category());
    Coordinates a, b;
    std::int64_t K = 0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] < 0 || k[i] > p[i])
            throw PreconditionViolation("product Ramsey numbers need 0 <= k_i <= p_i");
        a.emplace_back(static_cast<std::int64_t>(i), r_object(k[i]));
        b.emplace_back(static_cast<std::int64_t>(i), r_object(p[i]));
        K = std::max(K, k[i]);
    }
    auto delta = product_functor(r_partial());
    auto w = power_witness(delta, static_cast<unsigned>(K), product_object(*prodR, a), product_object(*prodR, b), r,
                           default_provider(delta));
    if (trace)
        *trace = w.trace;
    std::vector<BigInt> q;
    for (const auto &[i, o] : product_coordinates(*prodR, w.c))
        q.push_back(o.data.at(0));
    return q;
}

} // namespace

std::vector<BigInt> product_ramsey_numbers(const std::vector<std::int64_t> &k, const std::vector<std::int64_t> &p,
                                           const BigInt &r, json *trace)
{
    return product_ramsey_impl(k, p, r, trace);
}

MinimalQ minimal_product_q(const std::vector<std::int64_t> &k, const std::vector<std::int64_t> &p, unsigned r,
                           std::int64_t bound, const SearchBudget &budget)
{
    if (k.empty() || k.size() != p.size())
        throw PreconditionViolation("k and p must be non-empty and of equal length");
    auto prodR = product_category(r_category());
    Coordinates a, b;
    for (std::size_t i = 0; i < k.size(); ++i) {
        a.emplace_back(static_cast<std::int64_t>(i), r_object(k[i]));
        b.emplace_back(static_cast<std::int64_t>(i), r_object(p[i]));
    }
    const auto A = product_object(*prodR, a);
    const auto B = product_object(*prodR, b);

    std::vector<std::vector<std::int64_t>> candidates{{}};
    for (std::size_t i = 0; i < k.size(); ++i) {
        std::vector<std::vector<std::int64_t>> next;
        for (const auto &c : candidates)
            for (auto q = p[i]; q <= bound; ++q) {
                auto d = c;
                d.push_back(q);
                next.push_back(std::move(d));
            }
        candidates = std::move(next);
    }
    auto sum = [](const std::vector<std::int64_t> &v) {
        std::int64_t s = 0;
        for (auto x : v)
            s += x;
        return s;
    };
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](const auto &x, const auto &y) { return sum(x) < sum(y) || (sum(x) == sum(y) && x < y); });
    auto dominates = [](const std::vector<std::int64_t> &x, const std::vector<std::int64_t> &y) {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] < y[i])
                return false;
        return true;
    };

    MinimalQ out;
    for (const auto &q : candidates) {
        if (std::any_of(out.minimal.begin(), out.minimal.end(), [&](const auto &m) { return dominates(q, m); }))
            continue;
        Coordinates c;
        for (std::size_t i = 0; i < q.size(); ++i)
            c.emplace_back(static_cast<std::int64_t>(i), r_object(q[i]));
        try {
            if (check_degree_at(*prodR, A, B, product_object(*prodR, c), r, 1, budget).passed())
                out.minimal.push_back(q);
        } catch (const BudgetRefusal &) {
            out.undetermined.push_back(q);
        }
    }
    std::sort(out.minimal.begin(), out.minimal.end());
    return out;
}

Witness fouche_witness(const OrderedTree &S, const OrderedTree &T, const BigInt &r)
{
    if (S.height() != T.height())
        return trivial_witness(tree_object(T), "heights differ, hom(S,T) is empty");
    auto delta = tree_partial();
    return power_witness(delta, static_cast<unsigned>(S.height() - 1), tree_object(S), tree_object(T), r,
                         default_provider(delta));
}

Witness hj_witness(std::int64_t k, std::int64_t l, const BigInt &r)
{
    if (k < 1 || l < 1 || r < 1)
        throw PreconditionViolation("hj_witness needs k, l, r >= 1");
    auto delta = hj_partial(k);
    return power_witness(delta, static_cast<unsigned>(k), hj_full_alphabet(k), hj_word_object(k, l), r,
                         default_provider(delta));
}

namespace {

BigInt big_from(const json &j)
{
    if (j.is_string())
        return BigInt(j.get<std::string>());
    if (j.is_number_unsigned())
        return BigInt(j.get<std::uint64_t>());
    if (j.is_number_integer())
        return BigInt(j.get<std::int64_t>());
    throw ParseError("expected an integer, got " + j.dump(), 0);
}

json big_json(const BigInt &v)
{
    if (v <= std::numeric_limits<std::int64_t>::max() && v >= 0)
        return static_cast<std::int64_t>(v);
    return v.str();
}

const json &need(const json &in, const char *key)
{
    if (!in.contains(key))
        throw ParseError(std::string("missing input '") + key + "'", 0);
    return in.at(key);
}

Construction with_witness(const std::string &theorem, FunctorPtr functor, const Object &a, const Object &b,
                          const BigInt &r, const json &inputs, const Witness &w)
{
    Construction c;
    c.theorem = theorem;
    c.functor = std::move(functor);
    c.a = a;
    c.b = b;
    c.c = w.c;
    c.r = r;
    c.inputs = inputs;
    c.trace = w.trace;
    c.trace["provenance"] = w.provenance;
    return c;
}

Construction fp_construction(const std::string &theorem, FunctorPtr functor, const Object &a, const Object &b,
                             const BigInt &r, const json &inputs, const FpOracle &oracle)
{
    FpProblem inst{a, b, image_of_hom(*functor, a, b), r};
    if (inst.s.empty())
        throw PreconditionViolation(hom_name(*functor->dom(), a, b) + " is empty; (FP) needs a non-empty s");
    auto choice = oracle(inst);
    Construction c;
    c.theorem = theorem;
    c.functor = functor;
    c.a = a;
    c.b = b;
    c.c = choice.c;
    c.r = r;
    c.inputs = inputs;
    c.trace = json{{"theorem", theorem},
                   {"s_size", inst.s.size()},
                   {"f_prime", fmt(choice.f_prime)},
                   {"g_prime", fmt(choice.g_prime)},
                   {"c", fmt(choice.c)},
                   {"oracle", choice.trace}};
    c.fp = inst;
    c.fp_choice = choice;
    return c;
}

FpOracle oracle_for(const std::string &functor_id)
{
    if (functor_id == "dR")
        return r_fp_witness;
    if (functor_id == "dT")
        return [](const FpProblem &inst) {
            return tree_fp_witness(inst, [](const auto &k, const auto &p, const BigInt &r) {
                return product_ramsey_numbers(k, p, r);
            });
        };
    throw Unsupported("no (FP) oracle for " + functor_id);
}

} // namespace

std::vector<std::string> construction_theorems()
{
    return {"p-pigeonhole", "r-fp", "tree-fp", "fp2p", "compose", "product", "modeling", "hj", "fouche",
            "product-ramsey"};
}

Construction run_construction(const std::string &theorem, const json &inputs, const ProviderOptions &base_opts)
{
    auto opts = base_opts;
    if (inputs.contains("search"))
        opts.prefer_search = inputs.at("search").get<bool>();
    const auto r = big_from(need(inputs, "r"));
    if (r < 0)
        throw PreconditionViolation("the number of colors must be non-negative");

    if (theorem == "p-pigeonhole") {
        const bool mirror = inputs.value("mirror", false);
        const auto k1 = need(inputs, "k1").get<std::int64_t>();
        const auto l = need(inputs, "l").get<std::int64_t>();
        auto c = p_pigeonhole_witness(k1, l, r, mirror);
        Witness w{c, "constructed", json{{"theorem", "p_pigeonhole"}, {"m", c.data[0]}, {"c", fmt(c)}}};
        return with_witness(theorem, p_partial(mirror), p_object(k1, 1, mirror), p_object(l, 2, mirror), r, inputs,
                            w);
    }
    if (theorem == "r-fp") {
        const auto k = need(inputs, "k").get<std::int64_t>();
        const auto l = need(inputs, "l").get<std::int64_t>();
        return fp_construction(theorem, r_partial(), r_object(k), r_object(l), r, inputs, r_fp_witness);
    }
    if (theorem == "tree-fp") {
        auto S = tree_object(OrderedTree::parse(need(inputs, "S").get<std::string>()));
        auto T = tree_object(OrderedTree::parse(need(inputs, "T").get<std::string>()));
        return fp_construction(theorem, tree_partial(), S, T, r, inputs, oracle_for("dT"));
    }
    if (theorem == "fp2p") {
        auto functor = functor_by_id(need(inputs, "functor").get<std::string>());
        const auto &dom = *functor->dom();
        auto a = dom.parse_object(need(inputs, "a").get<std::string>());
        auto b = dom.parse_object(need(inputs, "b").get<std::string>());
        auto w = fp_to_p_construct(*functor, a, b, r, oracle_for(functor->id()));
        return with_witness(theorem, functor, a, b, r, inputs, w);
    }
    if (theorem == "compose" || theorem == "product") {
        FunctorPtr functor;
        if (inputs.contains("functor"))
            functor = functor_by_id(inputs.at("functor").get<std::string>());
        else
            functor = compose_functors(functor_by_id(need(inputs, "gamma").get<std::string>()),
                                       functor_by_id(need(inputs, "delta").get<std::string>()));
        const auto &dom = *functor->dom();
        auto a = dom.parse_object(need(inputs, "a").get<std::string>());
        auto b = dom.parse_object(need(inputs, "b").get<std::string>());
        auto w = default_provider(functor, opts)(a, b, r);
        return with_witness(theorem, functor, a, b, r, inputs, w);
    }
    if (theorem == "modeling") {
        const auto k0 = need(inputs, "k0").get<std::int64_t>();
        const auto l = need(inputs, "l").get<std::int64_t>();
        auto v = hj_alphabet_object(k0, need(inputs, "v").get<std::vector<std::int64_t>>());
        auto functor = hj_partial(k0);
        auto w = default_provider(functor, opts)(v, hj_word_object(k0, l), r);
        return with_witness(theorem, functor, v, hj_word_object(k0, l), r, inputs, w);
    }
    if (theorem == "hj") {
        const auto k = need(inputs, "k").get<std::int64_t>();
        const auto l = need(inputs, "l").get<std::int64_t>();
        auto w = hj_witness(k, l, r);
        auto functor = functor_power(hj_partial(k), static_cast<unsigned>(k));
        return with_witness(theorem, functor, hj_full_alphabet(k), hj_word_object(k, l), r, inputs, w);
    }
    if (theorem == "fouche") {
        auto S = OrderedTree::parse(need(inputs, "S").get<std::string>());
        auto T = OrderedTree::parse(need(inputs, "T").get<std::string>());
        auto w = fouche_witness(S, T, r);
        auto n = S.height() == T.height() ? static_cast<unsigned>(S.height() - 1) : 0u;
        auto functor = n == 0 ? identity_functor(tree_category()) : functor_power(tree_partial(), n);
        return with_witness(theorem, functor, tree_object(S), tree_object(T), r, inputs, w);
    }
    if (theorem == "product-ramsey") {
        auto k = need(inputs, "k").get<std::vector<std::int64_t>>();
        auto p = need(inputs, "p").get<std::vector<std::int64_t>>();
        json trace;
        auto q = product_ramsey_numbers(k, p, r, &trace);
        auto prodR = product_category(r_category());
        Coordinates a, b, c;
        std::int64_t K = 0;
        json qs = json::array();
        for (std::size_t i = 0; i < k.size(); ++i) {
            auto idx = static_cast<std::int64_t>(i);
            a.emplace_back(idx, r_object(k[i]));
            b.emplace_back(idx, r_object(p[i]));
            c.emplace_back(idx, r_object(to_int64(q[i], "product Ramsey number")));
            qs.push_back(big_json(q[i]));
            K = std::max(K, k[i]);
        }
        auto functor = functor_power(product_functor(r_partial()), static_cast<unsigned>(K));
        Witness w{product_object(*prodR, c), "constructed", trace};
        auto out = with_witness(theorem, functor, product_object(*prodR, a), product_object(*prodR, b), r, inputs, w);
        out.trace["q"] = qs;
        return out;
    }
    throw ParseError("unknown theorem '" + theorem + "'", 0);
}

} // namespace catramsey
