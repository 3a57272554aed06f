#include "catramsey/laws.hpp"

#include <algorithm>
#include <map>

namespace catramsey {

void LawReport::record(std::string what)
{
    ++violation_count;
    if (violations.size() < 32)
        violations.push_back(std::move(what));
}

void LawReport::merge(const LawReport &other)
{
    checks += other.checks;
    violation_count += other.violation_count;
    for (const auto &v : other.violations)
        if (violations.size() < 32)
            violations.push_back(v);
}

namespace {

using HomTable = std::map<std::pair<std::size_t, std::size_t>, std::vector<Morphism>>;

HomTable hom_table(const Category &cat, const std::vector<Object> &objects, std::size_t cap)
{
    HomTable table;
    for (std::size_t i = 0; i < objects.size(); ++i)
        for (std::size_t j = 0; j < objects.size(); ++j) {
            auto h = cat.hom(objects[i], objects[j], cap);
            if (!h.empty())
                table.emplace(std::make_pair(i, j), std::move(h));
        }
    return table;
}

const std::vector<Morphism> &lookup(const HomTable &t, std::size_t i, std::size_t j)
{
    static const std::vector<Morphism> empty;
    auto it = t.find({i, j});
    return it == t.end() ? empty : it->second;
}

} // namespace

LawReport check_category_laws(const Category &cat, const std::vector<Object> &objects, std::size_t cap)
{
    LawReport report;
    auto table = hom_table(cat, objects, cap);
    const std::size_t n = objects.size();

    for (std::size_t i = 0; i < n; ++i) {
        auto id = cat.identity(objects[i]);
        const auto &self = lookup(table, i, i);
        ++report.checks;
        if (!std::binary_search(self.begin(), self.end(), id))
            report.record("identity at " + cat.format(objects[i]) + " is not in its hom-set");
    }

    for (const auto &[key, fs] : table) {
        auto id_src = cat.identity(objects[key.first]);
        auto id_tgt = cat.identity(objects[key.second]);
        for (const auto &f : fs) {
            report.checks += 2;
            if (cat.compose(f, id_src) != f)
                report.record("right identity fails for " + cat.format(f));
            if (cat.compose(id_tgt, f) != f)
                report.record("left identity fails for " + cat.format(f));
        }
    }

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const auto &fs = lookup(table, x, y);
            if (fs.empty())
                continue;
            for (std::size_t z = 0; z < n; ++z) {
                const auto &gs = lookup(table, y, z);
                if (gs.empty())
                    continue;
                const auto &xz = lookup(table, x, z);
                std::vector<std::vector<Morphism>> gf(gs.size());
                for (std::size_t gi = 0; gi < gs.size(); ++gi)
                    for (const auto &f : fs) {
                        auto c = cat.compose(gs[gi], f);
                        ++report.checks;
                        if (c.source != objects[x] || c.target != objects[z] ||
                            !std::binary_search(xz.begin(), xz.end(), c))
                            report.record("composite " + cat.format(gs[gi]) + " · " + cat.format(f) +
                                          " is not a morphism of " + hom_name(cat, objects[x], objects[z]));
                        gf[gi].push_back(std::move(c));
                    }
                for (std::size_t w = 0; w < n; ++w) {
                    const auto &hs = lookup(table, z, w);
                    for (const auto &h : hs)
                        for (std::size_t gi = 0; gi < gs.size(); ++gi) {
                            auto hg = cat.compose(h, gs[gi]);
                            for (std::size_t fi = 0; fi < fs.size(); ++fi) {
                                ++report.checks;
                                if (cat.compose(h, gf[gi][fi]) != cat.compose(hg, fs[fi]))
                                    report.record("associativity fails for (" + cat.format(h) + ", " +
                                                  cat.format(gs[gi]) + ", " + cat.format(fs[fi]) + ")");
                            }
                        }
                }
            }
        }
    return report;
}

LawReport check_functor_laws(const Functor &F, const std::vector<Object> &objects, std::size_t cap)
{
    LawReport report;
    const auto &dom = *F.dom();
    const auto &cod = *F.cod();
    auto table = hom_table(dom, objects, cap);
    const std::size_t n = objects.size();

    for (const auto &o : objects) {
        ++report.checks;
        auto fo = F.map_obj(o);
        if (!cod.is_object(fo)) {
            report.record(F.id() + " sends " + dom.format(o) + " outside its codomain");
            continue;
        }
        if (F.map_morph(dom.identity(o)) != cod.identity(fo))
            report.record(F.id() + " does not preserve the identity at " + dom.format(o));
    }

    std::map<std::size_t, Object> images;
    for (std::size_t i = 0; i < n; ++i)
        images.emplace(i, F.map_obj(objects[i]));

    std::map<std::pair<std::size_t, std::size_t>, std::vector<Morphism>> mapped;
    for (const auto &[key, fs] : table) {
        auto &out = mapped[key];
        auto target = cod.hom(images.at(key.first), images.at(key.second), cap);
        for (const auto &f : fs) {
            auto ff = F.map_morph(f);
            ++report.checks;
            if (ff.source != images.at(key.first) || ff.target != images.at(key.second))
                report.record(F.id() + " breaks source/target of " + dom.format(f));
            else if (!std::binary_search(target.begin(), target.end(), ff))
                report.record(F.id() + " maps " + dom.format(f) + " to a non-morphism " + cod.format(ff));
            out.push_back(std::move(ff));
        }
    }

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const auto &fs = lookup(table, x, y);
            if (fs.empty())
                continue;
            const auto &ffs = mapped.at({x, y});
            for (std::size_t z = 0; z < n; ++z) {
                const auto &gs = lookup(table, y, z);
                if (gs.empty())
                    continue;
                const auto &fgs = mapped.at({y, z});
                for (std::size_t gi = 0; gi < gs.size(); ++gi)
                    for (std::size_t fi = 0; fi < fs.size(); ++fi) {
                        ++report.checks;
                        auto lhs = F.map_morph(dom.compose(gs[gi], fs[fi]));
                        if (lhs != cod.compose(fgs[gi], ffs[fi]))
                            report.record(F.id() + " does not preserve the composite " + dom.format(gs[gi]) +
                                          " · " + dom.format(fs[fi]));
                    }
            }
        }
    return report;
}

namespace {

FrankResult compare_images(const Functor &F, const Object &a, const Object &b, const Object &b_prime,
                           std::size_t cap)
{
    FrankResult r;
    r.witness = b;
    if (F.map_obj(b) != b_prime) {
        r.reason = "lift " + F.dom()->format(b) + " maps to " + F.cod()->format(F.map_obj(b)) + ", not " +
                   F.cod()->format(b_prime);
        return r;
    }
    auto image = image_of_hom(F, a, b, cap);
    auto target = F.cod()->hom(F.map_obj(a), b_prime, cap);
    r.image_size = image.size();
    r.target_size = target.size();
    if (image != target) {
        r.reason = "image of " + hom_name(*F.dom(), a, b) + " has " + std::to_string(image.size()) +
                   " morphisms, " + hom_name(*F.cod(), F.map_obj(a), b_prime) + " has " +
                   std::to_string(target.size());
        return r;
    }
    r.pass = true;
    return r;
}

} // namespace

FrankResult check_frank_at(const Functor &F, const Object &a, const Object &b_prime, std::size_t cap)
{
    if (!F.has_frank_lift())
        throw Unsupported("functor " + F.id() + " has no frank lift");
    auto b = F.frank_lift(a, b_prime);
    if (!b) {
        FrankResult r;
        r.reason = "no object of " + F.dom()->id() + " maps to " + F.cod()->format(b_prime);
        return r;
    }
    return compare_images(F, a, *b, b_prime, cap);
}

FrankResult check_double_lift(const Functor &F, const Object &d1, const Object &d2, std::size_t cap)
{
    if (!F.has_frank_lift())
        throw Unsupported("functor " + F.id() + " has no frank lift");
    if (F.dom()->id() != F.cod()->id())
        throw Unsupported("double lift is only defined for endofunctors, not " + F.id());
    auto c1 = F.frank_lift(d1, d1);
    FrankResult r;
    if (!c1 || F.map_obj(*c1) != d1) {
        r.reason = "no lift of " + F.cod()->format(d1);
        return r;
    }
    auto c2 = F.frank_lift(*c1, d2);
    if (!c2) {
        r.reason = "no lift of " + F.cod()->format(d2);
        return r;
    }
    return compare_images(F, *c1, *c2, d2, cap);
}

} // namespace catramsey
