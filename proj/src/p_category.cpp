#include <charconv>
#include <set>

#include "catramsey/categories.hpp"

namespace catramsey {

namespace {

std::string p_id(bool mirror) { return mirror ? "P~" : "P"; }

// Step functions [l] → [k] that are constant on [1,a], [a+1,b−1], [b,l] with
// 1 ≤ a < a+1 < b ≤ l and the given boundary values, ascending.
std::vector<Payload> step_functions(std::int64_t k, std::int64_t l, std::int64_t first, std::int64_t last)
{
    std::set<Payload> out;
    for (std::int64_t a = 1; a + 2 <= l; ++a)
        for (std::int64_t b = a + 2; b <= l; ++b)
            for (std::int64_t mid = 1; mid <= k; ++mid) {
                Payload x(static_cast<std::size_t>(l));
                for (std::int64_t j = 1; j <= l; ++j)
                    x[static_cast<std::size_t>(j - 1)] = j <= a ? first : (j < b ? mid : last);
                out.insert(std::move(x));
            }
    return {out.begin(), out.end()};
}

class PCategory final : public Category {
public:
    explicit PCategory(bool mirror) : mirror_(mirror) {}

    std::string id() const override { return p_id(mirror_); }
    std::string encoding() const override { return mirror_ ? "P~/1" : "P/1"; }

    bool is_object(const Object &o) const override
    {
        if (o.category != id() || o.data.size() != 2)
            return false;
        auto k = o.data[0], i = o.data[1];
        if (i == 0 || i == 2)
            return k >= 1;
        return i == 1 && k >= 2;
    }

    bool for_each_hom(const Object &a, const Object &b, const HomVisitor &visit) const override
    {
        check(a);
        check(b);
        const auto ka = a.data[0], ia = a.data[1], kb = b.data[0], ib = b.data[1];
        if (ia < 2 && a == b)
            return visit(identity(a));
        if (ib != 2)
            return true;
        if (ia == 2)
            return surjections(a, b, visit);
        auto [first, last] = boundary(ka, ia);
        for (auto &x : step_functions(ka, kb, first, last))
            if (!visit(Morphism{a, b, std::move(x)}))
                return false;
        return true;
    }

    Morphism compose(const Morphism &g, const Morphism &f) const override
    {
        require_composable(g, f);
        if (is_bare_identity(f))
            return g;
        if (is_bare_identity(g))
            return f;
        // Reverse-order composition: g·f = f∘g for the underlying functions.
        Payload out;
        out.reserve(g.data.size());
        for (auto j : g.data)
            out.push_back(f.data.at(static_cast<std::size_t>(j - 1)));
        return Morphism{f.source, g.target, std::move(out)};
    }

    Morphism identity(const Object &a) const override
    {
        check(a);
        if (a.data[1] < 2)
            return Morphism{a, a, {}};
        Payload p;
        for (std::int64_t j = 1; j <= a.data[0]; ++j)
            p.push_back(j);
        return Morphism{a, a, p};
    }

    std::vector<Object> objects(std::int64_t budget) const override
    {
        std::vector<Object> out;
        for (std::int64_t k = 1; k <= budget; ++k)
            for (std::int64_t i = 0; i <= 2; ++i) {
                Object o{id(), {k, i}};
                if (is_object(o))
                    out.push_back(o);
            }
        return out;
    }

    Object parse_object(std::string_view text) const override
    {
        // "(k,i)"
        if (text.size() < 5 || text.front() != '(' || text.back() != ')')
            throw ParseError("P objects are written (k,i)", 0);
        auto comma = text.find(',');
        if (comma == std::string_view::npos)
            throw ParseError("P objects are written (k,i)", 0);
        std::int64_t k = 0, i = 0;
        auto r1 = std::from_chars(text.data() + 1, text.data() + comma, k);
        auto r2 = std::from_chars(text.data() + comma + 1, text.data() + text.size() - 1, i);
        if (r1.ec != std::errc() || r2.ec != std::errc() || r1.ptr != text.data() + comma ||
            r2.ptr != text.data() + text.size() - 1)
            throw ParseError("P objects are written (k,i)", 0);
        Object o{id(), {k, i}};
        if (!is_object(o))
            throw ParseError("(" + std::to_string(k) + "," + std::to_string(i) + ") is not an object of P", 0);
        return o;
    }

    std::string format(const Object &o) const override
    {
        return "(" + std::to_string(o.data.at(0)) + "," + std::to_string(o.data.at(1)) + ")";
    }

private:
    bool mirror_;

    void check(const Object &o) const
    {
        if (!is_object(o))
            throw DomainMismatch("not an object of " + id() + ": " + encode(o));
    }

    static bool is_bare_identity(const Morphism &m)
    {
        return m.source == m.target && m.source.data.at(1) < 2;
    }

    std::pair<std::int64_t, std::int64_t> boundary(std::int64_t k, std::int64_t i) const
    {
        if (i == 0)
            return {k, k};
        return mirror_ ? std::make_pair(k - 1, k) : std::make_pair(k, k - 1);
    }

    // Non-decreasing surjections [m] → [l] with unit steps, ascending.
    static bool surjections(const Object &a, const Object &b, const HomVisitor &visit)
    {
        const auto l = a.data[0], m = b.data[0];
        if (l > m)
            return true;
        Payload p(static_cast<std::size_t>(m));
        bool go = true;
        std::function<void(std::int64_t)> rec = [&](std::int64_t j) {
            if (!go)
                return;
            if (j == m) {
                if (p.back() == l)
                    go = visit(Morphism{a, b, p});
                return;
            }
            auto prev = p[static_cast<std::size_t>(j - 1)];
            // Remaining positions must still be able to reach l.
            for (std::int64_t step = 0; step <= 1 && go; ++step) {
                auto v = prev + step;
                if (v > l || l - v > m - 1 - j)
                    continue;
                p[static_cast<std::size_t>(j)] = v;
                rec(j + 1);
            }
        };
        p[0] = 1;
        rec(1);
        return go;
    }
};

class PPartial final : public Functor {
public:
    PPartial(CategoryPtr p, bool mirror) : p_(std::move(p)), mirror_(mirror) {}

    std::string id() const override { return mirror_ ? "dP~" : "dP"; }
    CategoryPtr dom() const override { return p_; }
    CategoryPtr cod() const override { return p_; }

    Object map_obj(const Object &o) const override
    {
        if (o.data.at(1) == 1)
            return Object{o.category, {o.data[0] - 1, 0}};
        return o;
    }

    Morphism map_morph(const Morphism &m) const override
    {
        Morphism out{map_obj(m.source), map_obj(m.target), m.data};
        if (m.source.data.at(1) == 1 && m.target.data.at(1) == 2) {
            auto cap = m.source.data[0] - 1;
            for (auto &v : out.data)
                v = std::min(v, cap);
        }
        return out;
    }

    bool has_frank_lift() const override { return true; }

    std::optional<Object> frank_lift(const Object &a, const Object &b_prime) const override
    {
        switch (b_prime.data.at(1)) {
        case 2:
            return b_prime;
        case 0:
            return map_obj(a) == b_prime ? a : b_prime;
        default:
            // ∂_P never produces an object (k,1).
            return std::nullopt;
        }
    }

private:
    CategoryPtr p_;
    bool mirror_;
};

} // namespace

CategoryPtr p_category(bool mirror)
{
    static const CategoryPtr plain = std::make_shared<PCategory>(false);
    static const CategoryPtr mirrored = std::make_shared<PCategory>(true);
    return mirror ? mirrored : plain;
}

FunctorPtr p_partial(bool mirror)
{
    static const FunctorPtr plain = std::make_shared<PPartial>(p_category(false), false);
    static const FunctorPtr mirrored = std::make_shared<PPartial>(p_category(true), true);
    return mirror ? mirrored : plain;
}

Object p_object(std::int64_t k, std::int64_t i, bool mirror)
{
    Object o{p_id(mirror), {k, i}};
    if (!p_category(mirror)->is_object(o))
        throw PreconditionViolation("(" + std::to_string(k) + "," + std::to_string(i) + ") is not an object of P");
    return o;
}

} // namespace catramsey
