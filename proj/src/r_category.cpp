#include <charconv>

#include "catramsey/categories.hpp"

namespace catramsey {

namespace {

const std::string r_id = "R";

std::int64_t parse_natural(std::string_view text, std::string_view what)
{
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v < 0)
        throw ParseError("expected a natural number for " + std::string(what) + ", got '" + std::string(text) + "'",
                         static_cast<std::size_t>(ptr - text.data()));
    return v;
}

BigInt binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || k > n)
        return 0;
    BigInt out = 1;
    for (std::int64_t i = 1; i <= k; ++i)
        out = out * (n - k + i) / i;
    return out;
}

class RCategory final : public Category {
public:
    std::string id() const override { return r_id; }
    std::string encoding() const override { return "R/1"; }

    bool is_object(const Object &o) const override
    {
        return o.category == r_id && o.data.size() == 1 && o.data[0] >= 0;
    }

    bool for_each_hom(const Object &a, const Object &b, const HomVisitor &visit) const override
    {
        check(a);
        check(b);
        const auto m = a.data[0], n = b.data[0];
        if (m > n)
            return true;
        Payload x(static_cast<std::size_t>(m));
        for (std::int64_t i = 0; i < m; ++i)
            x[static_cast<std::size_t>(i)] = i + 1;
        while (true) {
            if (!visit(Morphism{a, b, x}))
                return false;
            // Next m-subset in lexicographic order.
            std::int64_t i = m - 1;
            while (i >= 0 && x[static_cast<std::size_t>(i)] == n - m + i + 1)
                --i;
            if (i < 0)
                return true;
            ++x[static_cast<std::size_t>(i)];
            for (auto j = i + 1; j < m; ++j)
                x[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j - 1)] + 1;
        }
    }

    BigInt hom_count(const Object &a, const Object &b) const override
    {
        check(a);
        check(b);
        return binomial(b.data[0], a.data[0]);
    }

    Morphism compose(const Morphism &g, const Morphism &f) const override
    {
        require_composable(g, f);
        Payload out;
        out.reserve(f.data.size());
        for (auto v : f.data)
            out.push_back(g.data.at(static_cast<std::size_t>(v - 1)));
        return Morphism{f.source, g.target, std::move(out)};
    }

    Morphism identity(const Object &a) const override
    {
        check(a);
        Payload x;
        for (std::int64_t i = 1; i <= a.data[0]; ++i)
            x.push_back(i);
        return Morphism{a, a, x};
    }

    std::vector<Object> objects(std::int64_t budget) const override
    {
        std::vector<Object> out;
        for (std::int64_t n = 0; n <= budget; ++n)
            out.push_back(r_object(n));
        return out;
    }

    Object parse_object(std::string_view text) const override
    {
        return r_object(parse_natural(text, "an object of R"));
    }

    std::string format(const Object &o) const override { return std::to_string(o.data.at(0)); }

    std::string format(const Morphism &m) const override
    {
        std::string out = "({";
        for (std::size_t i = 0; i < m.data.size(); ++i)
            out += (i ? "," : "") + std::to_string(m.data[i]);
        return out + "}," + std::to_string(m.target.data.at(0)) + ")";
    }

private:
    void check(const Object &o) const
    {
        if (!is_object(o))
            throw DomainMismatch("not an object of R: " + encode(o));
    }
};

class RPartial final : public Functor {
public:
    explicit RPartial(CategoryPtr r) : r_(std::move(r)) {}

    std::string id() const override { return "dR"; }
    CategoryPtr dom() const override { return r_; }
    CategoryPtr cod() const override { return r_; }

    Object map_obj(const Object &o) const override { return r_object(std::max<std::int64_t>(o.data.at(0) - 1, 0)); }

    Morphism map_morph(const Morphism &m) const override
    {
        Payload x = m.data;
        if (!x.empty())
            x.pop_back();
        return Morphism{map_obj(m.source), map_obj(m.target), std::move(x)};
    }

    bool has_frank_lift() const override { return true; }

    std::optional<Object> frank_lift(const Object &, const Object &b_prime) const override
    {
        return r_object(b_prime.data.at(0) + 1);
    }

private:
    CategoryPtr r_;
};

} // namespace

CategoryPtr r_category()
{
    static const CategoryPtr cat = std::make_shared<RCategory>();
    return cat;
}

FunctorPtr r_partial()
{
    static const FunctorPtr f = std::make_shared<RPartial>(r_category());
    return f;
}

Object r_object(std::int64_t n)
{
    if (n < 0)
        throw PreconditionViolation("R objects are natural numbers, got " + std::to_string(n));
    return Object{r_id, {n}};
}

Morphism r_morph(std::vector<std::int64_t> x, std::int64_t m, std::int64_t n)
{
    return Morphism{r_object(m), r_object(n), std::move(x)};
}

} // namespace catramsey
