#include <algorithm>
#include <charconv>
#include <mutex>

#include "catramsey/categories.hpp"

namespace catramsey {

namespace {

std::string hj_id(std::int64_t k0) { return "HJ" + std::to_string(k0); }

std::vector<std::int64_t> parse_list(std::string_view text)
{
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos)
            comma = text.size();
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + comma, v);
        if (ec != std::errc() || ptr != text.data() + comma)
            throw ParseError("expected an integer list", pos);
        out.push_back(v);
        pos = comma + 1;
    }
    return out;
}

class HJCategory final : public Category {
public:
    explicit HJCategory(std::int64_t k0) : k0_(k0) {}

    std::string id() const override { return hj_id(k0_); }
    std::string encoding() const override { return "HJ/1(" + std::to_string(k0_) + ")"; }

    bool is_object(const Object &o) const override
    {
        if (o.category != id() || o.data.empty())
            return false;
        if (o.data[0] == 0)
            return o.data.size() == 2 && o.data[1] >= 0;
        if (o.data[0] != 1 || o.data.size() != static_cast<std::size_t>(k0_ + 2))
            return false;
        auto k = *std::max_element(o.data.begin() + 1, o.data.end());
        for (std::int64_t v = 1; v <= k; ++v)
            if (std::find(o.data.begin() + 1, o.data.end(), v) == o.data.end())
                return false;
        return std::all_of(o.data.begin() + 1, o.data.end(), [](auto v) { return v >= 1; });
    }

    bool for_each_hom(const Object &a, const Object &b, const HomVisitor &visit) const override
    {
        check(a);
        check(b);
        if (hj_is_alphabet(a) && a == b)
            return visit(identity(a));
        if (hj_is_alphabet(b))
            return true;
        const auto l2 = b.data[1];
        Payload g(static_cast<std::size_t>(l2));
        if (hj_is_alphabet(a)) {
            const auto k = hj_alphabet_size(a);
            // All words [l2] → [k], lexicographic.
            std::fill(g.begin(), g.end(), 1);
            while (true) {
                if (!visit(Morphism{a, b, g}))
                    return false;
                std::int64_t i = l2 - 1;
                while (i >= 0 && g[static_cast<std::size_t>(i)] == k)
                    g[static_cast<std::size_t>(i--)] = 1;
                if (i < 0)
                    return true;
                ++g[static_cast<std::size_t>(i)];
            }
        }
        const auto l1 = a.data[1];
        if (l1 > l2)
            return true;
        // g : [l2] → [−k0, l1] hitting every element of [l1], lexicographic.
        std::vector<int> hits(static_cast<std::size_t>(l1 + 1), 0);
        std::int64_t missing = l1;
        bool go = true;
        std::function<void(std::int64_t)> rec = [&](std::int64_t j) {
            if (!go)
                return;
            if (j == l2) {
                go = visit(Morphism{a, b, g});
                return;
            }
            for (std::int64_t v = -k0_; v <= l1 && go; ++v) {
                bool fresh = v >= 1 && hits[static_cast<std::size_t>(v)] == 0;
                if (missing - (fresh ? 1 : 0) > l2 - j - 1)
                    continue;
                g[static_cast<std::size_t>(j)] = v;
                if (v >= 1) {
                    if (fresh)
                        --missing;
                    ++hits[static_cast<std::size_t>(v)];
                }
                rec(j + 1);
                if (v >= 1) {
                    --hits[static_cast<std::size_t>(v)];
                    if (fresh)
                        ++missing;
                }
            }
        };
        rec(0);
        return go;
    }

    BigInt hom_count(const Object &a, const Object &b) const override
    {
        check(a);
        check(b);
        if (hj_is_alphabet(a) && hj_is_alphabet(b))
            return a == b ? 1 : 0;
        if (hj_is_alphabet(b))
            return 0;
        if (hj_is_alphabet(a))
            return boost::multiprecision::pow(BigInt(hj_alphabet_size(a)), static_cast<unsigned>(b.data[1]));
        return Category::hom_count(a, b);
    }

    Morphism compose(const Morphism &g, const Morphism &f) const override
    {
        require_composable(g, f);
        if (hj_is_alphabet(f.source) && f.source == f.target)
            return g;
        if (hj_is_alphabet(g.source))
            return f;
        Payload out;
        out.reserve(g.data.size());
        const bool from_alphabet = hj_is_alphabet(f.source);
        for (auto j : g.data) {
            if (j >= 1)
                out.push_back(f.data.at(static_cast<std::size_t>(j - 1)));
            else if (from_alphabet)
                out.push_back(f.source.data.at(static_cast<std::size_t>(1 + j + k0_)));
            else
                out.push_back(j);
        }
        return Morphism{f.source, g.target, std::move(out)};
    }

    Morphism identity(const Object &a) const override
    {
        check(a);
        if (hj_is_alphabet(a))
            return Morphism{a, a, {}};
        Payload g;
        for (std::int64_t j = 1; j <= a.data[1]; ++j)
            g.push_back(j);
        return Morphism{a, a, g};
    }

    std::vector<Object> objects(std::int64_t budget) const override
    {
        std::vector<Object> out;
        for (std::int64_t l = 0; l <= budget; ++l)
            out.push_back(hj_word_object(k0_, l));
        // Every surjection [−k0,0] → [k], k ≤ k0+1.
        const auto n = k0_ + 1;
        std::vector<std::int64_t> v(static_cast<std::size_t>(n), 1);
        while (true) {
            Object o{id(), {1}};
            o.data.insert(o.data.end(), v.begin(), v.end());
            if (is_object(o))
                out.push_back(o);
            std::int64_t i = n - 1;
            while (i >= 0 && v[static_cast<std::size_t>(i)] == n)
                v[static_cast<std::size_t>(i--)] = 1;
            if (i < 0)
                break;
            ++v[static_cast<std::size_t>(i)];
        }
        return out;
    }

    Object parse_object(std::string_view text) const override
    {
        if (text.size() > 3 && text.substr(0, 2) == "v(" && text.back() == ')') {
            auto v = parse_list(text.substr(2, text.size() - 3));
            Object o{id(), {1}};
            o.data.insert(o.data.end(), v.begin(), v.end());
            if (!is_object(o))
                throw ParseError("not a surjection onto an initial segment of length " +
                                     std::to_string(k0_ + 1) + ": " + std::string(text),
                                 0);
            return o;
        }
        auto v = parse_list(text);
        if (v.size() != 1 || v[0] < 0)
            throw ParseError("HJ objects are l or v(v(-k0),...,v(0))", 0);
        return hj_word_object(k0_, v[0]);
    }

    std::string format(const Object &o) const override
    {
        if (!hj_is_alphabet(o))
            return std::to_string(o.data.at(1));
        std::string out = "v(";
        for (std::size_t i = 1; i < o.data.size(); ++i)
            out += (i > 1 ? "," : "") + std::to_string(o.data[i]);
        return out + ")";
    }

private:
    std::int64_t k0_;

    void check(const Object &o) const
    {
        if (!is_object(o))
            throw DomainMismatch("not an object of " + id() + ": " + encode(o));
    }
};

class HJPartial final : public Functor {
public:
    HJPartial(CategoryPtr cat, std::int64_t k0) : cat_(std::move(cat)), k0_(k0) {}

    std::string id() const override { return "dHJ" + std::to_string(k0_); }
    CategoryPtr dom() const override { return cat_; }
    CategoryPtr cod() const override { return cat_; }

    Object map_obj(const Object &o) const override
    {
        if (!hj_is_alphabet(o))
            return o;
        Object out = o;
        auto cap = hj_cap(hj_alphabet_size(o));
        for (std::size_t i = 1; i < out.data.size(); ++i)
            out.data[i] = std::min(out.data[i], cap);
        return out;
    }

    Morphism map_morph(const Morphism &m) const override
    {
        Morphism out{map_obj(m.source), map_obj(m.target), m.data};
        if (hj_is_alphabet(m.source) && !hj_is_alphabet(m.target)) {
            auto cap = hj_cap(hj_alphabet_size(m.source));
            for (auto &v : out.data)
                v = std::min(v, cap);
        }
        return out;
    }

    bool has_frank_lift() const override { return true; }

    std::optional<Object> frank_lift(const Object &a, const Object &b_prime) const override
    {
        if (!hj_is_alphabet(b_prime))
            return b_prime;
        if (map_obj(a) == b_prime)
            return a;
        auto k = hj_alphabet_size(b_prime);
        if (k == 1)
            return b_prime;
        // A preimage must still hit k, so k has to occur at least twice.
        auto first = std::find(b_prime.data.begin() + 1, b_prime.data.end(), k);
        auto last = std::find(b_prime.data.rbegin(), b_prime.data.rend() - 1, k);
        if (first == b_prime.data.end() || &*first == &*last)
            return std::nullopt;
        Object b = b_prime;
        *(b.data.rbegin() + (last - b_prime.data.rbegin())) = k + 1;
        return b;
    }

private:
    CategoryPtr cat_;
    std::int64_t k0_;
};

std::mutex cache_mutex;

} // namespace

std::int64_t hj_cap(std::int64_t k) { return std::max<std::int64_t>(k - 1, 1); }

bool hj_is_alphabet(const Object &o) { return !o.data.empty() && o.data[0] == 1; }

std::int64_t hj_alphabet_size(const Object &v)
{
    return *std::max_element(v.data.begin() + 1, v.data.end());
}

CategoryPtr hj_category(std::int64_t k0)
{
    if (k0 < 0)
        throw PreconditionViolation("HJ needs k0 >= 0");
    static std::map<std::int64_t, CategoryPtr> cache;
    std::lock_guard lock(cache_mutex);
    auto &slot = cache[k0];
    if (!slot)
        slot = std::make_shared<HJCategory>(k0);
    return slot;
}

FunctorPtr hj_partial(std::int64_t k0)
{
    auto cat = hj_category(k0);
    static std::map<std::int64_t, FunctorPtr> cache;
    std::lock_guard lock(cache_mutex);
    auto &slot = cache[k0];
    if (!slot)
        slot = std::make_shared<HJPartial>(cat, k0);
    return slot;
}

Object hj_word_object(std::int64_t k0, std::int64_t l)
{
    if (l < 0)
        throw PreconditionViolation("HJ word objects are natural numbers");
    return Object{hj_id(k0), {0, l}};
}

Object hj_alphabet_object(std::int64_t k0, const std::vector<std::int64_t> &v)
{
    Object o{hj_id(k0), {1}};
    o.data.insert(o.data.end(), v.begin(), v.end());
    if (!hj_category(k0)->is_object(o))
        throw PreconditionViolation("not a surjection [-k0,0] -> [k]");
    return o;
}

} // namespace catramsey
