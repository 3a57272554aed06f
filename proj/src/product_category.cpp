#include <charconv>
#include <functional>

#include "catramsey/categories.hpp"

namespace catramsey {

namespace {

Payload pack(const std::vector<std::pair<std::int64_t, const Payload *>> &parts)
{
    Payload out{static_cast<std::int64_t>(parts.size())};
    for (auto [idx, p] : parts) {
        out.push_back(idx);
        out.push_back(static_cast<std::int64_t>(p->size()));
        out.insert(out.end(), p->begin(), p->end());
    }
    return out;
}

std::vector<std::pair<std::int64_t, Payload>> unpack(const Payload &data)
{
    std::vector<std::pair<std::int64_t, Payload>> out;
    if (data.empty())
        throw DomainMismatch("empty product payload");
    std::size_t pos = 1;
    for (std::int64_t i = 0; i < data[0]; ++i) {
        if (pos + 2 > data.size())
            throw DomainMismatch("truncated product payload");
        auto idx = data[pos], len = data[pos + 1];
        pos += 2;
        if (len < 0 || pos + static_cast<std::size_t>(len) > data.size())
            throw DomainMismatch("truncated product payload");
        out.emplace_back(idx, Payload(data.begin() + static_cast<std::ptrdiff_t>(pos),
                                      data.begin() + static_cast<std::ptrdiff_t>(pos + static_cast<std::size_t>(len))));
        pos += static_cast<std::size_t>(len);
    }
    if (pos != data.size())
        throw DomainMismatch("trailing data in product payload");
    return out;
}

class ProductCategory final : public Category {
public:
    explicit ProductCategory(CategoryPtr factor) : factor_(std::move(factor)) {}

    const CategoryPtr &factor() const { return factor_; }

    std::string id() const override { return "prod(" + factor_->id() + ")"; }
    std::string encoding() const override { return "prod/1(" + factor_->encoding() + ")"; }

    bool is_object(const Object &o) const override
    {
        if (o.category != id())
            return false;
        try {
            auto coords = unpack(o.data);
            for (std::size_t i = 0; i < coords.size(); ++i) {
                if (coords[i].first < 0 || (i > 0 && coords[i].first <= coords[i - 1].first))
                    return false;
                if (!factor_->is_object(Object{factor_->id(), coords[i].second}))
                    return false;
            }
            return true;
        } catch (const Error &) {
            return false;
        }
    }

    Coordinates coordinates(const Object &o) const
    {
        if (!is_object(o))
            throw DomainMismatch("not an object of " + id() + ": " + encode(o));
        Coordinates out;
        for (auto &[idx, p] : unpack(o.data))
            out.emplace_back(idx, Object{factor_->id(), std::move(p)});
        return out;
    }

    Object make_object(const Coordinates &coords) const
    {
        std::vector<std::pair<std::int64_t, const Payload *>> parts;
        for (const auto &[idx, o] : coords) {
            if (o.category != factor_->id())
                throw DomainMismatch("coordinate " + std::to_string(idx) + " is not an object of " + factor_->id());
            parts.emplace_back(idx, &o.data);
        }
        Object out{id(), pack(parts)};
        if (!is_object(out))
            throw PreconditionViolation("product coordinates must have ascending, distinct indices");
        return out;
    }

    MorphCoordinates morph_coordinates(const Morphism &m) const
    {
        auto src = coordinates(m.source);
        auto tgt = coordinates(m.target);
        auto parts = unpack(m.data);
        if (parts.size() != src.size() || src.size() != tgt.size())
            throw DomainMismatch("product morphism does not match its source/target support");
        MorphCoordinates out;
        for (std::size_t i = 0; i < parts.size(); ++i)
            out.emplace_back(parts[i].first, Morphism{src[i].second, tgt[i].second, std::move(parts[i].second)});
        return out;
    }

    Morphism make_morph(const MorphCoordinates &coords, const Object &source, const Object &target) const
    {
        std::vector<std::pair<std::int64_t, const Payload *>> parts;
        for (const auto &[idx, m] : coords)
            parts.emplace_back(idx, &m.data);
        return Morphism{source, target, pack(parts)};
    }

    bool for_each_hom(const Object &a, const Object &b, const HomVisitor &visit) const override
    {
        auto ca = coordinates(a);
        auto cb = coordinates(b);
        if (!same_support(ca, cb))
            return true;
        for (std::size_t i = 0; i < ca.size(); ++i)
            if (factor_->hom_count(ca[i].second, cb[i].second) == 0)
                return true;
        // Nested lazy enumeration, so large factor hom-sets are never materialized.
        MorphCoordinates current(ca.size());
        bool go = true;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == ca.size()) {
                go = visit(make_morph(current, a, b));
                return;
            }
            factor_->for_each_hom(ca[i].second, cb[i].second, [&](const Morphism &f) {
                current[i] = {ca[i].first, f};
                rec(i + 1);
                return go;
            });
        };
        rec(0);
        return go;
    }

    BigInt hom_count(const Object &a, const Object &b) const override
    {
        auto ca = coordinates(a);
        auto cb = coordinates(b);
        if (!same_support(ca, cb))
            return 0;
        BigInt n = 1;
        for (std::size_t i = 0; i < ca.size(); ++i)
            n *= factor_->hom_count(ca[i].second, cb[i].second);
        return n;
    }

    Morphism compose(const Morphism &g, const Morphism &f) const override
    {
        require_composable(g, f);
        auto cg = morph_coordinates(g);
        auto cf = morph_coordinates(f);
        MorphCoordinates out;
        for (std::size_t i = 0; i < cf.size(); ++i)
            out.emplace_back(cf[i].first, factor_->compose(cg[i].second, cf[i].second));
        return make_morph(out, f.source, g.target);
    }

    Morphism identity(const Object &a) const override
    {
        MorphCoordinates out;
        for (const auto &[idx, o] : coordinates(a))
            out.emplace_back(idx, factor_->identity(o));
        return make_morph(out, a, a);
    }

    // Objects supported on ∅, {0} and {0,1} with factor objects of the given budget.
    std::vector<Object> objects(std::int64_t budget) const override
    {
        auto base = factor_->objects(budget);
        std::vector<Object> out{make_object({})};
        for (const auto &x : base)
            out.push_back(make_object({{0, x}}));
        for (const auto &x : base)
            for (const auto &y : base)
                out.push_back(make_object({{0, x}, {1, y}}));
        std::sort(out.begin(), out.end());
        return out;
    }

    // "[i:x;j:y]" with factor objects in their own notation.
    Object parse_object(std::string_view text) const override
    {
        if (text.size() < 2 || text.front() != '[' || text.back() != ']')
            throw ParseError("product objects are written [i:x;j:y]", 0);
        Coordinates coords;
        std::size_t pos = 1;
        const std::size_t end = text.size() - 1;
        while (pos < end) {
            auto sep = text.find(';', pos);
            if (sep == std::string_view::npos || sep > end)
                sep = end;
            auto part = text.substr(pos, sep - pos);
            auto colon = part.find(':');
            if (colon == std::string_view::npos)
                throw ParseError("product coordinate needs index:object", pos);
            std::int64_t idx = 0;
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + colon, idx);
            if (ec != std::errc() || ptr != part.data() + colon)
                throw ParseError("bad product index", pos);
            coords.emplace_back(idx, factor_->parse_object(part.substr(colon + 1)));
            pos = sep + 1;
        }
        return make_object(coords);
    }

    std::string format(const Object &o) const override
    {
        std::string out = "[";
        bool first = true;
        for (const auto &[idx, x] : coordinates(o)) {
            out += (first ? "" : ";") + std::to_string(idx) + ":" + factor_->format(x);
            first = false;
        }
        return out + "]";
    }

    std::string format(const Morphism &m) const override
    {
        std::string out = "[";
        bool first = true;
        for (const auto &[idx, f] : morph_coordinates(m)) {
            out += (first ? "" : ";") + std::to_string(idx) + ":" + factor_->format(f);
            first = false;
        }
        return out + "]";
    }

private:
    CategoryPtr factor_;

    static bool same_support(const Coordinates &a, const Coordinates &b)
    {
        if (a.size() != b.size())
            return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].first != b[i].first)
                return false;
        return true;
    }
};

const ProductCategory &as_product(const Category &c)
{
    auto p = dynamic_cast<const ProductCategory *>(&c);
    if (!p)
        throw DomainMismatch(c.id() + " is not a product category");
    return *p;
}

class ProductFunctor final : public Functor {
public:
    ProductFunctor(FunctorPtr fallback, std::map<std::int64_t, FunctorPtr> overrides)
        : fallback_(std::move(fallback)), overrides_(std::move(overrides))
    {
        for (const auto &[idx, f] : overrides_)
            if (f->dom()->id() != fallback_->dom()->id() || f->cod()->id() != fallback_->cod()->id())
                throw DomainMismatch("coordinate functor " + f->id() + " has a different type than " +
                                     fallback_->id());
        dom_ = product_category(fallback_->dom());
        cod_ = product_category(fallback_->cod());
    }

    std::string id() const override
    {
        std::string out = "prod(" + fallback_->id();
        for (const auto &[idx, f] : overrides_)
            out += "," + std::to_string(idx) + ":" + f->id();
        return out + ")";
    }
    CategoryPtr dom() const override { return dom_; }
    CategoryPtr cod() const override { return cod_; }

    Object map_obj(const Object &o) const override
    {
        Coordinates out;
        for (const auto &[idx, x] : as_product(*dom_).coordinates(o))
            out.emplace_back(idx, at(idx).map_obj(x));
        return as_product(*cod_).make_object(out);
    }

    Morphism map_morph(const Morphism &m) const override
    {
        MorphCoordinates out;
        for (const auto &[idx, f] : as_product(*dom_).morph_coordinates(m))
            out.emplace_back(idx, at(idx).map_morph(f));
        return as_product(*cod_).make_morph(out, map_obj(m.source), map_obj(m.target));
    }

    bool has_frank_lift() const override
    {
        if (!fallback_->has_frank_lift())
            return false;
        for (const auto &[idx, f] : overrides_)
            if (!f->has_frank_lift())
                return false;
        return true;
    }

    std::optional<Object> frank_lift(const Object &a, const Object &b_prime) const override
    {
        auto ca = as_product(*dom_).coordinates(a);
        Coordinates out;
        for (const auto &[idx, y] : as_product(*cod_).coordinates(b_prime)) {
            // With a different support hom(a,b) is empty anyway; any preimage does.
            const Object *anchor = nullptr;
            for (const auto &[j, x] : ca)
                if (j == idx)
                    anchor = &x;
            std::optional<Object> lifted;
            if (anchor)
                lifted = at(idx).frank_lift(*anchor, y);
            else if (dom_->id() == cod_->id())
                lifted = at(idx).frank_lift(y, y);
            if (!lifted)
                return std::nullopt;
            out.emplace_back(idx, *lifted);
        }
        return as_product(*dom_).make_object(out);
    }

    const FunctorPtr &fallback() const { return fallback_; }
    const std::map<std::int64_t, FunctorPtr> &overrides() const { return overrides_; }

private:
    FunctorPtr fallback_;
    std::map<std::int64_t, FunctorPtr> overrides_;
    CategoryPtr dom_, cod_;

    const Functor &at(std::int64_t idx) const
    {
        auto it = overrides_.find(idx);
        return it == overrides_.end() ? *fallback_ : *it->second;
    }
};

} // namespace

CategoryPtr product_category(CategoryPtr factor)
{
    return std::make_shared<ProductCategory>(std::move(factor));
}

CategoryPtr product_factor(const Category &product) { return as_product(product).factor(); }

Object product_object(const Category &product, const Coordinates &coords)
{
    return as_product(product).make_object(coords);
}

Coordinates product_coordinates(const Category &product, const Object &o)
{
    return as_product(product).coordinates(o);
}

Morphism product_morph(const Category &product, const MorphCoordinates &coords, const Object &source,
                       const Object &target)
{
    return as_product(product).make_morph(coords, source, target);
}

MorphCoordinates product_morph_coordinates(const Category &product, const Morphism &m)
{
    return as_product(product).morph_coordinates(m);
}

FunctorPtr product_functor(FunctorPtr fallback, std::map<std::int64_t, FunctorPtr> overrides)
{
    return std::make_shared<ProductFunctor>(std::move(fallback), std::move(overrides));
}

std::optional<ProductFunctorParts> as_product_functor(const Functor &f)
{
    if (auto p = dynamic_cast<const ProductFunctor *>(&f))
        return ProductFunctorParts{p->fallback(), p->overrides()};
    return std::nullopt;
}

} // namespace catramsey
