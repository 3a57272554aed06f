#include "catramsey/category.hpp"

#include <algorithm>
#include <sstream>

namespace catramsey {

BigInt Category::hom_count(const Object &a, const Object &b) const
{
    BigInt n = 0;
    for_each_hom(a, b, [&](const Morphism &) {
        ++n;
        return true;
    });
    return n;
}

std::string Category::format(const Morphism &m) const
{
    std::ostringstream out;
    out << format(m.source) << "->" << format(m.target) << ":[";
    for (std::size_t i = 0; i < m.data.size(); ++i)
        out << (i ? "," : "") << m.data[i];
    out << "]";
    return out.str();
}

std::vector<Morphism> Category::hom(const Object &a, const Object &b, std::size_t cap) const
{
    std::vector<Morphism> out;
    bool complete = for_each_hom(a, b, [&](const Morphism &m) {
        if (out.size() >= cap)
            return false;
        out.push_back(m);
        return true;
    });
    if (!complete)
        throw CapExceeded(hom_name(*this, a, b) + " exceeds the hom-set cap of " + std::to_string(cap));
    return out;
}

bool Category::contains(const Morphism &m, std::size_t cap) const
{
    if (!is_object(m.source) || !is_object(m.target))
        return false;
    auto h = hom(m.source, m.target, cap);
    return std::binary_search(h.begin(), h.end(), m);
}

void Category::require_composable(const Morphism &g, const Morphism &f) const
{
    if (f.target != g.source)
        throw DomainMismatch("cannot compose " + format(g) + " after " + format(f));
}

std::optional<Object> Functor::frank_lift(const Object &, const Object &) const
{
    throw Unsupported("functor " + id() + " has no frank lift");
}

std::string hom_name(const Category &cat, const Object &a, const Object &b)
{
    auto shown = [&](const Object &o) {
        auto text = cat.format(o);
        return text.size() > 60 ? text.substr(0, 57) + "..." : text;
    };
    return "hom(" + shown(a) + ", " + shown(b) + ") in " + cat.id();
}

namespace {

class IdentityFunctor final : public Functor {
public:
    explicit IdentityFunctor(CategoryPtr cat) : cat_(std::move(cat)) {}

    std::string id() const override { return "id(" + cat_->id() + ")"; }
    CategoryPtr dom() const override { return cat_; }
    CategoryPtr cod() const override { return cat_; }
    Object map_obj(const Object &o) const override { return o; }
    Morphism map_morph(const Morphism &m) const override { return m; }
    bool has_frank_lift() const override { return true; }
    std::optional<Object> frank_lift(const Object &, const Object &b_prime) const override { return b_prime; }

private:
    CategoryPtr cat_;
};

std::string wrap(const std::string &id)
{
    return id.find_first_of(".^") == std::string::npos ? id : "(" + id + ")";
}

class ComposedFunctor final : public Functor {
public:
    ComposedFunctor(FunctorPtr inner, FunctorPtr outer) : inner_(std::move(inner)), outer_(std::move(outer)) {}

    std::string id() const override
    {
        // '.' is associative, so composites are never parenthesized.
        auto side = [](const FunctorPtr &f) {
            auto s = f->id();
            return s.find('^') == std::string::npos ? s : "(" + s + ")";
        };
        return side(outer_) + "." + side(inner_);
    }
    CategoryPtr dom() const override { return inner_->dom(); }
    CategoryPtr cod() const override { return outer_->cod(); }
    Object map_obj(const Object &o) const override { return outer_->map_obj(inner_->map_obj(o)); }
    Morphism map_morph(const Morphism &m) const override { return outer_->map_morph(inner_->map_morph(m)); }
    bool has_frank_lift() const override { return inner_->has_frank_lift() && outer_->has_frank_lift(); }

    std::optional<Object> frank_lift(const Object &a, const Object &b_prime) const override
    {
        auto middle = outer_->frank_lift(inner_->map_obj(a), b_prime);
        if (!middle)
            return std::nullopt;
        return inner_->frank_lift(a, *middle);
    }

    const FunctorPtr &inner() const { return inner_; }
    const FunctorPtr &outer() const { return outer_; }

private:
    FunctorPtr inner_, outer_;
};

class PowerFunctor final : public Functor {
public:
    PowerFunctor(FunctorPtr base, unsigned n) : base_(std::move(base)), n_(n) {}

    std::string id() const override { return wrap(base_->id()) + "^" + std::to_string(n_); }
    CategoryPtr dom() const override { return base_->dom(); }
    CategoryPtr cod() const override { return base_->cod(); }

    Object map_obj(const Object &o) const override
    {
        Object x = o;
        for (unsigned i = 0; i < n_; ++i)
            x = base_->map_obj(x);
        return x;
    }

    Morphism map_morph(const Morphism &m) const override
    {
        Morphism x = m;
        for (unsigned i = 0; i < n_; ++i)
            x = base_->map_morph(x);
        return x;
    }

    bool has_frank_lift() const override { return base_->has_frank_lift(); }

    std::optional<Object> frank_lift(const Object &a, const Object &b_prime) const override
    {
        // Lift through the outermost copy first.
        std::vector<Object> images{a};
        for (unsigned i = 1; i < n_; ++i)
            images.push_back(base_->map_obj(images.back()));
        std::optional<Object> current = b_prime;
        for (unsigned i = n_; i-- > 0;) {
            current = base_->frank_lift(images[i], *current);
            if (!current)
                return std::nullopt;
        }
        return current;
    }

    const FunctorPtr &base() const { return base_; }
    unsigned exponent() const { return n_; }

private:
    FunctorPtr base_;
    unsigned n_;
};

} // namespace

FunctorPtr identity_functor(CategoryPtr cat)
{
    return std::make_shared<IdentityFunctor>(std::move(cat));
}

FunctorPtr compose_functors(FunctorPtr inner, FunctorPtr outer)
{
    if (inner->cod()->id() != outer->dom()->id())
        throw DomainMismatch("cannot compose " + outer->id() + " after " + inner->id() + ": codomain " +
                             inner->cod()->id() + " differs from domain " + outer->dom()->id());
    return std::make_shared<ComposedFunctor>(std::move(inner), std::move(outer));
}

FunctorPtr functor_power(FunctorPtr f, unsigned n)
{
    if (n == 0)
        return identity_functor(f->dom());
    if (n == 1)
        return f;
    if (f->dom()->id() != f->cod()->id())
        throw DomainMismatch("power of non-endofunctor " + f->id());
    return std::make_shared<PowerFunctor>(std::move(f), n);
}

std::vector<Morphism> image_of_hom(const Functor &delta, const Object &a, const Object &b, std::size_t cap)
{
    std::vector<Morphism> out;
    for (const auto &f : delta.dom()->hom(a, b, cap))
        out.push_back(delta.map_morph(f));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_identity_functor(const Functor &f) { return dynamic_cast<const IdentityFunctor *>(&f) != nullptr; }

std::optional<CompositeParts> as_composite(const Functor &f)
{
    if (auto c = dynamic_cast<const ComposedFunctor *>(&f))
        return CompositeParts{c->outer(), c->inner()};
    return std::nullopt;
}

std::optional<PowerParts> as_power(const Functor &f)
{
    if (auto p = dynamic_cast<const PowerFunctor *>(&f))
        return PowerParts{p->base(), p->exponent()};
    return std::nullopt;
}

} // namespace catramsey
