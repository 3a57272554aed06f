#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catramsey/codes.hpp"

namespace catramsey {

using HomVisitor = std::function<bool(const Morphism &)>;

// A finitely-presented category. Every hom-set is finite and enumerated in a
// fixed total order (lexicographic on the canonical payload).
class Category {
public:
    virtual ~Category() = default;

    virtual std::string id() const = 0;
    // Versioned encoding identifier, embedded in certificates.
    virtual std::string encoding() const = 0;

    virtual bool is_object(const Object &o) const = 0;

    // Visits hom(a,b) in canonical order; the visitor returns false to stop.
    // Returns false if it was stopped early.
    virtual bool for_each_hom(const Object &a, const Object &b, const HomVisitor &visit) const = 0;
    virtual BigInt hom_count(const Object &a, const Object &b) const;

    virtual Morphism compose(const Morphism &g, const Morphism &f) const = 0;
    virtual Morphism identity(const Object &a) const = 0;

    // All objects of "size" at most budget, ascending by canonical encoding.
    virtual std::vector<Object> objects(std::int64_t budget) const = 0;

    virtual Object parse_object(std::string_view text) const = 0;
    virtual std::string format(const Object &o) const = 0;
    virtual std::string format(const Morphism &m) const;

    // Materializes hom(a,b); throws CapExceeded naming the hom-set when it
    // holds more than cap morphisms.
    std::vector<Morphism> hom(const Object &a, const Object &b, std::size_t cap = 1u << 22) const;
    bool contains(const Morphism &m, std::size_t cap = 1u << 22) const;

protected:
    void require_composable(const Morphism &g, const Morphism &f) const;
};

using CategoryPtr = std::shared_ptr<const Category>;

class Functor {
public:
    virtual ~Functor() = default;

    virtual std::string id() const = 0;
    virtual CategoryPtr dom() const = 0;
    virtual CategoryPtr cod() const = 0;

    virtual Object map_obj(const Object &o) const = 0;
    virtual Morphism map_morph(const Morphism &m) const = 0;

    virtual bool has_frank_lift() const { return false; }
    // Some b with map_obj(b) = b_prime and map(hom(a,b)) = hom(map(a), b_prime),
    // or nullopt when no such object exists.
    virtual std::optional<Object> frank_lift(const Object &a, const Object &b_prime) const;
};

using FunctorPtr = std::shared_ptr<const Functor>;

FunctorPtr identity_functor(CategoryPtr cat);

// outer ∘ inner; throws DomainMismatch unless cod(inner) = dom(outer).
FunctorPtr compose_functors(FunctorPtr inner, FunctorPtr outer);

// f ∘ f ∘ … ∘ f (n ≥ 1 copies); n = 0 gives the identity functor.
FunctorPtr functor_power(FunctorPtr f, unsigned n);

// Image δ(hom(a,b)), sorted and de-duplicated.
std::vector<Morphism> image_of_hom(const Functor &delta, const Object &a, const Object &b,
                                   std::size_t cap = 1u << 22);

// Structural views of the generic functors.
struct CompositeParts {
    FunctorPtr outer, inner;
};
struct PowerParts {
    FunctorPtr base;
    unsigned n = 0;
};
bool is_identity_functor(const Functor &f);
std::optional<CompositeParts> as_composite(const Functor &f);
std::optional<PowerParts> as_power(const Functor &f);

std::string hom_name(const Category &cat, const Object &a, const Object &b);

} // namespace catramsey
