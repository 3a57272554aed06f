#include <functional>

#include "catramsey/categories.hpp"

namespace catramsey {

namespace {

const std::string t_id = "T";

class TreeCategory final : public Category {
public:
    std::string id() const override { return t_id; }
    std::string encoding() const override { return "T/1"; }

    bool is_object(const Object &o) const override
    {
        if (o.category != t_id || o.data.empty())
            return false;
        try {
            OrderedTree t(o.data);
            return true;
        } catch (const Error &) {
            return false;
        }
    }

    bool for_each_hom(const Object &a, const Object &b, const HomVisitor &visit) const override
    {
        auto s = tree_of(a);
        auto t = tree_of(b);
        if (s.height() != t.height())
            return true;
        const auto n = s.size();
        Payload image(n);
        image[0] = 0;
        bool go = true;
        // Assign images in preorder; children go to strictly increasing
        // children of their parent's image.
        std::function<void(std::size_t)> rec = [&](std::size_t v) {
            if (!go)
                return;
            if (v == n) {
                go = visit(Morphism{a, b, image});
                return;
            }
            auto p = static_cast<std::size_t>(s.parent(v));
            const auto &siblings = s.children(p);
            std::size_t pos = 0;
            while (siblings[pos] != v)
                ++pos;
            const auto &slots = t.children(static_cast<std::size_t>(image[p]));
            std::size_t start = 0;
            if (pos > 0) {
                auto prev = static_cast<std::size_t>(image[siblings[pos - 1]]);
                while (slots[start] != prev)
                    ++start;
                ++start;
            }
            auto still_needed = siblings.size() - pos - 1;
            for (std::size_t i = start; i + still_needed < slots.size() && go; ++i) {
                image[v] = static_cast<std::int64_t>(slots[i]);
                rec(v + 1);
            }
        };
        rec(1);
        return go;
    }

    BigInt hom_count(const Object &a, const Object &b) const override
    {
        auto s = tree_of(a);
        auto t = tree_of(b);
        if (s.height() != t.height())
            return 0;
        // ways(u,w): embeddings of the subtree at u with u ↦ w.
        std::function<BigInt(std::size_t, std::size_t)> ways = [&](std::size_t u, std::size_t w) -> BigInt {
            const auto &cu = s.children(u);
            const auto &cw = t.children(w);
            // row[j]: first i children of u into the first j children of w.
            std::vector<BigInt> row(cw.size() + 1, 1);
            for (std::size_t i = 0; i < cu.size(); ++i) {
                std::vector<BigInt> next(cw.size() + 1, 0);
                for (std::size_t j = 1; j <= cw.size(); ++j)
                    next[j] = next[j - 1] + row[j - 1] * ways(cu[i], cw[j - 1]);
                row = std::move(next);
            }
            return row[cw.size()];
        };
        return ways(0, 0);
    }

    Morphism compose(const Morphism &g, const Morphism &f) const override
    {
        require_composable(g, f);
        Payload out;
        out.reserve(f.data.size());
        for (auto v : f.data)
            out.push_back(g.data.at(static_cast<std::size_t>(v)));
        return Morphism{f.source, g.target, std::move(out)};
    }

    Morphism identity(const Object &a) const override
    {
        auto t = tree_of(a);
        Payload id(t.size());
        for (std::size_t i = 0; i < t.size(); ++i)
            id[i] = static_cast<std::int64_t>(i);
        return Morphism{a, a, id};
    }

    std::vector<Object> objects(std::int64_t budget) const override
    {
        std::vector<Object> out;
        for (std::int64_t n = 1; n <= budget; ++n)
            for (const auto &t : OrderedTree::all_with_nodes(static_cast<std::size_t>(n)))
                out.push_back(tree_object(t));
        std::sort(out.begin(), out.end());
        return out;
    }

    Object parse_object(std::string_view text) const override { return tree_object(OrderedTree::parse(text)); }

    std::string format(const Object &o) const override { return tree_of(o).str(); }
};

class TreePartial final : public Functor {
public:
    explicit TreePartial(CategoryPtr cat) : cat_(std::move(cat)) {}

    std::string id() const override { return "dT"; }
    CategoryPtr dom() const override { return cat_; }
    CategoryPtr cod() const override { return cat_; }

    Object map_obj(const Object &o) const override { return tree_object(tree_of(o).truncated()); }

    Morphism map_morph(const Morphism &m) const override
    {
        auto s = tree_of(m.source);
        auto t = tree_of(m.target);
        auto keep = s.truncation_map();
        auto renumber = t.truncation_map();
        Payload out;
        for (std::size_t v = 0; v < s.size(); ++v)
            if (keep[v] >= 0)
                out.push_back(renumber.at(static_cast<std::size_t>(m.data.at(v))));
        return Morphism{map_obj(m.source), map_obj(m.target), std::move(out)};
    }

    bool has_frank_lift() const override { return true; }

    std::optional<Object> frank_lift(const Object &a, const Object &b_prime) const override
    {
        auto s = tree_of(a);
        auto t = tree_of(b_prime);
        if (s.height() == 1 && t.height() == 1)
            return b_prime;
        auto fan = s.height() == t.height() + 1 ? s.branching() : 1;
        std::vector<std::pair<std::size_t, std::int64_t>> additions;
        for (std::size_t v = 0; v < t.size(); ++v)
            if (t.node_height(v) == t.height())
                additions.emplace_back(v, fan);
        return tree_object(t.with_new_leaves(additions));
    }

private:
    CategoryPtr cat_;
};

} // namespace

CategoryPtr tree_category()
{
    static const CategoryPtr cat = std::make_shared<TreeCategory>();
    return cat;
}

FunctorPtr tree_partial()
{
    static const FunctorPtr f = std::make_shared<TreePartial>(tree_category());
    return f;
}

Object tree_object(const OrderedTree &t) { return Object{t_id, t.child_counts()}; }

OrderedTree tree_of(const Object &o)
{
    if (o.category != t_id)
        throw DomainMismatch("not an object of T: " + encode(o));
    return OrderedTree(o.data);
}

} // namespace catramsey
