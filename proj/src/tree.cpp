#include "catramsey/tree.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "catramsey/codes.hpp"

namespace catramsey {

OrderedTree::OrderedTree(std::vector<std::int64_t> child_counts) : counts_(std::move(child_counts))
{
    const auto n = counts_.size();
    if (n == 0)
        throw PreconditionViolation("a tree has at least one node");
    parent_.assign(n, -1);
    depth_.assign(n, 0);
    children_.assign(n, {});
    // Stack of (node, children still to attach).
    std::vector<std::pair<std::size_t, std::int64_t>> stack;
    for (std::size_t v = 0; v < n; ++v) {
        if (counts_[v] < 0)
            throw PreconditionViolation("negative child count in tree encoding");
        if (v > 0) {
            while (!stack.empty() && stack.back().second == 0)
                stack.pop_back();
            if (stack.empty())
                throw PreconditionViolation("tree encoding has more than one root");
            auto p = stack.back().first;
            --stack.back().second;
            parent_[v] = static_cast<std::int64_t>(p);
            depth_[v] = depth_[p] + 1;
            children_[p].push_back(v);
        }
        stack.emplace_back(v, counts_[v]);
    }
    for (auto &[v, left] : stack)
        if (left != 0)
            throw PreconditionViolation("tree encoding ends before all children are listed");
    height_ = *std::max_element(depth_.begin(), depth_.end()) + 1;
}

OrderedTree OrderedTree::parse(std::string_view text)
{
    std::vector<std::int64_t> counts;
    std::vector<std::size_t> open;
    std::size_t closed_roots = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(') {
            if (closed_roots > 0)
                throw ParseError("tree has more than one root", i);
            if (!open.empty())
                ++counts[open.back()];
            open.push_back(counts.size());
            counts.push_back(0);
        } else if (c == ')') {
            if (open.empty())
                throw ParseError("unbalanced ')' in tree", i);
            open.pop_back();
            if (open.empty())
                ++closed_roots;
        } else if (c != ' ') {
            throw ParseError(std::string("unexpected character '") + c + "' in tree", i);
        }
    }
    if (!open.empty() || counts.empty())
        throw ParseError("unbalanced tree", text.size());
    return OrderedTree(std::move(counts));
}

std::string OrderedTree::str() const
{
    std::string out;
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        out += '(';
        for (auto c : children_[v])
            rec(c);
        out += ')';
    };
    rec(0);
    return out;
}

std::int64_t OrderedTree::branching() const
{
    return *std::max_element(counts_.begin(), counts_.end());
}

std::vector<std::int64_t> OrderedTree::truncation_map() const
{
    std::vector<std::int64_t> map(size(), -1);
    std::int64_t next = 0;
    for (std::size_t v = 0; v < size(); ++v)
        if (height_ == 1 || depth_[v] + 1 < height_)
            map[v] = next++;
    return map;
}

OrderedTree OrderedTree::truncated() const
{
    if (height_ == 1)
        return *this;
    std::vector<std::int64_t> counts;
    for (std::size_t v = 0; v < size(); ++v)
        if (depth_[v] + 1 < height_)
            counts.push_back(depth_[v] + 2 < height_ ? counts_[v] : 0);
    return OrderedTree(std::move(counts));
}

OrderedTree OrderedTree::with_new_leaves(const std::vector<std::pair<std::size_t, std::int64_t>> &additions) const
{
    std::vector<std::int64_t> extra(size(), 0);
    for (auto [v, e] : additions)
        extra.at(v) += e;
    std::vector<std::int64_t> counts;
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        counts.push_back(counts_[v] + extra[v]);
        for (auto c : children_[v])
            rec(c);
        for (std::int64_t i = 0; i < extra[v]; ++i)
            counts.push_back(0);
    };
    rec(0);
    return OrderedTree(std::move(counts));
}

bool OrderedTree::is_predecessor(std::size_t v, std::size_t w) const
{
    auto x = static_cast<std::int64_t>(w);
    while (x >= 0) {
        if (x == static_cast<std::int64_t>(v))
            return true;
        x = parent_[static_cast<std::size_t>(x)];
    }
    return false;
}

std::size_t OrderedTree::meet(std::size_t v, std::size_t w) const
{
    while (!is_predecessor(v, w))
        v = static_cast<std::size_t>(parent_[v]);
    return v;
}

bool OrderedTree::lex_leq(std::size_t v, std::size_t w) const
{
    if (is_predecessor(v, w))
        return true;
    if (is_predecessor(w, v))
        return false;
    auto m = meet(v, w);
    auto below = [&](std::size_t x) {
        while (static_cast<std::size_t>(parent_[x]) != m)
            x = static_cast<std::size_t>(parent_[x]);
        return x;
    };
    // Sibling order is preorder order.
    return below(v) <= below(w);
}

std::vector<OrderedTree> OrderedTree::all_with_nodes(std::size_t n)
{
    std::vector<OrderedTree> out;
    if (n == 0)
        return out;
    std::vector<std::int64_t> counts(n);
    // open = number of child slots not yet filled.
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t open) {
        if (i == n) {
            if (open == 0)
                out.emplace_back(counts);
            return;
        }
        auto remaining = static_cast<std::int64_t>(n - i - 1);
        for (std::int64_t c = 0; open - 1 + c <= remaining; ++c) {
            if (open - 1 + c == 0 && remaining > 0)
                continue;
            counts[i] = c;
            rec(i + 1, open - 1 + c);
        }
    };
    rec(0, 1);
    return out;
}

} // namespace catramsey
