#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace catramsey {

// A finite ordered rooted tree stored as the preorder sequence of child
// counts; the sibling order is the left-to-right order of the sequence.
class OrderedTree {
public:
    OrderedTree() : OrderedTree(std::vector<std::int64_t>{0}) {}
    explicit OrderedTree(std::vector<std::int64_t> child_counts);

    // Bracket notation: "()" is a single node, "(()())" a root with two leaves.
    static OrderedTree parse(std::string_view text);
    std::string str() const;

    std::size_t size() const { return counts_.size(); }
    const std::vector<std::int64_t> &child_counts() const { return counts_; }
    std::int64_t parent(std::size_t v) const { return parent_[v]; }
    const std::vector<std::size_t> &children(std::size_t v) const { return children_[v]; }
    // Number of predecessors including v itself; the root has height 1.
    std::int64_t node_height(std::size_t v) const { return depth_[v] + 1; }
    std::int64_t height() const { return height_; }
    // Largest number of immediate successors of any node.
    std::int64_t branching() const;

    // Nodes strictly below the deepest level (the tree itself at height 1).
    OrderedTree truncated() const;
    // Preorder index in truncated() of each kept node, −1 for dropped nodes.
    std::vector<std::int64_t> truncation_map() const;

    // New tree in which node v (preorder index) receives `extra` leaves after
    // its current children, for every (v, extra) pair.
    OrderedTree with_new_leaves(const std::vector<std::pair<std::size_t, std::int64_t>> &additions) const;

    // Node ≤ comparisons per the definition of the lexicographic order.
    bool is_predecessor(std::size_t v, std::size_t w) const;
    std::size_t meet(std::size_t v, std::size_t w) const;
    bool lex_leq(std::size_t v, std::size_t w) const;

    bool operator==(const OrderedTree &o) const { return counts_ == o.counts_; }

    // All ordered trees with exactly n nodes, ascending by child-count sequence.
    static std::vector<OrderedTree> all_with_nodes(std::size_t n);

private:
    std::vector<std::int64_t> counts_;
    std::vector<std::int64_t> parent_;
    std::vector<std::int64_t> depth_;
    std::vector<std::vector<std::size_t>> children_;
    std::int64_t height_ = 1;
};

} // namespace catramsey
