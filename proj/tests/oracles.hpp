#pragma once

// Brute-force reference computations written without the library, used to
// cross-check hom enumerations and witness sizes.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline std::uint64_t binom(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    std::uint64_t out = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        out = out * (n - k + i) / i;
    return out;
}

// Ordered tree as the root-to-node paths of child positions, in preorder.
struct Tree {
    std::vector<std::vector<int>> paths;

    static Tree parse(const std::string &text)
    {
        Tree t;
        std::vector<int> path, next{0};
        for (char ch : text) {
            if (ch == '(') {
                if (!t.paths.empty() || !path.empty())
                    path.push_back(next.back()++);
                t.paths.push_back(path);
                next.push_back(0);
            } else {
                next.pop_back();
                if (!path.empty())
                    path.pop_back();
            }
        }
        return t;
    }

    std::size_t size() const { return paths.size(); }
    std::size_t height() const
    {
        std::size_t h = 0;
        for (const auto &p : paths)
            h = std::max(h, p.size() + 1);
        return h;
    }
    std::size_t index_of(const std::vector<int> &p) const
    {
        return static_cast<std::size_t>(std::find(paths.begin(), paths.end(), p) - paths.begin());
    }
    std::size_t meet(std::size_t v, std::size_t w) const
    {
        const auto &a = paths[v];
        const auto &b = paths[w];
        std::size_t n = 0;
        while (n < a.size() && n < b.size() && a[n] == b[n])
            ++n;
        return index_of(std::vector<int>(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n)));
    }
    // Preorder equals the lexicographic order of paths with prefixes first.
    bool lex_less(std::size_t v, std::size_t w) const { return paths[v] < paths[w]; }
};

// Every height-preserving embedding S → T as the preorder index of each
// image, found by backtracking over injective maps and filtering by the
// order, meet and height conditions.
inline std::set<std::vector<std::int64_t>> tree_embeddings(const Tree &s, const Tree &t)
{
    std::set<std::vector<std::int64_t>> out;
    if (s.height() != t.height())
        return out;
    std::vector<std::int64_t> f(s.size());
    std::vector<bool> used(t.size(), false);
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (v == s.size()) {
            for (std::size_t x = 0; x < s.size(); ++x)
                for (std::size_t y = 0; y < s.size(); ++y) {
                    auto fx = static_cast<std::size_t>(f[x]);
                    auto fy = static_cast<std::size_t>(f[y]);
                    if (s.lex_less(x, y) && !t.lex_less(fx, fy))
                        return;
                    if (static_cast<std::size_t>(f[s.meet(x, y)]) != t.meet(fx, fy))
                        return;
                }
            out.insert(f);
            return;
        }
        for (std::size_t w = 0; w < t.size(); ++w) {
            if (used[w] || t.paths[w].size() != s.paths[v].size())
                continue;
            used[w] = true;
            f[v] = static_cast<std::int64_t>(w);
            rec(v + 1);
            used[w] = false;
        }
    };
    rec(0);
    return out;
}

// All bracket strings of ordered trees with n nodes.
inline std::vector<std::string> trees_with_nodes(std::size_t n)
{
    // A tree with n nodes is "(" + forest with n−1 nodes + ")".
    std::function<std::vector<std::string>(std::size_t)> forests = [&](std::size_t m) {
        if (m == 0)
            return std::vector<std::string>{""};
        std::vector<std::string> out;
        for (std::size_t first = 1; first <= m; ++first)
            for (const auto &head : forests(first - 1))
                for (const auto &tail : forests(m - first))
                    out.push_back("(" + head + ")" + tail);
        return out;
    };
    std::vector<std::string> out;
    for (const auto &f : forests(n - 1))
        out.push_back("(" + f + ")");
    return out;
}

// Whether some r-coloring of the q1 × q2 grid has no rectangle with four
// equally colored corners.
inline bool rectangle_free_coloring_exists(int q1, int q2, int r)
{
    std::vector<int> cell(static_cast<std::size_t>(q1 * q2), -1);
    std::function<bool(int)> rec = [&](int pos) {
        if (pos == q1 * q2)
            return true;
        const int i = pos / q2, j = pos % q2;
        for (int c = 0; c < r; ++c) {
            // Symmetry: the first cell only takes color 0.
            if (pos == 0 && c > 0)
                break;
            bool ok = true;
            for (int i2 = 0; i2 < i && ok; ++i2) {
                if (cell[static_cast<std::size_t>(i2 * q2 + j)] != c)
                    continue;
                for (int j2 = 0; j2 < j && ok; ++j2)
                    if (cell[static_cast<std::size_t>(i * q2 + j2)] == c &&
                        cell[static_cast<std::size_t>(i2 * q2 + j2)] == c)
                        ok = false;
            }
            if (!ok)
                continue;
            cell[static_cast<std::size_t>(pos)] = c;
            if (rec(pos + 1))
                return true;
        }
        cell[static_cast<std::size_t>(pos)] = -1;
        return false;
    };
    return rec(0);
}

// Whether every r-coloring of [k]^m has a monochromatic combinatorial line.
inline bool hj_forced(int k, int m, int r)
{
    int words = 1;
    for (int i = 0; i < m; ++i)
        words *= k;
    // Lines: templates over {0..k−1, *} with at least one *.
    std::vector<std::vector<int>> lines;
    int templates = 1;
    for (int i = 0; i < m; ++i)
        templates *= k + 1;
    for (int t = 0; t < templates; ++t) {
        std::vector<int> digit(static_cast<std::size_t>(m));
        int rest = t;
        bool star = false;
        for (int i = 0; i < m; ++i) {
            digit[static_cast<std::size_t>(i)] = rest % (k + 1);
            rest /= k + 1;
            star |= digit[static_cast<std::size_t>(i)] == k;
        }
        if (!star)
            continue;
        std::vector<int> line;
        for (int letter = 0; letter < k; ++letter) {
            int word = 0;
            for (int i = m - 1; i >= 0; --i)
                word = word * k + (digit[static_cast<std::size_t>(i)] == k ? letter : digit[static_cast<std::size_t>(i)]);
            line.push_back(word);
        }
        lines.push_back(line);
    }
    std::uint64_t total = 1;
    for (int i = 0; i < words; ++i)
        total *= static_cast<std::uint64_t>(r);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<int> color(static_cast<std::size_t>(words));
        auto rest = code;
        for (int i = 0; i < words; ++i) {
            color[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(r));
            rest /= static_cast<std::uint64_t>(r);
        }
        bool mono = false;
        for (const auto &line : lines) {
            bool same = true;
            for (int w : line)
                same &= color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(line[0])];
            if (same) {
                mono = true;
                break;
            }
        }
        if (!mono)
            return false;
    }
    return true;
}

// Whether every 2-coloring of the edges of K_n has a monochromatic triangle.
inline bool triangle_forced(int n)
{
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            edges.emplace_back(i, j);
    auto edge = [&](int i, int j) {
        return static_cast<int>(std::find(edges.begin(), edges.end(), std::make_pair(i, j)) - edges.begin());
    };
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << edges.size()); ++code) {
        bool mono = false;
        for (int i = 0; i < n && !mono; ++i)
            for (int j = i + 1; j < n && !mono; ++j)
                for (int k = j + 1; k < n && !mono; ++k) {
                    auto a = (code >> edge(i, j)) & 1, b = (code >> edge(i, k)) & 1, c = (code >> edge(j, k)) & 1;
                    mono = a == b && b == c;
                }
        if (!mono)
            return false;
    }
    return true;
}

// Maps x: [l] → [k] constant on [1,a], [a+1,b−1], [b,l] for some
// 1 ≤ a < a+1 < b ≤ l with the given boundary values.
inline std::set<std::vector<std::int64_t>> p_step_functions(std::int64_t k, std::int64_t l, std::int64_t first,
                                                            std::int64_t last)
{
    std::set<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> x(static_cast<std::size_t>(l));
    std::function<void(std::int64_t)> rec = [&](std::int64_t i) {
        if (i == l) {
            if (x.front() != first || x.back() != last)
                return;
            for (std::int64_t a = 1; a <= l; ++a)
                for (std::int64_t b = a + 2; b <= l; ++b) {
                    bool ok = true;
                    for (std::int64_t j = 1; j <= l; ++j) {
                        auto seg_start = j <= a ? 1 : (j < b ? a + 1 : b);
                        ok &= x[static_cast<std::size_t>(j - 1)] == x[static_cast<std::size_t>(seg_start - 1)];
                    }
                    if (ok) {
                        out.insert(x);
                        return;
                    }
                }
            return;
        }
        for (std::int64_t v = 1; v <= k; ++v) {
            x[static_cast<std::size_t>(i)] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

} // namespace oracle
