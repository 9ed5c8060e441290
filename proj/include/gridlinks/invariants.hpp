#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "gridlinks/grid.hpp"

namespace gridlinks {

/// Number of closed curves in the diagram = cycle count of the row
/// transition permutation. Always in [1, n/2]: the transition has no
/// fixed points, so every cycle spans at least two rows.
inline int component_count(const LinkGrid& d) {
    const Perm sigma = transition_permutation(d);
    std::vector<bool> visited(sigma.size(), false);
    int cycles = 0;
    for (std::size_t start = 0; start < sigma.size(); ++start) {
        if (visited[start])
            continue;
        ++cycles;
        std::size_t r = start;
        while (!visited[r]) {
            visited[r] = true;
            r = static_cast<std::size_t>(sigma[r] - 1);
        }
    }
    return cycles;
}

/// Oracle route for component_count: walks the arcs dot to dot
/// (black -> white along the column, white -> black along the row),
/// marking visited dots, and counts the closed walks.
inline int component_count_geometric(const LinkGrid& d) {
    const int n = d.size();
    const std::vector<Arc> all = arcs(d);
    // all[c-1] is column c's vertical arc, all[n+r-1] is row r's horizontal arc
    std::vector<bool> black_visited(n, false);
    int walks = 0;
    for (int start = 1; start <= n; ++start) {
        if (black_visited[start - 1])
            continue;
        ++walks;
        int row = start;
        while (!black_visited[row - 1]) {
            black_visited[row - 1] = true;
            const Arc& vertical = all[d.black_col(row) - 1];
            const Arc& horizontal = all[n + vertical.to - 1];
            row = horizontal.fixed_coord;
        }
    }
    return walks;
}

/// Every (vertical, horizontal) arc pair whose interiors meet, by direct
/// pairwise scan. The vertical arc passes over; with u the unit direction
/// of the under (horizontal) arc and o of the over (vertical) arc, the
/// sign is u_x*o_y - u_y*o_x: +1 when the under direction rotated 90
/// degrees counterclockwise aligns with the over direction.
inline std::vector<Crossing> crossings(const LinkGrid& d) {
    const int n = d.size();
    const Perm black_row = inverse(d.black());
    const Perm white_row = inverse(d.white());
    std::vector<Crossing> out;
    for (int c = 1; c <= n; ++c) {
        const int row_from = black_row[c - 1];
        const int row_to = white_row[c - 1];
        const int row_lo = row_from < row_to ? row_from : row_to;
        const int row_hi = row_from < row_to ? row_to : row_from;
        const int over_dir = row_to > row_from ? 1 : -1;
        for (int r = row_lo + 1; r < row_hi; ++r) {
            const int col_from = d.white_col(r);
            const int col_to = d.black_col(r);
            const int col_lo = col_from < col_to ? col_from : col_to;
            const int col_hi = col_from < col_to ? col_to : col_from;
            if (col_lo < c && c < col_hi) {
                const int under_dir = col_to > col_from ? 1 : -1;
                out.push_back({r, c, under_dir * over_dir});
            }
        }
    }
    return out;
}

namespace detail {

// Fenwick tree over rows 1..n with signed weights.
class SignedFenwick {
  public:
    explicit SignedFenwick(int n) : tree_(static_cast<std::size_t>(n) + 1, 0) {}

    void add(int i, std::int64_t w) {
        for (; i < static_cast<int>(tree_.size()); i += i & -i)
            tree_[i] += w;
    }

    std::int64_t prefix(int i) const {
        std::int64_t s = 0;
        for (; i > 0; i -= i & -i)
            s += tree_[i];
        return s;
    }

    std::int64_t range(int lo, int hi) const {  // inclusive; empty when lo > hi
        return lo > hi ? 0 : prefix(hi) - prefix(lo - 1);
    }

  private:
    std::vector<std::int64_t> tree_;
};

}  // namespace detail

/// Positive minus negative crossings. Column sweep with a Fenwick tree:
/// a horizontal arc contributes its direction weight to its row while the
/// sweep column lies strictly inside its span, and each column's vertical
/// arc picks up the weighted row count strictly inside its own span.
/// Agrees with summing crossings(d) signs on every diagram.
inline std::int64_t writhe(const LinkGrid& d) {
    const int n = d.size();
    const Perm black_row = inverse(d.black());
    const Perm white_row = inverse(d.white());

    struct Event {
        int row;
        int weight;
    };
    std::vector<std::vector<Event>> at_column(static_cast<std::size_t>(n) + 2);
    for (int r = 1; r <= n; ++r) {
        const int col_from = d.white_col(r);
        const int col_to = d.black_col(r);
        const int lo = col_from < col_to ? col_from : col_to;
        const int hi = col_from < col_to ? col_to : col_from;
        if (lo + 1 > hi - 1)
            continue;
        const int w = col_to > col_from ? 1 : -1;
        at_column[lo + 1].push_back({r, w});
        at_column[hi].push_back({r, -w});
    }

    detail::SignedFenwick active(n);
    std::int64_t total = 0;
    for (int c = 1; c <= n; ++c) {
        for (const Event& e : at_column[c])
            active.add(e.row, e.weight);
        const int row_from = black_row[c - 1];
        const int row_to = white_row[c - 1];
        const int lo = row_from < row_to ? row_from : row_to;
        const int hi = row_from < row_to ? row_to : row_from;
        const std::int64_t inside = active.range(lo + 1, hi - 1);
        total += (row_to > row_from ? inside : -inside);
    }
    return total;
}

/// Total grid-unit length of all arcs of the knot; always even.
inline std::int64_t knot_length(const KnotLoop& k) {
    const int s = k.size();
    std::int64_t total = 0;
    for (int i = 1; i <= s; ++i) {
        const int next = (i % s) + 1;
        total += std::abs(k.row(next) - k.row(i));
        total += std::abs(k.col(next) - k.col(i));
    }
    return total;
}

/// Rows (equivalently columns) the knot occupies; the diagram has 2s arcs.
inline int knot_size(const KnotLoop& k) { return k.size(); }

}  // namespace gridlinks
