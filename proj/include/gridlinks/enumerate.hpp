#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gridlinks/grid.hpp"
#include "gridlinks/invariants.hpp"
#include "gridlinks/rational.hpp"

namespace gridlinks {

struct SizeLimitExceeded : std::length_error {
    using std::length_error::length_error;
};

/// All derangements of {1..n} in lexicographic order.
inline std::vector<Perm> all_derangements(int n) {
    std::vector<Perm> out;
    Perm current(n);
    std::vector<bool> taken(n, false);
    auto place = [&](auto&& self, int pos) -> void {
        if (pos == n) {
            out.push_back(current);
            return;
        }
        for (int v = 1; v <= n; ++v) {
            if (taken[v - 1] || v == pos + 1)
                continue;
            taken[v - 1] = true;
            current[pos] = v;
            self(self, pos + 1);
            taken[v - 1] = false;
        }
    };
    place(place, 0);
    return out;
}

namespace detail {

inline void check_enumeration_size(int n, bool allow_large) {
    if (n < 2)
        throw SizeLimitExceeded("enumeration requires n >= 2");
    const int limit = allow_large ? 8 : 7;
    if (n > limit)
        throw SizeLimitExceeded("enumeration at n > 7 must be explicitly enabled (hard cap 8)");
}

}  // namespace detail

/// Visits every valid n x n diagram exactly once, as (permutation x
/// derangement) pairs via from_derangement: lexicographic black
/// permutations outer, lexicographic derangements inner. n = 8 (~595M
/// diagrams) is gated behind allow_large.
template <typename Visitor>
void enumerate_links(int n, Visitor&& visit, bool allow_large = false) {
    detail::check_enumeration_size(n, allow_large);
    const std::vector<Perm> derangements = all_derangements(n);
    Perm black(n);
    for (int i = 0; i < n; ++i)
        black[i] = i + 1;
    do {
        for (const Perm& delta : derangements)
            visit(from_derangement(black, delta));
    } while (std::next_permutation(black.begin(), black.end()));
}

struct EnumerationRow {
    int n = 0;
    std::vector<std::uint64_t> count_by_k;  // count_by_k[k-1] = c_{n,k}
    std::uint64_t total = 0;
    BigRational mean_components;

    std::uint64_t count(int k) const {
        return (k >= 1 && k <= static_cast<int>(count_by_k.size())) ? count_by_k[k - 1] : 0;
    }
};

/// Tallies c_{n,k} by component count over the full enumeration.
inline EnumerationRow exact_table_by_enumeration(int n, bool allow_large = false) {
    EnumerationRow row;
    row.n = n;
    row.count_by_k.assign(static_cast<std::size_t>(n / 2), 0);
    std::uint64_t weighted = 0;
    enumerate_links(
        n,
        [&](const LinkGrid& d) {
            const int k = component_count(d);
            ++row.count_by_k[k - 1];
            ++row.total;
            weighted += static_cast<std::uint64_t>(k);
        },
        allow_large);
    row.mean_components = BigRational(weighted, row.total);
    return row;
}

/// Counts the diagrams whose transition permutation is one n-cycle;
/// equals n!(n-1)!.
inline std::uint64_t enumerate_knot_diagrams(int n, bool allow_large = false) {
    std::uint64_t knots = 0;
    enumerate_links(
        n,
        [&](const LinkGrid& d) {
            if (component_count(d) == 1)
                ++knots;
        },
        allow_large);
    return knots;
}

}  // namespace gridlinks
