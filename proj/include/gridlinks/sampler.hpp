#pragma once

#include <algorithm>
#include <cstdint>
#include <random>

#include "gridlinks/grid.hpp"

namespace gridlinks {

/// Reproducible random source. Identical (seed, stream_index) replays the
/// identical draw sequence on every platform: mt19937_64 output is pinned
/// by the standard, and all bounded draws below use explicit rejection
/// instead of the implementation-defined std distributions.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_index = 0)
        : seed_(seed), stream_index_(stream_index),
          engine_(derive_state(seed, stream_index)) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, bound). Rejects the top sliver of the 64-bit range
    /// so every residue is hit exactly floor(2^64/bound) times.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold)
                return r % bound;
        }
    }

    /// Uniform on [lo, hi] inclusive.
    std::int64_t next_in(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        next_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    double next_unit() {  // uniform in [0,1), 53-bit resolution
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

  private:
    static std::uint64_t splitmix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    static std::uint64_t derive_state(std::uint64_t seed, std::uint64_t stream) {
        return splitmix(splitmix(seed) ^ (0xda3e39cb94b95bdbull + stream));
    }

    std::uint64_t seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
};

struct RejectionCounter {
    std::uint64_t attempts = 0;
    std::uint64_t accepted = 0;

    double acceptance_rate() const {
        return attempts == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(attempts);
    }
};

/// Unbiased Fisher-Yates shuffle of {1..n}: position i swaps with a
/// uniform index from the unconsumed prefix. Uniform over all n! outcomes.
inline Perm random_permutation(int n, RandomStream& rs) {
    Perm p(n);
    for (int i = 0; i < n; ++i)
        p[i] = i + 1;
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<int>(rs.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(p[i], p[j]);
    }
    return p;
}

/// Uniform over all c_n = n! * !n valid diagrams: two independent uniform
/// permutations, rejecting on collision. Acceptance tends to 1/e, so the
/// expected number of attempts stays below 3 at every n.
inline LinkGrid sample_link(int n, RandomStream& rs, RejectionCounter* counter = nullptr) {
    for (;;) {
        if (counter)
            ++counter->attempts;
        Perm black = random_permutation(n, rs);
        Perm white = random_permutation(n, rs);
        if (!rows_collide(black, white)) {
            if (counter)
                ++counter->accepted;
            return LinkGrid::unchecked(std::move(black), std::move(white));
        }
    }
}

/// Uniform over all n!(n-1)! full-grid knot diagrams: rho fixed to start
/// at row 1 with a uniform arrangement of the remaining rows, kappa a
/// uniform permutation.
inline KnotLoop sample_full_knot(int n, RandomStream& rs) {
    Perm rho(n);
    rho[0] = 1;
    for (int i = 1; i < n; ++i)
        rho[i] = i + 1;
    for (int i = n - 1; i > 1; --i) {
        const auto j = 1 + static_cast<int>(rs.next_below(static_cast<std::uint64_t>(i)));
        std::swap(rho[i], rho[j]);
    }
    return KnotLoop::unchecked(std::move(rho), random_permutation(n, rs));
}

// order-preserving relabel of distinct values to {1..s}
inline Perm compact_labels(const Perm& used) {
    Perm sorted = used;
    std::sort(sorted.begin(), sorted.end());
    Perm out(used.size());
    for (std::size_t i = 0; i < used.size(); ++i)
        out[i] = static_cast<int>(
                     std::lower_bound(sorted.begin(), sorted.end(), used[i]) - sorted.begin()) +
                 1;
    return out;
}

/// Grows a knot from the black dot in row 1 until the row sequence returns
/// to 1: reads rows off a uniform permutation tau, closing at the position
/// s where 1 appears (redrawn when s = 1, the empty knot). The s used rows
/// and columns are compacted to {1..s} preserving order. The resulting
/// size s is uniform on {2..n}.
inline KnotLoop sample_closing_knot(int n, RandomStream& rs) {
    int s = 0;
    Perm tau;
    for (;;) {
        tau = random_permutation(n, rs);
        for (int i = 0; i < n; ++i) {
            if (tau[i] == 1) {
                s = i + 1;
                break;
            }
        }
        if (s >= 2)
            break;
    }
    const Perm cols = random_permutation(n, rs);

    Perm rows_visited(s);
    rows_visited[0] = 1;
    for (int i = 1; i < s; ++i)
        rows_visited[i] = tau[i - 1];
    Perm cols_visited(cols.begin(), cols.begin() + s);

    return KnotLoop::unchecked(compact_labels(rows_visited), compact_labels(cols_visited));
}

}  // namespace gridlinks
