#pragma once

#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gridlinks {

// Permutation of {1..n}: element i+1 maps to p[i]. Values are 1-based
// throughout; rows are numbered 1..n bottom-to-top, columns 1..n
// left-to-right.
using Perm = std::vector<int>;

struct NotAPermutation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Collision : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotADerangement : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline bool is_permutation(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 1 || v > static_cast<int>(p.size()) || seen[v - 1])
            return false;
        seen[v - 1] = true;
    }
    return true;
}

inline bool is_derangement(const Perm& p) {
    if (!is_permutation(p))
        return false;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] == static_cast<int>(i) + 1)
            return false;
    return true;
}

inline Perm inverse(const Perm& p) {
    Perm inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        inv[p[i] - 1] = static_cast<int>(i) + 1;
    return inv;
}

inline bool rows_collide(const Perm& black_col, const Perm& white_col) {
    for (std::size_t r = 0; r < black_col.size(); ++r)
        if (black_col[r] == white_col[r])
            return true;
    return false;
}

/// An n x n grid diagram: one black and one white dot per row and per
/// column, never in the same cell. Row r holds its black dot in column
/// black_col(r) and its white dot in column white_col(r). Immutable.
class LinkGrid {
  public:
    static LinkGrid unchecked(Perm black_col, Perm white_col) {
        assert(black_col.size() >= 2);
        assert(is_permutation(black_col) && is_permutation(white_col));
        assert(!rows_collide(black_col, white_col));
        return LinkGrid(std::move(black_col), std::move(white_col));
    }

    int size() const { return static_cast<int>(black_.size()); }

    // row in 1..n
    int black_col(int row) const { return black_[row - 1]; }
    int white_col(int row) const { return white_[row - 1]; }

    const Perm& black() const { return black_; }
    const Perm& white() const { return white_; }

    bool operator==(const LinkGrid& o) const {
        return black_ == o.black_ && white_ == o.white_;
    }

  private:
    LinkGrid(Perm black_col, Perm white_col)
        : black_(std::move(black_col)), white_(std::move(white_col)) {}

    Perm black_;
    Perm white_;
};

/// Checks both column assignments and builds the diagram.
/// Collision is the rejection signal used by the sampler.
inline LinkGrid validate_link(Perm black_col, Perm white_col) {
    if (black_col.size() < 2 || black_col.size() != white_col.size())
        throw NotAPermutation("column assignments must have equal length n >= 2");
    if (!is_permutation(black_col))
        throw NotAPermutation("black column assignment is not a permutation");
    if (!is_permutation(white_col))
        throw NotAPermutation("white column assignment is not a permutation");
    if (rows_collide(black_col, white_col))
        throw Collision("black and white dots share a cell");
    return LinkGrid::unchecked(std::move(black_col), std::move(white_col));
}

/// white_col[r] = delta[black_col[r]]; a derangement delta can never put
/// both dots of a row in the same cell, so the result is always valid.
inline LinkGrid from_derangement(const Perm& black_col, const Perm& delta) {
    if (black_col.size() < 2 || black_col.size() != delta.size())
        throw NotAPermutation("black_col and delta must have equal length n >= 2");
    if (!is_permutation(black_col))
        throw NotAPermutation("black column assignment is not a permutation");
    if (!is_permutation(delta))
        throw NotAPermutation("delta is not a permutation");
    if (!is_derangement(delta))
        throw NotADerangement("delta has a fixed point");
    Perm white(black_col.size());
    for (std::size_t r = 0; r < black_col.size(); ++r)
        white[r] = delta[black_col[r] - 1];
    return LinkGrid::unchecked(black_col, std::move(white));
}

/// A knot encoded by visit order: step i places a black dot at
/// (rho[i], kappa[i]) and a white dot at (rho[i+1 mod s], kappa[i]).
/// Canonicalized so the traversal starts at the black dot in row 1.
class KnotLoop {
  public:
    static KnotLoop validated(Perm rho, Perm kappa) {
        if (rho.size() < 2 || rho.size() != kappa.size())
            throw NotAPermutation("rho and kappa must have equal length s >= 2");
        if (!is_permutation(rho))
            throw NotAPermutation("rho is not a permutation");
        if (!is_permutation(kappa))
            throw NotAPermutation("kappa is not a permutation");
        if (rho[0] != 1)
            throw NotAPermutation("visit order must start at row 1 (rho[1] = 1)");
        return KnotLoop(std::move(rho), std::move(kappa));
    }

    static KnotLoop unchecked(Perm rho, Perm kappa) {
        assert(rho.size() >= 2 && rho.size() == kappa.size());
        assert(is_permutation(rho) && is_permutation(kappa) && rho[0] == 1);
        return KnotLoop(std::move(rho), std::move(kappa));
    }

    int size() const { return static_cast<int>(rho_.size()); }

    // step in 1..s
    int row(int step) const { return rho_[step - 1]; }
    int col(int step) const { return kappa_[step - 1]; }

    const Perm& rho() const { return rho_; }
    const Perm& kappa() const { return kappa_; }

    bool operator==(const KnotLoop& o) const {
        return rho_ == o.rho_ && kappa_ == o.kappa_;
    }

  private:
    KnotLoop(Perm rho, Perm kappa)
        : rho_(std::move(rho)), kappa_(std::move(kappa)) {}

    Perm rho_;
    Perm kappa_;
};

enum class ArcOrientation { vertical, horizontal };

/// One straight segment of the diagram. Vertical arcs run black -> white
/// inside a column, horizontal arcs white -> black inside a row; from/to
/// are the endpoints along the varying axis, in travel direction.
struct Arc {
    ArcOrientation orientation;
    int fixed_coord;
    int from;
    int to;

    int length() const { return std::abs(to - from); }
    int lo() const { return from < to ? from : to; }
    int hi() const { return from < to ? to : from; }
    int direction() const { return to > from ? 1 : -1; }
};

struct Crossing {
    int row;
    int col;
    int sign;  // +1 or -1
};

inline LinkGrid knot_to_link(const KnotLoop& k) {
    const int s = k.size();
    Perm black(s), white(s);
    for (int i = 1; i <= s; ++i) {
        const int next = (i % s) + 1;
        black[k.row(i) - 1] = k.col(i);
        white[k.row(next) - 1] = k.col(i);
    }
    return LinkGrid::unchecked(std::move(black), std::move(white));
}

/// Reflects columns c -> n+1-c. Involution; preserves size, component
/// count and arc lengths; negates writhe.
inline LinkGrid mirror(const LinkGrid& d) {
    const int n = d.size();
    Perm black(n), white(n);
    for (int r = 1; r <= n; ++r) {
        black[r - 1] = n + 1 - d.black_col(r);
        white[r - 1] = n + 1 - d.white_col(r);
    }
    return LinkGrid::unchecked(std::move(black), std::move(white));
}

/// All 2n arcs as straight planar segments: the n vertical column arcs
/// first (columns 1..n), then the n horizontal row arcs (rows 1..n).
inline std::vector<Arc> arcs(const LinkGrid& d) {
    const int n = d.size();
    std::vector<Arc> out;
    out.reserve(2 * static_cast<std::size_t>(n));
    const Perm black_row = inverse(d.black());
    const Perm white_row = inverse(d.white());
    for (int c = 1; c <= n; ++c)
        out.push_back({ArcOrientation::vertical, c, black_row[c - 1], white_row[c - 1]});
    for (int r = 1; r <= n; ++r)
        out.push_back({ArcOrientation::horizontal, r, d.white_col(r), d.black_col(r)});
    return out;
}

/// sigma(r) = the row reached from row r's black dot by following its
/// column arc to the white dot and then that row's horizontal arc.
/// A derangement exactly when the diagram is collision-free; its cycles
/// are the link components.
inline Perm transition_permutation(const LinkGrid& d) {
    const int n = d.size();
    const Perm white_row = inverse(d.white());
    Perm sigma(n);
    for (int r = 1; r <= n; ++r)
        sigma[r - 1] = white_row[d.black_col(r) - 1];
    return sigma;
}

// --- serialization ---

inline nlohmann::json to_json(const LinkGrid& d) {
    return {{"n", d.size()}, {"black_col", d.black()}, {"white_col", d.white()}};
}

inline LinkGrid link_from_json(const nlohmann::json& j) {
    Perm black = j.at("black_col").get<Perm>();
    Perm white = j.at("white_col").get<Perm>();
    if (j.at("n").get<int>() != static_cast<int>(black.size()))
        throw NotAPermutation("n does not match column assignment length");
    return validate_link(std::move(black), std::move(white));
}

inline nlohmann::json to_json(const KnotLoop& k) {
    return {{"s", k.size()}, {"rho", k.rho()}, {"kappa", k.kappa()}};
}

inline KnotLoop knot_from_json(const nlohmann::json& j) {
    Perm rho = j.at("rho").get<Perm>();
    Perm kappa = j.at("kappa").get<Perm>();
    if (j.at("s").get<int>() != static_cast<int>(rho.size()))
        throw NotAPermutation("s does not match visit order length");
    return KnotLoop::validated(std::move(rho), std::move(kappa));
}

/// Compact one-line form "n;b1,...,bn;w1,...,wn".
inline std::string to_text_line(const LinkGrid& d) {
    std::ostringstream os;
    os << d.size() << ';';
    for (int r = 1; r <= d.size(); ++r)
        os << (r > 1 ? "," : "") << d.black_col(r);
    os << ';';
    for (int r = 1; r <= d.size(); ++r)
        os << (r > 1 ? "," : "") << d.white_col(r);
    return os.str();
}

inline LinkGrid link_from_text_line(const std::string& line) {
    std::istringstream is(line);
    auto read_int = [&is](char terminator) {
        int v = 0;
        char sep = '\0';
        if (!(is >> v))
            throw NotAPermutation("malformed grid text line");
        is.get(sep);
        if (sep != terminator)
            throw NotAPermutation("malformed grid text line");
        return v;
    };
    const int n = read_int(';');
    if (n < 2)
        throw NotAPermutation("grid size must be at least 2");
    Perm black(n), white(n);
    for (int r = 0; r < n; ++r)
        black[r] = read_int(r + 1 < n ? ',' : ';');
    for (int r = 0; r < n; ++r) {
        if (r + 1 < n) {
            white[r] = read_int(',');
        } else {
            if (!(is >> white[r]))
                throw NotAPermutation("malformed grid text line");
        }
    }
    return validate_link(std::move(black), std::move(white));
}

}  // namespace gridlinks
