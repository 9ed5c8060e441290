#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridlinks/rational.hpp"
#include "gridlinks/series.hpp"

namespace gridlinks::exact {

inline BigInt factorial(int n) {
    assert(n >= 0);
    BigInt f = 1;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

/// !n = n * !(n-1) + (-1)^n, the number of derangements of n elements.
inline BigInt subfactorial(int n) {
    assert(n >= 0);
    BigInt d = 1;
    for (int i = 1; i <= n; ++i) {
        d *= i;
        d += (i % 2 == 0) ? 1 : -1;
    }
    return d;
}

/// c_n = n! * !n, the number of valid n x n grid diagrams.
inline BigInt count_links(int n) { return factorial(n) * subfactorial(n); }

/// c_{n,1} = n!(n-1)!, the number of n x n knot diagrams.
inline BigInt count_knots(int n) { return factorial(n) * factorial(n - 1); }

/// cbar_n = c_n / (n!)^2 = sum_{i=0..n} (-1)^i / i!; tends to 1/e.
inline BigRational cbar_links(int n) {
    BigRational sum = 0;
    BigInt fact = 1;
    for (int i = 0; i <= n; ++i) {
        if (i > 0)
            fact *= i;
        sum += BigRational(i % 2 == 0 ? BigInt(1) : BigInt(-1), fact);
    }
    return sum;
}

/// cbar_{n,1} = 1/n.
inline BigRational cbar_knots(int n) { return BigRational(1, n); }

/// Generalized harmonic numbers H_{n,m} = sum_{i=1..n} i^-m for m in {1,2},
/// exact, with H_{0,m} = 0.
class HarmonicTable {
  public:
    explicit HarmonicTable(int n_max) : h1_(n_max + 1), h2_(n_max + 1) {
        for (int i = 1; i <= n_max; ++i) {
            h1_[i] = h1_[i - 1] + BigRational(1, i);
            h2_[i] = h2_[i - 1] + BigRational(1, BigInt(i) * i);
        }
    }

    int n_max() const { return static_cast<int>(h1_.size()) - 1; }
    const BigRational& h(int n) const { return h1_.at(n); }
    const BigRational& h2(int n) const { return h2_.at(n); }

  private:
    std::vector<BigRational> h1_;
    std::vector<BigRational> h2_;
};

/// Exact table of cbar_{n,k} (and the integer counts c_{n,k} they scale
/// to) for 0 <= n <= n_max, 0 <= k <= k_max.
class CountTable {
  public:
    CountTable(int n_max, int k_max)
        : n_max_(n_max), k_max_(k_max),
          cbar_(static_cast<std::size_t>(n_max + 1) * (k_max + 1)) {
        factorials_.reserve(n_max + 1);
        BigInt f = 1;
        factorials_.push_back(f);
        for (int i = 1; i <= n_max; ++i) {
            f *= i;
            factorials_.push_back(f);
        }
    }

    int n_max() const { return n_max_; }
    int k_max() const { return k_max_; }

    const BigRational& cbar(int n, int k) const {
        static const BigRational zero = 0;
        if (n < 0 || n > n_max_ || k < 0 || k > k_max_)
            return zero;
        return cbar_[index(n, k)];
    }

    /// c_{n,k} = (n!)^2 * cbar_{n,k}; exactly integral for every entry.
    BigInt count(int n, int k) const {
        const BigRational scaled = cbar(n, k) * square_factorial(n);
        if (denominator(scaled) != 1)
            throw std::logic_error("(n!)^2 * cbar_{n,k} failed to reduce to an integer");
        return numerator(scaled);
    }

    BigInt total(int n) const {
        BigInt sum = 0;
        for (int k = 1; k <= k_max_; ++k)
            sum += count(n, k);
        return sum;
    }

    BigRational cbar_total(int n) const {
        BigRational sum = 0;
        for (int k = 1; k <= k_max_; ++k)
            sum += cbar(n, k);
        return sum;
    }

    /// E[k^power] over diagrams of size n, from the table itself.
    BigRational moment_components(int n, int power) const {
        BigRational weighted = 0;
        for (int k = 1; k <= k_max_; ++k) {
            BigInt kp = 1;
            for (int p = 0; p < power; ++p)
                kp *= k;
            weighted += BigRational(kp) * cbar(n, k);
        }
        return weighted / cbar_total(n);
    }

    BigRational mean_components(int n) const { return moment_components(n, 1); }

    BigRational variance_components(int n) const {
        const BigRational mean = moment_components(n, 1);
        return moment_components(n, 2) - mean * mean;
    }

    BigRational& cell(int n, int k) { return cbar_[index(n, k)]; }

  private:
    std::size_t index(int n, int k) const {
        return static_cast<std::size_t>(n) * (k_max_ + 1) + k;
    }

    BigInt square_factorial(int n) const {
        return factorials_.at(n) * factorials_.at(n);
    }

    int n_max_;
    int k_max_;
    std::vector<BigRational> cbar_;
    std::vector<BigInt> factorials_;
};

/// Fills the table by the recurrence
///   cbar_{n,1} = 1/n  (n >= 2),
///   cbar_{n,k} = (1/n) * sum_{i=1..n-2} cbar_{i,k-1}  (k >= 2),
/// with cbar_{0,0} = 1 (the empty link). Prefix sums keep it O(n*k).
inline CountTable cbar_table_recurrence(int n_max, int k_max) {
    if (n_max < 2 || k_max < 1)
        throw std::invalid_argument("cbar_table_recurrence requires n_max >= 2, k_max >= 1");
    CountTable table(n_max, k_max);
    table.cell(0, 0) = 1;
    for (int n = 2; n <= n_max; ++n)
        table.cell(n, 1) = BigRational(1, n);
    for (int k = 2; k <= k_max; ++k) {
        BigRational prefix = 0;  // sum_{i=1..n-2} cbar_{i,k-1}, grown with n
        for (int n = 2; n <= n_max; ++n) {
            prefix += table.cbar(n - 2, k - 1);
            if (prefix != 0)
                table.cell(n, k) = prefix / n;
        }
    }
    return table;
}

namespace detail {

// descending distinct-part recursion over partitions of n into exactly k
// parts >= 2; a run of e copies of `part` contributes 1/(part^e * e!)
inline void partition_sum(int remaining, int parts_left, int max_part,
                          const BigRational& weight, BigRational& total) {
    if (parts_left == 0) {
        if (remaining == 0)
            total += weight;
        return;
    }
    if (remaining < 2 * parts_left || max_part < 2)
        return;
    for (int part = std::min(max_part, remaining - 2 * (parts_left - 1)); part >= 2; --part) {
        BigRational run_weight = weight;
        for (int e = 1; e <= parts_left && part * e + 2 * (parts_left - e) <= remaining; ++e) {
            run_weight /= BigRational(part) * e;
            partition_sum(remaining - part * e, parts_left - e, part - 1, run_weight, total);
        }
    }
}

}  // namespace detail

/// cbar_{n,k} as the sum over component-size multisets: partitions of n
/// into exactly k parts, every part >= 2, each contributing
/// 1 / (prod i^{e_i} * prod e_i!).
inline BigRational cbar_partition(int n, int k) {
    if (n < 0 || k < 0)
        throw std::invalid_argument("cbar_partition requires n, k >= 0");
    if (k == 0)
        return n == 0 ? BigRational(1) : BigRational(0);
    if (2 * k > n)
        return 0;
    BigRational total = 0;
    detail::partition_sum(n, k, n, BigRational(1), total);
    return total;
}

/// (-ln(1-x) - x)^k / k!, the fixed-k generating function of cbar_{n,k},
/// truncated at the given order.
inline SeriesQ component_count_series(int k, std::size_t order) {
    SeriesQ base = log_reciprocal_one_minus_x(order);
    base.set_coeff(1, 0);  // drop the x term: components use >= 2 rows
    SeriesQ powed = base.pow(static_cast<unsigned>(k));
    SeriesQ out(order);
    BigRational inv_kfact = BigRational(1, factorial(k));
    for (std::size_t i = 0; i <= order; ++i)
        out.set_coeff(i, powed.coeff(i) * inv_kfact);
    return out;
}

/// (1-x)^{-1} e^{-x}, the generating function of cbar_n, truncated.
inline SeriesQ link_density_series(std::size_t order) {
    return geometric(order) * exp_minus_x(order);
}

/// Coefficient of x^n in the truncated fixed-k series; the truncation
/// order is n+1 so an extraction can never silently run off the end.
inline BigRational cbar_series(int n, int k) {
    if (n < 0 || k < 0)
        throw std::invalid_argument("cbar_series requires n, k >= 0");
    const auto order = static_cast<std::size_t>(n) + 1;
    return component_count_series(k, order).coeff(static_cast<std::size_t>(n));
}

/// EV(k) = (1/cbar_n) sum_{i=0..n-1} (-1)^i (H_{n-i} - 1) / i!.
inline BigRational expected_components(int n) {
    if (n < 2)
        throw std::invalid_argument("expected_components requires n >= 2");
    const HarmonicTable harmonic(n);
    BigRational sum = 0;
    BigInt fact = 1;
    for (int i = 0; i <= n - 1; ++i) {
        if (i > 0)
            fact *= i;
        const BigRational term = (harmonic.h(n - i) - 1) / BigRational(fact);
        sum += (i % 2 == 0) ? term : -term;
    }
    return sum / cbar_links(n);
}

/// E[k(k-1)] = (1/cbar_n) sum_{i=0..n} (-1)^i
///   (H_{n-i}^2 - H_{n-i,2} + 2i H_{n-i} + i(i-1)) / i!.
inline BigRational component_factorial_moment2(int n) {
    if (n < 2)
        throw std::invalid_argument("component_factorial_moment2 requires n >= 2");
    const HarmonicTable harmonic(n);
    BigRational sum = 0;
    BigInt fact = 1;
    for (int i = 0; i <= n; ++i) {
        if (i > 0)
            fact *= i;
        const BigRational& h = harmonic.h(n - i);
        const BigRational term =
            (h * h - harmonic.h2(n - i) + BigRational(2 * i) * h + BigInt(i) * (i - 1)) /
            BigRational(fact);
        sum += (i % 2 == 0) ? term : -term;
    }
    return sum / cbar_links(n);
}

/// Var(k) = E[k(k-1)] + EV(k) - EV(k)^2, all three pieces exact.
inline BigRational variance_components(int n) {
    const BigRational ev = expected_components(n);
    return component_factorial_moment2(n) + ev - ev * ev;
}

/// The closing-knot size law: uniform on {2..n}.
struct KnotSizeDistribution {
    int n;

    BigRational probability() const { return BigRational(1, n - 1); }

    std::vector<BigRational> pmf() const {  // index s-2 holds p_s
        return std::vector<BigRational>(n - 1, probability());
    }

    BigRational ev() const { return BigRational(n, 2) + 1; }

    BigRational variance() const { return BigRational(BigInt(n) * n - 2 * n, 12); }

    /// mu'_k = (1/(n-1)) sum_{i=2..n} i^k.
    BigRational raw_moment(int k) const {
        BigInt sum = 0;
        for (int i = 2; i <= n; ++i) {
            BigInt ik = 1;
            for (int p = 0; p < k; ++p)
                ik *= i;
            sum += ik;
        }
        return BigRational(sum, n - 1);
    }
};

inline KnotSizeDistribution knot_size_distribution(int n) {
    if (n < 2)
        throw std::invalid_argument("knot_size_distribution requires n >= 2");
    return KnotSizeDistribution{n};
}

/// (log2 n)^{k-1} / n - cbar_{n,k}, which the size bound theorem makes
/// nonnegative, with equality at k = 1. Evaluated at 50 decimal digits
/// with cbar exact; the margins dwarf the rounding at every (n,k).
inline Float50 bound_margin(const CountTable& table, int n, int k) {
    using boost::multiprecision::log;
    using boost::multiprecision::pow;
    const Float50 log2_n = log(Float50(n)) / log(Float50(2));
    const Float50 bound = pow(log2_n, k - 1) / Float50(n);
    return bound - to_float50(table.cbar(n, k));
}

// --- CSV export ---

/// Rows n,k,c_nk,cbar_num,cbar_den for every nonzero-eligible (n,k);
/// with_margins appends the bound margin column.
inline void write_count_table_csv(std::ostream& os, const CountTable& table,
                                  bool with_margins = false, int n_start = 2, int n_step = 1) {
    os << "# gridlinks v1 exact-table\n";
    os << "n,k,c_nk,cbar_num,cbar_den";
    if (with_margins)
        os << ",bound_margin";
    os << "\n";
    for (int n = n_start; n <= table.n_max(); n += n_step) {
        const int k_hi = std::min(table.k_max(), n / 2);
        for (int k = 1; k <= k_hi; ++k) {
            const BigRational& q = table.cbar(n, k);
            os << n << ',' << k << ',' << table.count(n, k).str() << ','
               << numerator(q).str() << ',' << denominator(q).str();
            if (with_margins) {
                const Float50 margin = bound_margin(table, n, k);
                os << ',' << (margin == 0 ? "0" : margin.str(12));
            }
            os << "\n";
        }
    }
}

/// Rows n,c_n,EV_num,EV_den,Var_num,Var_den; with_decimals appends
/// double approximations of EV and Var.
inline void write_summary_csv(std::ostream& os, const CountTable& table,
                              bool with_decimals = false, int n_start = 2, int n_step = 1) {
    os << "# gridlinks v1 exact-summary\n";
    os << "n,c_n,EV_num,EV_den,Var_num,Var_den";
    if (with_decimals)
        os << ",ev,var";
    os << "\n";
    char buf[64];
    for (int n = n_start; n <= table.n_max(); n += n_step) {
        const BigRational ev = expected_components(n);
        const BigRational var = variance_components(n);
        os << n << ',' << count_links(n).str() << ',' << numerator(ev).str() << ','
           << denominator(ev).str() << ',' << numerator(var).str() << ','
           << denominator(var).str();
        if (with_decimals) {
            std::snprintf(buf, sizeof buf, ",%.12g,%.12g", to_double(ev), to_double(var));
            os << buf;
        }
        os << "\n";
    }
}

}  // namespace gridlinks::exact
