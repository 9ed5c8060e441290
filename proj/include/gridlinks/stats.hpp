#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>

namespace gridlinks::stats {

struct DegenerateSample : std::domain_error {
    using std::domain_error::domain_error;
};

struct DegenerateDesign : std::domain_error {
    using std::domain_error::domain_error;
};

struct Interval {
    double lo;
    double hi;

    bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Single-pass moment accumulator: count, mean, central power sums m2-m4,
/// min/max, and an integer-binned histogram. Uses the shifted one-pass and
/// pairwise-combine update rules, so merge(a, b) reproduces the summary of
/// the concatenated sample to ~1e-12 relative error. Moments are
/// population-normalized (divide by count).
class SampleSummary {
  public:
    SampleSummary() = default;
    explicit SampleSummary(double bin_width) : bin_width_(bin_width) {
        if (!(bin_width > 0))
            throw std::invalid_argument("histogram bin width must be positive");
    }

    void add(double x) {
        const double n1 = static_cast<double>(count_);
        ++count_;
        const double n = static_cast<double>(count_);
        const double delta = x - mean_;
        const double delta_n = delta / n;
        const double delta_n2 = delta_n * delta_n;
        const double term1 = delta * delta_n * n1;
        mean_ += delta_n;
        m4_ += term1 * delta_n2 * (n * n - 3 * n + 3) + 6 * delta_n2 * m2_ - 4 * delta_n * m3_;
        m3_ += term1 * delta_n * (n - 2) - 3 * delta_n * m2_;
        m2_ += term1;
        if (x < min_)
            min_ = x;
        if (x > max_)
            max_ = x;
        ++histogram_[bin_of(x)];
    }

    static SampleSummary merged(const SampleSummary& a, const SampleSummary& b) {
        if (a.bin_width_ != b.bin_width_)
            throw std::invalid_argument("cannot merge summaries with different bin widths");
        if (a.count_ == 0)
            return b;
        if (b.count_ == 0)
            return a;
        SampleSummary out(a.bin_width_);
        const double na = static_cast<double>(a.count_);
        const double nb = static_cast<double>(b.count_);
        const double n = na + nb;
        const double delta = b.mean_ - a.mean_;
        const double delta2 = delta * delta;

        out.count_ = a.count_ + b.count_;
        out.mean_ = a.mean_ + delta * nb / n;
        out.m2_ = a.m2_ + b.m2_ + delta2 * na * nb / n;
        out.m3_ = a.m3_ + b.m3_ + delta * delta2 * na * nb * (na - nb) / (n * n) +
                  3.0 * delta * (na * b.m2_ - nb * a.m2_) / n;
        out.m4_ = a.m4_ + b.m4_ +
                  delta2 * delta2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                  6.0 * delta2 * (na * na * b.m2_ + nb * nb * a.m2_) / (n * n) +
                  4.0 * delta * (na * b.m3_ - nb * a.m3_) / n;
        out.min_ = a.min_ < b.min_ ? a.min_ : b.min_;
        out.max_ = a.max_ > b.max_ ? a.max_ : b.max_;
        out.histogram_ = a.histogram_;
        for (const auto& [bin, c] : b.histogram_)
            out.histogram_[bin] += c;
        return out;
    }

    void merge(const SampleSummary& other) { *this = merged(*this, other); }

    std::uint64_t count() const { return count_; }
    double mean() const { return mean_; }
    double min() const { return min_; }
    double max() const { return max_; }

    // central power sums
    double m2() const { return m2_; }
    double m3() const { return m3_; }
    double m4() const { return m4_; }

    double variance() const { return count_ == 0 ? 0.0 : m2_ / static_cast<double>(count_); }
    double moment3() const { return count_ == 0 ? 0.0 : m3_ / static_cast<double>(count_); }
    double moment4() const { return count_ == 0 ? 0.0 : m4_ / static_cast<double>(count_); }

    /// Raw kurtosis m4/sigma^4 (normal = 3; no excess subtraction).
    double kurtosis() const {
        if (count_ < 4 || !(m2_ > 0))
            throw DegenerateSample("kurtosis needs at least 4 values and positive variance");
        return static_cast<double>(count_) * m4_ / (m2_ * m2_);
    }

    /// mean +- 1.96 sqrt(variance/count), the normal approximation.
    Interval mean_ci95() const {
        if (count_ == 0)
            throw DegenerateSample("confidence interval of an empty sample");
        const double half = 1.96 * std::sqrt(variance() / static_cast<double>(count_));
        return {mean_ - half, mean_ + half};
    }

    double bin_width() const { return bin_width_; }
    std::int64_t bin_of(double x) const {
        return static_cast<std::int64_t>(std::floor(x / bin_width_));
    }
    const std::map<std::int64_t, std::uint64_t>& histogram() const { return histogram_; }

  private:
    std::uint64_t count_ = 0;
    double mean_ = 0;
    double m2_ = 0;
    double m3_ = 0;
    double m4_ = 0;
    double min_ = std::numeric_limits<double>::infinity();
    double max_ = -std::numeric_limits<double>::infinity();
    double bin_width_ = 1.0;
    std::map<std::int64_t, std::uint64_t> histogram_;
};

struct FitResult {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    std::size_t n_points = 0;
    double residual_std_error = 0;
};

/// Ordinary least squares y = slope*x + intercept. With
/// force_zero_intercept the intercept is pinned to 0 and
/// slope = sum(xy)/sum(x^2); R^2 is then the uncentered version.
inline FitResult ols_fit(std::span<const std::pair<double, double>> points,
                         bool force_zero_intercept = false) {
    const std::size_t n = points.size();
    if (n < 2)
        throw DegenerateDesign("least squares needs at least 2 points");

    FitResult fit;
    fit.n_points = n;

    if (force_zero_intercept) {
        double sxx = 0, sxy = 0, syy = 0;
        for (const auto& [x, y] : points) {
            sxx += x * x;
            sxy += x * y;
            syy += y * y;
        }
        if (!(sxx > 0))
            throw DegenerateDesign("regressor is identically zero");
        fit.slope = sxy / sxx;
        double ss_res = 0;
        for (const auto& [x, y] : points) {
            const double r = y - fit.slope * x;
            ss_res += r * r;
        }
        fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
        fit.residual_std_error = n > 1 ? std::sqrt(ss_res / static_cast<double>(n - 1)) : 0.0;
        return fit;
    }

    double mean_x = 0, mean_y = 0;
    for (const auto& [x, y] : points) {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : points) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    if (!(sxx > 0))
        throw DegenerateDesign("all x values are equal");
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    double ss_res = 0;
    for (const auto& [x, y] : points) {
        const double r = y - (fit.slope * x + fit.intercept);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    fit.residual_std_error = n > 2 ? std::sqrt(ss_res / static_cast<double>(n - 2)) : 0.0;
    return fit;
}

/// Pearson chi-square statistic against the equal-probability null over
/// the given observed counts.
inline double chi_square_uniform(std::span<const std::uint64_t> observed) {
    if (observed.empty())
        throw DegenerateSample("chi-square over zero cells");
    std::uint64_t total = 0;
    for (std::uint64_t c : observed)
        total += c;
    if (total == 0)
        throw DegenerateSample("chi-square over an empty sample");
    const double expected = static_cast<double>(total) / static_cast<double>(observed.size());
    double stat = 0;
    for (std::uint64_t c : observed) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

}  // namespace gridlinks::stats
