#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "gridlinks/sampler.hpp"
#include "gridlinks/stats.hpp"

using namespace gridlinks;
using stats::SampleSummary;

namespace {

SampleSummary summarize(const std::vector<double>& xs) {
    SampleSummary s;
    for (double x : xs)
        s.add(x);
    return s;
}

bool close_rel(double a, double b, double rel) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= rel * scale;
}

double gauss(RandomStream& rs) {  // Box-Muller, deterministic under RandomStream
    const double u1 = 1.0 - rs.next_unit();
    const double u2 = rs.next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

TEST_CASE("population moments of a tiny sample") {
    const SampleSummary s = summarize({1, 2, 3});
    CHECK(s.count() == 3);
    CHECK(s.mean() == 2.0);
    CHECK(close_rel(s.variance(), 2.0 / 3.0, 1e-15));
    CHECK(s.min() == 1.0);
    CHECK(s.max() == 3.0);
}

TEST_CASE("merge reproduces the concatenated sample") {
    const SampleSummary left = summarize({1, 2});
    const SampleSummary right = summarize({3});
    const SampleSummary merged = SampleSummary::merged(left, right);
    const SampleSummary whole = summarize({1, 2, 3});
    CHECK(merged.count() == whole.count());
    CHECK(close_rel(merged.mean(), whole.mean(), 1e-12));
    CHECK(close_rel(merged.m2(), whole.m2(), 1e-12));
    CHECK(close_rel(merged.m3(), whole.m3(), 1e-12));
    CHECK(close_rel(merged.m4(), whole.m4(), 1e-12));
}

TEST_CASE("a constant sample has exactly zero central sums") {
    const SampleSummary s = summarize({5, 5, 5, 5, 5});
    CHECK(s.m2() == 0.0);
    CHECK(s.m3() == 0.0);
    CHECK(s.m4() == 0.0);
    const auto ci = s.mean_ci95();
    CHECK(ci.lo == 5.0);
    CHECK(ci.hi == 5.0);
}

TEST_CASE("merging is associative and commutative within tolerance") {
    RandomStream rs(71);
    std::vector<SampleSummary> batches;
    for (int b = 0; b < 5; ++b) {
        SampleSummary s;
        const int count = 50 + static_cast<int>(rs.next_below(200));
        for (int i = 0; i < count; ++i)
            s.add(static_cast<double>(rs.next_in(-50, 50)) + rs.next_unit());
        batches.push_back(s);
    }
    SampleSummary forward;
    for (const auto& b : batches)
        forward.merge(b);
    SampleSummary backward;
    for (auto it = batches.rbegin(); it != batches.rend(); ++it)
        backward.merge(*it);
    SampleSummary nested = SampleSummary::merged(
        SampleSummary::merged(batches[0], SampleSummary::merged(batches[1], batches[2])),
        SampleSummary::merged(batches[3], batches[4]));
    for (const SampleSummary* s : {&backward, &nested}) {
        REQUIRE(s->count() == forward.count());
        REQUIRE(close_rel(s->mean(), forward.mean(), 1e-10));
        REQUIRE(close_rel(s->m2(), forward.m2(), 1e-10));
        REQUIRE(close_rel(s->m3(), forward.m3(), 1e-10));
        REQUIRE(close_rel(s->m4(), forward.m4(), 1e-10));
    }
    CHECK(forward.histogram() == nested.histogram());
}

TEST_CASE("kurtosis of a standard normal sample is 3") {
    RandomStream rs(73);
    SampleSummary s;
    for (int i = 0; i < 1000000; ++i)
        s.add(gauss(rs));
    CHECK(std::abs(s.kurtosis() - 3.0) < 0.05);
    CHECK(std::abs(s.mean()) < 0.01);
}

TEST_CASE("kurtosis of a two-point sample is 1") {
    const SampleSummary s = summarize({-1, 1, -1, 1, -1, 1});
    CHECK(close_rel(s.kurtosis(), 1.0, 1e-12));
}

TEST_CASE("kurtosis is invariant under affine maps") {
    RandomStream rs(79);
    SampleSummary raw, mapped;
    for (int i = 0; i < 20000; ++i) {
        const double x = gauss(rs) + (rs.next_below(10) == 0 ? 4.0 : 0.0);
        raw.add(x);
        mapped.add(-2.5 * x + 17.0);
    }
    CHECK(close_rel(raw.kurtosis(), mapped.kurtosis(), 1e-9));
}

TEST_CASE("degenerate samples are rejected") {
    CHECK_THROWS_AS(summarize({1, 1, 1, 1}).kurtosis(), stats::DegenerateSample);
    CHECK_THROWS_AS(summarize({1, 2}).kurtosis(), stats::DegenerateSample);
    CHECK_THROWS_AS(SampleSummary().mean_ci95(), stats::DegenerateSample);
}

TEST_CASE("histogram mass equals the count") {
    RandomStream rs(83);
    SampleSummary s(0.5);
    for (int i = 0; i < 5000; ++i)
        s.add(static_cast<double>(rs.next_in(-20, 20)) / 3.0);
    std::uint64_t mass = 0;
    for (const auto& [bin, c] : s.histogram())
        mass += c;
    CHECK(mass == s.count());
    CHECK(s.bin_width() == 0.5);
}

TEST_CASE("confidence interval coverage of a fair coin is near 95%") {
    RandomStream rs(89);
    int covered = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        SampleSummary s;
        for (int i = 0; i < 10000; ++i)
            s.add(rs.next_below(2) == 0 ? -1.0 : 1.0);
        if (s.mean_ci95().contains(0.0))
            ++covered;
    }
    CHECK(covered >= 920);
    CHECK(covered <= 980);
}

TEST_CASE("least squares recovers exact lines") {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i <= 10; ++i)
        pts.emplace_back(i, 2.0 * i + 1.0);
    const auto fit = stats::ols_fit(pts);
    CHECK(close_rel(fit.slope, 2.0, 1e-12));
    CHECK(close_rel(fit.intercept, 1.0, 1e-12));
    CHECK(fit.r_squared == 1.0);
    CHECK(fit.n_points == 11);
    CHECK(fit.residual_std_error < 1e-10);

    std::vector<std::pair<double, double>> through_origin;
    for (int i = 1; i <= 8; ++i)
        through_origin.emplace_back(i, 3.0 * i);
    const auto zfit = stats::ols_fit(through_origin, true);
    CHECK(zfit.slope == 3.0);
    CHECK(zfit.intercept == 0.0);
    CHECK(zfit.r_squared == 1.0);
}

TEST_CASE("fit residuals are orthogonal to the regressors") {
    RandomStream rs(97);
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 400; ++i) {
        const double x = static_cast<double>(rs.next_in(1, 100));
        pts.emplace_back(x, 0.7 * x - 4.0 + 3.0 * gauss(rs));
    }
    const auto fit = stats::ols_fit(pts);
    double sum_r = 0, sum_xr = 0, scale = 0;
    for (const auto& [x, y] : pts) {
        const double r = y - (fit.slope * x + fit.intercept);
        sum_r += r;
        sum_xr += x * r;
        scale += std::abs(x * y);
    }
    CHECK(std::abs(sum_r) <= 1e-9 * scale);
    CHECK(std::abs(sum_xr) <= 1e-9 * scale);

    const auto zfit = stats::ols_fit(pts, true);
    double sum_xr0 = 0;
    for (const auto& [x, y] : pts)
        sum_xr0 += x * (y - zfit.slope * x);
    CHECK(std::abs(sum_xr0) <= 1e-9 * scale);
}

TEST_CASE("refitting identical data reproduces identical coefficients") {
    std::vector<std::pair<double, double>> pts;
    RandomStream rs(101);
    for (int i = 0; i < 50; ++i)
        pts.emplace_back(rs.next_unit() * 10, rs.next_unit() * 5);
    const auto a = stats::ols_fit(pts);
    const auto b = stats::ols_fit(pts);
    CHECK(a.slope == b.slope);
    CHECK(a.intercept == b.intercept);
    CHECK(a.r_squared == b.r_squared);
    CHECK(a.residual_std_error == b.residual_std_error);
}

TEST_CASE("degenerate designs are rejected") {
    std::vector<std::pair<double, double>> one{{1.0, 2.0}};
    CHECK_THROWS_AS(stats::ols_fit(one), stats::DegenerateDesign);
    std::vector<std::pair<double, double>> flat{{2.0, 1.0}, {2.0, 5.0}, {2.0, 9.0}};
    CHECK_THROWS_AS(stats::ols_fit(flat), stats::DegenerateDesign);
    std::vector<std::pair<double, double>> zeros{{0.0, 1.0}, {0.0, 2.0}};
    CHECK_THROWS_AS(stats::ols_fit(zeros, true), stats::DegenerateDesign);
}

TEST_CASE("chi-square statistic of a perfectly uniform table is zero") {
    const std::vector<std::uint64_t> counts{10, 10, 10, 10};
    CHECK(stats::chi_square_uniform(counts) == 0.0);
    const std::vector<std::uint64_t> skewed{20, 0, 10, 10};
    CHECK(stats::chi_square_uniform(skewed) == 20.0);
}
