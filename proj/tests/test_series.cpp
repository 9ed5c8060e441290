#include <catch2/catch_amalgamated.hpp>

#include "gridlinks/exact.hpp"
#include "gridlinks/series.hpp"

using namespace gridlinks;
using exact::SeriesQ;

TEST_CASE("series arithmetic is exact") {
    SeriesQ one_plus_x(4);
    one_plus_x.set_coeff(0, 1);
    one_plus_x.set_coeff(1, 1);

    const SeriesQ square = one_plus_x * one_plus_x;
    CHECK(square.coeff(0) == 1);
    CHECK(square.coeff(1) == 2);
    CHECK(square.coeff(2) == 1);
    CHECK(square.coeff(3) == 0);

    CHECK(one_plus_x.pow(3).coeff(2) == 3);
    CHECK(one_plus_x.pow(0) == SeriesQ::constant(4, 1));

    const SeriesQ diff = square - one_plus_x - one_plus_x;
    CHECK(diff.coeff(1) == 0);
    CHECK(diff.coeff(2) == 1);
}

TEST_CASE("truncation order is tracked and enforced") {
    SeriesQ a(3), b(5);
    CHECK_THROWS_AS(a * b, exact::TruncationTooSmall);
    CHECK_THROWS_AS(a + b, exact::TruncationTooSmall);
    CHECK_THROWS_AS(a.coeff(4), exact::TruncationTooSmall);
    CHECK_NOTHROW(a.coeff(3));
}

TEST_CASE("log of the geometric series gives the harmonic-coefficient log") {
    const SeriesQ logged = exact::geometric(12).log();
    const SeriesQ expected = exact::log_reciprocal_one_minus_x(12);
    CHECK(logged == expected);
}

TEST_CASE("log of e^{-x} is -x") {
    const SeriesQ logged = exact::exp_minus_x(10).log();
    CHECK(logged.coeff(1) == -1);
    for (std::size_t i = 2; i <= 10; ++i)
        CHECK(logged.coeff(i) == 0);
}

TEST_CASE("link density series reproduces the alternating partial sums") {
    const SeriesQ g = exact::link_density_series(25);
    for (int n = 0; n <= 25; ++n)
        REQUIRE(g.coeff(static_cast<std::size_t>(n)) == exact::cbar_links(n));
    CHECK(g.coeff(4) == BigRational(3, 8));  // = cbar_4 = 216/576
}

TEST_CASE("fixed-k series extraction matches known densities") {
    CHECK(exact::cbar_series(4, 2) == BigRational(1, 8));
    CHECK(exact::cbar_series(6, 3) == BigRational(1, 48));
    CHECK(exact::cbar_series(5, 2) == BigRational(1, 6));
    CHECK(exact::cbar_series(0, 0) == 1);  // the empty link
    for (int n = 1; n <= 10; ++n)
        CHECK(exact::cbar_series(n, 0) == 0);
    CHECK(exact::cbar_series(3, 2) == 0);  // 2k > n has no diagrams
}
