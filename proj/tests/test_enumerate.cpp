#include <cstdint>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "gridlinks/enumerate.hpp"
#include "gridlinks/exact.hpp"
#include "gridlinks/sampler.hpp"

using namespace gridlinks;

TEST_CASE("derangements are generated lexicographically and completely") {
    const auto d4 = all_derangements(4);
    REQUIRE(d4.size() == 9);  // !4
    CHECK(d4.front() == Perm{2, 1, 4, 3});
    CHECK(d4.back() == Perm{4, 3, 2, 1});
    for (std::size_t i = 1; i < d4.size(); ++i)
        REQUIRE(d4[i - 1] < d4[i]);
    CHECK(all_derangements(6).size() == 265);  // !6
}

TEST_CASE("enumeration visits every diagram exactly once") {
    std::uint64_t visits = 0;
    enumerate_links(3, [&](const LinkGrid& d) {
        ++visits;
        REQUIRE_NOTHROW(validate_link(d.black(), d.white()));
    });
    CHECK(visits == 12);  // c_3
}

TEST_CASE("the first visited diagram pairs the identity with the least derangement") {
    bool first = true;
    enumerate_links(4, [&](const LinkGrid& d) {
        if (first) {
            CHECK(d.black() == Perm{1, 2, 3, 4});
            CHECK(d.white() == Perm{2, 1, 4, 3});
            first = false;
        }
    });
}

TEST_CASE("component tallies match the reference counts") {
    const EnumerationRow row6 = exact_table_by_enumeration(6);
    CHECK(row6.count(1) == 86400);
    CHECK(row6.count(2) == 93600);
    CHECK(row6.count(3) == 10800);
    CHECK(row6.total == 190800);
    CHECK(row6.mean_components == BigRational(306000, 190800));

    const EnumerationRow row4 = exact_table_by_enumeration(4);
    CHECK(row4.count(1) == 144);
    CHECK(row4.count(2) == 72);
    CHECK(row4.total == 216);

    const EnumerationRow row5 = exact_table_by_enumeration(5);
    CHECK(row5.count(2) == 2400);
    CHECK(row5.total == 5280);
}

TEST_CASE("knot diagram counts match n!(n-1)!") {
    CHECK(enumerate_knot_diagrams(2) == 2);
    CHECK(enumerate_knot_diagrams(4) == 144);
}

TEST_CASE("enumeration agrees with the recurrence row for row") {
    const auto table = exact::cbar_table_recurrence(6, 3);
    for (int n = 2; n <= 6; ++n) {
        const EnumerationRow row = exact_table_by_enumeration(n);
        for (int k = 1; k <= n / 2; ++k)
            REQUIRE(BigInt(row.count(k)) == table.count(n, k));
        REQUIRE(BigInt(row.total) == exact::count_links(n));
    }
}

TEST_CASE("size guards refuse runaway enumerations") {
    CHECK_THROWS_AS(enumerate_links(9, [](const LinkGrid&) {}), SizeLimitExceeded);
    CHECK_THROWS_AS(enumerate_links(9, [](const LinkGrid&) {}, true), SizeLimitExceeded);
    CHECK_THROWS_AS(enumerate_links(8, [](const LinkGrid&) {}), SizeLimitExceeded);
    CHECK_THROWS_AS(enumerate_links(1, [](const LinkGrid&) {}), SizeLimitExceeded);
}

TEST_CASE("component structure is the cycle structure of the derangement") {
    // sigma = black^-1 . delta^-1 . black, so component count only sees delta
    RandomStream rs(61);
    const auto derangements = all_derangements(6);
    for (int trial = 0; trial < 200; ++trial) {
        const Perm black = random_permutation(6, rs);
        const Perm& delta = derangements[rs.next_below(derangements.size())];
        std::vector<bool> visited(6, false);
        int cycles = 0;
        for (int start = 0; start < 6; ++start) {
            if (visited[start])
                continue;
            ++cycles;
            for (int v = start; !visited[v]; v = delta[v] - 1)
                visited[v] = true;
        }
        REQUIRE(component_count(from_derangement(black, delta)) == cycles);
    }
}
