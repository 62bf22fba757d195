#include <catch2/catch_amalgamated.hpp>

#include "ellcov/bielliptic.hpp"

using namespace ellcov;

TEST_CASE("boundary strata for genus 2") {
    auto strata = boundary_strata(2);
    REQUIRE(strata.size() == 4);
    CHECK(strata[0].kind == StratumKind::Delta0_branch);
    CHECK(strata[1].kind == StratumKind::Delta0_etale);
    CHECK(strata[2].kind == StratumKind::Theta_star);
    CHECK(strata[3].kind == StratumKind::Theta_full);
    CHECK(strata[3].I == std::vector<std::size_t>{1, 2});
}

TEST_CASE("stratum counts follow 2^n - n + 2") {
    for (long long g = 2; g <= 8; ++g) {
        auto strata = boundary_strata(g);
        CHECK(static_cast<long long>(strata.size()) == stratum_count(g));
        long long n = 2 * g - 2;
        CHECK(stratum_count(g) == (1LL << n) - n + 2);
    }
    CHECK(stratum_count(3) == 14);
}

TEST_CASE("genus splits satisfy their defining equations") {
    for (long long g = 2; g <= 7; ++g) {
        long long even_count = 0, odd_count = 0;
        for (const auto& s : boundary_strata(g)) {
            if (s.kind == StratumKind::Theta_even) {
                ++even_count;
                CHECK(s.I.size() % 2 == 0);
                CHECK(s.I.size() >= 2);
                CHECK(static_cast<long long>(s.I.size()) == 2 * s.g1 + 2);
                CHECK(s.g1 + s.g2 + 1 == g);
                CHECK(s.g1 >= 0);
            } else if (s.kind == StratumKind::Xi_odd) {
                ++odd_count;
                CHECK(s.I.size() % 2 == 1);
                CHECK(s.I.size() >= 3);
                CHECK(static_cast<long long>(s.I.size()) + 1 == 2 * s.g1 + 2);
                CHECK(s.g1 + s.g2 == g);
            }
        }
        long long n = 2 * g - 2;
        CHECK(even_count + odd_count == (1LL << n) - n - 2);
    }
}

TEST_CASE("strata are deterministically sorted") {
    auto a = boundary_strata(4);
    auto b = boundary_strata(4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].kind == b[i].kind);
        CHECK(a[i].I == b[i].I);
    }
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        bool ordered = static_cast<int>(a[i].kind) < static_cast<int>(a[i + 1].kind) ||
                       (a[i].kind == a[i + 1].kind && a[i].I < a[i + 1].I);
        CHECK(ordered);
    }
}

TEST_CASE("picard numbers") {
    CHECK(picard_number_ordered(2) == 3);
    CHECK(picard_number_ordered(3) == 14);
    CHECK(picard_number_ordered(5) == 250);
    CHECK(picard_number_unordered(2) == 3);
    CHECK(picard_number_unordered(3) == 6);
    CHECK(picard_number_unordered(10) == 20);
    CHECK_THROWS_AS(picard_number_ordered(1), domain_error);
    CHECK_THROWS_AS(picard_number_unordered(0), domain_error);
}

TEST_CASE("invariant boundary counts") {
    CHECK(invariant_boundary_counts(2) == std::make_pair(2LL, 4LL));
    CHECK(invariant_boundary_counts(3) == std::make_pair(4LL, 6LL));
    CHECK(invariant_boundary_counts(7) == std::make_pair(12LL, 14LL));
}

TEST_CASE("orbit census matches the invariant boundary count") {
    for (long long g = 2; g <= 7; ++g) {
        auto census = sn_orbit_census(g);
        CHECK(static_cast<long long>(census.size()) == invariant_boundary_counts(g).second);
    }
}

TEST_CASE("consistency with the relation count") {
    for (long long g = 2; g <= 6; ++g) {
        long long r = relation_count(bielliptic_data(g));
        CHECK(picard_number_ordered(g) == stratum_count(g) - r);
    }
}
