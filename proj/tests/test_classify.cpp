#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ellcov/classify.hpp"
#include "ellcov/bielliptic.hpp"

using namespace ellcov;

namespace {

FinAbGroup G(std::initializer_list<long long> ds) { return FinAbGroup(std::vector<long long>(ds)); }

GroupElement el(const FinAbGroup& g, std::initializer_list<long long> cs) {
    return GroupElement(g, std::vector<long long>(cs));
}

RamificationData etale_data(const FinAbGroup& g, std::size_t n = 1) {
    return RamificationData(g, std::vector<GroupElement>(n, zero_element(g)));
}

}  // namespace

TEST_CASE("bielliptic data classifies into exactly one component") {
    for (long long g : {2, 3, 4}) {
        RamificationData d = bielliptic_data(g);
        auto comps = classify_components(d);
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].k_type == KType::trivial);
        CHECK(comps[0].k == 1);
        CHECK(comps[0].excluded_loci_count == static_cast<long long>(d.n()) - 1);
        CHECK(comps[0].gerbe_band.is_trivial());
    }
}

TEST_CASE("etale Z/2 with one marked point has two components") {
    auto comps = classify_components(etale_data(G({2})));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].k_type == KType::trivial);
    CHECK(comps[0].gerbe_band.orders == std::vector<long long>{2});
    CHECK(comps[1].k_type == KType::cyclic);
    CHECK(comps[1].N == 2);
    CHECK(comps[1].base_label == "Y1(2)^0_1");
    CHECK(comps[1].gerbe_band.is_trivial());
}

TEST_CASE("k = n data are empty") {
    FinAbGroup g = G({2, 2});
    RamificationData d(g, {el(g, {1, 0}), el(g, {0, 1})});
    CHECK(classify_components(d).empty());
    CHECK(component_count(d) == 0);
}

TEST_CASE("component counts against subgroup structure") {
    CHECK(component_count(etale_data(G({4}))) == 3);
    CHECK(component_count(etale_data(G({3, 3}))) == 7);  // 1 + 4 + phi(3)
    CHECK(component_count(etale_data(G({2, 2})))  == 5);
    CHECK(component_count(etale_data(G({2, 4})))  == 8);
    CHECK(component_count(etale_data(G({6}))) == 4);
    CHECK(component_count(etale_data(G({}))) == 1);
}

TEST_CASE("classifier agrees with the monodromy orbit oracle") {
    std::vector<RamificationData> suite;
    for (const auto& shape : {std::vector<long long>{}, {2}, {3}, {4}, {2, 2}, {2, 4}, {3, 3}, {6}})
        suite.push_back(etale_data(FinAbGroup(shape)));
    // mixed (partially ramified) data, all realizable with k < n
    FinAbGroup z4 = G({4}), z6 = G({6}), z8 = G({8}), z9 = G({9}), z12 = G({12});
    FinAbGroup z22 = G({2, 2}), z24 = G({2, 4}), z33 = G({3, 3});
    suite.push_back(RamificationData(z4, {el(z4, {2}), el(z4, {2})}));
    suite.push_back(RamificationData(z4, {el(z4, {2}), el(z4, {2}), zero_element(z4)}));
    suite.push_back(RamificationData(z6, {el(z6, {3}), el(z6, {3})}));
    suite.push_back(RamificationData(z6, {el(z6, {2}), el(z6, {2}), el(z6, {2})}));
    suite.push_back(RamificationData(z8, {el(z8, {4}), el(z8, {4})}));
    suite.push_back(RamificationData(z9, {el(z9, {3}), el(z9, {6})}));
    suite.push_back(RamificationData(z12, {el(z12, {4}), el(z12, {8})}));
    suite.push_back(RamificationData(z22, {el(z22, {1, 1}), el(z22, {1, 1})}));
    suite.push_back(RamificationData(z24, {el(z24, {0, 2}), el(z24, {0, 2})}));
    suite.push_back(RamificationData(z24, {el(z24, {1, 0}), el(z24, {1, 0})}));
    suite.push_back(RamificationData(z33, {el(z33, {1, 0}), el(z33, {2, 0})}));
    suite.push_back(RamificationData(z24, {el(z24, {1, 2}), el(z24, {1, 2}), zero_element(z24)}));
    for (const auto& d : suite) {
        INFO(d.G.to_string());
        auto [k, idx] = minimal_k(d);
        REQUIRE(k < d.n());
        CHECK(component_count(d) ==
              oracle::orbit_count(oracle::build_monodromy_problem(d)));
    }
}

TEST_CASE("rank-3 etale part: rank <= 2 subgroups only") {
    RamificationData d = etale_data(G({2, 2, 2}));
    CHECK(component_count(d) == 15);  // 1 + 7 cyclic + 7 rank-2 (phi(2) = 1 each)
    CHECK(component_count(d) == oracle::orbit_count(oracle::build_monodromy_problem(d)));
}

TEST_CASE("classification is invariant under permuting the points") {
    FinAbGroup g = G({2, 4});
    std::vector<GroupElement> h = {el(g, {1, 0}), el(g, {1, 2}), el(g, {0, 2})};
    std::sort(h.begin(), h.end(), [](const GroupElement& a, const GroupElement& b) {
        return a.coords < b.coords;
    });
    std::vector<std::string> reference;
    bool first = true;
    do {
        RamificationData d(g, h);
        auto comps = classify_components(d);
        std::vector<std::string> labels;
        for (const auto& c : comps)
            labels.push_back(c.base_label + "#" + std::to_string(c.weil_index));
        if (first) {
            reference = labels;
            first = false;
        } else {
            CHECK(labels == reference);
        }
    } while (std::next_permutation(h.begin(), h.end(), [](const GroupElement& a,
                                                          const GroupElement& b) {
        return a.coords < b.coords;
    }));
}

TEST_CASE("etale decomposition catalogs") {
    SECTION("E = Z/2") {
        auto cat = etale_decomposition(G({2}));
        CHECK(cat.size() == 2);
        CHECK(cat["Y1(1)"] == 1);
        CHECK(cat["Y1(2)"] == 1);
    }
    SECTION("E trivial") {
        auto cat = etale_decomposition(G({}));
        CHECK(cat.size() == 1);
        CHECK(cat["Y1(1)"] == 1);
    }
    SECTION("E = (Z/2)^2: 5 labels") {
        auto cat = etale_decomposition(G({2, 2}));
        CHECK(cat["Y1(1)"] == 1);
        CHECK(cat["Y1(2)"] == 3);
        CHECK(cat["(Y1(2,2),1)"] == 1);
        long long total = 0;
        for (auto& [label, mult] : cat) total += mult;
        CHECK(total == 5);
    }
    SECTION("catalog total equals the component count of the trivial datum") {
        for (const auto& shape : {std::vector<long long>{2, 4}, {3, 3}, {6}, {8}}) {
            FinAbGroup e(shape);
            long long total = 0;
            for (auto& [label, mult] : etale_decomposition(e)) total += mult;
            CHECK(total == component_count(etale_data(e)));
        }
    }
}

TEST_CASE("torsion locus component count readings") {
    SECTION("gcd 1") {
        auto c = torsion_locus_component_count({1, -1}, true);
        CHECK(c.divisor_count_reading == 1);
        CHECK(c.totient_reading == 1);
        CHECK(*c.oracle_count == 1);
    }
    SECTION("the genus-2 bielliptic locus") {
        auto c = torsion_locus_component_count({2, -4, 2}, true);
        CHECK(c.gcd == 2);
        CHECK(c.divisor_count_reading == 2);
        CHECK(c.totient_reading == 1);
        CHECK(*c.oracle_count == 2);
    }
    SECTION("d = 4: the readings disagree and the oracle decides") {
        auto c = torsion_locus_component_count({4, -4}, true);
        CHECK(c.divisor_count_reading == 3);
        CHECK(c.totient_reading == 2);
        CHECK(*c.oracle_count == 3);
    }
    SECTION("degenerate vectors are rejected") {
        CHECK_THROWS_AS(torsion_locus_component_count({0, 0}), domain_error);
        CHECK_THROWS_AS(torsion_locus_component_count({1, 1}), domain_error);
    }
}

TEST_CASE("excluded loci of bielliptic data") {
    SECTION("genus 2: one locus with two components") {
        auto loci = excluded_loci(bielliptic_data(2), true);
        REQUIRE(loci.size() == 1);
        CHECK(loci[0].coefficients == std::vector<long long>{-2, 2});
        CHECK(*loci[0].count.oracle_count == 2);
    }
    SECTION("genus >= 3: all loci irreducible") {
        for (long long g : {3, 4}) {
            auto loci = excluded_loci(bielliptic_data(g), true);
            CHECK(loci.size() == static_cast<std::size_t>(2 * g - 3));
            for (const auto& l : loci) CHECK(*l.count.oracle_count == 1);
        }
    }
    SECTION("Z/3 totally ramified: two loci") {
        FinAbGroup g = G({3});
        RamificationData d(g, {el(g, {1}), el(g, {1}), el(g, {1})});
        auto loci = excluded_loci(d, true);
        REQUIRE(loci.size() == 2);
        for (const auto& l : loci) {
            long long sum = 0;
            for (long long v : l.coefficients) sum += v;
            CHECK(sum == 0);
            CHECK(l.count.oracle_count.has_value());
        }
    }
    SECTION("rank-2 datum has (n-1)+(n-2) loci") {
        FinAbGroup g = G({2, 2});
        RamificationData d(g, {el(g, {1, 1}), el(g, {1, 0}), el(g, {0, 1}), el(g, {1, 1})});
        // minimal subset is {h2, h3} (positions 1,2): k = 2, n = 4 -> 3 + 2 loci
        auto loci = excluded_loci(d, true);
        CHECK(loci.size() == 5);
    }
}

TEST_CASE("excluded loci counts match descriptor bookkeeping") {
    std::mt19937_64 rng(321);
    for (int iter = 0; iter < 40; ++iter) {
        FinAbGroup g = G({2, 4});
        std::size_t n = 3 + rng() % 3;
        std::vector<GroupElement> h;
        GroupElement sum = zero_element(g);
        for (std::size_t j = 0; j + 1 < n; ++j) {
            h.push_back(element_from_index(g, rng() % 8));
            sum = add(sum, h.back());
        }
        h.push_back(negate(sum));
        RamificationData d(g, h);
        auto [k, idx] = minimal_k(d);
        if (k == d.n()) continue;
        auto comps = classify_components(d);
        auto loci = excluded_loci(d);
        for (const auto& c : comps)
            CHECK(c.excluded_loci_count == static_cast<long long>(loci.size()));
    }
}
