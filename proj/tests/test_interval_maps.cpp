#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "livsic/counterexample.hpp"
#include "livsic/interval_map.hpp"

using namespace livsic;

namespace {
const double kGolden = 0.5 * (1.0 + std::sqrt(5.0));
}

TEST_CASE("map evaluation on the three-branch family and beta maps") {
    const MapDescription cex = make_counterexample_map(0.125);
    CHECK(cex(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(cex(0.5) == doctest::Approx(0.5).epsilon(1e-15));

    const MapDescription dbl = make_beta_map(2.0);
    CHECK(dbl(0.75) == doctest::Approx(0.5).epsilon(1e-15));

    CHECK_THROWS_AS(dbl.branch_index(1.5), std::domain_error);
    CHECK_THROWS_AS(dbl.branch_index(-0.1), std::domain_error);
}

TEST_CASE("branch derivatives are exact") {
    const MapDescription cex = make_counterexample_map(0.125);
    CHECK(cex.derivative(0.1, 1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(cex.derivative(0.6, 1) == doctest::Approx(1.5).epsilon(1e-15));

    const MapDescription dbl = make_beta_map(2.0);
    CHECK(dbl.derivative(0.3, 2) == 0.0);
}

TEST_CASE("inverse images") {
    const MapDescription dbl = make_beta_map(2.0);
    auto pre = dbl.inverse_images(0.5);
    REQUIRE(pre.size() == 2);
    CHECK(pre[0].first == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(pre[0].second == 0);
    CHECK(pre[1].first == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(pre[1].second == 1);

    const MapDescription gold = make_beta_map(kGolden);
    pre = gold.inverse_images(0.9);
    REQUIRE(pre.size() == 1);
    CHECK(pre[0].first == doctest::Approx(0.9 / kGolden).epsilon(1e-12));
    CHECK(pre[0].second == 0);

    const MapDescription cex = make_counterexample_map(0.125);
    pre = cex.inverse_images(0.6);
    REQUIRE(pre.size() == 2);
    CHECK(pre[0].first == doctest::Approx(0.05).epsilon(1e-13));
    CHECK(pre[0].second == 0);
    CHECK(pre[1].first == doctest::Approx(0.5 + 0.1 / 1.5).epsilon(1e-12));
    CHECK(pre[1].second == 1);
}

TEST_CASE("inverse images satisfy T(y) = x on a fine grid") {
    const MapDescription maps[] = {make_beta_map(2.0), make_beta_map(kGolden),
                                   make_beta_map(2.5, 0.3),
                                   make_counterexample_map(0.125)};
    for (const MapDescription& map : maps) {
        for (int i = 0; i < 10000; ++i) {
            const double x = (i + 0.5) / 10000;
            for (const auto& [y, bi] : map.inverse_images(x))
                CHECK(std::abs(map.branches[bi](y) - x) <= 1e-12);
        }
    }
}

TEST_CASE("sampled expansion respects the declared lower bound") {
    const MapDescription maps[] = {make_beta_map(kGolden), make_beta_map(2.5, 0.3),
                                   make_counterexample_map(0.2)};
    for (const MapDescription& map : maps)
        for (const Branch& b : map.branches)
            for (int i = 0; i <= 200; ++i) {
                const double x = b.lo + (b.hi - b.lo) * i / 200.0;
                CHECK(std::abs(b.derivative(x)) >= map.lambda - 1e-9);
            }
}

TEST_CASE("cylinder partitions") {
    const MapDescription dbl = make_beta_map(2.0);
    const CylinderPartition p2 = cylinders(dbl, 2);
    REQUIRE(p2.cells.size() == 4);
    const std::vector<std::vector<int>> want = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(p2.cells[i].width() == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(p2.cells[i].itinerary == want[i]);
    }

    const MapDescription gold = make_beta_map(kGolden);
    const CylinderPartition g1 = cylinders(gold, 1);
    REQUIRE(g1.cells.size() == 2);
    CHECK(g1.cells[0].hi == doctest::Approx(1.0 / kGolden).epsilon(1e-14));

    const CylinderPartition g2 = cylinders(gold, 2);
    CHECK(g2.cells.size() == 3); // itinerary 11 is empty
}

TEST_CASE("cylinders refine, tile and shrink") {
    const MapDescription maps[] = {make_beta_map(kGolden),
                                   make_counterexample_map(0.125)};
    for (const MapDescription& map : maps) {
        for (int n = 1; n <= 4; ++n) {
            const CylinderPartition coarse = cylinders(map, n);
            const CylinderPartition fine = cylinders(map, n + 1);

            double total = 0.0;
            for (const CylinderCell& c : fine.cells) {
                total += c.width();
                CHECK(c.width() <= std::pow(map.lambda, -(n + 1)) + 1e-12);
                // contained in exactly one coarse cell
                int owners = 0;
                for (const CylinderCell& big : coarse.cells)
                    if (big.lo - 1e-10 <= c.lo && c.hi <= big.hi + 1e-10) ++owners;
                CHECK(owners == 1);
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("weak covering index") {
    CHECK(weak_covering_index(make_beta_map(2.0), 10) == 1);
    CHECK(weak_covering_index(make_beta_map(kGolden), 10) == 2);
    const auto n0 = weak_covering_index(make_counterexample_map(0.125), 10);
    REQUIRE(n0.has_value());
    CHECK(*n0 <= 4);
}

TEST_CASE("beta map construction") {
    const MapDescription dbl = make_beta_map(2.0);
    REQUIRE(dbl.branches.size() == 2);
    CHECK(dbl.branches[0].hi == doctest::Approx(0.5).epsilon(1e-15));

    const MapDescription gold = make_beta_map(kGolden);
    REQUIRE(gold.branches.size() == 2);
    CHECK(gold.branches[0].hi == doctest::Approx(1.0 / kGolden).epsilon(1e-14));

    const MapDescription three = make_beta_map(2.5, 0.3);
    REQUIRE(three.branches.size() == 3);
    CHECK(three.branches[0].hi == doctest::Approx(0.28).epsilon(1e-14));
    CHECK(three.branches[1].hi == doctest::Approx(0.68).epsilon(1e-14));
}

TEST_CASE("validation rejects inconsistent descriptions") {
    MapDescription bad = make_beta_map(2.0);
    bad.lambda = 2.5; // claims more expansion than the branches deliver
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    MapDescription gap = make_beta_map(2.0);
    gap.branches[1].lo = 0.6; // leaves (0.5, 0.6) uncovered
    CHECK_THROWS_AS(gap.validate(), std::invalid_argument);
}
