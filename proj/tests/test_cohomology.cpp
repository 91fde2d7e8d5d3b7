#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "livsic/cohomology.hpp"
#include "livsic/counterexample.hpp"

using namespace livsic;

namespace {

const double kGolden = 0.5 * (1.0 + std::sqrt(5.0));

std::shared_ptr<TrigPolynomial> cos_wave(double amp = 1.0) {
    return std::make_shared<TrigPolynomial>(std::vector<double>{0.0, amp},
                                            std::vector<double>{});
}

// slightly nonlinear two-branch expanding map of [0,1]
MapDescription quadratic_doubling(double eps) {
    MapDescription map;
    map.lambda = 2.0 - eps;
    map.label = "quadratic doubling";
    // T(x) = 2x + eps x (1 - 2x) on [0, 1/2]
    map.branches.push_back({0.0, 0.5, Polynomial({0.0, 2.0 + eps, -2.0 * eps}), +1});
    // shifted copy on [1/2, 1]
    map.branches.push_back(
        {0.5, 1.0, Polynomial({-1.0 - eps, 2.0 + 3.0 * eps, -2.0 * eps}), +1});
    map.validate();
    return map;
}

} // namespace

TEST_CASE("coboundary construction") {
    const MapDescription dbl = make_beta_map(2.0);

    const auto flat = std::make_shared<PolynomialCocycle>(Polynomial({0.42}));
    const CoboundaryCocycle zero = make_coboundary(dbl, flat);
    for (double x : {0.1, 0.3, 0.77}) CHECK(std::abs(zero(x)) <= 1e-15);

    const CoboundaryCocycle phi = make_coboundary(dbl, cos_wave());
    for (int i = 0; i < 100; ++i) {
        const double x = (i + 0.5) / 100;
        const double want = std::cos(4.0 * M_PI * x) - std::cos(2.0 * M_PI * x);
        CHECK(phi(x) == doctest::Approx(want).epsilon(1e-12));
        // chain-rule derivatives against the closed form
        const double d1 = -4.0 * M_PI * std::sin(4.0 * M_PI * x) +
                          2.0 * M_PI * std::sin(2.0 * M_PI * x);
        const double d2 = -16.0 * M_PI * M_PI * std::cos(4.0 * M_PI * x) +
                          4.0 * M_PI * M_PI * std::cos(2.0 * M_PI * x);
        CHECK(phi.derivative(x, 1) == doctest::Approx(d1).epsilon(1e-10));
        CHECK(phi.derivative(x, 2) == doctest::Approx(d2).epsilon(1e-10));
    }

    // chi0 = x is not 1-periodic, so the coboundary jumps where T does
    const MapDescription gold = make_beta_map(kGolden);
    const auto lin = std::make_shared<PolynomialCocycle>(Polynomial({0.0, 1.0}));
    const CoboundaryCocycle jumpy = make_coboundary(gold, lin);
    const double brk = 1.0 / kGolden;
    CHECK(std::abs(jumpy(brk - 1e-9) - jumpy(brk + 1e-9)) > 0.9);
}

TEST_CASE("residual verification") {
    const MapDescription dbl = make_beta_map(2.0);
    const auto chi0 = cos_wave(0.3);
    const CoboundaryCocycle phi = make_coboundary(dbl, chi0);
    const ResidualReport ok = verify_cocycle(
        dbl, phi, [&](double x) { return (*chi0)(x); }, 10000);
    CHECK(ok.sup <= 1e-12);

    const PolynomialCocycle one(Polynomial({1.0}));
    const ResidualReport bad =
        verify_cocycle(dbl, one, [](double) { return 0.0; }, 1000);
    CHECK(bad.sup == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bad.l1 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spectral solve recovers a known primitive") {
    const MapDescription dbl = make_beta_map(2.0);

    const PolynomialCocycle zero(Polynomial({0.0}));
    const CocycleSolution flat = solve_spectral(dbl, zero, 1024);
    CHECK(flat.residual_sup <= 1e-10);
    CHECK(flat.variation <= 1e-8);
    CHECK(flat.coboundary);
    CHECK(std::abs(flat.a - 1.0) <= 1e-10);

    const auto chi0 = cos_wave(0.25);
    const CoboundaryCocycle phi = make_coboundary(dbl, chi0);
    const int n = 1 << 14;
    const CocycleSolution sol = solve_spectral(dbl, phi, n);
    CHECK(sol.coboundary);
    CHECK(sol.residual_sup <= 1e-6);
    double shift = 0.0;
    for (int i = 0; i < n; ++i)
        shift += sol.chi.values[i] - (*chi0)((i + 0.5) / n);
    shift /= n;
    double sup = 0.0;
    for (int i = 0; i < n; ++i)
        sup = std::max(sup, std::abs(sol.chi.values[i] - (*chi0)((i + 0.5) / n) -
                                     shift));
    CHECK(sup <= 1e-3);
}

TEST_CASE("spectral solve on the golden map keeps variation bounded") {
    const MapDescription gold = make_beta_map(kGolden);
    const auto chi0 = std::make_shared<TrigPolynomial>(
        std::vector<double>{0.0, 0.1, 0.05}, std::vector<double>{0.0, 0.08});
    const CoboundaryCocycle phi = make_coboundary(gold, chi0);
    const int n = 1 << 14;
    const CocycleSolution sol = solve_spectral(gold, phi, n);
    // the branch point is not grid-aligned, so the residual is a little
    // larger than on integer-beta maps at the same resolution
    CHECK(sol.residual_sup <= 5e-6);

    GridFunction ref(n);
    for (int i = 0; i < n; ++i) ref.values[i] = (*chi0)((i + 0.5) / n);
    double shift = 0.0;
    for (int i = 0; i < n; ++i) shift += sol.chi.values[i] - ref.values[i];
    shift /= n;
    double sup = 0.0;
    for (int i = 0; i < n; ++i)
        sup = std::max(sup, std::abs(sol.chi.values[i] - ref.values[i] - shift));
    CHECK(sup <= 1e-3);
    CHECK(std::abs(sol.variation - ref.variation()) <= 0.05);
}

TEST_CASE("backward orbits") {
    const MapDescription dbl = make_beta_map(2.0);
    const auto orbit = backward_orbit(dbl, 0.5, {}, 3);
    REQUIRE(orbit.size() == 3);
    CHECK(orbit[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(orbit[1] == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(orbit[2] == doctest::Approx(0.0625).epsilon(1e-14));

    const MapDescription gold = make_beta_map(kGolden);
    const auto g = backward_orbit(gold, 0.9, {}, 2);
    CHECK(g[0] == doctest::Approx(0.9 / kGolden).epsilon(1e-12));
    CHECK(g[1] == doctest::Approx(0.9 / (kGolden * kGolden)).epsilon(1e-12));

    const MapDescription cex = make_counterexample_map(0.125);
    OrbitPolicy fixed;
    fixed.kind = BranchPolicy::fixed_itinerary;
    fixed.itinerary = {0, 0};
    CHECK_THROWS_AS(backward_orbit(cex, 0.6, fixed, 2), PolicyDeadEnd);
}

TEST_CASE("telescoped differences of chi") {
    const MapDescription dbl = make_beta_map(2.0);
    const auto chi0 = cos_wave();
    const CoboundaryCocycle phi = make_coboundary(dbl, chi0);

    CHECK(chi_difference(dbl, phi, 0.37, 0.37, 40).value == 0.0);

    const SeriesResult d = chi_difference(dbl, phi, 0.3, 0.6, 40);
    const double want = std::cos(2.0 * M_PI * 0.3) - std::cos(2.0 * M_PI * 0.6);
    CHECK(d.value == doctest::Approx(want).epsilon(1e-10));
    CHECK(d.tail_bound <= 1e-9);

    const MapDescription gold = make_beta_map(kGolden);
    const CoboundaryCocycle phig = make_coboundary(gold, chi0);
    const SeriesResult dg = chi_difference(gold, phig, 0.2, 0.45, 60);
    const double wantg = std::cos(2.0 * M_PI * 0.2) - std::cos(2.0 * M_PI * 0.45);
    CHECK(dg.value == doctest::Approx(wantg).epsilon(1e-9));

    // pair interval outside every branch image
    const MapDescription cex = make_counterexample_map(0.125);
    const CoboundaryCocycle phic = make_coboundary(cex, chi0);
    CHECK_THROWS_AS(chi_difference(cex, phic, 0.1, 0.55, 10), NoCommonPullback);
}

TEST_CASE("chi difference matches the spectral solution") {
    const MapDescription dbl = make_beta_map(2.0);
    const auto chi0 = cos_wave(0.2);
    const CoboundaryCocycle phi = make_coboundary(dbl, chi0);
    const CocycleSolution sol = solve_spectral(dbl, phi, 4096);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(0.05, 0.95);
    for (int i = 0; i < 100; ++i) {
        const double x1 = U(rng), x2 = U(rng);
        const SeriesResult d = chi_difference(dbl, phi, x1, x2, 60);
        CHECK(std::abs(d.value - (sol.chi(x1) - sol.chi(x2))) <= 2e-3);
    }
}

TEST_CASE("derivative series") {
    const MapDescription dbl = make_beta_map(2.0);
    const auto chi0 = cos_wave();
    const CoboundaryCocycle phi = make_coboundary(dbl, chi0);

    const PolynomialCocycle zero(Polynomial({0.0}));
    CHECK(chi_derivative_series(dbl, zero, 0.3, 40).value == 0.0);

    const SeriesResult s = chi_derivative_series(dbl, phi, 0.3, 40);
    CHECK(s.value ==
          doctest::Approx(-2.0 * M_PI * std::sin(2.0 * M_PI * 0.3)).epsilon(1e-9));

    // centered finite differences of the telescoped difference
    const double h = 1e-5;
    const SeriesResult diff = chi_difference(dbl, phi, 0.3 + h, 0.3 - h, 40);
    CHECK(std::abs(diff.value / (2.0 * h) - s.value) <= 1e-4);
}

TEST_CASE("higher derivatives on affine maps collapse to the closed form") {
    const MapDescription dbl = make_beta_map(2.0);
    const auto chi0 = cos_wave();
    const CoboundaryCocycle phi = make_coboundary(dbl, chi0);

    const SeriesResult s2 = chi_higher_derivative(dbl, phi, 0.3, 2, 60);
    CHECK(s2.value ==
          doctest::Approx(-4.0 * M_PI * M_PI * std::cos(2.0 * M_PI * 0.3))
              .epsilon(1e-8));

    const SeriesResult s3 = chi_higher_derivative(dbl, phi, 0.41, 3, 60);
    CHECK(s3.value ==
          doctest::Approx(8.0 * M_PI * M_PI * M_PI *
                          std::sin(2.0 * M_PI * 0.41))
              .epsilon(1e-7));

    const PolynomialCocycle zero(Polynomial({0.0}));
    CHECK(chi_higher_derivative(dbl, zero, 0.3, 2, 40).value == 0.0);

    CHECK_THROWS_AS(chi_higher_derivative(dbl, phi, 0.3, 0, 40),
                    std::invalid_argument);
}

TEST_CASE("higher derivatives on a nonlinear map agree with finite differences") {
    const MapDescription map = quadratic_doubling(0.2);
    const auto chi0 = cos_wave(0.5);
    const CoboundaryCocycle phi = make_coboundary(map, chi0);

    for (double x : {0.21, 0.37, 0.66}) {
        const double h = 1e-5;
        const double fd1 =
            (chi_derivative_series(map, phi, x + h, 60).value -
             chi_derivative_series(map, phi, x - h, 60).value) /
            (2.0 * h);
        const SeriesResult s2 = chi_higher_derivative(map, phi, x, 2, 60);
        CHECK(std::abs(s2.value - fd1) <= 1e-4 * std::max(1.0, std::abs(fd1)));

        const double fd2 = (chi_higher_derivative(map, phi, x + h, 2, 60).value -
                            chi_higher_derivative(map, phi, x - h, 2, 60).value) /
                           (2.0 * h);
        const SeriesResult s3 = chi_higher_derivative(map, phi, x, 3, 60);
        CHECK(std::abs(s3.value - fd2) <= 1e-3 * std::max(1.0, std::abs(fd2)));
    }
}

TEST_CASE("tail bounds are honest") {
    const MapDescription dbl = make_beta_map(2.0);
    const auto chi0 = cos_wave();
    const CoboundaryCocycle phi = make_coboundary(dbl, chi0);
    for (int n : {10, 15, 20, 25}) {
        const SeriesResult a = chi_derivative_series(dbl, phi, 0.3, n);
        const SeriesResult b = chi_derivative_series(dbl, phi, 0.3, 2 * n);
        CHECK(std::abs(b.value - a.value) <= a.tail_bound + 1e-15);
        CHECK(b.tail_bound < a.tail_bound);
    }
}

TEST_CASE("coboundary test by leading eigenvalue") {
    const MapDescription dbl = make_beta_map(2.0);
    const PolynomialCocycle lin(Polynomial({0.0, 1.0})); // nonzero mean
    const CocycleSolution sol = solve_spectral(dbl, lin, 2048);
    CHECK(std::abs(sol.a - 1.0) > 1e-3);
    CHECK(!sol.coboundary);
}

TEST_CASE("default truncation covers the requested tolerance") {
    const int n = default_truncation(2.0, 1e-12);
    CHECK(std::pow(2.0, -n) <= 1e-12);
    CHECK(n <= 60);
}
