#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "livsic/cohomology.hpp"
#include "livsic/transfer_operator.hpp"

using namespace livsic;

namespace {

const double kGolden = 0.5 * (1.0 + std::sqrt(5.0));
const RealFn kZero = [](double) { return 0.0; };

// Parry plateaus of the golden beta map, frozen from the series
// sum_{n : x < T^n 1} beta^{-n} with T 1 = beta - 1, T^2 1 = 0:
// density is 1 + 1/beta on [0, 1/beta) and 1 on [1/beta, 1), divided
// by 1 + 1/beta^2.
constexpr double kParryLeft = 1.1708203932499369;
constexpr double kParryRight = 0.7236067977499789;

std::vector<double> column_sums(const SparseOperator& op) {
    std::vector<double> s(op.n, 0.0);
    for (int i = 0; i < op.n; ++i)
        for (int k = op.row_ptr[i]; k < op.row_ptr[i + 1]; ++k)
            s[op.col[k]] += op.val[k];
    return s;
}

// Ulam cell-to-cell mass transfer matrix, used only as an oracle.
std::vector<std::vector<double>> ulam_matrix(const MapDescription& map, int n) {
    std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        const double clo = static_cast<double>(i) / n;
        const double chi = static_cast<double>(i + 1) / n;
        for (const Branch& b : map.branches) {
            const double zlo = std::max(clo, b.image_lo());
            const double zhi = std::min(chi, b.image_hi());
            if (zhi <= zlo) continue;
            double ya = b.invert(zlo), yb = b.invert(zhi);
            if (ya > yb) std::swap(ya, yb);
            int j0 = std::max(0, static_cast<int>(ya * n) - 1);
            for (int j = j0; j < n; ++j) {
                const double a = std::max(ya, static_cast<double>(j) / n);
                const double bb = std::min(yb, static_cast<double>(j + 1) / n);
                if (bb > a) A[i][j] += (bb - a) * n; // mass fraction of cell j
                if (static_cast<double>(j) / n > yb) break;
            }
        }
    }
    return A;
}

} // namespace

TEST_CASE("pointwise transfer sums") {
    const MapDescription dbl = make_beta_map(2.0);
    const RealFn one = [](double) { return 1.0; };
    CHECK(apply_transfer_pointwise(dbl, kZero, one, 0.3) ==
          doctest::Approx(1.0).epsilon(1e-14));

    const MapDescription gold = make_beta_map(kGolden);
    CHECK(apply_transfer_pointwise(gold, kZero, one, 0.9) ==
          doctest::Approx(1.0 / kGolden).epsilon(1e-12));

    const RealFn cweight = [](double) { return 0.7; };
    for (double x : {0.1, 0.45, 0.8})
        CHECK(apply_transfer_pointwise(dbl, cweight, one, x) ==
              doctest::Approx(std::exp(0.7)).epsilon(1e-13));
}

TEST_CASE("row sums are one for the unweighted operator") {
    for (const Scheme scheme : {Scheme::collocation, Scheme::cell_average}) {
        const SparseOperator op = discretize(make_beta_map(2.0), kZero, 64, scheme);
        for (int i = 0; i < op.n; ++i)
            CHECK(op.row_sum(i) == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("cell averaging conserves mass column by column") {
    for (const auto& map :
         {make_beta_map(kGolden), make_beta_map(2.5, 0.3)}) {
        const SparseOperator op = discretize(map, kZero, 256, Scheme::cell_average);
        for (double s : column_sums(op))
            CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("integral preservation for random rough densities") {
    const MapDescription gold = make_beta_map(kGolden);
    const int n = 1024;
    const SparseOperator avg = discretize(gold, kZero, n, Scheme::cell_average);
    const SparseOperator col = discretize(gold, kZero, n, Scheme::collocation);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> f(n);
        for (double& v : f) v = U(rng);
        double mass = 0.0;
        for (double v : f) mass += v / n;

        double out_avg = 0.0, out_col = 0.0;
        const auto ga = avg.apply(f);
        const auto gc = col.apply(f);
        for (int i = 0; i < n; ++i) {
            out_avg += ga[i] / n;
            out_col += gc[i] / n;
        }
        CHECK(std::abs(out_avg - mass) <= 1e-12); // exact by construction
        CHECK(std::abs(out_col - mass) <= 5.0 / n);
    }
}

TEST_CASE("serial and parallel assembly agree bitwise") {
    const MapDescription gold = make_beta_map(kGolden);
    const RealFn psi = [](double x) { return 0.3 * std::sin(2.0 * M_PI * x); };
    const SparseOperator a = discretize(gold, psi, 512, Scheme::cell_average,
                                        Execution::serial);
    const SparseOperator b = discretize(gold, psi, 512, Scheme::cell_average,
                                        Execution::parallel);
    REQUIRE(a.val.size() == b.val.size());
    CHECK(a.row_ptr == b.row_ptr);
    CHECK(a.col == b.col);
    for (std::size_t k = 0; k < a.val.size(); ++k) CHECK(a.val[k] == b.val[k]);
}

TEST_CASE("doubling map eigendata") {
    const SparseOperator op = discretize(make_beta_map(2.0), kZero, 1024);
    const EigenData e = leading_eigendata(op);
    CHECK(std::abs(e.eigenvalue - 1.0) <= 1e-12);
    for (double v : e.right) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("golden beta invariant density hits the Parry plateaus") {
    const MapDescription gold = make_beta_map(kGolden);
    const int n = 4096;
    const SparseOperator op = discretize(gold, kZero, n);
    const EigenData e = leading_eigendata(op);
    CHECK(std::abs(e.eigenvalue - 1.0) <= 1e-6);

    const GridFunction h = invariant_density(gold, n);
    const double brk = 1.0 / kGolden;
    double sl = 0.0, sr = 0.0;
    int cl = 0, cr = 0;
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) / n;
        if (std::abs(x - brk) < 4.0 / n) continue;
        (x < brk ? sl : sr) += h.values[i];
        ++(x < brk ? cl : cr);
    }
    CHECK(sl / cl == doctest::Approx(kParryLeft).epsilon(1e-2));
    CHECK(sr / cr == doctest::Approx(kParryRight).epsilon(1e-2));
}

TEST_CASE("Ulam oracle agrees with the invariant density") {
    const MapDescription gold = make_beta_map(kGolden);
    const int n = 256;
    const auto A = ulam_matrix(gold, n);
    std::vector<double> v(n, 1.0);
    for (int it = 0; it < 3000; ++it) {
        std::vector<double> w(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w[i] += A[i][j] * v[j];
        double mass = 0.0;
        for (double x : w) mass += x / n;
        for (double& x : w) x /= mass;
        v = std::move(w);
    }
    const GridFunction h = invariant_density(gold, 1024);
    double l1 = 0.0;
    for (int i = 0; i < n; ++i) l1 += std::abs(v[i] - h((i + 0.5) / n)) / n;
    CHECK(l1 <= 0.02);
}

TEST_CASE("fixed points of the discretized operators") {
    const MapDescription gold = make_beta_map(kGolden);
    const int n = 2048;
    const GridFunction h = invariant_density(gold, n);
    const SparseOperator op = discretize(gold, kZero, n);
    const auto hh = op.apply(h.values);
    for (int i = 0; i < n; ++i) CHECK(std::abs(hh[i] - h.values[i]) <= 1e-9);
}

TEST_CASE("weighted eigendata for a smooth coboundary weight") {
    const MapDescription dbl = make_beta_map(2.0);
    const auto chi0 = std::make_shared<TrigPolynomial>(
        std::vector<double>{0.0, 0.2}, std::vector<double>{});
    const CoboundaryCocycle phi = make_coboundary(dbl, chi0);
    const SpectralData sd = spectral_data(dbl, phi, 4096);
    CHECK(std::abs(sd.a - 1.0) <= 1e-6);
    CHECK(sd.gamma_floor > 0.0);
    double pairing = 0.0;
    for (int i = 0; i < 4096; ++i) pairing += sd.nu[i] * sd.w.values[i];
    CHECK(pairing == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("iterates converge geometrically to the spectral projection") {
    const MapDescription dbl = make_beta_map(2.0);
    const auto chi0 = std::make_shared<TrigPolynomial>(
        std::vector<double>{0.0, 0.15}, std::vector<double>{0.0, 0.0, 0.1});
    const CoboundaryCocycle phi = make_coboundary(dbl, chi0);
    const int n = 1024;
    const SparseOperator op =
        discretize(dbl, [&phi](double x) { return phi(x); }, n);
    const SpectralData sd = spectral_data(dbl, phi, n);

    double nu_mass = 0.0;
    for (double v : sd.nu) nu_mass += v;

    std::vector<double> f(n, 1.0);
    double apow = 1.0;
    std::vector<double> logd;
    std::vector<int> ns;
    for (int it = 1; it <= 25; ++it) {
        f = op.apply(f);
        apow *= sd.a;
        if (it < 5) continue;
        double sup = 0.0;
        for (int i = 0; i < n; ++i)
            sup = std::max(sup,
                           std::abs(apow * f[i] - sd.w.values[i] * nu_mass));
        if (sup > 0.0) {
            logd.push_back(std::log(sup));
            ns.push_back(it);
        }
    }
    REQUIRE(logd.size() >= 5);
    // least-squares slope must be negative
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        mx += ns[i];
        my += logd[i];
    }
    mx /= ns.size();
    my /= ns.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        num += (ns[i] - mx) * (logd[i] - my);
        den += (ns[i] - mx) * (ns[i] - mx);
    }
    CHECK(num / den < 0.0);
}

TEST_CASE("variation estimates") {
    GridFunction c(64, 0.7);
    CHECK(variation_estimate(c) == 0.0);

    GridFunction lin(128);
    for (int i = 0; i < 128; ++i) lin.values[i] = (i + 0.5) / 128;
    CHECK(variation_estimate(lin) == doctest::Approx(1.0 - 1.0 / 128).epsilon(1e-12));
}
