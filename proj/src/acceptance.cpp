#include "livsic/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>

#include "livsic/cohomology.hpp"
#include "livsic/counterexample.hpp"
#include "livsic/reachability.hpp"
#include "livsic/transfer_operator.hpp"

namespace livsic {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

std::shared_ptr<TrigPolynomial> random_trig(std::mt19937& rng) {
    std::uniform_real_distribution<double> U(-0.1, 0.1);
    std::vector<double> cs(6, 0.0), sn(6, 0.0);
    for (int k = 1; k <= 5; ++k) {
        cs[k] = U(rng);
        sn[k] = U(rng);
    }
    return std::make_shared<TrigPolynomial>(std::move(cs), std::move(sn));
}

const double kGoldenBeta = 0.5 * (1.0 + std::sqrt(5.0));

// Parry density plateaus of the golden beta map, from the series
// sum_{n : x < T^n 1} beta^{-n} normalized to unit integral.
void parry_plateaus(double beta, double& left, double& right) {
    const double norm = 1.0 + 1.0 / (beta * beta);
    left = (1.0 + 1.0 / beta) / norm;
    right = 1.0 / norm;
}

// 10^7-point orbit histogram; tiny jitter keeps dyadic orbits from
// collapsing onto the fixed point in double arithmetic.
std::vector<double> orbit_histogram(const MapDescription& map, int bins,
                                    long long n_points, std::mt19937& rng) {
    std::uniform_real_distribution<double> U(-0.5, 0.5);
    std::vector<double> hist(bins, 0.0);
    double x = 0.2137;
    for (int burn = 0; burn < 1000; ++burn)
        x = std::clamp(map(x) + 1e-12 * U(rng), 0.0, 1.0 - 1e-15);
    for (long long i = 0; i < n_points; ++i) {
        x = std::clamp(map(x) + 1e-12 * U(rng), 0.0, 1.0 - 1e-15);
        ++hist[std::min(bins - 1, static_cast<int>(x * bins))];
    }
    for (double& v : hist) v *= static_cast<double>(bins) / n_points;
    return hist;
}

using Criterion = std::function<bool(std::string&)>;

CriterionResult timed(const std::string& name, const Criterion& body) {
    CriterionResult r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.pass = body(r.detail);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return r;
}

bool doubling_density(std::string& detail) {
    const MapDescription map = make_beta_map(2.0);
    const int n = 1 << 12;
    const GridFunction h = invariant_density(map, n);
    double dev = 0.0;
    for (double v : h.values) dev = std::max(dev, std::abs(v - 1.0));
    const SparseOperator op = discretize(map, [](double) { return 0.0; }, n);
    const EigenData e = leading_eigendata(op);
    const double ev_err = std::abs(e.eigenvalue - 1.0);
    detail = "||h-1||_inf=" + num(dev) + ", |ev-1|=" + num(ev_err);
    return dev <= 1e-8 && ev_err <= 1e-10;
}

bool golden_parry(std::string& detail, std::mt19937& rng) {
    const MapDescription map = make_beta_map(kGoldenBeta);
    const int n = 4096;
    const GridFunction h = invariant_density(map, n);
    double target_l, target_r;
    parry_plateaus(kGoldenBeta, target_l, target_r);

    const double brk = 1.0 / kGoldenBeta;
    double sum_l = 0.0, sum_r = 0.0;
    int cnt_l = 0, cnt_r = 0;
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) / n;
        if (std::abs(x - brk) < 4.0 / n) continue; // skip the jump cells
        if (x < brk) {
            sum_l += h.values[i];
            ++cnt_l;
        } else {
            sum_r += h.values[i];
            ++cnt_r;
        }
    }
    const double mean_l = sum_l / cnt_l, mean_r = sum_r / cnt_r;

    const int bins = 512;
    const std::vector<double> hist = orbit_histogram(map, bins, 10000000, rng);
    double l1 = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double x = (b + 0.5) / bins;
        l1 += std::abs(hist[b] - h(x)) / bins;
    }
    detail = "plateaus " + num(mean_l) + "/" + num(mean_r) + " vs " +
             num(target_l) + "/" + num(target_r) + ", hist L1=" + num(l1);
    return std::abs(mean_l - target_l) <= 1e-2 &&
           std::abs(mean_r - target_r) <= 1e-2 && l1 <= 0.02;
}

bool coboundary_eigenvalue(std::string& detail, std::mt19937& rng) {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const MapDescription map = make_beta_map(trial % 2 == 0 ? 2.0 : 3.0);
        const auto chi0 = random_trig(rng);
        const CoboundaryCocycle phi = make_coboundary(map, chi0);
        const SparseOperator op = discretize(
            map, [&phi](double x) { return phi(x); }, 4096);
        const EigenData e = leading_eigendata(op);
        worst = std::max(worst, std::abs(1.0 / e.eigenvalue - 1.0));
    }
    // phi(x) = x has nonzero mean against mu, so no coboundary
    const MapDescription dbl = make_beta_map(2.0);
    const SparseOperator op_x =
        discretize(dbl, [](double x) { return x; }, 4096);
    const EigenData ex = leading_eigendata(op_x);
    const double off = std::abs(1.0 / ex.eigenvalue - 1.0);
    detail = "max |a-1|=" + num(worst) + " (coboundaries), |a-1|=" + num(off) +
             " (phi=x)";
    return worst <= 1e-6 && off > 1e-3;
}

bool spectral_reconstruction(std::string& detail, std::mt19937& rng) {
    const int n = 1 << 14;
    double worst_sup = 0.0, worst_res = 0.0, worst_var = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const MapDescription map = make_beta_map(trial % 2 == 0 ? 2.0 : 3.0);
        const auto chi0 = random_trig(rng);
        const CoboundaryCocycle phi = make_coboundary(map, chi0);
        const CocycleSolution sol = solve_spectral(map, phi, n);

        // compare up to an additive constant
        GridFunction ref(n);
        for (int i = 0; i < n; ++i) ref.values[i] = (*chi0)((i + 0.5) / n);
        double shift = 0.0;
        for (int i = 0; i < n; ++i) shift += sol.chi.values[i] - ref.values[i];
        shift /= n;
        double sup = 0.0;
        for (int i = 0; i < n; ++i)
            sup = std::max(sup,
                           std::abs(sol.chi.values[i] - ref.values[i] - shift));
        worst_sup = std::max(worst_sup, sup);
        worst_res = std::max(worst_res, sol.residual_sup);
        worst_var = std::max(worst_var,
                             std::abs(sol.variation - ref.variation()));
    }
    detail = "sup err=" + num(worst_sup) + ", residual=" + num(worst_res) +
             ", var err=" + num(worst_var);
    return worst_sup <= 1e-3 && worst_res <= 1e-6 && worst_var <= 0.05;
}

bool derivative_series(std::string& detail, std::mt19937& rng) {
    const MapDescription map = make_beta_map(2.0);
    const auto chi0 = random_trig(rng);
    const CoboundaryCocycle phi = make_coboundary(map, chi0);
    std::uniform_real_distribution<double> X(0.05, 0.95);

    double worst1 = 0.0, worst_fd = 0.0, worst2 = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double x = X(rng);
        const SeriesResult s1 = chi_derivative_series(map, phi, x, 60);
        worst1 = std::max(worst1, std::abs(s1.value - chi0->derivative(x, 1)));

        const double h = 1e-5;
        const SeriesResult d = chi_difference(map, phi, x + h, x - h, 40);
        worst_fd = std::max(worst_fd, std::abs(d.value / (2.0 * h) - s1.value));

        const SeriesResult s2 = chi_higher_derivative(map, phi, x, 2, 60);
        worst2 = std::max(worst2, std::abs(s2.value - chi0->derivative(x, 2)));
    }
    detail = "chi' err=" + num(worst1) + ", fd err=" + num(worst_fd) +
             ", chi'' err=" + num(worst2);
    return worst1 <= 1e-6 && worst_fd <= 1e-4 && worst2 <= 1e-5;
}

bool counterexample_certification(std::string& detail) {
    CounterexampleSpec spec;
    spec.c = 0.125;
    spec.k = 3;
    const CounterexampleBuild b = build_counterexample(spec);

    const auto chi_fn = [&b](double x) { return (*b.chi)(x); };
    const ResidualReport res = verify_cocycle(b.map, *b.phi, chi_fn, 10000);

    const SmoothnessReport phi_rep =
        certify_smoothness([&b](double x) { return (*b.phi)(x); }, b.partition, 3);

    const SmoothnessReport chi_rep = certify_smoothness(chi_fn, b.partition, 0);
    int chi_failures = 0;
    double jump = 0.0;
    bool jump_at_half = false;
    for (const JetMismatch& e : chi_rep.entries)
        if (!e.pass) {
            ++chi_failures;
            jump = e.mismatch;
            jump_at_half = std::abs(e.breakpoint - 0.5) < 1e-12;
        }

    const bool markov = counterexample_markov(1, 8);
    detail = "residual=" + num(res.sup) + ", phi jets " +
             (phi_rep.pass ? "ok" : "FAIL (" + num(phi_rep.max_mismatch) + ")") +
             ", chi jump=" + num(jump) + ", markov=" + (markov ? "yes" : "no");
    return res.sup <= 1e-12 && phi_rep.pass && chi_failures == 1 &&
           jump_at_half && std::abs(jump - 1.0) <= 1e-12 && markov;
}

// brute-force Lebesgue number over a sliding grid of window left ends
// slide symmetric windows outward around each cover transition point until
// no single branch image contains them
double lebesgue_sliding(const MapDescription& map, double res) {
    for (const Branch& b : map.branches)
        if (b.image_lo() <= 1e-12 && b.image_hi() >= 1.0 - 1e-12) return 1.0;
    double delta = 1.0;
    for (const Branch& e : map.branches) {
        for (double p : {e.image_lo(), e.image_hi()}) {
            if (p <= 1e-12 || p >= 1.0 - 1e-12) continue;
            double r = 0.0;
            while (r + res <= 1.0) {
                bool fits = false;
                for (const Branch& b : map.branches)
                    if (b.image_lo() <= p - (r + res) + 1e-12 &&
                        p + (r + res) <= b.image_hi() + 1e-12)
                        fits = true;
                if (!fits) break;
                r += res;
            }
            delta = std::min(delta, r);
        }
    }
    return delta;
}

bool q_partitions(std::string& detail) {
    const MapDescription golden = make_beta_map(kGoldenBeta);
    const MapDescription affine = make_beta_map(1.9, 0.3);
    const MapDescription cex = make_counterexample_map(0.125);

    const QPartition qg = q_partition(golden, 6, 40);
    const QPartition qa = q_partition(affine, 6, 40);
    const QPartition qc = q_partition(cex, 6, 40);

    auto single_01 = [](const QPartition& q) {
        return q.elements.size() == 1 && std::abs(q.elements[0].first) <= 1e-9 &&
               std::abs(q.elements[0].second - 1.0) <= 1e-9;
    };
    bool boundary_half = false;
    for (std::size_t i = 0; i + 1 < qc.elements.size(); ++i)
        if (std::abs(qc.elements[i].second - 0.5) <= 1e-6) boundary_half = true;

    const bool diam = check_diameter_bound(qg) && check_diameter_bound(qa) &&
                      check_diameter_bound(qc);
    const double delta_oracle = lebesgue_sliding(cex, 1e-4);
    detail = "golden " + std::to_string(qg.elements.size()) + " elt, affine " +
             std::to_string(qa.elements.size()) + " elt, cex " +
             std::to_string(qc.elements.size()) + " elts, delta=" +
             num(qc.delta) + " (oracle " + num(delta_oracle) + ")";
    return single_01(qg) && single_01(qa) && qc.elements.size() >= 2 &&
           boundary_half && diam && std::abs(qc.delta - 0.125) <= 2e-4 &&
           std::abs(qc.delta - delta_oracle) <= 2e-4;
}

bool conjugation_identity(std::string& detail, std::mt19937& rng) {
    const MapDescription map = make_beta_map(2.0);
    const auto chi0 = random_trig(rng);
    const CoboundaryCocycle phi = make_coboundary(map, chi0);
    const RealFn psi = [&phi](double x) { return phi(x); };
    const RealFn ones = [](double) { return 1.0; };
    const RealFn em = [&chi0](double x) { return std::exp(-(*chi0)(x)); };

    double worst = 0.0;
    for (int n = 1; n <= 5; ++n)
        for (int i = 0; i < 10; ++i) {
            const double x = (i + 0.5) / 10.0;
            const double lhs = apply_transfer_pointwise_n(map, psi, ones, x, n);
            const double rhs = std::exp((*chi0)(x)) *
                               apply_transfer_pointwise_n(
                                   map, [](double) { return 0.0; }, em, x, n);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    detail = "max deviation=" + num(worst);
    return worst <= 1e-10;
}

} // namespace

std::vector<CriterionResult> run_acceptance(unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<CriterionResult> out;
    out.push_back(timed("doubling-density", doubling_density));
    out.push_back(timed("golden-parry-density", [&](std::string& d) {
        return golden_parry(d, rng);
    }));
    out.push_back(timed("coboundary-eigenvalue", [&](std::string& d) {
        return coboundary_eigenvalue(d, rng);
    }));
    out.push_back(timed("spectral-reconstruction", [&](std::string& d) {
        return spectral_reconstruction(d, rng);
    }));
    out.push_back(timed("derivative-series", [&](std::string& d) {
        return derivative_series(d, rng);
    }));
    out.push_back(timed("counterexample-certification",
                        counterexample_certification));
    out.push_back(timed("q-partitions", q_partitions));
    out.push_back(timed("conjugation-identity", [&](std::string& d) {
        return conjugation_identity(d, rng);
    }));
    return out;
}

std::string format_acceptance(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    for (const CriterionResult& r : results) {
        char t[32];
        std::snprintf(t, sizeof(t), "%.1fs", r.seconds);
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << t << ")  "
           << r.detail << '\n';
    }
    return os.str();
}

} // namespace livsic
