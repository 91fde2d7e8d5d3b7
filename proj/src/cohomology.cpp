#include "livsic/cohomology.hpp"

#include <algorithm>
#include <cmath>

#include "livsic/jet.hpp"

namespace livsic {

namespace {

constexpr double kTol = 1e-12;

bool image_covers(const Branch& b, double lo, double hi) {
    return b.image_lo() - kTol <= lo && hi <= b.image_hi() + kTol;
}

int choose_branch(const MapDescription& map, double z, const OrbitPolicy& policy,
                  int step) {
    switch (policy.kind) {
    case BranchPolicy::fixed_itinerary: {
        if (step >= static_cast<int>(policy.itinerary.size()))
            throw PolicyDeadEnd("itinerary exhausted");
        const int bi = policy.itinerary[step];
        if (bi < 0 || bi >= static_cast<int>(map.branches.size()))
            throw PolicyDeadEnd("itinerary names a missing branch");
        if (!map.branches[bi].image_contains(z, kTol))
            throw PolicyDeadEnd("branch image does not contain the point");
        return bi;
    }
    case BranchPolicy::leftmost: {
        for (std::size_t i = 0; i < map.branches.size(); ++i)
            if (map.branches[i].image_contains(z, kTol)) return static_cast<int>(i);
        throw PolicyDeadEnd("no branch image contains the point");
    }
    case BranchPolicy::max_weight: {
        int best = -1;
        double best_w = -1.0;
        for (std::size_t i = 0; i < map.branches.size(); ++i) {
            const Branch& b = map.branches[i];
            if (!b.image_contains(z, kTol)) continue;
            const double y = b.invert(std::clamp(z, b.image_lo(), b.image_hi()));
            const double dens = policy.density ? (*policy.density)(y) : 1.0;
            const double w = dens / std::abs(b.poly.derivative(y));
            if (w > best_w) {
                best_w = w;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) throw PolicyDeadEnd("no branch image contains the point");
        return best;
    }
    }
    throw PolicyDeadEnd("unknown policy");
}

} // namespace

CoboundaryCocycle make_coboundary(const MapDescription& map,
                                  std::shared_ptr<const Cocycle> chi0) {
    return CoboundaryCocycle(map, std::move(chi0));
}

ResidualReport verify_cocycle(const MapDescription& map, const Cocycle& phi,
                              const RealFn& chi, int n_samples, double exclusion) {
    std::vector<double> endpoints;
    for (const Branch& b : map.branches) {
        endpoints.push_back(b.lo);
        endpoints.push_back(b.hi);
    }
    ResidualReport rep;
    double sup = 0.0, l1 = 0.0;
    int used = 0;
#pragma omp parallel for schedule(static) reduction(max : sup) \
    reduction(+ : l1, used)
    for (int i = 0; i < n_samples; ++i) {
        const double x = (i + 0.5) / n_samples;
        bool skip = false;
        for (double e : endpoints)
            if (std::abs(x - e) < exclusion) skip = true;
        if (skip) continue;
        const double r = phi(x) - chi(map(x)) + chi(x);
        sup = std::max(sup, std::abs(r));
        l1 += std::abs(r);
        ++used;
    }
    rep.sup = sup;
    rep.l1 = used > 0 ? l1 / used : 0.0;
    rep.n_used = used;
    return rep;
}

CocycleSolution solve_spectral(const MapDescription& map, const Cocycle& phi,
                               int n_grid, Scheme scheme, double tol, int max_iter) {
    const SpectralData sd = spectral_data(map, phi, n_grid, scheme, tol, max_iter);
    if (!(sd.gamma_floor > 0.0))
        throw std::runtime_error(
            "eigenfunction touches zero; weak covering appears violated");

    CocycleSolution sol;
    sol.method = "spectral";
    sol.normalization = "mean-zero(mu)";
    sol.a = sd.a;
    sol.coboundary = std::abs(sd.a - 1.0) <= 1e-4;
    sol.chi = GridFunction(n_grid);
    for (int i = 0; i < n_grid; ++i)
        sol.chi.values[i] = std::log(sd.w.values[i]) - std::log(sd.h.values[i]);

    // shift so that the mu-mean vanishes (mu = h dm)
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n_grid; ++i) {
        num += sol.chi.values[i] * sd.h.values[i];
        den += sd.h.values[i];
    }
    const double shift = num / den;
    for (double& v : sol.chi.values) v -= shift;

    const GridFunction& chi = sol.chi;
    const ResidualReport rep = verify_cocycle(
        map, phi, [&chi](double x) { return chi(x); }, n_grid, 2.0 / n_grid);
    sol.residual_sup = rep.sup;
    sol.residual_l1 = rep.l1;
    sol.variation = sol.chi.variation();
    return sol;
}

std::vector<double> backward_orbit(const MapDescription& map, double x,
                                   const OrbitPolicy& policy, int n) {
    std::vector<double> ys;
    ys.reserve(n);
    double z = x;
    for (int j = 0; j < n; ++j) {
        const int bi = choose_branch(map, z, policy, j);
        const Branch& b = map.branches[bi];
        z = b.invert(std::clamp(z, b.image_lo(), b.image_hi()));
        ys.push_back(z);
    }
    return ys;
}

SeriesResult chi_difference(const MapDescription& map, const Cocycle& phi,
                            double x1, double x2, int n) {
    SeriesResult res;
    if (x1 == x2) return res;
    const double lip = phi.derivative_sup(1);
    double y1 = x1, y2 = x2;
    double lo = std::min(x1, x2), hi = std::max(x1, x2);
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        int chosen = -1;
        for (std::size_t i = 0; i < map.branches.size(); ++i) {
            if (image_covers(map.branches[i], lo, hi)) {
                chosen = static_cast<int>(i);
                break;
            }
        }
        if (chosen < 0)
            throw NoCommonPullback("pair interval leaves every branch image at step " +
                                   std::to_string(j));
        const Branch& b = map.branches[chosen];
        y1 = b.invert(std::clamp(y1, b.image_lo(), b.image_hi()));
        y2 = b.invert(std::clamp(y2, b.image_lo(), b.image_hi()));
        lo = std::min(y1, y2);
        hi = std::max(y1, y2);
        sum += phi(y1) - phi(y2);
        res.terms = j + 1;
    }
    res.value = sum;
    res.tail_bound = lip * std::abs(x1 - x2) * std::pow(map.lambda, -n) /
                     (map.lambda - 1.0);
    return res;
}

SeriesResult chi_derivative_series(const MapDescription& map, const Cocycle& phi,
                                   double x, int n_trunc, const OrbitPolicy& policy) {
    const std::vector<double> orbit = backward_orbit(map, x, policy, n_trunc);
    SeriesResult res;
    double g = 1.0;
    for (int j = 0; j < n_trunc; ++j) {
        const double y = orbit[j];
        g /= map.derivative(y);
        res.value += phi.derivative(y, 1) * g;
    }
    res.terms = n_trunc;
    res.tail_bound =
        phi.derivative_sup(1) * std::pow(map.lambda, -n_trunc) / (map.lambda - 1.0);
    return res;
}

SeriesResult chi_higher_derivative(const MapDescription& map, const Cocycle& phi,
                                   double x, int order, int n_trunc,
                                   const OrbitPolicy& policy) {
    if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
    if (order > phi.smoothness())
        throw std::invalid_argument("order exceeds cocycle smoothness");
    if (order == 1) return chi_derivative_series(map, phi, x, n_trunc, policy);
    const int ord = order + 1; // jet coefficients 0..order
    if (ord > Jet::kMax) throw std::invalid_argument("derivative order too high");

    SeriesResult res;
    res.terms = n_trunc;
    Jet y_jet = Jet::variable(x, ord);
    double fact = 1.0;
    for (int i = 2; i <= order - 1; ++i) fact *= i; // (order-1)!
    double bhat = 0.0;
    double lam_pow = 1.0;

    for (int j = 0; j < n_trunc; ++j) {
        const double z0 = y_jet.c[0];
        const int bi = choose_branch(map, z0, policy, j);
        const Branch& b = map.branches[bi];
        const double y0 = b.invert(std::clamp(z0, b.image_lo(), b.image_hi()));

        double tcoef[Jet::kMax]{};
        b.poly.taylor(y0, ord - 1, tcoef);
        const Jet u = jet_series_reversion(tcoef, ord);

        Jet delta = y_jet;
        delta.c[0] = 0.0;
        Jet ynew(y0, ord);
        const Jet comp = jet_eval_taylor(u.c.data(), ord, delta);
        for (int k = 1; k < ord; ++k) ynew.c[k] = comp.coeff(k);
        y_jet = ynew;

        // term_j = (d/dx)^{order-1} [ phi'(y_j(x)) y_j'(x) ]
        double dphi[Jet::kMax]{};
        phi.derivatives(y0, order, dphi);
        double tay[Jet::kMax]{};
        double f = 1.0;
        for (int i = 0; i < order; ++i) {
            if (i > 1) f *= i;
            tay[i] = dphi[i + 1] / (i <= 1 ? 1.0 : f);
        }
        Jet d2 = y_jet;
        d2.c[0] = 0.0;
        const Jet phi_prime = jet_eval_taylor(tay, order, d2);
        const Jet F = phi_prime * y_jet.derivative_jet();
        const double term = F.coeff(order - 1) * fact;
        res.value += term;
        lam_pow *= map.lambda;
        bhat = std::max(bhat, std::abs(term) * lam_pow);
    }
    res.tail_bound = bhat * std::pow(map.lambda, -n_trunc) / (map.lambda - 1.0);
    return res;
}

int default_truncation(double lambda, double tol) {
    return static_cast<int>(std::ceil(-std::log(tol) / std::log(lambda))) + 5;
}

} // namespace livsic
