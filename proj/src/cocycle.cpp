#include "livsic/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "livsic/jet.hpp"

namespace livsic {

double Cocycle::derivative_sup(int order, int n_samples) const {
    double sup = 0.0;
    std::vector<double> d(order + 1);
    for (int i = 0; i < n_samples; ++i) {
        const double x = (i + 0.5) / n_samples;
        derivatives(x, order, d.data());
        sup = std::max(sup, std::abs(d[order]));
    }
    return sup;
}

void TrigPolynomial::derivatives(double x, int order, double* out) const {
    const double twopi = 2.0 * M_PI;
    for (int j = 0; j <= order; ++j) out[j] = 0.0;
    const std::size_t nk = std::max(cos_.size(), sin_.size());
    for (std::size_t k = 0; k < nk; ++k) {
        double a = k < cos_.size() ? cos_[k] : 0.0;
        double b = k < sin_.size() ? sin_[k] : 0.0;
        const double th = twopi * k * x;
        const double ck = std::cos(th), sk = std::sin(th);
        for (int j = 0; j <= order; ++j) {
            out[j] += a * ck + b * sk;
            // d/dx (a cos + b sin) = (2 pi k)(b cos - a sin)
            const double an = twopi * k * b;
            const double bn = -twopi * k * a;
            a = an;
            b = bn;
        }
    }
}

int PiecewisePolynomial::piece_index(double x) const {
    if (x < breaks_.front() - 1e-12 || x > 1.0 + 1e-12)
        throw std::domain_error("point outside piecewise domain");
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    int i = static_cast<int>(it - breaks_.begin()) - 1;
    i = std::clamp(i, 0, static_cast<int>(pieces_.size()) - 1);
    return i;
}

void PiecewisePolynomial::derivatives(double x, int order, double* out) const {
    const int i = piece_index(x);
    const Polynomial& p = pieces_[i];
    const double u = x - breaks_[i]; // local coordinate keeps Horner stable
    for (int j = 0; j <= order; ++j) out[j] = p.derivative(u, j);
}

void CoboundaryCocycle::derivatives(double x, int order, double* out) const {
    if (order + 1 > Jet::kMax) throw std::invalid_argument("derivative order too high");
    const Branch& b = map_.branches[map_.branch_index(x)];

    double tcoef[Jet::kMax]{};
    b.poly.taylor(x, order, tcoef);
    const double t0 = std::clamp(tcoef[0], 0.0, 1.0);

    // Taylor coefficients of chi0 at T(x)
    double dchi[Jet::kMax]{};
    chi0_->derivatives(t0, order, dchi);
    double tay[Jet::kMax]{};
    double fact = 1.0;
    for (int j = 0; j <= order; ++j) {
        if (j > 1) fact *= j;
        tay[j] = dchi[j] / (j <= 1 ? 1.0 : fact);
    }

    Jet delta(0.0, order + 1);
    for (int j = 1; j <= order; ++j) delta.c[j] = tcoef[j];
    Jet comp = jet_eval_taylor(tay, order + 1, delta);

    double dchix[Jet::kMax]{};
    chi0_->derivatives(x, order, dchix);
    for (int j = 0; j <= order; ++j) out[j] = comp.deriv(j) - dchix[j];
}

} // namespace livsic
