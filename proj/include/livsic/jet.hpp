#ifndef LIVSIC_JET_HPP
#define LIVSIC_JET_HPP

#include <array>
#include <cmath>
#include <stdexcept>

#include "livsic/polynomial.hpp"

namespace livsic {

// Truncated Taylor series (jet) with runtime order, used to push
// derivative data through compositions of branches and observables.
struct Jet {
    static constexpr int kMax = 8; // stores coefficients c[0..kMax-1]

    int ord = 1; // number of coefficients in use
    std::array<double, kMax> c{};

    Jet() = default;
    Jet(double constant, int order) : ord(order) { c[0] = constant; }

    static Jet variable(double x0, int order) {
        Jet j(x0, order);
        if (order > 1) j.c[1] = 1.0;
        return j;
    }

    double coeff(int k) const { return k < ord ? c[k] : 0.0; }

    // k-th derivative value represented by this jet.
    double deriv(int k) const {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return coeff(k) * f;
    }

    Jet operator+(const Jet& o) const {
        Jet r(0.0, ord);
        for (int i = 0; i < ord; ++i) r.c[i] = coeff(i) + o.coeff(i);
        return r;
    }
    Jet operator-(const Jet& o) const {
        Jet r(0.0, ord);
        for (int i = 0; i < ord; ++i) r.c[i] = coeff(i) - o.coeff(i);
        return r;
    }
    Jet operator*(const Jet& o) const {
        Jet r(0.0, ord);
        for (int i = 0; i < ord; ++i)
            for (int j = 0; i + j < ord; ++j)
                r.c[i + j] += coeff(i) * o.coeff(j);
        return r;
    }
    Jet operator*(double s) const {
        Jet r = *this;
        for (int i = 0; i < ord; ++i) r.c[i] *= s;
        return r;
    }

    // Jet of the derivative function: coefficients shifted down.
    Jet derivative_jet() const {
        Jet r(0.0, ord);
        for (int k = 0; k + 1 < ord; ++k) r.c[k] = (k + 1) * coeff(k + 1);
        return r;
    }
};

// p evaluated on a jet (Horner).
inline Jet jet_eval_poly(const Polynomial& p, const Jet& x) {
    Jet v(0.0, x.ord);
    for (std::size_t i = p.coeffs.size(); i-- > 0;) {
        v = v * x;
        v.c[0] += p.coeffs[i];
    }
    return v;
}

// Evaluate a truncated Taylor polynomial with coefficients t[0..n-1]
// (around 0) at the zero-constant part of jet u.  u.c[0] must be 0.
inline Jet jet_eval_taylor(const double* t, int n, const Jet& u) {
    Jet v(0.0, u.ord);
    for (int i = n; i-- > 0;) {
        v = v * u;
        v.c[0] += t[i];
    }
    return v;
}

// Solve a[1] u + a[2] u^2 + ... = s for the jet u(s), a[1] != 0.
// a holds Taylor coefficients of the forward map with a[0] ignored.
inline Jet jet_series_reversion(const double* a, int order) {
    if (a[1] == 0.0) throw std::runtime_error("jet_series_reversion: vanishing derivative");
    Jet s = Jet::variable(0.0, order);
    Jet u = s * (1.0 / a[1]);
    for (int it = 0; it < order; ++it) {
        // u <- (s - sum_{i>=2} a_i u^i) / a1
        Jet acc(0.0, order);
        Jet p = u * u;
        for (int i = 2; i < order; ++i) {
            acc = acc + p * a[i];
            p = p * u;
        }
        u = (s - acc) * (1.0 / a[1]);
    }
    return u;
}

// exp of a jet.
inline Jet jet_exp(const Jet& f) {
    Jet e(std::exp(f.c[0]), f.ord);
    for (int k = 1; k < f.ord; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * f.coeff(j) * e.coeff(k - j);
        e.c[k] = s / k;
    }
    return e;
}

// sin and cos of a jet, computed jointly.
inline void jet_sin_cos(const Jet& f, Jet& s, Jet& c) {
    s = Jet(std::sin(f.c[0]), f.ord);
    c = Jet(std::cos(f.c[0]), f.ord);
    for (int k = 1; k < f.ord; ++k) {
        double as = 0.0, ac = 0.0;
        for (int j = 1; j <= k; ++j) {
            as += j * f.coeff(j) * c.coeff(k - j);
            ac -= j * f.coeff(j) * s.coeff(k - j);
        }
        s.c[k] = as / k;
        c.c[k] = ac / k;
    }
}

} // namespace livsic

#endif
