#include "livsic/polynomial.hpp"

#include <algorithm>

namespace livsic {

double Polynomial::derivative(double x, int order) const {
    if (order == 0) return (*this)(x);
    const int n = static_cast<int>(coeffs.size());
    double v = 0.0;
    double xp = 1.0;
    for (int i = order; i < n; ++i) {
        double f = 1.0;
        for (int j = 0; j < order; ++j) f *= static_cast<double>(i - j);
        v += f * coeffs[i] * xp;
        xp *= x;
    }
    return v;
}

Polynomial Polynomial::derived(int order) const {
    Polynomial p = *this;
    for (int k = 0; k < order; ++k) {
        if (p.coeffs.size() <= 1) return Polynomial({0.0});
        std::vector<double> d(p.coeffs.size() - 1);
        for (std::size_t i = 1; i < p.coeffs.size(); ++i)
            d[i - 1] = static_cast<double>(i) * p.coeffs[i];
        p.coeffs = std::move(d);
    }
    return p;
}

void Polynomial::taylor(double x0, int order, double* out) const {
    std::vector<double> a = coeffs;
    if (a.empty()) a.push_back(0.0);
    const int n = static_cast<int>(a.size());
    for (int k = 0; k <= order; ++k) out[k] = 0.0;
    // repeated synthetic division by (x - x0)
    for (int k = 0; k <= order && k < n; ++k) {
        for (int i = n - 2; i >= k; --i) a[i] += x0 * a[i + 1];
        out[k] = a[k];
    }
}

Polynomial Polynomial::compose(const Polynomial& q) const {
    Polynomial r({0.0});
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        Polynomial t({0.0});
        t.coeffs.assign(std::max<std::size_t>(1, r.coeffs.size() + q.coeffs.size() - 1), 0.0);
        for (std::size_t a = 0; a < r.coeffs.size(); ++a)
            for (std::size_t b = 0; b < q.coeffs.size(); ++b)
                t.coeffs[a + b] += r.coeffs[a] * q.coeffs[b];
        t.coeffs[0] += coeffs[i];
        r = std::move(t);
    }
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<double> c(std::max(coeffs.size(), o.coeffs.size()), 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] += coeffs[i];
    for (std::size_t i = 0; i < o.coeffs.size(); ++i) c[i] -= o.coeffs[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<double> c(std::max(coeffs.size(), o.coeffs.size()), 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] += coeffs[i];
    for (std::size_t i = 0; i < o.coeffs.size(); ++i) c[i] += o.coeffs[i];
    return Polynomial(std::move(c));
}

} // namespace livsic
