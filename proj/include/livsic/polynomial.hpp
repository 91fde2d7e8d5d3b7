#ifndef LIVSIC_POLYNOMIAL_HPP
#define LIVSIC_POLYNOMIAL_HPP

#include <vector>
#include <cstddef>

namespace livsic {

// Dense univariate polynomial, coeffs[i] multiplies x^i.
struct Polynomial {
    std::vector<double> coeffs;

    Polynomial() = default;
    explicit Polynomial(std::vector<double> c) : coeffs(std::move(c)) {}

    int degree() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.size()) - 1; }

    double operator()(double x) const {
        double v = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;)
            v = v * x + coeffs[i];
        return v;
    }

    // m-th derivative evaluated at x; exact for any order.
    double derivative(double x, int order = 1) const;

    Polynomial derived(int order = 1) const;

    // Taylor coefficients of p(x0 + u) in u, out[0..order].
    void taylor(double x0, int order, double* out) const;

    // this(q(x)) as a polynomial in x.
    Polynomial compose(const Polynomial& q) const;

    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator+(const Polynomial& o) const;
};

} // namespace livsic

#endif
