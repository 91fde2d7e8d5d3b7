#ifndef LIVSIC_COCYCLE_HPP
#define LIVSIC_COCYCLE_HPP

#include <memory>
#include <vector>

#include "livsic/interval_map.hpp"
#include "livsic/polynomial.hpp"

namespace livsic {

/// Observable on [0,1) with exact derivatives up to a stated order.
class Cocycle {
public:
    virtual ~Cocycle() = default;

    /// out[j] = f^(j)(x) for j = 0..order.
    virtual void derivatives(double x, int order, double* out) const = 0;

    /// Highest derivative order available.
    virtual int smoothness() const = 0;

    double operator()(double x) const {
        double v;
        derivatives(x, 0, &v);
        return v;
    }

    double derivative(double x, int order) const {
        std::vector<double> d(order + 1);
        derivatives(x, order, d.data());
        return d[order];
    }

    /// Sampled sup of |f^(order)| over a midpoint grid.
    double derivative_sup(int order, int n_samples = 4096) const;
};

/// sum_k cos_coeffs[k] cos(2 pi k x) + sin_coeffs[k] sin(2 pi k x).
class TrigPolynomial : public Cocycle {
public:
    TrigPolynomial(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
        : cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {}

    void derivatives(double x, int order, double* out) const override;
    int smoothness() const override { return 7; }

    const std::vector<double>& cos_coeffs() const { return cos_; }
    const std::vector<double>& sin_coeffs() const { return sin_; }

private:
    std::vector<double> cos_, sin_;
};

class PolynomialCocycle : public Cocycle {
public:
    explicit PolynomialCocycle(Polynomial p) : p_(std::move(p)) {}

    void derivatives(double x, int order, double* out) const override {
        for (int j = 0; j <= order; ++j) out[j] = p_.derivative(x, j);
    }
    int smoothness() const override { return 7; }
    const Polynomial& poly() const { return p_; }

private:
    Polynomial p_;
};

/// Piecewise polynomial on [0,1]; pieces are [breaks[i], breaks[i+1])
/// and each piece is a polynomial in the local coordinate
/// x - breaks[i] (keeps evaluation well conditioned for steep ramps).
/// At an interior breakpoint the right piece applies; x >= last break
/// uses the final piece.
class PiecewisePolynomial : public Cocycle {
public:
    PiecewisePolynomial(std::vector<double> breaks, std::vector<Polynomial> pieces,
                        int smoothness_k = 0)
        : breaks_(std::move(breaks)), pieces_(std::move(pieces)), k_(smoothness_k) {}

    void derivatives(double x, int order, double* out) const override;
    int smoothness() const override { return k_; }

    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<Polynomial>& pieces() const { return pieces_; }
    int piece_index(double x) const;

private:
    std::vector<double> breaks_;
    std::vector<Polynomial> pieces_;
    int k_;
};

/// phi(x) = chi0(T x) - chi0(x); derivatives by the chain rule through
/// the branch polynomials.
class CoboundaryCocycle : public Cocycle {
public:
    CoboundaryCocycle(MapDescription map, std::shared_ptr<const Cocycle> chi0)
        : map_(std::move(map)), chi0_(std::move(chi0)) {}

    void derivatives(double x, int order, double* out) const override;
    int smoothness() const override { return chi0_->smoothness(); }

    const MapDescription& map() const { return map_; }
    const Cocycle& chi0() const { return *chi0_; }

private:
    MapDescription map_;
    std::shared_ptr<const Cocycle> chi0_;
};

} // namespace livsic

#endif
