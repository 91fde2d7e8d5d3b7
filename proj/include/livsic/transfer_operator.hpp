#ifndef LIVSIC_TRANSFER_OPERATOR_HPP
#define LIVSIC_TRANSFER_OPERATOR_HPP

#include <functional>
#include <span>
#include <vector>

#include "livsic/cocycle.hpp"
#include "livsic/grid_function.hpp"
#include "livsic/interval_map.hpp"

namespace livsic {

using RealFn = std::function<double(double)>;

/// Finite-rank operator on midpoint-grid functions, CSR storage.
struct SparseOperator {
    int n = 0;
    std::vector<int> row_ptr; // size n+1
    std::vector<int> col;
    std::vector<double> val;

    std::vector<double> apply(std::span<const double> v) const;
    std::vector<double> apply_transpose(std::span<const double> v) const;
    double row_sum(int i) const;
    std::size_t nnz() const { return val.size(); }
};

enum class Scheme {
    collocation,  // pointwise preimage sums at grid nodes
    cell_average, // exact cell averages of L_psi applied to the basis
};

enum class Execution { serial, parallel };

/// L_psi f(x) = sum_{T(y)=x} e^{psi(y)} / |T'(y)| f(y), exact finite sum.
double apply_transfer_pointwise(const MapDescription& map, const RealFn& psi,
                                const RealFn& f, double x);

/// n-fold application by full backward-tree enumeration (exact).
double apply_transfer_pointwise_n(const MapDescription& map, const RealFn& psi,
                                  const RealFn& f, double x, int n);

SparseOperator discretize(const MapDescription& map, const RealFn& psi, int n_grid,
                          Scheme scheme = Scheme::cell_average,
                          Execution exec = Execution::parallel);

struct EigenData {
    double eigenvalue = 0.0;
    std::vector<double> right; // sup-normalized, non-negative
    std::vector<double> left;  // sup-normalized, non-negative
    int iterations = 0;
};

/// Dominant eigentriple by power iteration with sup-norm normalization.
/// Throws std::runtime_error on non-convergence.
EigenData leading_eigendata(const SparseOperator& op, double tol = 1e-12,
                            int max_iter = 100000);

/// Leading eigendata of the weighted operator together with the
/// unweighted invariant density.  a is the reciprocal of the dominant
/// eigenvalue of L_phi, so that a^n L_phi^n f converges.
struct SpectralData {
    double a = 0.0;
    GridFunction w;
    std::vector<double> nu; // cell weights, normalized so sum nu_i w_i = 1
    GridFunction h;
    double gamma_floor = 0.0;
};

SpectralData spectral_data(const MapDescription& map, const Cocycle& phi, int n_grid,
                           Scheme scheme = Scheme::cell_average, double tol = 1e-12,
                           int max_iter = 100000);

/// Fixed density of L_0, normalized to unit integral.
GridFunction invariant_density(const MapDescription& map, int n_grid,
                               Scheme scheme = Scheme::cell_average,
                               double tol = 1e-12, int max_iter = 100000);

} // namespace livsic

#endif
