#ifndef LIVSIC_COHOMOLOGY_HPP
#define LIVSIC_COHOMOLOGY_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "livsic/cocycle.hpp"
#include "livsic/grid_function.hpp"
#include "livsic/interval_map.hpp"
#include "livsic/transfer_operator.hpp"

namespace livsic {

/// A branch choice became inadmissible along a backward orbit.
struct PolicyDeadEnd : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No common branch word pulls the pair interval back to the requested
/// depth; signals that the two points lie in different Q elements.
struct NoCommonPullback : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CoboundaryCocycle make_coboundary(const MapDescription& map,
                                  std::shared_ptr<const Cocycle> chi0);

struct ResidualReport {
    double sup = 0.0;
    double l1 = 0.0;
    int n_used = 0;
};

/// Residuals of phi - chi(T x) + chi(x) over a midpoint grid, skipping
/// points within `exclusion` of branch endpoints.
ResidualReport verify_cocycle(const MapDescription& map, const Cocycle& phi,
                              const RealFn& chi, int n_samples,
                              double exclusion = 1e-9);

struct CocycleSolution {
    GridFunction chi;
    std::string normalization; // "mean-zero(mu)"
    std::string method;        // "spectral"
    double residual_sup = 0.0;
    double residual_l1 = 0.0;
    double a = 0.0;
    double variation = 0.0;
    bool coboundary = false; // |a-1| <= 1e-4
};

/// chi = log w - log h on the grid, shifted to mean zero against mu.
/// Collocation is the default here: its extrapolated edge basis makes the
/// reconstructed chi second-order accurate up to the domain boundary.
CocycleSolution solve_spectral(const MapDescription& map, const Cocycle& phi,
                               int n_grid, Scheme scheme = Scheme::collocation,
                               double tol = 1e-12, int max_iter = 100000);

enum class BranchPolicy { leftmost, fixed_itinerary, max_weight };

struct OrbitPolicy {
    BranchPolicy kind = BranchPolicy::leftmost;
    std::vector<int> itinerary;           // for fixed_itinerary
    const GridFunction* density = nullptr; // for max_weight
};

/// y_1..y_n with T(y_1) = x and T(y_{j+1}) = y_j.
std::vector<double> backward_orbit(const MapDescription& map, double x,
                                   const OrbitPolicy& policy, int n);

struct SeriesResult {
    double value = 0.0;
    double tail_bound = 0.0;
    int terms = 0;
};

/// Partial telescoping sum for chi(x1) - chi(x2) along a common-branch
/// interval pullback, with geometric tail bound.
SeriesResult chi_difference(const MapDescription& map, const Cocycle& phi,
                            double x1, double x2, int n);

/// Backward-orbit series for chi'(x).
SeriesResult chi_derivative_series(const MapDescription& map, const Cocycle& phi,
                                   double x, int n_trunc,
                                   const OrbitPolicy& policy = {});

/// Order-m derivative of chi by the inductive series, evaluated with
/// truncated Taylor jets pushed along the backward orbit.
SeriesResult chi_higher_derivative(const MapDescription& map, const Cocycle& phi,
                                   double x, int order, int n_trunc,
                                   const OrbitPolicy& policy = {});

int default_truncation(double lambda, double tol);

} // namespace livsic

#endif
