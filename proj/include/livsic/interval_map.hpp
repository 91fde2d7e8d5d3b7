#ifndef LIVSIC_INTERVAL_MAP_HPP
#define LIVSIC_INTERVAL_MAP_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "livsic/polynomial.hpp"

namespace livsic {

/// One monotone branch of a piecewise expanding map: a polynomial of
/// degree <= 5 restricted to the closed interval [lo, hi].
struct Branch {
    double lo = 0.0;
    double hi = 1.0;
    Polynomial poly;
    int orientation = +1; // sign of T' on the interior

    double operator()(double x) const { return poly(x); }
    double derivative(double x, int order = 1) const { return poly.derivative(x, order); }

    // Image endpoints (monotone branch, so images of lo/hi).
    double image_lo() const;
    double image_hi() const;
    bool image_contains(double z, double tol = 0.0) const;

    // Unique y in [lo, hi] with T(y) = z.  Bisection to width 1e-15
    // followed by a Newton polish; affine branches are inverted directly.
    double invert(double z) const;
};

/// Piecewise expanding map of [0,1): ordered branches whose domains
/// tile [0,1), consecutive domains sharing exactly one endpoint.
struct MapDescription {
    std::vector<Branch> branches;
    double lambda = 1.0; // expansion lower bound, |T'| >= lambda > 1
    std::string label;

    // Checks domain tiling, expansion and image containment; throws
    // std::invalid_argument on violation.
    void validate() const;

    // Branch containing x; shared endpoints resolve to the left branch.
    // Throws std::domain_error for x outside [0,1).
    int branch_index(double x) const;

    // T(x) clipped into [0,1]; values reaching 1 are left at the folded
    // right endpoint.
    double operator()(double x) const;

    double derivative(double x, int order = 1) const;

    // All (y, branch) with T(y) = x, ordered by branch index; duplicate
    // endpoint preimages closer than 1e-13 are removed.
    std::vector<std::pair<double, int>> inverse_images(double x) const;

    double min_cell_width() const;
};

struct CylinderCell {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<int> itinerary;
    double width() const { return hi - lo; }
};

struct CylinderPartition {
    int generation = 0;
    std::vector<CylinderCell> cells;
};

/// Partition into n-cylinders via recursive branch pullback.
CylinderPartition cylinders(const MapDescription& map, int n,
                            std::size_t cell_budget = 1000000);

/// Smallest n0 <= n_max such that the first n0 forward images of every
/// branch domain cover [0,1) up to measure zero; nullopt on exhaustion.
std::optional<int> weak_covering_index(const MapDescription& map, int n_max);

/// T(x) = beta*x + alpha (mod 1) as affine polynomial branches.
MapDescription make_beta_map(double beta, double alpha = 0.0);

} // namespace livsic

#endif
