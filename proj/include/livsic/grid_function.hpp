#ifndef LIVSIC_GRID_FUNCTION_HPP
#define LIVSIC_GRID_FUNCTION_HPP

#include <vector>

namespace livsic {

/// Function on [0,1) sampled at the midpoints (i+1/2)/n of a uniform
/// grid, evaluated by piecewise-linear interpolation between nodes and
/// constant extension beyond the outermost nodes.
struct GridFunction {
    int n = 0;
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(int n_grid, double fill = 0.0)
        : n(n_grid), values(static_cast<std::size_t>(n_grid), fill) {}

    double node(int i) const { return (i + 0.5) / n; }

    double operator()(double x) const;

    /// Sum of |consecutive differences| over the grid.
    double variation() const;

    /// Midpoint-rule integral against Lebesgue measure.
    double mean() const;

    double min_value() const;
    double max_value() const;

    /// Scale so that the midpoint-rule integral equals 1.
    void normalize_density();
};

double variation_estimate(const GridFunction& f);

} // namespace livsic

#endif
