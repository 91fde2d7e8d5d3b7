#include "livsic/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace livsic {

double GridFunction::operator()(double x) const {
    if (n == 0) throw std::logic_error("empty GridFunction");
    const double t = x * n - 0.5;
    if (t <= 0.0) return values.front();
    if (t >= n - 1.0) return values.back();
    const int i = static_cast<int>(t);
    const double frac = t - i;
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

double GridFunction::variation() const {
    double v = 0.0;
    for (int i = 0; i + 1 < n; ++i) v += std::abs(values[i + 1] - values[i]);
    return v;
}

double GridFunction::mean() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s / n;
}

double GridFunction::min_value() const {
    return *std::min_element(values.begin(), values.end());
}

double GridFunction::max_value() const {
    return *std::max_element(values.begin(), values.end());
}

void GridFunction::normalize_density() {
    const double m = mean();
    if (!(m > 0.0)) throw std::runtime_error("cannot normalize non-positive density");
    for (double& v : values) v /= m;
}

double variation_estimate(const GridFunction& f) { return f.variation(); }

} // namespace livsic
