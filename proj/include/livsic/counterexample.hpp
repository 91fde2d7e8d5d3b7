#ifndef LIVSIC_COUNTEREXAMPLE_HPP
#define LIVSIC_COUNTEREXAMPLE_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "livsic/cocycle.hpp"
#include "livsic/interval_map.hpp"
#include "livsic/transfer_operator.hpp"

namespace livsic {

/// Three-branch family T_c on [0,1]: slope-2 outer branches and a
/// middle branch of slope d = 2 - 4c.  For c = 1/8 the map is Markov.
struct CounterexampleSpec {
    double c = 0.125;
    int k = 3; // target smoothness of phi

    double d() const { return 2.0 - 4.0 * c; }
    void validate() const; // throws std::invalid_argument
};

struct CounterexampleBuild {
    MapDescription map;
    std::shared_ptr<const PiecewisePolynomial> chi; // unit jump at 1/2
    std::shared_ptr<const PiecewisePolynomial> phi; // chi(T x) - chi(x), C^k
    std::vector<double> partition; // breakpoints including 0 and 1
};

MapDescription make_counterexample_map(double c);

/// Polynomial ramp of degree 2k+1 with S(0)=0, S(1)=1 and k vanishing
/// derivatives at both ends.
Polynomial smoothstep(int k);

/// chi: ramps 1 -> 0 on [0,c] and [1-c,1], plateau 0 on [c,1/2),
/// plateau 1 on [1/2,1-c); phi = chi o T - chi assembled exactly as a
/// piecewise polynomial.
CounterexampleBuild build_counterexample(const CounterexampleSpec& spec);

struct JetMismatch {
    double breakpoint = 0.0;
    int order = 0;
    double left = 0.0;
    double right = 0.0;
    double mismatch = 0.0;
    bool pass = true;
    bool one_sided = false; // breakpoint at a domain boundary
};

struct SmoothnessReport {
    std::vector<JetMismatch> entries;
    double max_mismatch = 0.0;
    bool pass = true;
};

/// One-sided finite-difference jets of order 0..k at each breakpoint,
/// from 9 nodes per side (exact for polynomial pieces of degree <= 8).
/// PASS iff every mismatch <= 1e-6 * max(1, |jet|).
SmoothnessReport certify_smoothness(const RealFn& f,
                                    const std::vector<double>& breakpoints, int k,
                                    double h_fd = 1.0 / 256.0);

/// Markov property of T_c for rational c = num/den: every partition
/// element maps onto a union of partition elements, in exact arithmetic.
bool counterexample_markov(std::int64_t num, std::int64_t den);

} // namespace livsic

#endif
