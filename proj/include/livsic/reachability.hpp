#ifndef LIVSIC_REACHABILITY_HPP
#define LIVSIC_REACHABILITY_HPP

#include <utility>
#include <vector>

#include "livsic/interval_map.hpp"

namespace livsic {

struct CoverInfo {
    bool covers = false; // do the open branch images cover (0,1)?
    double delta = 0.0;  // Lebesgue number of the image cover
};

/// Lebesgue number of the cover {T(int alpha)} of (0,1), computed
/// exactly from the finite set of image endpoints.
CoverInfo lebesgue_number(const MapDescription& map);

struct QPartition {
    std::vector<std::pair<double, double>> elements; // open intervals
    int depth_certified = 0; // cylinder generation m that was verified
    double delta = 0.0;      // Lebesgue number (0 if cover fails)
    bool cover_ok = false;
    bool fully_certified = true; // false if a search budget was hit
};

/// Certified refinement of the partition Q at cylinder generation m:
/// maximal intervals whose whole-interval pullbacks reach every
/// m-cylinder within n_max steps.  Element boundaries are located by
/// bisection to 1e-9.
QPartition q_partition(const MapDescription& map, int m, int n_max,
                       std::size_t budget = 1000000);

/// Every element at least delta/2 long (within tol).
bool check_diameter_bound(const QPartition& q, double tol = 1e-12);

} // namespace livsic

#endif
