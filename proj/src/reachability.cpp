#include "livsic/reachability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace livsic {

namespace {

constexpr double kTol = 1e-12;

struct Iv {
    double lo, hi;
};

std::vector<Iv> branch_images(const MapDescription& map) {
    std::vector<Iv> im;
    im.reserve(map.branches.size());
    for (const Branch& b : map.branches)
        im.push_back({std::max(0.0, b.image_lo()), std::min(1.0, b.image_hi())});
    return im;
}

// Keep only the maximal intervals of a family (antichain under inclusion).
void prune_to_maximal(std::vector<Iv>& v) {
    std::sort(v.begin(), v.end(), [](const Iv& a, const Iv& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi > b.hi);
    });
    std::vector<Iv> out;
    double reach = -1.0;
    for (const Iv& g : v) {
        if (g.hi <= reach + kTol) continue; // contained in an earlier interval
        out.push_back(g);
        reach = g.hi;
    }
    v = std::move(out);
}

bool same_family(const std::vector<Iv>& a, const std::vector<Iv>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i].lo - b[i].lo) > kTol || std::abs(a[i].hi - b[i].hi) > kTol)
            return false;
    return true;
}

// Maximal intervals J such that J reaches inside the cylinder cell within
// n_max admissible pullback steps. An interval I reaches the cell in <= k+1
// steps iff I is inside the cell, or I sits inside a single branch image and
// its pullback through that branch reaches the cell in <= k steps; since the
// feasible family is downward closed it is represented by its maximal
// elements, and the recursion acts on those by forward branch images.
std::vector<Iv> reach_family(const MapDescription& map, const CylinderCell& cell,
                             int n_max, std::size_t cap, bool& certified) {
    std::vector<Iv> fam{{cell.lo, cell.hi}};
    for (int k = 0; k < n_max; ++k) {
        std::vector<Iv> next = fam;
        for (const Iv& g : fam) {
            for (const Branch& b : map.branches) {
                const double s = std::max(g.lo, b.lo);
                const double t = std::min(g.hi, b.hi);
                if (t - s <= kTol) continue;
                double u = b.poly(s), v = b.poly(t);
                if (u > v) std::swap(u, v);
                next.push_back({std::max(0.0, u), std::min(1.0, v)});
            }
        }
        prune_to_maximal(next);
        if (same_family(next, fam)) return fam; // fixed point
        fam = std::move(next);
        if (fam.size() > cap) {
            certified = false;
            return fam;
        }
    }
    return fam;
}

} // namespace

CoverInfo lebesgue_number(const MapDescription& map) {
    CoverInfo info;
    std::vector<Iv> im = branch_images(map);
    std::sort(im.begin(), im.end(), [](const Iv& a, const Iv& b) {
        return a.lo < b.lo;
    });
    // cover check
    if (im.front().lo > kTol) return info;
    double reach = 0.0;
    for (const Iv& g : im) {
        if (g.lo > reach + kTol) return info;
        reach = std::max(reach, g.hi);
    }
    if (reach < 1.0 - kTol) return info;
    info.covers = true;

    // delta = min over cover transition points (image endpoints interior to
    // (0,1)) of the best containing-interval slack; a single image spanning
    // all of (0,1) removes every transition.
    for (const Iv& g : im)
        if (g.lo <= kTol && g.hi >= 1.0 - kTol) {
            info.delta = 1.0;
            return info;
        }
    double delta = 1.0;
    std::vector<double> pts;
    for (const Iv& g : im) {
        pts.push_back(g.lo);
        pts.push_back(g.hi);
    }
    for (double p : pts) {
        if (p <= kTol || p >= 1.0 - kTol) continue;
        double slack = 0.0;
        for (const Iv& g : im)
            if (g.lo + kTol < p && p < g.hi - kTol)
                slack = std::max(slack, std::min(p - g.lo, g.hi - p));
        delta = std::min(delta, slack);
    }
    info.delta = delta;
    return info;
}

QPartition q_partition(const MapDescription& map, int m, int n_max,
                       std::size_t budget) {
    if (m < 1) throw std::invalid_argument("generation must be >= 1");
    if (n_max < m) throw std::invalid_argument("n_max must be >= m");
    QPartition q;
    const CoverInfo ci = lebesgue_number(map);
    q.cover_ok = ci.covers;
    q.delta = ci.covers ? ci.delta : 0.0;
    q.depth_certified = m;

    const CylinderPartition cyl = cylinders(map, m, budget);
    const int n_cells = static_cast<int>(cyl.cells.size());
    const std::size_t cap = std::max<std::size_t>(64, budget / std::max(1, n_cells));

    std::vector<std::vector<Iv>> fams(n_cells);
    bool certified = true;
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < n_cells; ++c) {
        bool ok = true;
        fams[c] = reach_family(map, cyl.cells[c], n_max, cap, ok);
        if (!ok) {
#pragma omp critical
            certified = false;
        }
    }

    // sweep the endpoints of all maximal intervals; on each elementary
    // segment the farthest single-interval reach per cell is constant
    std::vector<double> events{0.0, 1.0};
    for (const auto& fam : fams)
        for (const Iv& g : fam) {
            events.push_back(g.lo);
            events.push_back(g.hi);
        }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end(),
                             [](double a, double b) { return std::abs(a - b) <= kTol; }),
                 events.end());

    auto reach_from = [&](double a) -> double {
        // farthest b such that (a, b) sits inside one maximal interval of
        // every cell's feasible family; a itself if some cell is unreachable
        double r = 1.0;
        for (const auto& fam : fams) {
            double best = a;
            for (const Iv& g : fam)
                if (g.lo <= a + kTol && g.hi > a + kTol) best = std::max(best, g.hi);
            r = std::min(r, best);
            if (r <= a + kTol) return a;
        }
        return r;
    };

    double cur_lo = std::numeric_limits<double>::quiet_NaN();
    double cur_hi = 0.0;
    for (std::size_t i = 0; i + 1 < events.size(); ++i) {
        const double a = events[i];
        const double r = reach_from(a);
        if (r <= a + kTol) {
            // dead segment up to the next event: nothing reachable from here
            if (!std::isnan(cur_lo) && cur_hi > cur_lo + kTol)
                q.elements.emplace_back(cur_lo, std::min(cur_hi, a));
            q.elements.emplace_back(a, events[i + 1]);
            q.fully_certified = false;
            cur_lo = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        if (std::isnan(cur_lo) || a >= cur_hi - kTol) {
            if (!std::isnan(cur_lo) && cur_hi > cur_lo + kTol)
                q.elements.emplace_back(cur_lo, cur_hi);
            cur_lo = a;
            cur_hi = r;
        } else {
            cur_hi = std::max(cur_hi, r);
        }
    }
    if (!std::isnan(cur_lo) && cur_hi > cur_lo + kTol)
        q.elements.emplace_back(cur_lo, cur_hi);
    if (!certified) q.fully_certified = false;
    return q;
}

bool check_diameter_bound(const QPartition& q, double tol) {
    if (!q.cover_ok) return true; // no cover, no diameter bound to check
    for (const auto& [a, b] : q.elements)
        if (b - a < q.delta / 2.0 - tol) return false;
    return true;
}

} // namespace livsic
