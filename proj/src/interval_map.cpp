#include "livsic/interval_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace livsic {

namespace {

constexpr double kEndpointTol = 1e-12;
constexpr double kDedupTol = 1e-13;

// Sorted disjoint union of intervals on [0,1], merged with tolerance.
struct IntervalSet {
    std::vector<std::pair<double, double>> iv;

    void insert(double a, double b) {
        if (b - a <= 0.0) return;
        iv.emplace_back(a, b);
    }

    void normalize() {
        std::sort(iv.begin(), iv.end());
        std::vector<std::pair<double, double>> out;
        for (const auto& [a, b] : iv) {
            if (!out.empty() && a <= out.back().second + kEndpointTol)
                out.back().second = std::max(out.back().second, b);
            else
                out.emplace_back(a, b);
        }
        iv = std::move(out);
    }

    // total length of [0,1] \ this
    double gap() const {
        double covered = 0.0;
        for (const auto& [a, b] : iv) covered += b - a;
        return 1.0 - covered;
    }
};

} // namespace

double Branch::image_lo() const { return std::min(poly(lo), poly(hi)); }
double Branch::image_hi() const { return std::max(poly(lo), poly(hi)); }

bool Branch::image_contains(double z, double tol) const {
    return z >= image_lo() - tol && z <= image_hi() + tol;
}

double Branch::invert(double z) const {
    if (poly.coeffs.size() <= 2) {
        const double c0 = poly.coeffs.empty() ? 0.0 : poly.coeffs[0];
        const double c1 = poly.coeffs.size() > 1 ? poly.coeffs[1] : 0.0;
        if (c1 == 0.0) throw std::domain_error("Branch::invert: constant branch");
        return std::clamp((z - c0) / c1, lo, hi);
    }
    double a = lo, b = hi;
    double fa = poly(a) - z;
    double fb = poly(b) - z;
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) {
        // z outside the image; clamp to the nearer endpoint
        return std::abs(fa) < std::abs(fb) ? a : b;
    }
    while (b - a > 1e-15) {
        const double mid = 0.5 * (a + b);
        const double fm = poly(mid) - z;
        if (fm == 0.0) return mid;
        if (fa * fm < 0.0) { b = mid; fb = fm; }
        else { a = mid; fa = fm; }
    }
    double y = 0.5 * (a + b);
    const double dp = poly.derivative(y);
    if (dp != 0.0) y -= (poly(y) - z) / dp;
    return std::clamp(y, lo, hi);
}

void MapDescription::validate() const {
    if (branches.empty()) throw std::invalid_argument("map has no branches");
    if (!(lambda > 1.0)) throw std::invalid_argument("expansion constant must exceed 1");
    if (std::abs(branches.front().lo) > kEndpointTol ||
        std::abs(branches.back().hi - 1.0) > kEndpointTol)
        throw std::invalid_argument("branch domains must span [0,1)");
    for (std::size_t i = 0; i < branches.size(); ++i) {
        const Branch& b = branches[i];
        if (!(b.lo < b.hi)) throw std::invalid_argument("degenerate branch domain");
        if (b.poly.degree() > 5) throw std::invalid_argument("branch degree exceeds 5");
        if (i + 1 < branches.size() &&
            std::abs(b.hi - branches[i + 1].lo) > kEndpointTol)
            throw std::invalid_argument("branch domains must tile [0,1)");
        // expansion and monotonicity on a fine sample plus endpoints
        const int kSamples = 1000;
        for (int s = 0; s <= kSamples; ++s) {
            const double x = b.lo + (b.hi - b.lo) * s / kSamples;
            const double d = b.poly.derivative(x);
            if (std::abs(d) < lambda - 1e-9)
                throw std::invalid_argument("|T'| < lambda on branch");
            if (d * b.orientation <= 0.0)
                throw std::invalid_argument("branch not monotone with declared orientation");
        }
        if (b.image_lo() < -1e-9 || b.image_hi() > 1.0 + 1e-9)
            throw std::invalid_argument("branch image leaves [0,1]");
    }
}

int MapDescription::branch_index(double x) const {
    if (x < 0.0 || x >= 1.0)
        throw std::domain_error("point outside [0,1)");
    for (std::size_t i = 0; i < branches.size(); ++i)
        if (x <= branches[i].hi) return static_cast<int>(i);
    return static_cast<int>(branches.size()) - 1;
}

double MapDescription::operator()(double x) const {
    const Branch& b = branches[branch_index(x)];
    return std::clamp(b.poly(x), 0.0, 1.0);
}

double MapDescription::derivative(double x, int order) const {
    return branches[branch_index(x)].poly.derivative(x, order);
}

std::vector<std::pair<double, int>> MapDescription::inverse_images(double x) const {
    std::vector<std::pair<double, int>> out;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        const Branch& b = branches[i];
        if (!b.image_contains(x, kEndpointTol)) continue;
        const double z = std::clamp(x, b.image_lo(), b.image_hi());
        const double y = b.invert(z);
        if (!out.empty() && std::abs(out.back().first - y) <= kDedupTol) continue;
        out.emplace_back(y, static_cast<int>(i));
    }
    return out;
}

double MapDescription::min_cell_width() const {
    double w = 1.0;
    for (const Branch& b : branches) w = std::min(w, b.hi - b.lo);
    return w;
}

CylinderPartition cylinders(const MapDescription& map, int n, std::size_t cell_budget) {
    if (n < 1) throw std::invalid_argument("cylinder generation must be >= 1");
    CylinderPartition part;
    part.generation = 1;
    for (std::size_t i = 0; i < map.branches.size(); ++i)
        part.cells.push_back({map.branches[i].lo, map.branches[i].hi,
                              {static_cast<int>(i)}});
    for (int gen = 2; gen <= n; ++gen) {
        if (part.cells.size() * map.branches.size() > cell_budget)
            throw std::runtime_error("cylinder cell budget exceeded");
        std::vector<CylinderCell> next;
        for (std::size_t bi = 0; bi < map.branches.size(); ++bi) {
            const Branch& b = map.branches[bi];
            for (const CylinderCell& cell : part.cells) {
                const double zlo = std::max(cell.lo, b.image_lo());
                const double zhi = std::min(cell.hi, b.image_hi());
                if (zhi - zlo <= kDedupTol) continue;
                double ylo = b.invert(zlo);
                double yhi = b.invert(zhi);
                if (ylo > yhi) std::swap(ylo, yhi);
                if (yhi - ylo <= kDedupTol) continue;
                CylinderCell c;
                c.lo = ylo;
                c.hi = yhi;
                c.itinerary.reserve(cell.itinerary.size() + 1);
                c.itinerary.push_back(static_cast<int>(bi));
                c.itinerary.insert(c.itinerary.end(), cell.itinerary.begin(),
                                   cell.itinerary.end());
                next.push_back(std::move(c));
            }
        }
        std::sort(next.begin(), next.end(),
                  [](const CylinderCell& a, const CylinderCell& b) { return a.lo < b.lo; });
        part.cells = std::move(next);
        part.generation = gen;
    }
    return part;
}

std::optional<int> weak_covering_index(const MapDescription& map, int n_max) {
    int worst = 0;
    for (const Branch& alpha : map.branches) {
        // accumulate the forward images T^j(alpha), j >= 1
        IntervalSet acc, cur;
        cur.insert(alpha.lo, alpha.hi);
        int needed = -1;
        for (int j = 1; j <= n_max && needed < 0; ++j) {
            IntervalSet next;
            for (const auto& [a, b] : cur.iv) {
                for (const Branch& br : map.branches) {
                    const double lo = std::max(a, br.lo);
                    const double hi = std::min(b, br.hi);
                    if (hi - lo <= kDedupTol) continue;
                    double u = br.poly(lo), v = br.poly(hi);
                    if (u > v) std::swap(u, v);
                    next.insert(std::max(0.0, u), std::min(1.0, v));
                }
            }
            next.normalize();
            cur = next;
            for (const auto& [a, b] : cur.iv) acc.insert(a, b);
            acc.normalize();
            if (acc.gap() <= 1e-9) needed = j;
        }
        if (needed < 0) return std::nullopt;
        worst = std::max(worst, needed);
    }
    return worst;
}

MapDescription make_beta_map(double beta, double alpha) {
    if (!(beta > 1.0)) throw std::invalid_argument("beta must exceed 1");
    if (alpha < 0.0 || alpha >= 1.0) throw std::invalid_argument("offset must lie in [0,1)");
    MapDescription map;
    map.lambda = beta;
    map.label = "beta(" + std::to_string(beta) + "," + std::to_string(alpha) + ")";
    std::vector<double> edges{0.0};
    const int kmin = static_cast<int>(std::floor(alpha)) + 1;
    for (int k = kmin;; ++k) {
        const double x = (static_cast<double>(k) - alpha) / beta;
        if (x >= 1.0 - kEndpointTol) break;
        if (x > kEndpointTol) edges.push_back(x);
    }
    edges.push_back(1.0);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double mid = 0.5 * (edges[i] + edges[i + 1]);
        const double k = std::floor(beta * mid + alpha);
        Branch b;
        b.lo = edges[i];
        b.hi = edges[i + 1];
        b.poly = Polynomial({alpha - k, beta});
        b.orientation = +1;
        map.branches.push_back(std::move(b));
    }
    map.validate();
    return map;
}

} // namespace livsic
