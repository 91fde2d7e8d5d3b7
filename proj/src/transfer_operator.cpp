#include "livsic/transfer_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace livsic {

namespace {

// 4-point Gauss-Legendre on [-1,1]
constexpr double kGx[4] = {-0.8611363115940526, -0.3399810435848563,
                           0.3399810435848563, 0.8611363115940526};
constexpr double kGw[4] = {0.3478548451374538, 0.6521451548625461,
                           0.6521451548625461, 0.3478548451374538};

struct BasisHit {
    int col[2];
    double w[2];
    int count;
};

// Weights of the piecewise-linear midpoint basis at y. Outside the node
// range the basis either clamps (keeps columns stochastic for the
// cell-average scheme) or extrapolates linearly (second-order accuracy at
// the domain edges for collocation).
BasisHit basis_at(double y, int n, bool extrapolate = false) {
    const double t = y * n - 0.5;
    if (!extrapolate) {
        if (t <= 0.0) return {{0, 0}, {1.0, 0.0}, 1};
        if (t >= n - 1.0) return {{n - 1, 0}, {1.0, 0.0}, 1};
    }
    const int i = std::clamp(static_cast<int>(std::floor(t)), 0, n - 2);
    const double frac = t - i;
    return {{i, i + 1}, {1.0 - frac, frac}, 2};
}

using RowEntries = std::vector<std::pair<int, double>>;

void add_entry(RowEntries& row, int col, double v) {
    row.emplace_back(col, v);
}

RowEntries assemble_row_collocation(const MapDescription& map, const RealFn& psi,
                                    int n, int i) {
    RowEntries row;
    const double x = (i + 0.5) / n;
    for (const auto& [y, bi] : map.inverse_images(x)) {
        const double dT = map.branches[bi].poly.derivative(y);
        const double w = std::exp(psi(y)) / std::abs(dT);
        const BasisHit h = basis_at(y, n, true);
        for (int k = 0; k < h.count; ++k) add_entry(row, h.col[k], w * h.w[k]);
    }
    return row;
}

RowEntries assemble_row_cell_average(const MapDescription& map, const RealFn& psi,
                                     int n, int i) {
    RowEntries row;
    const double clo = static_cast<double>(i) / n;
    const double chi = static_cast<double>(i + 1) / n;
    for (const Branch& b : map.branches) {
        const double zlo = std::max(clo, b.image_lo());
        const double zhi = std::min(chi, b.image_hi());
        if (zhi - zlo <= 0.0) continue;
        double ya = b.invert(zlo);
        double yb = b.invert(zhi);
        if (ya > yb) std::swap(ya, yb);
        if (yb - ya <= 0.0) continue;
        // split at basis nodes so the basis is linear on each segment
        int k0 = static_cast<int>(std::ceil(ya * n - 0.5));
        double prev = ya;
        for (;; ++k0) {
            const double nodek = (k0 + 0.5) / n;
            const double end = (nodek < yb - 1e-15 && k0 < n) ? nodek : yb;
            if (end > prev + 1e-16) {
                const double hl = 0.5 * (end - prev);
                const double mid = 0.5 * (end + prev);
                for (int q = 0; q < 4; ++q) {
                    const double y = mid + hl * kGx[q];
                    const double wq = kGw[q] * hl * n * std::exp(psi(y));
                    const BasisHit h = basis_at(y, n);
                    for (int k = 0; k < h.count; ++k)
                        add_entry(row, h.col[k], wq * h.w[k]);
                }
            }
            prev = end;
            if (end >= yb - 1e-16) break;
        }
    }
    return row;
}

void compress_row(RowEntries& row) {
    std::sort(row.begin(), row.end());
    std::size_t out = 0;
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (out > 0 && row[out - 1].first == row[k].first)
            row[out - 1].second += row[k].second;
        else
            row[out++] = row[k];
    }
    row.resize(out);
}

} // namespace

std::vector<double> SparseOperator::apply(std::span<const double> v) const {
    std::vector<double> out(n, 0.0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * v[col[k]];
        out[i] = s;
    }
    return out;
}

std::vector<double> SparseOperator::apply_transpose(std::span<const double> v) const {
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double vi = v[i];
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) out[col[k]] += val[k] * vi;
    }
    return out;
}

double SparseOperator::row_sum(int i) const {
    double s = 0.0;
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k];
    return s;
}

double apply_transfer_pointwise(const MapDescription& map, const RealFn& psi,
                                const RealFn& f, double x) {
    double s = 0.0;
    for (const auto& [y, bi] : map.inverse_images(x)) {
        const double dT = map.branches[bi].poly.derivative(y);
        s += std::exp(psi(y)) / std::abs(dT) * f(y);
    }
    return s;
}

double apply_transfer_pointwise_n(const MapDescription& map, const RealFn& psi,
                                  const RealFn& f, double x, int n) {
    if (n <= 0) return f(x);
    double s = 0.0;
    for (const auto& [y, bi] : map.inverse_images(x)) {
        const double dT = map.branches[bi].poly.derivative(y);
        s += std::exp(psi(y)) / std::abs(dT) *
             apply_transfer_pointwise_n(map, psi, f, y, n - 1);
    }
    return s;
}

SparseOperator discretize(const MapDescription& map, const RealFn& psi, int n_grid,
                          Scheme scheme, Execution exec) {
    if (n_grid < static_cast<int>(map.branches.size()))
        throw std::invalid_argument("n_grid must be at least the branch count");
    std::vector<RowEntries> rows(n_grid);

    auto build = [&](int i) {
        RowEntries r = (scheme == Scheme::collocation)
                           ? assemble_row_collocation(map, psi, n_grid, i)
                           : assemble_row_cell_average(map, psi, n_grid, i);
        compress_row(r);
        rows[i] = std::move(r);
    };

    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (int i = 0; i < n_grid; ++i) build(i);
    } else {
        for (int i = 0; i < n_grid; ++i) build(i);
    }

    SparseOperator op;
    op.n = n_grid;
    op.row_ptr.resize(n_grid + 1, 0);
    for (int i = 0; i < n_grid; ++i)
        op.row_ptr[i + 1] = op.row_ptr[i] + static_cast<int>(rows[i].size());
    op.col.resize(op.row_ptr.back());
    op.val.resize(op.row_ptr.back());
    for (int i = 0; i < n_grid; ++i) {
        int k = op.row_ptr[i];
        for (const auto& [c, v] : rows[i]) {
            op.col[k] = c;
            op.val[k] = v;
            ++k;
        }
    }
    return op;
}

namespace {

EigenData power_iterate(const SparseOperator& op, bool transpose, double tol,
                        int max_iter) {
    std::vector<double> v(op.n, 1.0);
    double lambda = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        std::vector<double> w = transpose ? op.apply_transpose(v) : op.apply(v);
        double sup = 0.0;
        for (double x : w) sup = std::max(sup, std::abs(x));
        if (!(sup > 0.0)) throw std::runtime_error("power iteration collapsed to zero");
        for (double& x : w) x /= sup;
        double diff = 0.0;
        for (int i = 0; i < op.n; ++i) diff = std::max(diff, std::abs(w[i] - v[i]));
        v = std::move(w);
        lambda = sup;
        if (diff <= tol) {
            EigenData e;
            e.eigenvalue = lambda;
            e.iterations = it;
            if (transpose) e.left = std::move(v);
            else e.right = std::move(v);
            return e;
        }
    }
    throw std::runtime_error("power iteration did not converge");
}

} // namespace

EigenData leading_eigendata(const SparseOperator& op, double tol, int max_iter) {
    EigenData r = power_iterate(op, false, tol, max_iter);
    EigenData l = power_iterate(op, true, tol, max_iter);
    r.left = std::move(l.left);
    r.iterations = std::max(r.iterations, l.iterations);
    return r;
}

SpectralData spectral_data(const MapDescription& map, const Cocycle& phi, int n_grid,
                           Scheme scheme, double tol, int max_iter) {
    const RealFn psi = [&phi](double x) { return phi(x); };
    const SparseOperator op = discretize(map, psi, n_grid, scheme);
    const EigenData e = leading_eigendata(op, tol, max_iter);

    SpectralData sd;
    sd.a = 1.0 / e.eigenvalue;
    sd.w.n = n_grid;
    sd.w.values = e.right;
    double dot = 0.0;
    for (int i = 0; i < n_grid; ++i) dot += e.left[i] * e.right[i];
    sd.nu.resize(n_grid);
    for (int i = 0; i < n_grid; ++i) sd.nu[i] = e.left[i] / dot;
    sd.h = invariant_density(map, n_grid, scheme, tol, max_iter);
    sd.gamma_floor = std::min(sd.w.min_value(), sd.h.min_value());
    return sd;
}

GridFunction invariant_density(const MapDescription& map, int n_grid, Scheme scheme,
                               double tol, int max_iter) {
    const SparseOperator op =
        discretize(map, [](double) { return 0.0; }, n_grid, scheme);
    EigenData e = leading_eigendata(op, tol, max_iter);
    GridFunction h;
    h.n = n_grid;
    h.values = std::move(e.right);
    h.normalize_density();
    return h;
}

} // namespace livsic
