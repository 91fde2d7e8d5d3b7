#include "livsic/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace livsic {

void CounterexampleSpec::validate() const {
    if (!(c > 0.0 && c < 0.25))
        throw std::invalid_argument("c must lie in (0, 1/4)");
    if (k < 1 || 2 * k + 1 > 7)
        throw std::invalid_argument("smoothness order k must be in 1..3");
    // middle-branch plateau endpoints 1/2 +- 1/(4d) must be interior
    const double half_width = 1.0 / (4.0 * d());
    if (!(0.5 - half_width > 0.25 && 0.5 + half_width < 0.75))
        throw std::invalid_argument("plateau endpoints leave (1/4, 3/4)");
}

MapDescription make_counterexample_map(double c) {
    if (!(c > 0.0 && c < 0.25))
        throw std::invalid_argument("c must lie in (0, 1/4)");
    const double d = 2.0 - 4.0 * c;
    MapDescription map;
    map.lambda = d;
    map.label = "counterexample(c=" + std::to_string(c) + ")";
    map.branches.push_back({0.0, 0.25, Polynomial({0.5, 2.0}), +1});
    map.branches.push_back({0.25, 0.75, Polynomial({0.5 - 0.5 * d, d}), +1});
    map.branches.push_back({0.75, 1.0, Polynomial({-1.5, 2.0}), +1});
    map.validate();
    return map;
}

Polynomial smoothstep(int k) {
    // S(t) = sum_{n=0}^{k} (-1)^n C(k+n,n) C(2k+1,k-n) t^{k+n+1}
    auto binom = [](int a, int b) {
        double r = 1.0;
        for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    std::vector<double> coeffs(2 * k + 2, 0.0);
    for (int n = 0; n <= k; ++n) {
        const double s = (n % 2 == 0) ? 1.0 : -1.0;
        coeffs[k + n + 1] = s * binom(k + n, n) * binom(2 * k + 1, k - n);
    }
    return Polynomial(std::move(coeffs));
}

namespace {

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (out.empty() || x - out.back() > 1e-12) out.push_back(x);
    return out;
}

} // namespace

CounterexampleBuild build_counterexample(const CounterexampleSpec& spec) {
    spec.validate();
    const double c = spec.c;
    CounterexampleBuild build;
    build.map = make_counterexample_map(c);

    // chi: 1 -> 0 ramp on [0,c], 0 on [c,1/2), 1 on [1/2,1-c),
    // 1 -> 0 ramp on [1-c,1].  The ramps are flat to order k at both
    // ends, which is what makes phi C^k across every breakpoint.
    // Pieces live in the local coordinate u = x - break.
    const Polynomial S = smoothstep(spec.k);
    const Polynomial one({1.0});
    const Polynomial ramp = one - S.compose(Polynomial({0.0, 1.0 / c}));
    const std::vector<double> chi_breaks{0.0, c, 0.5, 1.0 - c};
    const std::vector<Polynomial> chi_pieces{ramp, Polynomial({0.0}),
                                             Polynomial({1.0}), ramp};
    auto chi = std::make_shared<PiecewisePolynomial>(chi_breaks, chi_pieces, spec.k);
    build.chi = chi;

    // phi = chi o T - chi, piecewise polynomial with breakpoints at the
    // branch endpoints, the chi breakpoints, and their branch pullbacks.
    std::vector<double> pts{0.0, 0.25, 0.75, 1.0, c, 0.5, 1.0 - c};
    for (const Branch& b : build.map.branches)
        for (double s : {c, 0.5, 1.0 - c})
            if (b.image_contains(s))
                pts.push_back(std::clamp(b.invert(s), 0.0, 1.0));
    const std::vector<double> cuts = sorted_unique(pts);

    std::vector<double> phi_breaks;
    std::vector<Polynomial> phi_pieces;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        const Branch& b = build.map.branches[build.map.branch_index(mid)];
        const int ii = chi->piece_index(mid);
        const int oi = chi->piece_index(b(mid));
        // inner term chi(x) in the local coordinate u = x - lo
        const Polynomial inner =
            chi->pieces()[ii].compose(Polynomial({lo - chi_breaks[ii], 1.0}));
        // outer term chi(T x): shift T to u, then into the chi piece frame
        double tcoef[8]{};
        b.poly.taylor(lo, b.poly.degree(), tcoef);
        std::vector<double> arg(tcoef, tcoef + b.poly.degree() + 1);
        arg[0] -= chi_breaks[oi];
        const Polynomial outer = chi->pieces()[oi].compose(Polynomial(arg));
        phi_breaks.push_back(lo);
        phi_pieces.push_back(outer - inner);
    }
    build.phi =
        std::make_shared<PiecewisePolynomial>(phi_breaks, phi_pieces, spec.k);

    const double hw = 1.0 / (4.0 * spec.d());
    build.partition = sorted_unique(
        {0.0, c, 0.25, 0.5 - hw, 0.5, 0.5 + hw, 0.75, 1.0 - c, 1.0});
    return build;
}

namespace {

// Fornberg weights: w[i][j] applies node i to the j-th derivative at z.
std::vector<std::vector<double>> fd_weights(const std::vector<double>& x, double z,
                                            int m) {
    const int n = static_cast<int>(x.size());
    std::vector<std::vector<double>> w(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0, c4 = x[0] - z;
    w[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0, c5 = c4;
        c4 = x[i] - z;
        for (int v = 0; v < i; ++v) {
            const double c3 = x[i] - x[v];
            c2 *= c3;
            if (v == i - 1) {
                for (int j = mn; j >= 1; --j)
                    w[i][j] = c1 * (j * w[i - 1][j - 1] - c5 * w[i - 1][j]) / c2;
                w[i][0] = -c1 * c5 * w[i - 1][0] / c2;
            }
            for (int j = mn; j >= 1; --j)
                w[v][j] = (c4 * w[v][j] - j * w[v][j - 1]) / c3;
            w[v][0] = c4 * w[v][0] / c3;
        }
        c1 = c2;
    }
    return w;
}

constexpr int kNodes = 9; // exact for polynomial pieces of degree <= 8

// One-sided jet values f^(0..k) at b, from the side sign = -1/+1.
std::vector<double> one_sided_jet(const RealFn& f, double b, int sign, double h,
                                  int k, std::vector<double>& noise) {
    std::vector<double> nodes(kNodes);
    for (int i = 0; i < kNodes; ++i) nodes[i] = b + sign * h * (i + 1);
    const auto w = fd_weights(nodes, b, k);
    std::vector<double> jets(k + 1, 0.0);
    noise.assign(k + 1, 0.0);
    std::vector<double> fv(kNodes);
    for (int i = 0; i < kNodes; ++i) fv[i] = f(nodes[i]);
    for (int j = 0; j <= k; ++j) {
        for (int i = 0; i < kNodes; ++i) jets[j] += w[i][j] * fv[i];
        // rounding bound for the weighted sum of function values
        double amp = 0.0;
        for (int i = 0; i < kNodes; ++i)
            amp += std::abs(w[i][j]) * std::max(1.0, std::abs(fv[i]));
        noise[j] = 8.0 * std::numeric_limits<double>::epsilon() * amp;
    }
    return jets;
}

} // namespace

SmoothnessReport certify_smoothness(const RealFn& f,
                                    const std::vector<double>& breakpoints, int k,
                                    double h_fd) {
    SmoothnessReport rep;
    const std::vector<double> bs = sorted_unique(breakpoints);
    for (std::size_t bi = 0; bi < bs.size(); ++bi) {
        const double b = bs[bi];
        const double gap_left = (bi == 0) ? b : b - bs[bi - 1];
        const double gap_right = (bi + 1 == bs.size()) ? 1.0 - b : bs[bi + 1] - b;
        const bool has_left = b > 1e-12 || gap_left > 1e-12;
        const bool has_right = b < 1.0 - 1e-12 || gap_right > 1e-12;

        std::vector<double> left(k + 1, 0.0), right(k + 1, 0.0);
        std::vector<double> noise_l(k + 1, 0.0), noise_r(k + 1, 0.0);
        if (has_left) {
            const double h = std::min(h_fd, gap_left / (kNodes + 1));
            left = one_sided_jet(f, b, -1, h, k, noise_l);
        }
        if (has_right) {
            const double h = std::min(h_fd, gap_right / (kNodes + 1));
            right = one_sided_jet(f, b, +1, h, k, noise_r);
        }
        for (int j = 0; j <= k; ++j) {
            JetMismatch e;
            e.breakpoint = b;
            e.order = j;
            e.one_sided = !(has_left && has_right);
            e.left = has_left ? left[j] : right[j];
            e.right = has_right ? right[j] : left[j];
            e.mismatch = e.one_sided ? 0.0 : std::abs(left[j] - right[j]);
            const double scale =
                std::max(1.0, std::max(std::abs(e.left), std::abs(e.right)));
            e.pass = e.mismatch <= 1e-6 * scale + noise_l[j] + noise_r[j];
            rep.max_mismatch = std::max(rep.max_mismatch, e.mismatch);
            if (!e.pass) rep.pass = false;
            rep.entries.push_back(e);
        }
    }
    return rep;
}

namespace {

struct Rat {
    std::int64_t n = 0, d = 1;

    static Rat make(std::int64_t n, std::int64_t d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        return {g ? n / g : n, g ? d / g : d};
    }
    Rat operator+(const Rat& o) const { return make(n * o.d + o.n * d, d * o.d); }
    Rat operator-(const Rat& o) const { return make(n * o.d - o.n * d, d * o.d); }
    Rat operator*(const Rat& o) const { return make(n * o.n, d * o.d); }
    bool operator==(const Rat& o) const { return n == o.n && d == o.d; }
    bool operator<(const Rat& o) const { return n * o.d < o.n * d; }
};

} // namespace

bool counterexample_markov(std::int64_t num, std::int64_t den) {
    const Rat c = Rat::make(num, den);
    const Rat half = Rat::make(1, 2);
    const Rat one = Rat::make(1, 1);
    const Rat d = Rat::make(2, 1) - Rat::make(4, 1) * c; // middle slope
    const Rat hw = Rat::make(d.d, 4 * d.n);              // 1/(4d)

    std::vector<Rat> pts{Rat::make(0, 1), c,        Rat::make(1, 4),
                         half - hw,       half,     half + hw,
                         Rat::make(3, 4), one - c,  one};
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto apply = [&](const Rat& x, int branch) -> Rat {
        if (branch == 0) return Rat::make(2, 1) * x + half;
        if (branch == 1) return d * (x - half) + half;
        return Rat::make(2, 1) * x - Rat::make(3, 2);
    };
    auto is_point = [&](const Rat& x) {
        return std::any_of(pts.begin(), pts.end(),
                           [&](const Rat& p) { return p == x; });
    };
    // each element maps onto a union of elements iff both image
    // endpoints are partition points (branches are affine and monotone)
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        // branch containing the element interior
        const Rat mid = (pts[i] + pts[i + 1]) * half;
        int branch = 2;
        if (mid < Rat::make(1, 4)) branch = 0;
        else if (mid < Rat::make(3, 4)) branch = 1;
        if (!is_point(apply(pts[i], branch)) || !is_point(apply(pts[i + 1], branch)))
            return false;
    }
    return true;
}

} // namespace livsic
