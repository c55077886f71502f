#include "latconv/attractor.hpp"

#include <algorithm>
#include <cmath>

#include "latconv/errors.hpp"
#include "latconv/fft.hpp"

namespace latconv {

namespace {

void check_t(double t) {
    if (!(t > 0)) throw PreconditionError("attractor: t must be positive");
}

// Smallest r with t Re P(r u) >= level, assuming growth along u.
double ray_radius(const RealPolyEval& R, const Eigen::VectorXd& u, double level) {
    auto f = [&](double r) {
        const Eigen::VectorXd p = r * u;
        return R.value(std::span<const double>(p.data(), p.size()));
    };
    double hi = 1.0;
    int guard = 0;
    while (f(hi) < level) {
        hi *= 2.0;
        if (++guard > 200) throw PreconditionError("attractor: Re P does not grow along an axis (not positive definite)");
    }
    double lo = 0.0;
    for (int it = 0; it < 100 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < level ? lo : hi) = mid;
    }
    return hi;
}

double min_on_faces(const RealPolyEval& R, const std::vector<double>& L) {
    const int d = static_cast<int>(L.size());
    if (d == 1) return std::min(R.value(std::vector<double>{L[0]}), R.value(std::vector<double>{-L[0]}));
    const int M = d == 2 ? 257 : 33;
    double mn = std::numeric_limits<double>::infinity();
    std::vector<double> p(d);
    std::vector<int> k(d - 1);
    for (int face = 0; face < d; ++face)
        for (double sgn : {1.0, -1.0}) {
            std::fill(k.begin(), k.end(), 0);
            while (true) {
                int c = 0;
                for (int j = 0; j < d; ++j) {
                    if (j == face) {
                        p[j] = sgn * L[j];
                    } else {
                        p[j] = -L[j] + 2.0 * L[j] * k[c] / (M - 1);
                        ++c;
                    }
                }
                mn = std::min(mn, R.value(p));
                int j = 0;
                while (j < d - 1 && ++k[j] == M) k[j++] = 0;
                if (j == d - 1) break;
            }
        }
    return mn;
}

}  // namespace

std::vector<double> attractor_box(const HomogeneousPolynomial& P, double t) {
    check_t(t);
    const int d = P.dim();
    const RealPolyEval R(P.coefficients());
    const double level = kTCut / t;
    std::vector<double> L(d);
    for (int j = 0; j < d; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
        e[j] = 1.0;
        L[j] = std::max(ray_radius(R, e, level), ray_radius(R, -e, level));
    }
    for (int guard = 0; min_on_faces(R, L) < level; ++guard) {
        if (guard > 100) throw PreconditionError("attractor: box search failed (Re P not positive definite)");
        for (auto& v : L) v *= 1.2;
    }
    return L;
}

cplx attractor_eval(const HomogeneousPolynomial& P, double t, std::span<const double> x, std::size_t min_points) {
    check_t(t);
    const int d = P.dim();
    if (static_cast<int>(x.size()) != d) throw PreconditionError("attractor_eval: dimension mismatch");
    const std::vector<double> L = attractor_box(P, t);
    std::vector<std::size_t> N(d);
    std::vector<double> h(d);
    for (int j = 0; j < d; ++j) {
        const double osc = 8.0 * std::abs(x[j]) * 2.0 * L[j] / (2.0 * M_PI);
        N[j] = std::max<std::size_t>(min_points, static_cast<std::size_t>(std::ceil(osc)) + 1);
        h[j] = 2.0 * L[j] / static_cast<double>(N[j] - 1);
    }
    // Per-axis phase tables e^{-i x_j xi_j}.
    std::vector<std::vector<cplx>> phase(d);
    for (int j = 0; j < d; ++j) {
        phase[j].resize(N[j]);
        for (std::size_t k = 0; k < N[j]; ++k) {
            const double xi = -L[j] + h[j] * static_cast<double>(k);
            phase[j][k] = std::polar(1.0, -x[j] * xi);
        }
    }
    const ComplexPolyEval p(P.coefficients());
    std::vector<std::size_t> k(d, 0);
    std::vector<double> xi(d);
    cplx sum = 0;
    while (true) {
        cplx ph = 1.0;
        for (int j = 0; j < d; ++j) {
            xi[j] = -L[j] + h[j] * static_cast<double>(k[j]);
            ph *= phase[j][k[j]];
        }
        // Endpoint weights are irrelevant: the integrand is below e^{-46} there.
        sum += std::exp(-t * p(xi)) * ph;
        int j = d - 1;
        while (j >= 0 && ++k[j] == N[j]) k[j--] = 0;
        if (j < 0) break;
    }
    double w = 1.0;
    for (int j = 0; j < d; ++j) w *= h[j] / (2.0 * M_PI);
    return sum * w;
}

AttractorGrid attractor_grid(const HomogeneousPolynomial& P, double t, const Box& window, std::span<const double> shift,
                             const PowerOptions& opts) {
    check_t(t);
    const int d = P.dim();
    if (window.dim() != d) throw PreconditionError("attractor_grid: window dimension mismatch");
    for (int j = 0; j < d; ++j)
        if (window.hi[j] < window.lo[j]) throw PreconditionError("attractor_grid: empty window");
    std::vector<double> s(d, 0.0);
    if (!shift.empty()) {
        if (static_cast<int>(shift.size()) != d) throw PreconditionError("attractor_grid: shift dimension mismatch");
        std::copy(shift.begin(), shift.end(), s.begin());
    }
    AttractorGrid out;
    out.t = t;
    out.shift = s;
    out.L = attractor_box(P, t);
    out.N.resize(d);
    std::size_t total = 1;
    for (int j = 0; j < d; ++j) {
        // Spacing fine enough for >= 256 samples across the box; period at least
        // twice the window span so aliased copies stay outside it.
        const double h_box = 2.0 * out.L[j] / static_cast<double>(kMinQuadraturePoints - 1);
        const auto by_box = static_cast<std::size_t>(std::ceil(2.0 * M_PI / h_box));
        const auto by_window = static_cast<std::size_t>(2 * window.extent(j));
        out.N[j] = fft::good_size(std::max(by_box, by_window));
        total *= out.N[j];
    }
    if (total * sizeof(cplx) > opts.memory_cap_bytes)
        throw ResourceError("attractor_grid: transform size exceeds memory cap");

    std::vector<double> h(d);
    std::vector<long> K(d);
    for (int j = 0; j < d; ++j) {
        h[j] = 2.0 * M_PI / static_cast<double>(out.N[j]);
        K[j] = static_cast<long>(std::ceil(out.L[j] / h[j]));
    }
    std::vector<std::size_t> strides(d, 1);
    for (int j = d - 2; j >= 0; --j) strides[j] = strides[j + 1] * out.N[j + 1];
    std::vector<cplx> buf(total, 0.0);
    const ComplexPolyEval p(P.coefficients());
    std::vector<long> k(d);
    for (int j = 0; j < d; ++j) k[j] = -K[j];
    std::vector<double> xi(d);
    while (true) {
        double sx = 0;
        std::size_t idx = 0;
        for (int j = 0; j < d; ++j) {
            xi[j] = h[j] * static_cast<double>(k[j]);
            sx += s[j] * xi[j];
            const long N = static_cast<long>(out.N[j]);
            idx += static_cast<std::size_t>(((k[j] % N) + N) % N) * strides[j];
        }
        buf[idx] += std::exp(-t * p(xi)) * std::polar(1.0, sx);
        int j = d - 1;
        while (j >= 0 && ++k[j] > K[j]) {
            k[j] = -K[j];
            --j;
        }
        if (j < 0) break;
    }
    fft::transform(buf, out.N, -1);
    double w = 1.0;
    for (int j = 0; j < d; ++j) w *= h[j] / (2.0 * M_PI);

    out.values = DenseGrid(window);
    for (std::size_t i = 0; i < out.values.values.size(); ++i) {
        const LatticePoint x = out.values.point(i);
        std::size_t idx = 0;
        for (int j = 0; j < d; ++j) {
            const long N = static_cast<long>(out.N[j]);
            idx += static_cast<std::size_t>(((x[j] % N) + N) % N) * strides[j];
        }
        out.values.values[i] = buf[idx] * w;
    }
    return out;
}

DenseGrid llt_approx_grid(const SpectralAnalysis& a, long n, const Box& window, const PowerOptions& opts) {
    if (!a.succeeded()) throw PreconditionError("llt_approx: analysis did not classify every point of Omega");
    if (n < 1) throw PreconditionError("llt_approx: n must be >= 1");
    DenseGrid out(window);
    const int d = window.dim();
    for (std::size_t q : a.minimal) {
        const PointAnalysis& pt = a.points[q];
        std::vector<double> shift(d);
        for (int j = 0; j < d; ++j) shift[j] = static_cast<double>(n) * pt.cls.alpha[j];
        const AttractorGrid H = attractor_grid(pt.cls.P, static_cast<double>(n), window, shift, opts);
        const double nd = static_cast<double>(n);
        const cplx pref = std::polar(std::pow(std::abs(pt.value), nd), nd * std::arg(pt.value));
        for (std::size_t i = 0; i < out.values.size(); ++i) {
            const LatticePoint x = out.point(i);
            double xdot = 0;
            for (int j = 0; j < d; ++j) xdot += static_cast<double>(x[j]) * pt.xi[j];
            out.values[i] += pref * std::polar(1.0, -xdot) * H.values.values[i];
        }
    }
    return out;
}

LatticeFunction llt_approx(const SpectralAnalysis& a, long n, const Box& window, const PowerOptions& opts) {
    return llt_approx_grid(a, n, window, opts).to_sparse();
}

}  // namespace latconv
