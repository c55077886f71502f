#include "latconv/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latconv/errors.hpp"
#include "latconv/fft.hpp"

namespace latconv {

namespace {

constexpr std::size_t kMaxGridPoints = std::size_t{1} << 22;
constexpr int kMaxNewton = 100;
constexpr int kSnapDenominator = 24;
constexpr double kSnapRadius = 1e-3;
constexpr double kEps = std::numeric_limits<double>::epsilon();

std::size_t per_axis_cap(int d) {
    std::size_t n = 2;
    while (true) {
        std::size_t total = 1;
        for (int j = 0; j < d; ++j) total *= 2 * n;
        if (total > kMaxGridPoints) return n;
        n *= 2;
    }
}

}  // namespace

SymbolView::SymbolView(LatticeFunction f) : f_(std::move(f)), cache_(std::make_shared<Cache>()) {
    x_.reserve(f_.size() * f_.dim());
    for (std::size_t i = 0; i < f_.size(); ++i) {
        double mx = 0;
        for (auto c : f_.coords(i)) {
            x_.push_back(static_cast<double>(c));
            mx = std::max(mx, std::abs(static_cast<double>(c)));
        }
        abs_moment_ += mx * std::abs(f_.value(i));
    }
}

cplx SymbolView::evaluate(std::span<const double> xi) const {
    const int d = dim();
    cplx s = 0.0;
    for (std::size_t i = 0; i < f_.size(); ++i) {
        double ph = 0;
        for (int j = 0; j < d; ++j) ph += x_[i * d + j] * xi[j];
        s += f_.value(i) * std::polar(1.0, ph);
    }
    return s;
}

cplx SymbolView::evaluate(std::span<const cplx> z) const {
    const int d = dim();
    cplx s = 0.0;
    for (std::size_t i = 0; i < f_.size(); ++i) {
        cplx ph = 0;
        for (int j = 0; j < d; ++j) ph += x_[i * d + j] * z[j];
        s += f_.value(i) * std::exp(cplx(0, 1) * ph);
    }
    return s;
}

cplx SymbolView::derivative(const MultiIndex& beta, std::span<const double> xi) const {
    const int d = dim();
    cplx s = 0.0;
    const int order = total_degree(beta);
    // i^|beta|
    static const cplx ipow[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    for (std::size_t i = 0; i < f_.size(); ++i) {
        double ph = 0, mono = 1;
        for (int j = 0; j < d; ++j) {
            ph += x_[i * d + j] * xi[j];
            for (int k = 0; k < beta[j]; ++k) mono *= x_[i * d + j];
        }
        s += mono * f_.value(i) * std::polar(1.0, ph);
    }
    return ipow[order % 4] * s;
}

cplx SymbolView::moment(const MultiIndex& beta) const {
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->moments.find(beta);
        if (it != cache_->moments.end()) return it->second;
    }
    const std::vector<double> zero(dim(), 0.0);
    const cplx v = derivative(beta, zero);
    std::lock_guard<std::mutex> lock(cache_->mu);
    cache_->moments.emplace(beta, v);
    return v;
}

void SymbolView::jet2(std::span<const double> xi, cplx& value, Eigen::VectorXcd& grad, Eigen::MatrixXcd& hess) const {
    const int d = dim();
    value = 0.0;
    grad.setZero(d);
    hess.setZero(d, d);
    for (std::size_t i = 0; i < f_.size(); ++i) {
        const double* x = x_.data() + i * d;
        double ph = 0;
        for (int j = 0; j < d; ++j) ph += x[j] * xi[j];
        const cplx e = f_.value(i) * std::polar(1.0, ph);
        value += e;
        for (int j = 0; j < d; ++j) {
            grad[j] += cplx(0, x[j]) * e;
            for (int k = j; k < d; ++k) hess(j, k) -= x[j] * x[k] * e;
        }
    }
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < j; ++k) hess(j, k) = hess(k, j);
}

std::vector<cplx> SymbolView::grid_samples(const std::vector<std::size_t>& n) const {
    const int d = dim();
    std::size_t total = 1;
    for (auto v : n) total *= v;
    std::vector<cplx> buf(total, cplx(0.0));
    for (std::size_t i = 0; i < f_.size(); ++i) {
        auto c = f_.coords(i);
        std::size_t idx = 0;
        for (int j = 0; j < d; ++j) {
            const auto m = static_cast<std::int64_t>(n[j]);
            idx = idx * n[j] + static_cast<std::size_t>(((c[j] % m) + m) % m);
        }
        buf[idx] += f_.value(i);
    }
    fft::transform(buf, n, +1);
    return buf;
}

std::vector<double> wrap_torus(std::span<const double> xi) {
    std::vector<double> out(xi.begin(), xi.end());
    for (auto& v : out) {
        v = std::remainder(v, 2.0 * M_PI);  // [-pi, pi]
        if (v <= -M_PI) v += 2.0 * M_PI;
    }
    return out;
}

double torus_distance(std::span<const double> a, std::span<const double> b) {
    double m = 0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(std::remainder(a[j] - b[j], 2.0 * M_PI)));
    return m;
}

double principal_arg(cplx z) {
    double a = std::arg(z);
    if (a <= -M_PI) a = M_PI;
    return a;
}

namespace {

struct Polished {
    std::vector<double> xi;
    double modulus = 0;
    bool converged = false;
};

// Newton ascent on g = |phi^|^2 with exact derivatives. Gradient components
// below the rounding floor are discarded so degenerate (flat) directions are
// not driven by noise.
Polished polish(const SymbolView& s, std::vector<double> xi) {
    const int d = s.dim();
    const double l1 = norm_l1(s.source());
    const double noise = 64.0 * kEps * std::max(1.0, s.first_absolute_moment()) * std::max(1.0, l1);
    cplx F;
    Eigen::VectorXcd gF;
    Eigen::MatrixXcd hF;
    Polished out;
    for (int iter = 0; iter <= kMaxNewton; ++iter) {
        s.jet2(xi, F, gF, hF);
        const double g = std::norm(F);
        Eigen::VectorXd grad(d);
        Eigen::MatrixXd hess(d, d);
        for (int j = 0; j < d; ++j) {
            grad[j] = 2.0 * (std::conj(F) * gF[j]).real();
            for (int k = 0; k < d; ++k) hess(j, k) = 2.0 * (std::conj(F) * hF(j, k) + gF[j] * std::conj(gF[k])).real();
        }
        if (grad.norm() < 1e-12 * std::max(1.0, g)) {
            out.converged = true;
            break;
        }
        if (iter == kMaxNewton) break;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-hess);
        const Eigen::VectorXd lam = es.eigenvalues();
        const double tau = 1e-8 * std::max(1.0, lam.cwiseAbs().maxCoeff());
        Eigen::VectorXd step = Eigen::VectorXd::Zero(d);
        for (int k = 0; k < d; ++k) {
            const double comp = es.eigenvectors().col(k).dot(grad);
            if (std::abs(comp) < noise) continue;
            step += (comp / std::max(std::abs(lam[k]), tau)) * es.eigenvectors().col(k);
        }
        if (step.norm() == 0.0) {
            out.converged = true;
            break;
        }
        if (step.norm() > 0.25) step *= 0.25 / step.norm();
        std::vector<double> trial(d);
        bool accepted = false;
        for (int h = 0; h < 50; ++h) {
            for (int j = 0; j < d; ++j) trial[j] = xi[j] + step[j];
            if (std::norm(s.evaluate(trial)) >= g - 4.0 * kEps * g) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            out.converged = true;  // no ascent possible at working precision
            break;
        }
        xi = trial;
    }
    xi = wrap_torus(xi);
    // At degenerate maxima the ascent stalls once the gradient reaches the
    // rounding floor, which can leave the point ~1e-4 off. Try the nearest
    // small-denominator multiple of pi per coordinate and keep it if it is no
    // worse in value and gradient.
    if (out.converged) {
        std::vector<double> snapped = xi;
        bool moved = false;
        for (int j = 0; j < d; ++j) {
            for (int q = 1; q <= kSnapDenominator; ++q) {
                const double k = std::round(xi[j] * q / M_PI);
                const double cand = k * M_PI / q;
                if (std::abs(cand - xi[j]) <= kSnapRadius) {
                    moved = moved || cand != xi[j];
                    snapped[j] = cand;
                    break;
                }
            }
        }
        if (moved) {
            auto grad_norm = [&](const std::vector<double>& p, double& g) {
                s.jet2(p, F, gF, hF);
                g = std::norm(F);
                double n2 = 0;
                for (int j = 0; j < d; ++j) n2 += std::pow(2.0 * (std::conj(F) * gF[j]).real(), 2);
                return std::sqrt(n2);
            };
            double g0 = 0, g1 = 0;
            const double r0 = grad_norm(xi, g0);
            const double r1 = grad_norm(snapped, g1);
            if (g1 >= g0 - 4.0 * kEps * g0 && r1 <= std::max(r0, noise)) xi = wrap_torus(snapped);
        }
    }
    out.xi = xi;
    for (auto& v : out.xi)
        if (std::abs(v) > M_PI - kDedupeRadius) v = M_PI;
    out.modulus = std::abs(s.evaluate(out.xi));
    return out;
}

struct ScanResult {
    std::vector<Polished> maxima;
    std::vector<std::string> warnings;
};

// Local maxima of |phi^|^2 on an n^d torus grid above `level` (relative to
// the grid maximum when `relative`), each polished.
ScanResult scan(const SymbolView& s, std::size_t n, double level, bool relative) {
    const int d = s.dim();
    const std::vector<std::size_t> dims(d, n);
    const auto samples = s.grid_samples(dims);
    std::vector<double> g(samples.size());
    double gmax = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] = std::norm(samples[i]);
        gmax = std::max(gmax, g[i]);
    }
    const double threshold = relative ? level * gmax : level;
    std::vector<std::size_t> strides(d, 1);
    for (int j = d - 2; j >= 0; --j) strides[j] = strides[j + 1] * n;
    ScanResult out;
    std::vector<std::size_t> k(d);
    const int nb = static_cast<int>(std::pow(3, d));
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        if (g[idx] <= threshold) continue;
        std::size_t rem = idx;
        for (int j = d - 1; j >= 0; --j) {
            k[j] = rem % n;
            rem /= n;
        }
        bool is_max = true;
        for (int code = 0; code < nb && is_max; ++code) {
            int c = code;
            std::size_t q = 0;
            bool self = true;
            for (int j = 0; j < d; ++j) {
                const int off = c % 3 - 1;
                c /= 3;
                if (off != 0) self = false;
                q += ((k[j] + n + off) % n) * strides[j];
            }
            if (self || q == idx) continue;
            if (g[q] > g[idx] || (g[q] == g[idx] && q < idx)) is_max = false;
        }
        if (!is_max) continue;
        std::vector<double> xi(d);
        for (int j = 0; j < d; ++j) xi[j] = 2.0 * M_PI * static_cast<double>(k[j]) / static_cast<double>(n);
        Polished p = polish(s, wrap_torus(xi));
        if (!p.converged) {
            out.warnings.push_back("Newton ascent did not converge from seed index " + std::to_string(idx) +
                                   "; seed dropped");
            continue;
        }
        out.maxima.push_back(std::move(p));
    }
    return out;
}

std::size_t effective_grid(int d, int grid_n) {
    if (grid_n < 4) throw PreconditionError("grid size must be >= 4");
    return std::min<std::size_t>(static_cast<std::size_t>(grid_n), per_axis_cap(d));
}

}  // namespace

SupLocation locate_sup(const SymbolView& s, int grid_n) {
    if (s.source().empty()) throw PreconditionError("locate_sup: zero function");
    const int d = s.dim();
    std::size_t n = effective_grid(d, grid_n);
    const std::size_t cap = per_axis_cap(d);
    SupLocation best;
    double previous = -1;
    while (true) {
        ScanResult r = scan(s, n, 1.0 - 1e-3, true);
        SupLocation cur;
        for (const auto& p : r.maxima)
            if (p.modulus > cur.max) {
                cur.max = p.modulus;
                cur.argmax = p.xi;
            }
        cur.warnings = std::move(r.warnings);
        best = cur;
        if (previous >= 0 && std::abs(cur.max - previous) < 1e-12) break;
        if (2 * n > cap) break;
        previous = cur.max;
        n *= 2;
    }
    return best;
}

Normalized normalize(const LatticeFunction& f) {
    if (f.empty()) throw PreconditionError("normalize: zero function");
    const SupLocation sup = locate_sup(SymbolView(f));
    if (std::abs(sup.max - 1.0) <= 1e-14) return {f, cplx(1.0)};
    const double scale = 1.0 / sup.max;
    return {f.scaled(scale), cplx(scale)};
}

OmegaSet find_omega(const SymbolView& s, int grid_n, double tol) {
    if (s.source().empty()) throw PreconditionError("find_omega: zero function");
    const std::size_t n = effective_grid(s.dim(), grid_n);
    ScanResult r = scan(s, n, 1.0 - 1e-3, false);
    double top = 0;
    for (const auto& p : r.maxima) top = std::max(top, p.modulus);
    if (top > 1.0 + 1e-9 || top < 1.0 - 1e-9)
        throw PreconditionError("find_omega: symbol is not normalized (sup |phi^| = " + std::to_string(top) + ")");
    std::vector<Polished> kept;
    for (auto& p : r.maxima) {
        if (p.modulus < 1.0 - tol) continue;
        bool dup = false;
        for (auto& q : kept) {
            if (torus_distance(p.xi, q.xi) < kDedupeRadius) {
                dup = true;
                if (p.modulus > q.modulus) q = p;
                break;
            }
        }
        if (!dup) kept.push_back(p);
    }
    std::sort(kept.begin(), kept.end(), [](const Polished& a, const Polished& b) { return a.xi < b.xi; });
    OmegaSet out;
    out.warnings = std::move(r.warnings);
    for (const auto& p : kept) {
        const cplx v = s.evaluate(p.xi);
        out.points.push_back(p.xi);
        out.values.push_back(v);
        out.phases.push_back(principal_arg(v));
    }
    return out;
}

VonNeumannResult check_von_neumann(const SymbolView& s) {
    const SupLocation sup = locate_sup(s);
    return {sup.max <= 1.0 + 1e-9, sup.max, sup.argmax};
}

}  // namespace latconv
