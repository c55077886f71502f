#include "latconv/legendre.hpp"

#include <algorithm>
#include <cmath>

#include "latconv/errors.hpp"

namespace latconv {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Minimum of R over the boundary of [-rho, rho]^d, sampled.
double min_on_cube(const RealPolyEval& R, int d, double rho) {
    if (d == 1) return std::min(R.value(std::vector<double>{rho}), R.value(std::vector<double>{-rho}));
    const int M = d == 2 ? 129 : (d == 3 ? 33 : 9);
    double mn = std::numeric_limits<double>::infinity();
    std::vector<double> p(d);
    std::vector<int> k(d - 1);
    for (int face = 0; face < d; ++face)
        for (double sgn : {1.0, -1.0}) {
            std::fill(k.begin(), k.end(), 0);
            while (true) {
                int c = 0;
                for (int j = 0; j < d; ++j) p[j] = j == face ? sgn * rho : -rho + 2.0 * rho * k[c++] / (M - 1);
                mn = std::min(mn, R.value(p));
                int j = 0;
                while (j < d - 1 && ++k[j] == M) k[j++] = 0;
                if (j == d - 1) break;
            }
        }
    return mn;
}

}  // namespace

ConjugateEvaluator::ConjugateEvaluator(const HomogeneousPolynomial& P, std::size_t table_size)
    : P_(P), R_(P.coefficients()), table_size_(std::max<std::size_t>(table_size, 16)),
      state_(std::make_shared<State>()) {
    if (!(min_real_on_sphere(P) > 0)) throw PreconditionError("ConjugateEvaluator: Re P is not positive definite");
}

ConjugateResult ConjugateEvaluator::grid_only(std::span<const double> x) const {
    const int d = dim();
    if (static_cast<int>(x.size()) != d) throw PreconditionError("conjugate: dimension mismatch");
    ConjugateResult out;
    out.argmax.assign(d, 0.0);
    double x1 = 0;
    for (double v : x) x1 += std::abs(v);
    if (x1 == 0) return out;
    // On the cube boundary R exceeds x.xi, so the maximizer is interior.
    double rho = 1.0;
    for (int guard = 0; min_on_cube(R_, d, rho) <= 2.0 * x1 * rho; ++guard) {
        if (guard > 200) throw PreconditionError("conjugate: R does not dominate x.xi");
        rho *= 2.0;
    }
    const int M = d <= 3 ? 64 : 8;
    std::vector<double> center(d, 0.0), xi(d), best(d, 0.0);
    double half = rho, bestv = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        const double h = 2.0 * half / (M - 1);
        std::vector<int> k(d, 0);
        while (true) {
            for (int j = 0; j < d; ++j) xi[j] = center[j] - half + h * k[j];
            const double v = dot(x, xi) - R_.value(xi);
            if (v > bestv) {
                bestv = v;
                best = xi;
            }
            int j = d - 1;
            while (j >= 0 && ++k[j] == M) k[j--] = 0;
            if (j < 0) break;
        }
        center = best;
        half = h;  // refine around the best cell
    }
    out.value = bestv;
    out.grid_value = bestv;
    out.argmax = best;
    return out;
}

double ConjugateEvaluator::ascend(std::span<const double> x, std::vector<double>& xi) const {
    const int d = dim();
    const double tol = 1e-10 * std::max(1.0, norm2(x));
    Eigen::VectorXd g(d);
    Eigen::MatrixXd H(d, d);
    auto F = [&](const std::vector<double>& p) { return dot(x, p) - R_.value(p); };
    double f = F(xi);
    std::vector<double> trial(d);
    for (int it = 0; it < 200; ++it) {
        R_.value_grad_hess(xi, g, H);
        Eigen::VectorXd grad(d);
        for (int j = 0; j < d; ++j) grad[j] = x[j] - g[j];
        if (grad.norm() < tol) break;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        const double lmin = es.eigenvalues().minCoeff();
        const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
        const double shift = std::max(0.0, -lmin) + 1e-12 * std::max(1.0, lmax);
        const Eigen::VectorXd step =
            es.eigenvectors() *
            ((es.eigenvectors().transpose() * grad).array() / (es.eigenvalues().array() + shift)).matrix();
        const double slope = grad.dot(step);
        double t = 1.0;
        bool ok = false;
        while (t > 1e-14) {
            for (int j = 0; j < d; ++j) trial[j] = xi[j] + t * step[j];
            const double ft = F(trial);
            if (ft >= f + 1e-4 * t * slope) {
                xi = trial;
                f = ft;
                ok = true;
                break;
            }
            t *= 0.5;
        }
        if (!ok) break;
    }
    return f;
}

ConjugateResult ConjugateEvaluator::evaluate(std::span<const double> x) const {
    const int d = dim();
    if (static_cast<int>(x.size()) != d) throw PreconditionError("conjugate: dimension mismatch");
    std::vector<long long> key(d);
    for (int j = 0; j < d; ++j) key[j] = std::llround(x[j] * 1e12);
    {
        std::lock_guard<std::mutex> lock(state_->mu);
        auto it = state_->cache.find(key);
        if (it != state_->cache.end()) return it->second;
    }
    ConjugateResult out = grid_only(x);
    const double xn = norm2(x);
    if (xn > 0) {
        std::vector<std::vector<double>> starts{out.argmax};
        const int count = 1 << (3 * std::min(d, 3));
        auto dirs = sphere_samples(d, count, 3);
        Eigen::VectorXd xd(d);
        for (int j = 0; j < d; ++j) xd[j] = x[j] / xn;
        dirs.push_back(xd);
        for (const auto& u : dirs) {
            const double xu = dot(x, std::span<const double>(u.data(), d));
            if (xu <= 0) continue;
            // Maximize r xu - R(r u) along the ray by golden section.
            auto along = [&](double r) {
                std::vector<double> p(d);
                for (int j = 0; j < d; ++j) p[j] = r * u[j];
                return r * xu - R_.value(p);
            };
            double hi = 1.0;
            while (along(hi) > 0 && hi < 1e12) hi *= 2.0;
            double a = 0, b = hi;
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            for (int it = 0; it < 80; ++it) {
                const double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
                (along(c1) < along(c2) ? a : b) = along(c1) < along(c2) ? c1 : c2;
            }
            std::vector<double> p(d);
            for (int j = 0; j < d; ++j) p[j] = 0.5 * (a + b) * u[j];
            starts.push_back(std::move(p));
        }
        for (auto& s : starts) {
            const double v = ascend(x, s);
            if (v > out.value) {
                out.value = v;
                out.argmax = s;
            }
        }
    }
    out.value = std::max(out.value, 0.0);
    std::lock_guard<std::mutex> lock(state_->mu);
    state_->cache.emplace(key, out);
    return out;
}

void ConjugateEvaluator::build_table() const {
    const Eigen::MatrixXd AinvT = P_.basis_inverse().transpose();
    state_->table.resize(table_size_);
    for (std::size_t k = 0; k < table_size_; ++k) {
        const double th = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(table_size_);
        const Eigen::Vector2d u(std::cos(th), std::sin(th));
        const Eigen::VectorXd z = AinvT * u;
        state_->table[k] = evaluate(std::span<const double>(z.data(), 2)).value;
    }
}

double ConjugateEvaluator::fast(std::span<const double> y) const {
    const int d = dim();
    if (static_cast<int>(y.size()) != d) throw PreconditionError("conjugate: dimension mismatch");
    if (d > 2) return evaluate(y).value;
    const Eigen::Map<const Eigen::VectorXd> yv(y.data(), d);
    const Eigen::VectorXd w = P_.basis().transpose() * yv;
    if (w.norm() == 0) return 0.0;
    std::vector<double> expo(d);
    for (int j = 0; j < d; ++j) expo[j] = 1.0 - 1.0 / (2.0 * P_.weights()[j]);
    // Solve |s^{-(I-D)} w| = 1 for s.
    auto size_at = [&](double ls) {
        double acc = 0;
        for (int j = 0; j < d; ++j) acc += w[j] * w[j] * std::exp(-2.0 * expo[j] * ls);
        return acc;
    };
    double lo = -1.0, hi = 1.0;
    while (size_at(lo) < 1.0) lo *= 2.0;
    while (size_at(hi) > 1.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (size_at(mid) > 1.0 ? lo : hi) = mid;
    }
    const double ls = 0.5 * (lo + hi);
    const double s = std::exp(ls);
    Eigen::VectorXd u(d);
    for (int j = 0; j < d; ++j) u[j] = w[j] * std::exp(-expo[j] * ls);
    if (d == 1) {
        const std::vector<double> z{u[0] / P_.basis()(0, 0)};
        return s * evaluate(z).value;
    }
    std::call_once(state_->table_once, [this] { build_table(); });
    const auto& T = state_->table;
    const double n = static_cast<double>(T.size());
    double th = std::atan2(u[1], u[0]);
    if (th < 0) th += 2.0 * M_PI;
    const double pos = th / (2.0 * M_PI) * n;
    const long i1 = static_cast<long>(std::floor(pos));
    const double f = pos - static_cast<double>(i1);
    auto at = [&](long i) { return T[static_cast<std::size_t>(((i % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n))]; };
    const double p0 = at(i1 - 1), p1 = at(i1), p2 = at(i1 + 1), p3 = at(i1 + 2);
    // Catmull-Rom
    const double v = p1 + 0.5 * f * (p2 - p0 + f * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + f * (3.0 * (p1 - p2) + p3 - p0)));
    return s * v;
}

double conjugate(const HomogeneousPolynomial& P, std::span<const double> x) { return ConjugateEvaluator(P).evaluate(x).value; }

double norm_m(std::span<const double> x, const std::vector<int>& m) {
    if (x.size() != m.size()) throw PreconditionError("norm_m: dimension mismatch");
    double s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += std::pow(std::abs(x[j]), 2.0 * m[j] / (2.0 * m[j] - 1.0));
    return s;
}

CompareResult conjugate_compare(const ConjugateEvaluator& ev, std::span<const double> x) {
    const int d = ev.dim();
    if (static_cast<int>(x.size()) != d) throw PreconditionError("conjugate_compare: dimension mismatch");
    const Eigen::Map<const Eigen::VectorXd> xv(x.data(), d);
    const Eigen::VectorXd y = ev.polynomial().basis_inverse().transpose() * xv;
    CompareResult r;
    r.value = ev.evaluate(std::span<const double>(y.data(), d)).value;
    r.norm = norm_m(x, ev.polynomial().weights());
    r.ratio = r.norm > 0 ? r.value / r.norm : 0.0;
    return r;
}

double norm_NE(const HomogeneousPolynomial& P, std::span<const double> x) {
    const double r = norm2(x);
    const double lam = r >= 1.0 ? P.lambda_max() : P.lambda_min();
    return std::pow(r, 1.0 / (1.0 - lam));
}

LegendreBounds conjugate_bounds_check(const ConjugateEvaluator& ev, const std::vector<Eigen::VectorXd>& samples) {
    LegendreBounds b;
    b.M = b.M_prime = -std::numeric_limits<double>::infinity();
    auto visit = [&](const Eigen::VectorXd& x, double& M, double& Mp) {
        const std::span<const double> xs(x.data(), x.size());
        const double v = ev.evaluate(xs).value;
        M = std::max(M, x.norm() - v);
        const double ne = norm_NE(ev.polynomial(), xs);
        if (ne > 0) Mp = std::max(Mp, v / ne);
    };
    for (const auto& x : samples) visit(x, b.M, b.M_prime);
    b.M_doubled = b.M;
    b.M_prime_doubled = b.M_prime;
    for (const auto& x : samples) visit(Eigen::VectorXd(2.0 * x), b.M_doubled, b.M_prime_doubled);
    b.finite = std::isfinite(b.M) && std::isfinite(b.M_prime) && std::isfinite(b.M_doubled) &&
               std::isfinite(b.M_prime_doubled);
    auto within = [](double a, double c) { return a > 0 && c > 0 && c <= 1.5 * a && a <= 1.5 * c; };
    b.stable = b.finite && within(b.M, b.M_doubled) && within(b.M_prime, b.M_prime_doubled);
    return b;
}

}  // namespace latconv
