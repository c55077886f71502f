#include "latconv/homogeneous.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "latconv/errors.hpp"

namespace latconv {

namespace {

double prune_level(const Polynomial& p) { return 1e-13 * std::max(1.0, p.max_abs_coeff()); }

Eigen::MatrixXd diag_exponent(const std::vector<int>& m) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(m.size(), m.size());
    for (std::size_t j = 0; j < m.size(); ++j) D(j, j) = 1.0 / (2.0 * m[j]);
    return D;
}

void validate_shape(const Eigen::MatrixXd& A, const std::vector<int>& m, int d) {
    if (A.rows() != d || A.cols() != d || static_cast<int>(m.size()) != d)
        throw PreconditionError("HomogeneousPolynomial: basis/weights dimension mismatch");
    for (int w : m)
        if (w < 1) throw PreconditionError("HomogeneousPolynomial: weights must be positive");
    if (std::abs(A.determinant()) < 1e-12) throw PreconditionError("HomogeneousPolynomial: singular basis");
}

}  // namespace

HomogeneousPolynomial HomogeneousPolynomial::from_normal_form(const Polynomial& normal, const Eigen::MatrixXd& A,
                                                              const std::vector<int>& m) {
    validate_shape(A, m, normal.dim());
    HomogeneousPolynomial P;
    P.A_ = A;
    P.A_inv_ = A.inverse();
    P.m_ = m;
    P.normal_ = normal.pruned(prune_level(normal));
    P.coefficients_ = P.normal_.substitute_linear(P.A_inv_);
    P.coefficients_ = P.coefficients_.pruned(prune_level(P.coefficients_));
    P.E_ = A * diag_exponent(m) * P.A_inv_;
    P.mu_ = Rational(0);
    for (int w : m) P.mu_ = P.mu_ + Rational(1, 2 * w);
    return P;
}

HomogeneousPolynomial HomogeneousPolynomial::from_coefficients(const Polynomial& coefficients, const Eigen::MatrixXd& A,
                                                               const std::vector<int>& m) {
    validate_shape(A, m, coefficients.dim());
    return from_normal_form(coefficients.substitute_linear(A), A, m);
}

double HomogeneousPolynomial::lambda_max() const {
    int w = *std::min_element(m_.begin(), m_.end());
    return 1.0 / (2.0 * w);
}

double HomogeneousPolynomial::lambda_min() const {
    int w = *std::max_element(m_.begin(), m_.end());
    return 1.0 / (2.0 * w);
}

Eigen::MatrixXd HomogeneousPolynomial::group_matrix(double t) const {
    if (!(t > 0)) throw PreconditionError("group_action: t must be positive");
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(dim(), dim());
    for (int j = 0; j < dim(); ++j) D(j, j) = std::pow(t, 1.0 / (2.0 * m_[j]));
    return A_ * D * A_inv_;
}

std::vector<double> group_action(const HomogeneousPolynomial& P, double t, std::span<const double> xi) {
    const Eigen::Map<const Eigen::VectorXd> x(xi.data(), static_cast<Eigen::Index>(xi.size()));
    const Eigen::VectorXd y = P.group_matrix(t) * x;
    return std::vector<double>(y.data(), y.data() + y.size());
}

Eigen::MatrixXd matrix_power_t(const Eigen::MatrixXd& E, double t) {
    if (!(t > 0)) throw PreconditionError("matrix_power_t: t must be positive");
    const Eigen::MatrixXd L = std::log(t) * E;
    return L.exp();
}

std::vector<Eigen::VectorXd> sphere_samples(int d, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Eigen::VectorXd> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        Eigen::VectorXd v(d);
        for (int j = 0; j < d; ++j) v[j] = gauss(rng);
        const double n = v.norm();
        if (n < 1e-12) continue;
        out.push_back(v / n);
    }
    return out;
}

ExponentCheck is_exponent(const HomogeneousPolynomial& P, const Eigen::MatrixXd& E, int samples) {
    const int d = P.dim();
    if (E.rows() != d || E.cols() != d) throw PreconditionError("is_exponent: matrix dimension mismatch");
    ExponentCheck r;
    const auto xs = sphere_samples(d, samples, 7);
    for (int k = -3; k <= 3; ++k) {
        const double t = std::ldexp(1.0, k);
        const Eigen::MatrixXd T = matrix_power_t(E, t);
        for (const auto& x : xs) {
            const Eigen::VectorXd y = T * x;
            const cplx lhs = t * P(std::span<const double>(x.data(), d));
            const cplx rhs = P(std::span<const double>(y.data(), d));
            const double dev = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
            r.max_deviation = std::max(r.max_deviation, dev);
        }
    }
    r.ok = r.max_deviation < 1e-8;
    return r;
}

bool trace_invariance_check(const HomogeneousPolynomial& P, const Eigen::MatrixXd& E1, const Eigen::MatrixXd& E2) {
    if (!is_exponent(P, E1).ok || !is_exponent(P, E2).ok)
        throw PreconditionError("trace_invariance_check: candidate is not an exponent of P");
    return std::abs(E1.trace() - E2.trace()) < 1e-10;
}

bool contraction_check(const Eigen::MatrixXd& E) {
    double prev = std::numeric_limits<double>::infinity();
    for (double t : {1e-2, 1e-4, 1e-6}) {
        const Eigen::MatrixXd T = matrix_power_t(E, t);
        const double norm = Eigen::JacobiSVD<Eigen::MatrixXd>(T).singularValues()(0);
        if (!(norm < prev)) return false;
        prev = norm;
    }
    return prev < 0.5;
}

SemiEllipticForm semi_elliptic_form(const HomogeneousPolynomial& P) {
    SemiEllipticForm f;
    f.A = P.basis();
    f.m = P.weights();
    f.coefficients = P.normal_form();
    const Polynomial back = f.coefficients.substitute_linear(P.basis_inverse());
    const Polynomial diff = back - P.coefficients();
    f.roundtrip_error = diff.max_abs_coeff();
    if (f.roundtrip_error > 1e-10) throw Error("semi_elliptic_form: round trip mismatch");
    return f;
}

FittedResult p_fitted(const HomogeneousPolynomial& P, const std::vector<std::vector<double>>& v) {
    const int d = P.dim();
    FittedResult r;
    r.weights = P.weights();
    if (v.empty()) {
        r.fitted = true;
        return r;
    }
    if (static_cast<int>(v.size()) != d) throw PreconditionError("p_fitted: need d vectors");
    const Eigen::MatrixXd At = P.basis().transpose();
    for (int j = 0; j < d; ++j) {
        if (static_cast<int>(v[j].size()) != d) throw PreconditionError("p_fitted: vector dimension mismatch");
        const Eigen::VectorXd w = At * Eigen::Map<const Eigen::VectorXd>(v[j].data(), d);
        for (int k = 0; k < d; ++k)
            if (k != j) r.max_offdiagonal = std::max(r.max_offdiagonal, std::abs(w[k]));
    }
    r.fitted = r.max_offdiagonal < 1e-9;
    return r;
}

double min_real_on_sphere(const HomogeneousPolynomial& P) {
    const int d = P.dim();
    const RealPolyEval R(P.normal_form());
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& x : sphere_samples(d, 1000 * d)) mn = std::min(mn, R.value(std::span<const double>(x.data(), d)));
    std::vector<double> e(d, 0.0);
    for (int j = 0; j < d; ++j)
        for (double s : {1.0, -1.0}) {
            e.assign(d, 0.0);
            e[j] = s;
            mn = std::min(mn, R.value(e));
        }
    return mn;
}

void write_polynomial_csv(std::ostream& out, const HomogeneousPolynomial& P) {
    const int d = P.dim();
    char buf[64];
    out << "# dim," << d << '\n' << "# A";
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            std::snprintf(buf, sizeof buf, ",%.17g", P.basis()(i, j));
            out << buf;
        }
    out << "\n# m";
    for (int w : P.weights()) out << ',' << w;
    out << "\n# mu," << P.mu().to_string() << '\n';
    for (int j = 1; j <= d; ++j) out << "beta_" << j << ',';
    out << "re,im\n";
    for (const auto& [beta, c] : P.coefficients().terms()) {
        for (int b : beta) out << b << ',';
        std::snprintf(buf, sizeof buf, "%.17g,%.17g", c.real(), c.imag());
        out << buf << '\n';
    }
}

HomogeneousPolynomial read_polynomial_csv(std::istream& in) {
    int d = 0;
    std::vector<double> a;
    std::vector<int> m;
    Polynomial coeffs(1);
    bool header_seen = false;
    std::string line;
    int lineno = 0;
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
        return parts;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto parts = split(line.substr(1));
            if (parts.empty()) continue;
            std::string key = parts[0];
            key.erase(0, key.find_first_not_of(' '));
            try {
                if (key == "dim") {
                    d = std::stoi(parts.at(1));
                    coeffs = Polynomial(d);
                } else if (key == "A") {
                    for (std::size_t k = 1; k < parts.size(); ++k) a.push_back(std::stod(parts[k]));
                } else if (key == "m") {
                    for (std::size_t k = 1; k < parts.size(); ++k) m.push_back(std::stoi(parts[k]));
                }
            } catch (const std::exception&) {
                throw ParseError(lineno, "malformed header line");
            }
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        auto parts = split(line);
        if (d == 0 || static_cast<int>(parts.size()) != d + 2) throw ParseError(lineno, "malformed coefficient row");
        MultiIndex beta(d);
        try {
            for (int j = 0; j < d; ++j) beta[j] = std::stoi(parts[j]);
            coeffs.add(beta, cplx(std::stod(parts[d]), std::stod(parts[d + 1])));
        } catch (const std::exception&) {
            throw ParseError(lineno, "malformed coefficient row");
        }
    }
    if (d == 0 || static_cast<int>(a.size()) != d * d || static_cast<int>(m.size()) != d)
        throw ParseError(lineno, "incomplete polynomial header");
    Eigen::MatrixXd A(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) A(i, j) = a[i * d + j];
    return HomogeneousPolynomial::from_coefficients(coeffs, A, m);
}

}  // namespace latconv
