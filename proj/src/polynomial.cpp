#include "latconv/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "latconv/errors.hpp"

namespace latconv {

int total_degree(const MultiIndex& beta) { return std::accumulate(beta.begin(), beta.end(), 0); }

double multi_factorial(const MultiIndex& beta) {
    double f = 1.0;
    for (int b : beta)
        for (int k = 2; k <= b; ++k) f *= k;
    return f;
}

Rational weighted_degree(const MultiIndex& beta, const std::vector<int>& m) {
    Rational r(0);
    for (std::size_t j = 0; j < beta.size(); ++j) r = r + Rational(beta[j], 2 * m[j]);
    return r;
}

std::vector<MultiIndex> multi_indices_up_to(int d, int order) {
    std::vector<MultiIndex> out;
    for (int deg = 1; deg <= order; ++deg) {
        MultiIndex beta(d, 0);
        // Enumerate compositions of deg into d parts in lexicographically decreasing order.
        std::vector<MultiIndex> level;
        auto rec = [&](auto&& self, int j, int left) -> void {
            if (j == d - 1) {
                beta[j] = left;
                level.push_back(beta);
                return;
            }
            for (int k = left; k >= 0; --k) {
                beta[j] = k;
                self(self, j + 1, left - k);
            }
        };
        rec(rec, 0, deg);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& [beta, c] : terms_) d = std::max(d, total_degree(beta));
    return d;
}

cplx Polynomial::coeff(const MultiIndex& beta) const {
    auto it = terms_.find(beta);
    return it == terms_.end() ? cplx(0.0) : it->second;
}

void Polynomial::add(const MultiIndex& beta, cplx c) {
    if (static_cast<int>(beta.size()) != dim_) throw PreconditionError("Polynomial: dimension mismatch");
    terms_[beta] += c;
}

void Polynomial::set(const MultiIndex& beta, cplx c) {
    if (static_cast<int>(beta.size()) != dim_) throw PreconditionError("Polynomial: dimension mismatch");
    terms_[beta] = c;
}

cplx Polynomial::operator()(std::span<const double> xi) const {
    cplx s = 0.0;
    for (const auto& [beta, c] : terms_) {
        double m = 1.0;
        for (int j = 0; j < dim_; ++j) m *= std::pow(xi[j], beta[j]);
        s += c * m;
    }
    return s;
}

cplx Polynomial::evaluate_complex(std::span<const cplx> z) const {
    cplx s = 0.0;
    for (const auto& [beta, c] : terms_) {
        cplx m = 1.0;
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < beta[j]; ++k) m *= z[j];
        s += c * m;
    }
    return s;
}

Polynomial Polynomial::truncated(int order) const {
    Polynomial p(dim_);
    for (const auto& [beta, c] : terms_)
        if (total_degree(beta) <= order) p.terms_[beta] = c;
    return p;
}

Polynomial Polynomial::homogeneous_part(int degree) const {
    Polynomial p(dim_);
    for (const auto& [beta, c] : terms_)
        if (total_degree(beta) == degree) p.terms_[beta] = c;
    return p;
}

Polynomial Polynomial::pruned(double tol) const {
    Polynomial p(dim_);
    for (const auto& [beta, c] : terms_)
        if (std::abs(c) > tol) p.terms_[beta] = c;
    return p;
}

Polynomial Polynomial::real_part() const {
    Polynomial p(dim_);
    for (const auto& [beta, c] : terms_) p.terms_[beta] = c.real();
    return p;
}

Polynomial Polynomial::scaled(cplx s) const {
    Polynomial p(dim_);
    for (const auto& [beta, c] : terms_) p.terms_[beta] = c * s;
    return p;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial p = a;
    for (const auto& [beta, c] : b.terms_) p.terms_[beta] += c;
    return p;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial p = a;
    for (const auto& [beta, c] : b.terms_) p.terms_[beta] -= c;
    return p;
}

Polynomial Polynomial::multiply(const Polynomial& a, const Polynomial& b, int max_order) {
    if (a.dim_ != b.dim_) throw PreconditionError("Polynomial::multiply: dimension mismatch");
    Polynomial p(a.dim_);
    MultiIndex g(a.dim_);
    for (const auto& [ba, ca] : a.terms_) {
        const int da = total_degree(ba);
        for (const auto& [bb, cb] : b.terms_) {
            if (da + total_degree(bb) > max_order) continue;
            for (int j = 0; j < a.dim_; ++j) g[j] = ba[j] + bb[j];
            p.terms_[g] += ca * cb;
        }
    }
    return p;
}

Polynomial Polynomial::substitute_linear(const Eigen::MatrixXd& M) const {
    const int d = dim_;
    // Linear forms l_j(eta) = sum_k M(j,k) eta_k.
    std::vector<Polynomial> lin(d, Polynomial(d));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            MultiIndex e(d, 0);
            e[k] = 1;
            if (M(j, k) != 0.0) lin[j].add(e, M(j, k));
        }
    const int top = degree();
    // pw[j][k] = l_j^k
    std::vector<std::vector<Polynomial>> pw(d);
    for (int j = 0; j < d; ++j) {
        Polynomial one(d);
        one.add(MultiIndex(d, 0), 1.0);
        pw[j].push_back(one);
        for (int k = 1; k <= top; ++k) pw[j].push_back(multiply(pw[j].back(), lin[j], top));
    }
    Polynomial out(d);
    for (const auto& [beta, c] : terms_) {
        Polynomial m(d);
        m.add(MultiIndex(d, 0), c);
        for (int j = 0; j < d; ++j)
            if (beta[j] > 0) m = multiply(m, pw[j][beta[j]], top);
        out = out + m;
    }
    return out;
}

double Polynomial::max_abs_coeff() const {
    double m = 0;
    for (const auto& [beta, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

namespace {
template <class T>
void flatten(const Polynomial& p, int& max_exp, std::vector<int>& exps, std::vector<T>& coefs, bool real) {
    max_exp = 0;
    for (const auto& [beta, c] : p.terms()) {
        if (real && c.real() == 0.0) continue;
        for (int b : beta) {
            exps.push_back(b);
            max_exp = std::max(max_exp, b);
        }
        if constexpr (std::is_same_v<T, double>)
            coefs.push_back(c.real());
        else
            coefs.push_back(c);
    }
}
}  // namespace

RealPolyEval::RealPolyEval(const Polynomial& p) : dim_(p.dim()) {
    flatten(p, max_exp_, exps_, coefs_, true);
    pw_.resize(static_cast<std::size_t>(dim_) * (max_exp_ + 1));
}

void RealPolyEval::powers(std::span<const double> x) const {
    const int w = max_exp_ + 1;
    for (int j = 0; j < dim_; ++j) {
        double* row = pw_.data() + j * w;
        row[0] = 1.0;
        for (int k = 1; k < w; ++k) row[k] = row[k - 1] * x[j];
    }
}

double RealPolyEval::value(std::span<const double> x) const {
    powers(x);
    const int w = max_exp_ + 1;
    double s = 0;
    for (std::size_t t = 0; t < coefs_.size(); ++t) {
        double m = coefs_[t];
        const int* e = exps_.data() + t * dim_;
        for (int j = 0; j < dim_; ++j) m *= pw_[j * w + e[j]];
        s += m;
    }
    return s;
}

double RealPolyEval::value_grad(std::span<const double> x, Eigen::VectorXd& grad) const {
    powers(x);
    const int w = max_exp_ + 1;
    grad.setZero(dim_);
    double s = 0;
    for (std::size_t t = 0; t < coefs_.size(); ++t) {
        const int* e = exps_.data() + t * dim_;
        double m = coefs_[t];
        for (int j = 0; j < dim_; ++j) m *= pw_[j * w + e[j]];
        s += m;
        for (int a = 0; a < dim_; ++a) {
            if (e[a] == 0) continue;
            double g = coefs_[t] * e[a];
            for (int j = 0; j < dim_; ++j) g *= pw_[j * w + e[j] - (j == a ? 1 : 0)];
            grad[a] += g;
        }
    }
    return s;
}

double RealPolyEval::value_grad_hess(std::span<const double> x, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
    const double v = value_grad(x, grad);
    const int w = max_exp_ + 1;
    hess.setZero(dim_, dim_);
    std::vector<int> red(dim_);
    for (std::size_t t = 0; t < coefs_.size(); ++t) {
        const int* e = exps_.data() + t * dim_;
        for (int a = 0; a < dim_; ++a) {
            for (int b = a; b < dim_; ++b) {
                for (int j = 0; j < dim_; ++j) red[j] = e[j];
                double c = coefs_[t];
                c *= red[a]--;
                if (c == 0.0) continue;
                c *= red[b]--;
                if (c == 0.0) continue;
                for (int j = 0; j < dim_; ++j) c *= pw_[j * w + red[j]];
                hess(a, b) += c;
            }
        }
    }
    for (int a = 0; a < dim_; ++a)
        for (int b = 0; b < a; ++b) hess(a, b) = hess(b, a);
    return v;
}

ComplexPolyEval::ComplexPolyEval(const Polynomial& p) : dim_(p.dim()) {
    flatten(p, max_exp_, exps_, coefs_, false);
    pw_.resize(static_cast<std::size_t>(dim_) * (max_exp_ + 1));
}

cplx ComplexPolyEval::operator()(std::span<const double> x) const {
    const int w = max_exp_ + 1;
    for (int j = 0; j < dim_; ++j) {
        double* row = pw_.data() + j * w;
        row[0] = 1.0;
        for (int k = 1; k < w; ++k) row[k] = row[k - 1] * x[j];
    }
    cplx s = 0;
    for (std::size_t t = 0; t < coefs_.size(); ++t) {
        double m = 1.0;
        const int* e = exps_.data() + t * dim_;
        for (int j = 0; j < dim_; ++j) m *= pw_[j * w + e[j]];
        s += coefs_[t] * m;
    }
    return s;
}

}  // namespace latconv
