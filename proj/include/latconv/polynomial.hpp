#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "latconv/rational.hpp"

namespace latconv {

using cplx = std::complex<double>;
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& beta);
double multi_factorial(const MultiIndex& beta);
// |beta : 2m| = sum_j beta_j / (2 m_j), exact.
Rational weighted_degree(const MultiIndex& beta, const std::vector<int>& m);
// All multi-indices of dimension d with 1 <= |beta| <= order, graded then lexicographic.
std::vector<MultiIndex> multi_indices_up_to(int d, int order);

// Sparse complex polynomial in d real variables.
class Polynomial {
public:
    explicit Polynomial(int dim = 1) : dim_(dim) {}

    int dim() const { return dim_; }
    const std::map<MultiIndex, cplx>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int degree() const;

    cplx coeff(const MultiIndex& beta) const;
    void add(const MultiIndex& beta, cplx c);
    void set(const MultiIndex& beta, cplx c);

    cplx operator()(std::span<const double> xi) const;
    cplx evaluate_complex(std::span<const cplx> z) const;

    Polynomial truncated(int order) const;          // drops |beta| > order
    Polynomial homogeneous_part(int degree) const;  // keeps |beta| == degree
    Polynomial pruned(double tol) const;            // drops |c| <= tol
    Polynomial real_part() const;
    Polynomial scaled(cplx c) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    static Polynomial multiply(const Polynomial& a, const Polynomial& b, int max_order);

    // q(eta) = p(M eta).
    Polynomial substitute_linear(const Eigen::MatrixXd& M) const;

    double max_abs_coeff() const;

private:
    int dim_;
    std::map<MultiIndex, cplx> terms_;
};

// Flattened real polynomial with value, gradient and Hessian evaluation.
class RealPolyEval {
public:
    RealPolyEval() = default;
    explicit RealPolyEval(const Polynomial& p);  // uses Re of the coefficients

    int dim() const { return dim_; }
    double value(std::span<const double> x) const;
    double value_grad(std::span<const double> x, Eigen::VectorXd& grad) const;
    double value_grad_hess(std::span<const double> x, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const;

private:
    void powers(std::span<const double> x) const;
    int dim_ = 0;
    int max_exp_ = 0;
    std::vector<int> exps_;  // term-major, dim_ entries per term
    std::vector<double> coefs_;
    mutable std::vector<double> pw_;  // pw_[j*(max_exp_+1)+k] = x_j^k
};

// Flattened complex polynomial evaluation at real points.
class ComplexPolyEval {
public:
    ComplexPolyEval() = default;
    explicit ComplexPolyEval(const Polynomial& p);
    cplx operator()(std::span<const double> x) const;

private:
    int dim_ = 0;
    int max_exp_ = 0;
    std::vector<int> exps_;
    std::vector<cplx> coefs_;
    mutable std::vector<double> pw_;
};

}  // namespace latconv
