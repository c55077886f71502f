#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "latconv/polynomial.hpp"
#include "latconv/rational.hpp"

namespace latconv {

// Positive homogeneous polynomial P with exponent E = A diag(1/(2 m_j)) A^{-1}.
// The normal form N satisfies P(xi) = N(A^{-1} xi) and every monomial of N
// has |beta : 2m| = 1.
class HomogeneousPolynomial {
public:
    HomogeneousPolynomial() = default;

    static HomogeneousPolynomial from_normal_form(const Polynomial& normal, const Eigen::MatrixXd& A,
                                                  const std::vector<int>& m);
    static HomogeneousPolynomial from_coefficients(const Polynomial& coefficients, const Eigen::MatrixXd& A,
                                                   const std::vector<int>& m);

    int dim() const { return coefficients_.dim(); }
    const Polynomial& coefficients() const { return coefficients_; }
    const Polynomial& normal_form() const { return normal_; }
    const Eigen::MatrixXd& basis() const { return A_; }
    const Eigen::MatrixXd& basis_inverse() const { return A_inv_; }
    const std::vector<int>& weights() const { return m_; }
    const Eigen::MatrixXd& exponent() const { return E_; }
    Rational mu() const { return mu_; }
    double lambda_max() const;
    double lambda_min() const;

    cplx operator()(std::span<const double> xi) const { return coefficients_(xi); }
    double real_part(std::span<const double> xi) const { return coefficients_(xi).real(); }

    // t^E as a matrix, from the closed form.
    Eigen::MatrixXd group_matrix(double t) const;

private:
    Polynomial coefficients_{1};
    Polynomial normal_{1};
    Eigen::MatrixXd A_;
    Eigen::MatrixXd A_inv_;
    std::vector<int> m_;
    Eigen::MatrixXd E_;
    Rational mu_;
};

std::vector<double> group_action(const HomogeneousPolynomial& P, double t, std::span<const double> xi);

// exp((log t) E) for an arbitrary real matrix.
Eigen::MatrixXd matrix_power_t(const Eigen::MatrixXd& E, double t);

// Unit vectors from a fixed-seed generator.
std::vector<Eigen::VectorXd> sphere_samples(int d, int count, std::uint64_t seed = 20240613);

struct ExponentCheck {
    bool ok = false;
    double max_deviation = 0;
};
ExponentCheck is_exponent(const HomogeneousPolynomial& P, const Eigen::MatrixXd& E, int samples = 64);

bool trace_invariance_check(const HomogeneousPolynomial& P, const Eigen::MatrixXd& E1, const Eigen::MatrixXd& E2);

bool contraction_check(const Eigen::MatrixXd& E);

struct SemiEllipticForm {
    Eigen::MatrixXd A;
    std::vector<int> m;
    Polynomial coefficients{1};
    double roundtrip_error = 0;
};
SemiEllipticForm semi_elliptic_form(const HomogeneousPolynomial& P);

struct FittedResult {
    bool fitted = false;
    std::vector<int> weights;
    double max_offdiagonal = 0;
};
FittedResult p_fitted(const HomogeneousPolynomial& P, const std::vector<std::vector<double>>& v);

// Minimum of Re P over 10^3 d sphere samples and the +-axes of the normal form.
double min_real_on_sphere(const HomogeneousPolynomial& P);

void write_polynomial_csv(std::ostream& out, const HomogeneousPolynomial& P);
HomogeneousPolynomial read_polynomial_csv(std::istream& in);

}  // namespace latconv
