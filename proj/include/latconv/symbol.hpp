#pragma once

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "latconv/lattice.hpp"
#include "latconv/polynomial.hpp"

namespace latconv {

// The trigonometric polynomial phi^(xi) = sum_x phi(x) e^{i x.xi}.
class SymbolView {
public:
    explicit SymbolView(LatticeFunction f);

    const LatticeFunction& source() const { return f_; }
    int dim() const { return f_.dim(); }

    cplx evaluate(std::span<const double> xi) const;
    cplx evaluate(std::span<const cplx> z) const;
    // sum_x (i x)^beta phi(x) e^{i x.xi}
    cplx derivative(const MultiIndex& beta, std::span<const double> xi) const;
    // derivative at xi = 0, memoized
    cplx moment(const MultiIndex& beta) const;

    // Value, gradient and Hessian of phi^ at xi.
    void jet2(std::span<const double> xi, cplx& value, Eigen::VectorXcd& grad, Eigen::MatrixXcd& hess) const;

    // phi^(2 pi k / N) for k in [0, N)^d, row-major.
    std::vector<cplx> grid_samples(const std::vector<std::size_t>& n) const;

    // Sum_x |x|_inf |phi(x)|, used to scale rounding thresholds.
    double first_absolute_moment() const { return abs_moment_; }

private:
    struct Cache {
        std::mutex mu;
        std::map<MultiIndex, cplx> moments;
    };
    LatticeFunction f_;
    std::vector<double> x_;  // coordinates as doubles
    double abs_moment_ = 0;
    std::shared_ptr<Cache> cache_;
};

struct OmegaSet {
    std::vector<std::vector<double>> points;  // in (-pi, pi]^d, lexicographic
    std::vector<cplx> values;
    std::vector<double> phases;  // principal argument in (-pi, pi]
    std::vector<std::string> warnings;

    std::size_t size() const { return points.size(); }
};

struct SupLocation {
    double max = 0;
    std::vector<double> argmax;
    std::vector<std::string> warnings;
};

struct Normalized {
    LatticeFunction f;
    cplx scale;
};

struct VonNeumannResult {
    bool satisfied = false;
    double max = 0;
    std::vector<double> argmax;
};

constexpr int kDefaultGridN = 512;
constexpr double kOmegaTol = 1e-9;
constexpr double kDedupeRadius = 1e-6;

// Wraps each coordinate into (-pi, pi].
std::vector<double> wrap_torus(std::span<const double> xi);
// Max-norm distance on the torus.
double torus_distance(std::span<const double> a, std::span<const double> b);
double principal_arg(cplx z);

// Global maximum of |phi^| by grid scan (doubled until stable to 1e-12) plus Newton polish.
SupLocation locate_sup(const SymbolView& s, int grid_n = kDefaultGridN);
Normalized normalize(const LatticeFunction& f);
OmegaSet find_omega(const SymbolView& s, int grid_n = kDefaultGridN, double tol = kOmegaTol);
VonNeumannResult check_von_neumann(const SymbolView& s);

}  // namespace latconv
