#pragma once

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "latconv/homogeneous.hpp"

namespace latconv {

struct ConjugateResult {
    double value = 0;
    std::vector<double> argmax;
    double grid_value = 0;  // lower bound from the grid fallback
};

// R^#(x) = sup_xi { x.xi - R(xi) } for R = Re P.
class ConjugateEvaluator {
public:
    explicit ConjugateEvaluator(const HomogeneousPolynomial& P, std::size_t table_size = 1024);

    const HomogeneousPolynomial& polynomial() const { return P_; }
    int dim() const { return P_.dim(); }

    // Multi-start ascent plus grid fallback, memoized on a 1e-12 grid.
    ConjugateResult evaluate(std::span<const double> x) const;
    double operator()(std::span<const double> x) const { return evaluate(x).value; }

    // Grid fallback alone.
    ConjugateResult grid_only(std::span<const double> x) const;

    // Uses R^#(s^F z) = s R^#(z) with F = (I - E)^T to reduce to the unit
    // sphere of A^T-coordinates; d = 2 interpolates a periodic angle table.
    double fast(std::span<const double> y) const;

private:
    struct State {
        std::mutex mu;
        std::map<std::vector<long long>, ConjugateResult> cache;
        std::once_flag table_once;
        std::vector<double> table;
    };
    double ascend(std::span<const double> x, std::vector<double>& xi) const;
    void build_table() const;

    HomogeneousPolynomial P_;
    RealPolyEval R_;
    std::size_t table_size_;
    std::shared_ptr<State> state_;
};

double conjugate(const HomogeneousPolynomial& P, std::span<const double> x);

// |x|_m = sum_j |x_j|^{2 m_j / (2 m_j - 1)}
double norm_m(std::span<const double> x, const std::vector<int>& m);

struct CompareResult {
    double value = 0;
    double norm = 0;
    double ratio = 0;
};
// x is given in the A-coordinates of P; compares R^#(A^{-T} x) with |x|_m.
CompareResult conjugate_compare(const ConjugateEvaluator& ev, std::span<const double> x);

// N_E(x) = |x|^{1/(1 - lambda_max)} for |x| >= 1, |x|^{1/(1 - lambda_min)} otherwise.
double norm_NE(const HomogeneousPolynomial& P, std::span<const double> x);

struct LegendreBounds {
    double M = 0;               // sup (|x| - R^#(x)) over the samples
    double M_prime = 0;         // sup R^#(x) / N_E(x) over the samples
    double M_doubled = 0;       // same over samples and their doubles
    double M_prime_doubled = 0;
    bool finite = false;
    bool stable = false;  // doubling changes each constant by at most a factor 1.5
};
LegendreBounds conjugate_bounds_check(const ConjugateEvaluator& ev, const std::vector<Eigen::VectorXd>& samples);

}  // namespace latconv
