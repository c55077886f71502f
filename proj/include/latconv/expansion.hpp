#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latconv/homogeneous.hpp"
#include "latconv/lattice.hpp"
#include "latconv/polynomial.hpp"
#include "latconv/rational.hpp"
#include "latconv/symbol.hpp"

namespace latconv {

// Taylor coefficients of log(phi^(xi + xi0) / phi^(xi0)) about xi = 0, orders 1..m.
struct TaylorSeries {
    int order = 0;
    Polynomial coefficients{1};
};

TaylorSeries gamma_taylor(const SymbolView& s, std::span<const double> xi0, int m);

enum class Verdict { PositiveHomogeneousType, NotPositiveHomogeneousType, Indeterminate };
const char* to_string(Verdict v);

enum class WeightSearchOrder { Ascending, Descending };

struct ClassifyOptions {
    int m_max = 12;
    WeightSearchOrder search = WeightSearchOrder::Ascending;
    std::optional<Eigen::MatrixXd> basis;  // user-supplied A, skips the Hessian heuristic
};

struct Classification {
    Verdict verdict = Verdict::NotPositiveHomogeneousType;
    std::vector<double> alpha;
    HomogeneousPolynomial P;  // valid on success
    Eigen::MatrixXd E;
    Rational mu;
    int order_used = 0;
    // max over sphere samples of |t Q(t^{-E} xi) - P(xi)| for t = 10, 100, 1000
    std::vector<double> residuals;
    std::string diagnostic;

    bool success() const { return verdict == Verdict::PositiveHomogeneousType; }
};

constexpr double kNullAxisEps = 1e-9;
constexpr double kSubHomogeneousTol = 1e-8;

Classification classify(const SymbolView& s, std::span<const double> xi0, const ClassifyOptions& opts = {});

struct PointAnalysis {
    std::vector<double> xi;
    cplx value;
    double omega = 0;
    Classification cls;
};

struct AnalyzeOptions {
    int grid_n = kDefaultGridN;
    double tol = kOmegaTol;
    ClassifyOptions classify;
};

struct SpectralAnalysis {
    LatticeFunction normalized{1};
    cplx scale = 1.0;
    std::vector<PointAnalysis> points;
    Verdict verdict = Verdict::NotPositiveHomogeneousType;
    std::optional<Rational> mu_phi;
    std::vector<std::size_t> minimal;  // indices into points attaining mu_phi
    std::vector<std::string> warnings;

    bool succeeded() const { return verdict == Verdict::PositiveHomogeneousType; }
};

SpectralAnalysis analyze(const LatticeFunction& f, const AnalyzeOptions& opts = {});

}  // namespace latconv
