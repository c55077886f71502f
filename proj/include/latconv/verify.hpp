#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latconv/expansion.hpp"
#include "latconv/lattice.hpp"

namespace latconv {

struct BoundRow {
    long n = 0;
    double linf = 0;
    double l1 = 0;
    double scaled = 0;  // meaning depends on the report kind
};

// Verdicts counted as bound violations (CLI exit code 3).
bool is_violation(const std::string& verdict);

struct BoundReport {
    std::string kind;
    std::string verdict;
    bool pass = false;
    std::vector<BoundRow> rows;
    std::vector<std::pair<std::string, double>> constants;
    std::string note;

    std::optional<double> constant(const std::string& name) const;
};

void write_report_csv(std::ostream& out, const BoundReport& r);

// Rows (n, ||phi^(n)||_inf, ||phi^(n)||_1, n^mu ||phi^(n)||_inf). The band
// ratio is max/min of the scaled column over n >= band_from (default: the top
// octave [n_max/2, n_max]); bounded-band when <= 2.
BoundReport sup_decay_report(const LatticeFunction& f, const std::vector<long>& ns, long band_from = 0,
                             const PowerOptions& opts = {});

// n alpha_q +- 16 sum_k |A_jk| n^{1/(2 m_k)} hulled over all points of Omega.
Box concentration_box(const SpectralAnalysis& a, long n);

struct WindowedPower {
    DenseGrid grid;
    std::string note;  // set when the periodized fallback was used
};
// phi^(n) restricted to a window. When the full support box exceeds the memory
// cap and `a` succeeded, falls back to a periodized transform whose period
// leaves one period of clearance around the window and the concentration box.
WindowedPower power_window(const LatticeFunction& f, const SpectralAnalysis* a, long n, const Box& window,
                           PowerMethod method = PowerMethod::Fast, const PowerOptions& opts = {});

struct LltError {
    long n = 0;
    double sup_error = 0;
    double scaled_error = 0;
    Box window;
};
LltError llt_error(const SpectralAnalysis& a, long n, const PowerOptions& opts = {});
// Scaled LLT error per n; verdict "decreasing" when the scaled error at the
// largest n is below the smallest-n value and the last two steps do not increase.
BoundReport llt_report(const LatticeFunction& f, const std::vector<long>& ns, const PowerOptions& opts = {});

// Largest M in {1, 1/2, ..., 2^-10} with S(M) stable over the top two n-octaves.
BoundReport gaussian_bound_fit(const LatticeFunction& f, const std::vector<long>& ns);
BoundReport subexp_bound_fit(const LatticeFunction& f, const std::vector<long>& ns, int N);

// l1 norms at 1, 2, 4, ..., n_max (and n_max).
BoundReport stability_report(const LatticeFunction& f, long n_max, PowerMethod method = PowerMethod::Fast,
                             const PowerOptions& opts = {});

// D_w psi(x) = psi(x + w) - psi(x)
LatticeFunction space_diff(const LatticeFunction& psi, const LatticePoint& w);
// (D_{v_1})^{beta_1} ... (D_{v_d})^{beta_d} psi
LatticeFunction space_diff_multi(const LatticeFunction& psi, const std::vector<LatticePoint>& v,
                                 const std::vector<int>& beta);
// psi - phi^(xi0)^{-l} (delta_{-l alpha} * phi^(l)) * psi, alpha the drift at xi0.
LatticeFunction time_diff(const LatticeFunction& f, const SpectralAnalysis& a, std::size_t point, long l,
                          const LatticeFunction& psi);

// Fits C_beta = max |D_v^beta phi^(n)(x)| n^{mu + |beta:2m|}.
BoundReport derivative_bound_fit(const LatticeFunction& f, const std::vector<LatticePoint>& v,
                                 const std::vector<int>& beta, const std::vector<long>& ns);

struct WalkProfile {
    int dim = 0;
    std::vector<double> mean;
    Eigen::MatrixXd covariance;
    bool genuinely_d_dimensional = false;
    std::vector<std::vector<double>> omega;
    std::vector<double> phases;
    LatticePoint support_point;  // some x0 in supp(phi)
};

bool is_probability(const LatticeFunction& f, double tol = 1e-12);
WalkProfile walk_profile(const LatticeFunction& f);
// Integer rank of {x - x0 : x in supp}.
int support_rank(const LatticeFunction& f);

// Theta(n, x) = sum over Omega of e^{i (n omega(xi) - x.xi)}.
double theta(const WalkProfile& p, long n, const LatticePoint& x);
// Cosine form sum_xi cos((n x0 - x).xi).
double theta_cosine(const WalkProfile& p, long n, const LatticePoint& x);
// supp(phi^(n)) within supp(Theta(n, .)) for n <= n_max, via direct powers.
bool support_periodicity_check(const LatticeFunction& f, long n_max);

}  // namespace latconv
