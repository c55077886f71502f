#pragma once

#include <span>
#include <vector>

#include "latconv/expansion.hpp"
#include "latconv/homogeneous.hpp"
#include "latconv/lattice.hpp"

namespace latconv {

constexpr double kTCut = 46.0;
constexpr std::size_t kMinQuadraturePoints = 256;

// Half-widths L_j with t Re P >= kTCut on the boundary of the box |xi_j| <= L_j.
std::vector<double> attractor_box(const HomogeneousPolynomial& P, double t);

// H_P^t(x) = (2 pi)^{-d} int e^{-t P(xi)} e^{-i x.xi} d xi by tensor trapezoid.
// `min_points` raises the per-axis sample count above the default rule.
cplx attractor_eval(const HomogeneousPolynomial& P, double t, std::span<const double> x,
                    std::size_t min_points = kMinQuadraturePoints);

struct AttractorGrid {
    double t = 1;
    std::vector<double> shift;  // values are H_P^t(x - shift)
    DenseGrid values;
    std::vector<double> L;
    std::vector<std::size_t> N;
};

// H_P^t(x - shift) for every lattice point of the window, from one FFT.
AttractorGrid attractor_grid(const HomogeneousPolynomial& P, double t, const Box& window,
                             std::span<const double> shift = {}, const PowerOptions& opts = {});

// sum over the mu-minimal points q of e^{-i x.xi_q} phi^(xi_q)^n H^n_{P_q}(x - n alpha_q),
// for the normalized function of the analysis.
DenseGrid llt_approx_grid(const SpectralAnalysis& a, long n, const Box& window, const PowerOptions& opts = {});
LatticeFunction llt_approx(const SpectralAnalysis& a, long n, const Box& window, const PowerOptions& opts = {});

}  // namespace latconv
