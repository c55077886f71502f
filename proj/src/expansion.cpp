#include "latconv/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "latconv/errors.hpp"

namespace latconv {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::PositiveHomogeneousType: return "positive-homogeneous-type";
        case Verdict::NotPositiveHomogeneousType: return "not-positive-homogeneous-type";
        case Verdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

TaylorSeries gamma_taylor(const SymbolView& s, std::span<const double> xi0, int m) {
    if (m < 1) throw PreconditionError("gamma_taylor: order must be >= 1");
    const int d = s.dim();
    const cplx base = s.evaluate(xi0);
    if (std::abs(std::abs(base) - 1.0) > 1e-9) throw PreconditionError("gamma_taylor: |phi^(xi0)| is not 1");
    Polynomial u(d);
    for (const auto& beta : multi_indices_up_to(d, m))
        u.add(beta, s.derivative(beta, xi0) / (multi_factorial(beta) * base));
    // log(1 + u) = sum_k (-1)^{k+1} u^k / k
    Polynomial result(d), uk = u;
    for (int k = 1; k <= m; ++k) {
        result = result + uk.scaled((k % 2 == 1 ? 1.0 : -1.0) / k);
        if (k < m) uk = Polynomial::multiply(uk, u, m);
    }
    return {m, result};
}

namespace {

// Rows of the reduced row echelon form of V^T, orthonormalized; a canonical
// basis of span(V) that prefers coordinate axes.
Eigen::MatrixXd canonical_basis(const Eigen::MatrixXd& V) {
    Eigen::MatrixXd R = V.transpose();
    const int k = static_cast<int>(R.rows()), d = static_cast<int>(R.cols());
    int row = 0;
    for (int col = 0; col < d && row < k; ++col) {
        int piv = row;
        for (int r = row + 1; r < k; ++r)
            if (std::abs(R(r, col)) > std::abs(R(piv, col))) piv = r;
        if (std::abs(R(piv, col)) < 1e-9) continue;
        R.row(row).swap(R.row(piv));
        R.row(row) /= R(row, col);
        for (int r = 0; r < k; ++r)
            if (r != row) R.row(r) -= R(r, col) * R.row(row);
        ++row;
    }
    Eigen::MatrixXd B = R.transpose();
    for (int c = 0; c < B.cols(); ++c) {
        for (int p = 0; p < c; ++p) B.col(c) -= B.col(p).dot(B.col(c)) * B.col(p);
        B.col(c).normalize();
    }
    return B;
}

struct Frame {
    Eigen::MatrixXd A;
    std::vector<double> curvature;  // diagonal of A^T H A
};

Frame choose_frame(const Eigen::MatrixXd& H) {
    const int d = static_cast<int>(H.rows());
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    double off = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j) off = std::max(off, std::abs(H(i, j)));
    Frame fr;
    if (off <= 1e-12 * scale) {
        fr.A = Eigen::MatrixXd::Identity(d, d);
        for (int j = 0; j < d; ++j) fr.curvature.push_back(H(j, j));
        return fr;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    const Eigen::VectorXd lam = es.eigenvalues();
    std::vector<int> pos, null;
    for (int k = 0; k < d; ++k) (lam[k] > kNullAxisEps ? pos : null).push_back(k);
    // Candidate vectors, larger eigenvalues first.
    std::vector<std::pair<double, Eigen::VectorXd>> cands;
    std::sort(pos.begin(), pos.end(), [&](int a, int b) { return lam[a] > lam[b]; });
    for (int k : pos) cands.emplace_back(lam[k], es.eigenvectors().col(k));
    if (!null.empty()) {
        Eigen::MatrixXd V(d, null.size());
        for (std::size_t c = 0; c < null.size(); ++c) V.col(c) = es.eigenvectors().col(null[c]);
        const Eigen::MatrixXd B = canonical_basis(V);
        for (int c = 0; c < B.cols(); ++c) cands.emplace_back(B.col(c).dot(H * B.col(c)), B.col(c));
    }
    fr.A = Eigen::MatrixXd::Zero(d, d);
    fr.curvature.assign(d, 0.0);
    std::vector<bool> used(d, false);
    for (auto& [l, v] : cands) {
        int best = -1;
        for (int a = 0; a < d; ++a) {
            if (used[a]) continue;
            if (best < 0 || std::abs(v[a]) > std::abs(v[best]) + 1e-9) best = a;
        }
        used[best] = true;
        if (v[best] < 0) v = -v;
        fr.A.col(best) = v;
        fr.curvature[best] = l;
    }
    return fr;
}

bool next_combo(std::vector<int>& c, int lo, int hi, bool ascending) {
    for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) {
        if (ascending ? c[j] < hi : c[j] > lo) {
            c[j] += ascending ? 1 : -1;
            for (std::size_t k = j + 1; k < c.size(); ++k) c[k] = ascending ? lo : hi;
            return true;
        }
    }
    return false;
}

}  // namespace

Classification classify(const SymbolView& s, std::span<const double> xi0, const ClassifyOptions& opts) {
    if (opts.m_max < 2) throw PreconditionError("classify: m_max must be >= 2");
    const int d = s.dim();
    const int m_max = opts.m_max;
    Classification c;
    c.order_used = m_max;
    const TaylorSeries T = gamma_taylor(s, xi0, m_max);

    c.alpha.assign(d, 0.0);
    Polynomial Q(d);
    for (const auto& [beta, v] : T.coefficients.terms()) {
        if (total_degree(beta) == 1) {
            const int j = static_cast<int>(std::find(beta.begin(), beta.end(), 1) - beta.begin());
            if (std::abs(v.real()) > 1e-8) {
                c.diagnostic = "linear term has a nonzero real part; xi0 is not a maximum of |phi^|";
                return c;
            }
            c.alpha[j] = v.imag();
        } else {
            Q.add(beta, -v);
        }
    }
    if (Q.max_abs_coeff() <= kSubHomogeneousTol) {
        c.diagnostic = "pure translation: log-symbol is linear through order " + std::to_string(m_max);
        return c;
    }

    Eigen::MatrixXd H(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            MultiIndex b(d, 0);
            b[i] += 1;
            b[j] += 1;
            H(i, j) = (i == j ? 2.0 : 1.0) * Q.coeff(b).real();
        }

    Frame fr;
    if (opts.basis) {
        if (opts.basis->rows() != d || opts.basis->cols() != d) throw PreconditionError("classify: basis shape");
        fr.A = *opts.basis;
        const Eigen::MatrixXd Hr = fr.A.transpose() * H * fr.A;
        for (int j = 0; j < d; ++j) fr.curvature.push_back(Hr(j, j));
    } else {
        fr = choose_frame(H);
    }
    for (double l : fr.curvature) {
        if (l < -kNullAxisEps) {
            c.diagnostic = "quadratic part of Re Q is not positive semidefinite";
            return c;
        }
    }

    const Polynomial Qr = Q.substitute_linear(fr.A);
    std::vector<int> null_axes;
    for (int j = 0; j < d; ++j)
        if (fr.curvature[j] <= kNullAxisEps) null_axes.push_back(j);

    const int lo = 2, hi = m_max / 2;
    auto weights_for = [&](const std::vector<int>& combo) {
        std::vector<int> m(d, 1);
        for (std::size_t k = 0; k < null_axes.size(); ++k) m[null_axes[k]] = combo[k];
        return m;
    };
    auto subhomogeneous_survivor = [&](const std::vector<int>& m) {
        for (const auto& [beta, v] : Qr.terms())
            if (weighted_degree(beta, m) < Rational(1) && std::abs(v) > kSubHomogeneousTol) return true;
        return false;
    };

    if (!null_axes.empty() && hi < lo) {
        c.verdict = Verdict::Indeterminate;
        c.diagnostic = "m_max too small for the degenerate axes";
        return c;
    }
    const bool asc = opts.search == WeightSearchOrder::Ascending;
    std::vector<int> combo(null_axes.size(), asc ? lo : hi);
    bool any_positivity_failure = false;
    do {
        const std::vector<int> m = weights_for(combo);
        if (subhomogeneous_survivor(m)) continue;
        Polynomial Pr(d);
        for (const auto& [beta, v] : Qr.terms())
            if (weighted_degree(beta, m) == Rational(1)) Pr.add(beta, v);
        const double level = 1e-13 * std::max(1.0, Pr.max_abs_coeff());
        Pr = Pr.pruned(level);
        if (Pr.empty()) {
            any_positivity_failure = true;
            continue;
        }
        HomogeneousPolynomial P = HomogeneousPolynomial::from_normal_form(Pr, fr.A, m);
        if (!(min_real_on_sphere(P) > 1e-12 * std::max(1.0, Pr.max_abs_coeff()))) {
            any_positivity_failure = true;
            continue;
        }
        c.verdict = Verdict::PositiveHomogeneousType;
        c.P = P;
        c.E = P.exponent();
        c.mu = P.mu();
        // Residual surrogate for the tail: t Q(t^{-E} xi) - P(xi).
        const auto xs = sphere_samples(d, 200, 11);
        const ComplexPolyEval q(Q), p(P.coefficients());
        for (double t : {10.0, 100.0, 1000.0}) {
            const Eigen::MatrixXd Tinv = P.group_matrix(1.0 / t);
            double r = 0;
            for (const auto& x : xs) {
                const Eigen::VectorXd y = Tinv * x;
                r = std::max(r, std::abs(t * q(std::span<const double>(y.data(), d)) -
                                         p(std::span<const double>(x.data(), d))));
            }
            c.residuals.push_back(r);
        }
        return c;
    } while (next_combo(combo, lo, hi, asc));

    // No admissible weights. Decide whether a larger order could help.
    const std::vector<int> top = weights_for(std::vector<int>(null_axes.size(), hi));
    if (!subhomogeneous_survivor(top)) {
        for (int j : null_axes) {
            bool flat = true;
            for (int k = 1; k <= m_max && flat; ++k) {
                MultiIndex b(d, 0);
                b[j] = k;
                if (std::abs(Qr.coeff(b).real()) > kSubHomogeneousTol) flat = false;
            }
            if (flat) {
                c.verdict = Verdict::Indeterminate;
                c.diagnostic = "Re Q vanishes along a degenerate axis through order " + std::to_string(m_max) +
                               "; raise m_max or supply the basis A";
                return c;
            }
        }
    }
    c.diagnostic = any_positivity_failure ? "no weight assignment gives a positive definite leading part"
                                          : "a sub-homogeneous term survives for every weight assignment";
    return c;
}

SpectralAnalysis analyze(const LatticeFunction& f, const AnalyzeOptions& opts) {
    if (f.empty()) throw PreconditionError("analyze: zero function");
    SpectralAnalysis a;
    const Normalized nf = normalize(f);
    a.normalized = nf.f;
    a.scale = nf.scale;
    const SymbolView s(a.normalized);
    const OmegaSet om = find_omega(s, opts.grid_n, opts.tol);
    a.warnings = om.warnings;
    bool any_indeterminate = false, any_failure = false;
    for (std::size_t k = 0; k < om.size(); ++k) {
        PointAnalysis p;
        p.xi = om.points[k];
        p.value = om.values[k];
        p.omega = om.phases[k];
        p.cls = classify(s, p.xi, opts.classify);
        if (p.cls.verdict == Verdict::Indeterminate) any_indeterminate = true;
        if (p.cls.verdict == Verdict::NotPositiveHomogeneousType) any_failure = true;
        a.points.push_back(std::move(p));
    }
    if (any_indeterminate)
        a.verdict = Verdict::Indeterminate;
    else if (any_failure)
        a.verdict = Verdict::NotPositiveHomogeneousType;
    else
        a.verdict = Verdict::PositiveHomogeneousType;
    if (a.succeeded()) {
        Rational mu = a.points.front().cls.mu;
        for (const auto& p : a.points)
            if (p.cls.mu < mu) mu = p.cls.mu;
        a.mu_phi = mu;
        for (std::size_t k = 0; k < a.points.size(); ++k)
            if (a.points[k].cls.mu == mu) a.minimal.push_back(k);
    }
    return a;
}

}  // namespace latconv
