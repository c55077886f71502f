#include "latconv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <set>

#include "latconv/attractor.hpp"
#include "latconv/errors.hpp"
#include "latconv/fft.hpp"
#include "latconv/legendre.hpp"

namespace latconv {

namespace {

std::vector<long> sorted_ns(const std::vector<long>& ns) {
    if (ns.empty()) throw PreconditionError("empty n list");
    std::set<long> s(ns.begin(), ns.end());
    if (*s.begin() < 1) throw PreconditionError("n values must be positive");
    return {s.begin(), s.end()};
}

std::map<long, LatticeFunction> direct_powers(const LatticeFunction& f, const std::vector<long>& ns) {
    std::map<long, LatticeFunction> out;
    const std::set<long> want(ns.begin(), ns.end());
    for_each_direct_power(f, ns.back(), [&](long k, const LatticeFunction& p) {
        if (want.count(k)) out.emplace(k, p);
    });
    return out;
}

// max over the top octave (n_max/2, n_max] divided by the max over the one below.
double octave_ratio(const std::vector<long>& ns, const std::vector<double>& vals) {
    const long top = ns.back();
    double hi = 0, lo = 0;
    bool have_lo = false;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (2 * ns[i] > top)
            hi = std::max(hi, vals[i]);
        else if (4 * ns[i] > top) {
            lo = std::max(lo, vals[i]);
            have_lo = true;
        }
    }
    if (!have_lo || lo <= 0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

bool same_alpha_and_P(const SpectralAnalysis& a) {
    const auto& r = a.points.front().cls;
    for (const auto& p : a.points) {
        for (std::size_t j = 0; j < r.alpha.size(); ++j)
            if (std::abs(p.cls.alpha[j] - r.alpha[j]) > 1e-8) return false;
        if ((p.cls.P.coefficients() - r.P.coefficients()).max_abs_coeff() > 1e-8) return false;
    }
    return true;
}

BoundReport not_applicable(const std::string& kind, const SpectralAnalysis& a) {
    BoundReport r;
    r.kind = kind;
    r.verdict = "not-applicable";
    r.note = std::string("Omega(phi) is not entirely of positive homogeneous type (") + to_string(a.verdict) + ")";
    return r;
}

}  // namespace

bool is_violation(const std::string& verdict) {
    return verdict == "unbounded" || verdict == "unstable" || verdict == "unstable-fit" || verdict == "not-decreasing" ||
           verdict == "fail";
}

std::optional<double> BoundReport::constant(const std::string& name) const {
    for (const auto& [k, v] : constants)
        if (k == name) return v;
    return std::nullopt;
}

void write_report_csv(std::ostream& out, const BoundReport& r) {
    char buf[128];
    out << "# verdict: " << r.verdict << '\n' << "# kind: " << r.kind << '\n';
    for (const auto& [k, v] : r.constants) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << "# " << k << ": " << buf << '\n';
    }
    if (!r.note.empty()) out << "# note: " << r.note << '\n';
    out << "n,linf,l1,scaled\n";
    for (const auto& row : r.rows) {
        std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g\n", row.n, row.linf, row.l1, row.scaled);
        out << buf;
    }
}

BoundReport sup_decay_report(const LatticeFunction& f, const std::vector<long>& ns_in, long band_from,
                             const PowerOptions& opts) {
    const auto ns = sorted_ns(ns_in);
    const SpectralAnalysis a = analyze(f);
    BoundReport r;
    r.kind = "sup-decay";
    if (!a.succeeded()) {
        r = not_applicable(r.kind, a);
        for (long n : ns) {
            const DenseGrid g = power_dense(a.normalized, n, PowerMethod::Fast, opts);
            r.rows.push_back({n, norm_linf(g), norm_l1(g), 0.0});
        }
        return r;
    }
    const double mu = a.mu_phi->to_double();
    for (long n : ns) {
        const DenseGrid g = power_dense(a.normalized, n, PowerMethod::Fast, opts);
        const double linf = norm_linf(g);
        r.rows.push_back({n, linf, norm_l1(g), std::pow(static_cast<double>(n), mu) * linf});
    }
    if (band_from <= 0) band_from = (ns.back() + 1) / 2;
    double mx = 0, mn = std::numeric_limits<double>::infinity();
    for (const auto& row : r.rows)
        if (row.n >= band_from) {
            mx = std::max(mx, row.scaled);
            mn = std::min(mn, row.scaled);
        }
    const double ratio = mn > 0 ? mx / mn : std::numeric_limits<double>::infinity();
    r.constants = {{"mu", mu}, {"band_from", static_cast<double>(band_from)}, {"band_ratio", ratio}};
    r.pass = ratio <= 2.0;
    r.verdict = r.pass ? "bounded-band" : "unbounded";
    return r;
}

Box concentration_box(const SpectralAnalysis& a, long n) {
    if (a.points.empty() || !a.succeeded()) throw PreconditionError("concentration_box: analysis did not succeed");
    const int d = a.normalized.dim();
    const double nd = static_cast<double>(n);
    std::optional<Box> box;
    for (const auto& p : a.points) {
        Box b{LatticePoint(d), LatticePoint(d)};
        const Eigen::MatrixXd& A = p.cls.P.basis();
        for (int j = 0; j < d; ++j) {
            double h = 1.0;
            for (int k = 0; k < d; ++k) h += 16.0 * std::abs(A(j, k)) * std::pow(nd, 1.0 / (2.0 * p.cls.P.weights()[k]));
            b.lo[j] = static_cast<std::int64_t>(std::floor(nd * p.cls.alpha[j] - h));
            b.hi[j] = static_cast<std::int64_t>(std::ceil(nd * p.cls.alpha[j] + h));
        }
        box = box ? box->hull(b) : b;
    }
    return *box;
}

namespace {

Box support_box_of_power(const LatticeFunction& f, long n) {
    Box b = f.bounding_box();
    for (auto& v : b.lo) v *= n;
    for (auto& v : b.hi) v *= n;
    return b;
}

bool fits_cap(const Box& b, const PowerOptions& opts) {
    double cells = 1;
    for (int j = 0; j < b.dim(); ++j) cells *= static_cast<double>(fft::good_size(static_cast<std::size_t>(b.extent(j))));
    return cells * sizeof(cplx) <= static_cast<double>(opts.memory_cap_bytes);
}

DenseGrid restrict_to(const DenseGrid& g, const Box& w) {
    DenseGrid out(w);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = g.at(out.point(i));
    return out;
}

}  // namespace

WindowedPower power_window(const LatticeFunction& f, const SpectralAnalysis* a, long n, const Box& window,
                           PowerMethod method, const PowerOptions& opts) {
    if (window.dim() != f.dim()) throw PreconditionError("power_window: dimension mismatch");
    if (method == PowerMethod::Direct || fits_cap(support_box_of_power(f, n), opts))
        return {restrict_to(power_dense(f, n, method, opts), window), ""};
    if (a == nullptr || !a->succeeded())
        throw ResourceError("support box of phi^(n) exceeds the memory cap and phi is not of positive homogeneous type");
    const Box full = support_box_of_power(f, n);
    const Box H = window.hull(concentration_box(*a, n));
    std::vector<std::size_t> period(H.dim());
    std::string note = "periodized transform, period";
    for (int j = 0; j < H.dim(); ++j) {
        period[j] = std::min(fft::good_size(2 * static_cast<std::size_t>(H.extent(j))),
                             fft::good_size(static_cast<std::size_t>(full.extent(j))));
        note += ' ' + std::to_string(period[j]);
    }
    return {periodized_power(f, n, window, period, opts), note};
}

LltError llt_error(const SpectralAnalysis& a, long n, const PowerOptions& opts) {
    if (!a.succeeded()) throw PreconditionError("llt_error: analysis did not succeed");
    const int d = a.normalized.dim();
    const Box full = support_box_of_power(a.normalized, n);
    const bool whole = fits_cap(full, opts);
    std::optional<Box> acc;
    if (whole) acc = full;
    const double nd = static_cast<double>(n);
    for (std::size_t q : a.minimal) {
        const auto& c = a.points[q].cls;
        const Eigen::MatrixXd& A = c.P.basis();
        Box b{LatticePoint(d), LatticePoint(d)};
        for (int j = 0; j < d; ++j) {
            double h = 0;
            for (int k = 0; k < d; ++k) h += std::abs(A(j, k)) * 6.0 * std::pow(nd, 1.0 / (2.0 * c.P.weights()[k]));
            b.lo[j] = static_cast<std::int64_t>(std::floor(nd * c.alpha[j] - h));
            b.hi[j] = static_cast<std::int64_t>(std::ceil(nd * c.alpha[j] + h));
        }
        acc = acc ? acc->hull(b) : b;
    }
    const Box window = *acc;
    const DenseGrid D = power_window(a.normalized, &a, n, window, PowerMethod::Fast, opts).grid;
    const DenseGrid approx = llt_approx_grid(a, n, window, opts);
    LltError e;
    e.n = n;
    e.window = window;
    for (std::size_t i = 0; i < approx.values.size(); ++i) {
        e.sup_error = std::max(e.sup_error, std::abs(D.values[i] - approx.values[i]));
    }
    e.scaled_error = std::pow(nd, a.mu_phi->to_double()) * e.sup_error;
    return e;
}

BoundReport llt_report(const LatticeFunction& f, const std::vector<long>& ns_in, const PowerOptions& opts) {
    const auto ns = sorted_ns(ns_in);
    const SpectralAnalysis a = analyze(f);
    if (!a.succeeded()) return not_applicable("llt-error", a);
    BoundReport r;
    r.kind = "llt-error";
    for (long n : ns) {
        const LltError e = llt_error(a, n, opts);
        r.rows.push_back({n, e.sup_error, 0.0, e.scaled_error});
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < r.rows.size(); ++i)
        if (r.rows[i].scaled > r.rows[i - 1].scaled) decreasing = false;
    const double ratio = r.rows.back().scaled / r.rows.front().scaled;
    r.constants = {{"mu", a.mu_phi->to_double()}, {"last_over_first", ratio}};
    if (r.rows.size() == 1) {
        r.pass = true;
        r.verdict = "single-n";
        return r;
    }
    r.pass = decreasing;
    r.verdict = r.pass ? "decreasing" : "not-decreasing";
    return r;
}

BoundReport gaussian_bound_fit(const LatticeFunction& f, const std::vector<long>& ns_in) {
    const auto ns = sorted_ns(ns_in);
    const SpectralAnalysis a = analyze(f);
    if (!a.succeeded()) return not_applicable("gaussian-bound", a);
    BoundReport r;
    r.kind = "gaussian-bound";
    if (!same_alpha_and_P(a)) {
        r.verdict = "hypothesis-violation";
        r.note = "points of Omega carry distinct drifts or polynomials; use the sub-exponential fit";
        return r;
    }
    const auto& cls = a.points.front().cls;
    const double mu = cls.mu.to_double();
    const ConjugateEvaluator ev(cls.P);
    const int d = a.normalized.dim();
    const auto powers = direct_powers(a.normalized, ns);

    // log(|phi^(n)(x)| n^mu) and n R^#((x - n alpha)/n) per entry.
    struct Sample {
        double logv, nr;
    };
    std::vector<std::vector<Sample>> samples(ns.size());
    std::vector<double> y(d);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double nd = static_cast<double>(ns[i]);
        const LatticeFunction& p = powers.at(ns[i]);
        for (std::size_t k = 0; k < p.size(); ++k) {
            const auto x = p.coords(k);
            for (int j = 0; j < d; ++j) y[j] = (static_cast<double>(x[j]) - nd * cls.alpha[j]) / nd;
            samples[i].push_back({std::log(std::abs(p.value(k))) + mu * std::log(nd), nd * ev.fast(y)});
        }
    }
    auto S_of = [&](double M) {
        std::vector<double> out(ns.size(), -std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < ns.size(); ++i)
            for (const auto& s : samples[i]) out[i] = std::max(out[i], s.logv + M * s.nr);
        for (auto& v : out) v = std::exp(v);
        return out;
    };
    double bestM = 0, bestC = 0, bestRatio = 0;
    std::vector<double> bestS;
    for (int k = 0; k <= 10; ++k) {
        const double M = std::ldexp(1.0, -k);
        const auto S = S_of(M);
        const double C = *std::max_element(S.begin(), S.end());
        const double ratio = octave_ratio(ns, S);
        if (std::isfinite(C) && ratio <= 1.5) {
            bestM = M;
            bestC = C;
            bestRatio = ratio;
            bestS = S;
            break;
        }
    }
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const LatticeFunction& p = powers.at(ns[i]);
        r.rows.push_back({ns[i], norm_linf(p), norm_l1(p), bestS.empty() ? 0.0 : bestS[i]});
    }
    if (bestS.empty()) {
        r.verdict = "unstable-fit";
        r.note = "no M in {1, 1/2, ..., 2^-10} gives a stable constant";
        return r;
    }
    r.constants = {{"mu", mu}, {"M", bestM}, {"C", bestC}, {"stability_ratio", bestRatio}};
    r.verdict = "fitted";
    r.pass = true;
    return r;
}

BoundReport subexp_bound_fit(const LatticeFunction& f, const std::vector<long>& ns_in, int N) {
    if (N < 0) throw PreconditionError("subexp_bound_fit: N must be non-negative");
    const auto ns = sorted_ns(ns_in);
    const SpectralAnalysis a = analyze(f);
    if (!a.succeeded()) return not_applicable("subexp-bound", a);
    BoundReport r;
    r.kind = "subexp-bound";
    const int d = a.normalized.dim();
    const auto powers = direct_powers(a.normalized, ns);
    std::vector<double> Cn(ns.size(), 0.0);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double nd = static_cast<double>(ns[i]);
        std::vector<Eigen::MatrixXd> Tq;
        std::vector<double> wq;
        for (const auto& pt : a.points) {
            Tq.push_back(pt.cls.P.group_matrix(1.0 / nd).transpose());
            wq.push_back(std::pow(nd, -pt.cls.mu.to_double()));
        }
        const LatticeFunction& p = powers.at(ns[i]);
        Eigen::VectorXd y(d);
        for (std::size_t k = 0; k < p.size(); ++k) {
            const auto x = p.coords(k);
            double denom = 0;
            for (std::size_t q = 0; q < a.points.size(); ++q) {
                for (int j = 0; j < d; ++j) y[j] = static_cast<double>(x[j]) - nd * a.points[q].cls.alpha[j];
                denom += wq[q] * std::pow(1.0 + (Tq[q] * y).norm(), -N);
            }
            Cn[i] = std::max(Cn[i], std::abs(p.value(k)) / denom);
        }
        r.rows.push_back({ns[i], norm_linf(p), norm_l1(p), Cn[i]});
    }
    const double C = *std::max_element(Cn.begin(), Cn.end());
    const double ratio = octave_ratio(ns, Cn);
    r.constants = {{"N", static_cast<double>(N)}, {"C", C}, {"stability_ratio", ratio}};
    r.pass = std::isfinite(C) && ratio <= 1.5;
    r.verdict = r.pass ? "fitted" : "unstable-fit";
    return r;
}

BoundReport stability_report(const LatticeFunction& f, long n_max, PowerMethod method, const PowerOptions& opts) {
    if (n_max < 2) throw PreconditionError("stability_report: n_max must be >= 2");
    std::set<long> nset{n_max, std::max(1L, n_max / 32)};
    for (long n = 1; n <= n_max; n *= 2) nset.insert(n);
    const std::vector<long> ns(nset.begin(), nset.end());
    BoundReport r;
    r.kind = "stability";
    std::map<long, double> l1;
    if (method == PowerMethod::Direct) {
        for_each_direct_power(f, n_max, [&](long k, const LatticeFunction& p) {
            if (nset.count(k)) {
                l1[k] = norm_l1(p);
                r.rows.push_back({k, norm_linf(p), l1[k], l1[k]});
            }
        });
    } else {
        for (long n : ns) {
            const DenseGrid g = power_dense(f, n, method, opts);
            l1[n] = norm_l1(g);
            r.rows.push_back({n, norm_linf(g), l1[n], l1[n]});
        }
    }
    double early = 0, late = 0;
    for (const auto& [n, v] : l1) {
        if (2 * n <= n_max) early = std::max(early, v);
        if (2 * n >= n_max) late = std::max(late, v);
    }
    const double plateau = late / early;
    const double growth = l1.at(n_max) / l1.at(std::max(1L, n_max / 32));
    r.constants = {{"plateau_ratio", plateau}, {"growth_ratio", growth}, {"max_l1", std::max(early, late)}};
    if (growth >= 2.0)
        r.verdict = "unstable";
    else if (plateau <= 1.02)
        r.verdict = "stable";
    else
        r.verdict = "inconclusive";
    r.pass = r.verdict == "stable";
    return r;
}

LatticeFunction space_diff(const LatticeFunction& psi, const LatticePoint& w) {
    if (static_cast<int>(w.size()) != psi.dim()) throw PreconditionError("space_diff: dimension mismatch");
    LatticePoint mw(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) mw[j] = -w[j];
    return subtract(translate(psi, mw), psi);
}

LatticeFunction space_diff_multi(const LatticeFunction& psi, const std::vector<LatticePoint>& v,
                                 const std::vector<int>& beta) {
    if (v.size() != beta.size()) throw PreconditionError("space_diff_multi: v and beta lengths differ");
    LatticeFunction out = psi;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (beta[j] < 0) throw PreconditionError("space_diff_multi: negative order");
        for (int k = 0; k < beta[j]; ++k) out = space_diff(out, v[j]);
    }
    return out;
}

LatticeFunction time_diff(const LatticeFunction& f, const SpectralAnalysis& a, std::size_t point, long l,
                          const LatticeFunction& psi) {
    if (point >= a.points.size()) throw PreconditionError("time_diff: no such point of Omega");
    if (l < 1) throw PreconditionError("time_diff: l must be >= 1");
    if (psi.dim() != f.dim()) throw PreconditionError("time_diff: dimension mismatch");
    const auto& pt = a.points[point];
    const int d = f.dim();
    LatticePoint shift(d);
    for (int j = 0; j < d; ++j) {
        const double v = static_cast<double>(l) * pt.cls.alpha[j];
        const double r = std::round(v);
        if (std::abs(v - r) > 1e-9) throw PreconditionError("time_diff: l alpha is not a lattice point");
        shift[j] = -static_cast<std::int64_t>(r);
    }
    const cplx value = SymbolView(f).evaluate(pt.xi);
    const LatticeFunction kernel = translate(power(f, l), shift).scaled(std::pow(value, -static_cast<double>(l)));
    return subtract(psi, convolve(kernel, psi));
}

BoundReport derivative_bound_fit(const LatticeFunction& f, const std::vector<LatticePoint>& v,
                                 const std::vector<int>& beta, const std::vector<long>& ns_in) {
    const auto ns = sorted_ns(ns_in);
    const SpectralAnalysis a = analyze(f);
    if (!a.succeeded()) return not_applicable("derivative-bound", a);
    BoundReport r;
    r.kind = "derivative-bound";
    if (a.points.size() != 1) {
        r.verdict = "hypothesis-violation";
        r.note = "Omega(phi) has " + std::to_string(a.points.size()) + " points; the estimate needs a single point";
        return r;
    }
    const auto& cls = a.points.front().cls;
    std::vector<std::vector<double>> vd;
    for (const auto& vj : v) vd.emplace_back(vj.begin(), vj.end());
    if (!p_fitted(cls.P, vd).fitted) {
        r.verdict = "hypothesis-violation";
        r.note = "the collection v is not P-fitted";
        return r;
    }
    MultiIndex b(beta.begin(), beta.end());
    const double expo = cls.mu.to_double() + weighted_degree(b, cls.P.weights()).to_double();
    const auto powers = direct_powers(a.normalized, ns);
    std::vector<double> Cn;
    for (long n : ns) {
        const LatticeFunction D = space_diff_multi(powers.at(n), v, beta);
        const double c = norm_linf(D) * std::pow(static_cast<double>(n), expo);
        Cn.push_back(c);
        r.rows.push_back({n, norm_linf(D), norm_l1(D), c});
    }
    const double C = *std::max_element(Cn.begin(), Cn.end());
    const double ratio = octave_ratio(ns, Cn);
    r.constants = {{"exponent", expo}, {"M", 0.0}, {"C", C}, {"stability_ratio", ratio}};
    r.pass = ratio <= 1.5;
    r.verdict = r.pass ? "fitted" : "unstable-fit";
    return r;
}

bool is_probability(const LatticeFunction& f, double tol) {
    if (f.empty()) return false;
    double sum = 0;
    for (const cplx& v : f.values()) {
        if (std::abs(v.imag()) > tol || v.real() < -tol) return false;
        sum += v.real();
    }
    return std::abs(sum - 1.0) <= tol;
}

int support_rank(const LatticeFunction& f) {
    const int d = f.dim();
    if (f.size() < 2) return 0;
    std::vector<std::vector<__int128>> rows;
    const auto x0 = f.coords(0);
    for (std::size_t k = 1; k < f.size(); ++k) {
        std::vector<__int128> r(d);
        for (int j = 0; j < d; ++j) r[j] = f.coords(k)[j] - x0[j];
        rows.push_back(std::move(r));
    }
    auto gcd128 = [](__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    };
    int rank = 0;
    for (int col = 0; col < d && rank < static_cast<int>(rows.size()); ++col) {
        std::size_t piv = rows.size();
        for (std::size_t i = rank; i < rows.size(); ++i)
            if (rows[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            if (rows[i][col] == 0) continue;
            const __int128 a = rows[rank][col], b = rows[i][col];
            __int128 g = 0;
            for (int j = 0; j < d; ++j) {
                rows[i][j] = rows[i][j] * a - rows[rank][j] * b;
                g = gcd128(g, rows[i][j]);
            }
            if (g > 1)
                for (int j = 0; j < d; ++j) rows[i][j] /= g;
        }
        ++rank;
    }
    return rank;
}

WalkProfile walk_profile(const LatticeFunction& f) {
    if (!is_probability(f)) throw PreconditionError("walk_profile: input is not a probability distribution");
    const int d = f.dim();
    WalkProfile p;
    p.dim = d;
    p.mean.assign(d, 0.0);
    for (std::size_t k = 0; k < f.size(); ++k)
        for (int j = 0; j < d; ++j) p.mean[j] += static_cast<double>(f.coords(k)[j]) * f.value(k).real();
    p.covariance = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t k = 0; k < f.size(); ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                p.covariance(i, j) += (static_cast<double>(f.coords(k)[i]) - p.mean[i]) *
                                      (static_cast<double>(f.coords(k)[j]) - p.mean[j]) * f.value(k).real();
    p.genuinely_d_dimensional = support_rank(f) == d;
    const OmegaSet om = find_omega(SymbolView(f));
    p.omega = om.points;
    p.phases = om.phases;
    p.support_point = f.point(0);
    return p;
}

double theta(const WalkProfile& p, long n, const LatticePoint& x) {
    if (static_cast<int>(x.size()) != p.dim) throw PreconditionError("theta: dimension mismatch");
    cplx s = 0;
    for (std::size_t q = 0; q < p.omega.size(); ++q) {
        double xdot = 0;
        for (int j = 0; j < p.dim; ++j) xdot += static_cast<double>(x[j]) * p.omega[q][j];
        s += std::polar(1.0, static_cast<double>(n) * p.phases[q] - xdot);
    }
    if (std::abs(s.imag()) > 1e-9) throw Error("theta: imaginary residue above 1e-9; Omega is inconsistent");
    const double r = std::round(s.real());
    return std::abs(s.real() - r) <= 1e-9 ? r + 0.0 : s.real();
}

double theta_cosine(const WalkProfile& p, long n, const LatticePoint& x) {
    if (static_cast<int>(x.size()) != p.dim) throw PreconditionError("theta: dimension mismatch");
    double s = 0;
    for (const auto& xi : p.omega) {
        double arg = 0;
        for (int j = 0; j < p.dim; ++j)
            arg += (static_cast<double>(n) * static_cast<double>(p.support_point[j]) - static_cast<double>(x[j])) * xi[j];
        s += std::cos(arg);
    }
    const double r = std::round(s);
    return std::abs(s - r) <= 1e-9 ? r + 0.0 : s;
}

bool support_periodicity_check(const LatticeFunction& f, long n_max) {
    const WalkProfile p = walk_profile(f);
    bool ok = true;
    for_each_direct_power(f, n_max, [&](long k, const LatticeFunction& pw) {
        if (!ok) return;
        for (std::size_t i = 0; i < pw.size() && ok; ++i)
            if (theta(p, k, pw.point(i)) == 0.0) ok = false;
    });
    return ok;
}

}  // namespace latconv
