#include "latconv/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "latconv/attractor.hpp"
#include "latconv/errors.hpp"
#include "latconv/examples.hpp"
#include "latconv/expansion.hpp"
#include "latconv/fft.hpp"
#include "latconv/homogeneous.hpp"
#include "latconv/lattice.hpp"
#include "latconv/legendre.hpp"
#include "latconv/symbol.hpp"
#include "latconv/verify.hpp"

namespace latconv::cli {

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

long parse_long(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw UsageError("invalid integer in " + what + ": '" + s + "'");
    return v;
}

double parse_double(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size() || !std::isfinite(v)) throw UsageError("invalid number in " + what + ": '" + s + "'");
    return v;
}

std::vector<double> parse_vector(const std::string& s, const std::string& what) {
    std::vector<double> out;
    for (const auto& t : split(s, ',')) out.push_back(parse_double(t, what));
    return out;
}

// "8,16,32", "a:b", "a:b:step" or "a:b:xk" (geometric).
std::vector<long> parse_n_list(const std::string& s) {
    std::vector<long> out;
    for (const auto& item : split(s, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() == 1) {
            out.push_back(parse_long(parts[0], "--n"));
        } else if (parts.size() == 2 || parts.size() == 3) {
            const long a = parse_long(parts[0], "--n"), b = parse_long(parts[1], "--n");
            if (a > b) throw UsageError("empty range in --n: '" + item + "'");
            if (parts.size() == 3 && !parts[2].empty() && parts[2][0] == 'x') {
                const long k = parse_long(parts[2].substr(1), "--n");
                if (k < 2 || a < 1) throw UsageError("geometric range needs factor >= 2 and start >= 1");
                for (long n = a; n <= b; n *= k) out.push_back(n);
            } else {
                const long step = parts.size() == 3 ? parse_long(parts[2], "--n") : 1;
                if (step < 1) throw UsageError("range step must be positive");
                for (long n = a; n <= b; n += step) out.push_back(n);
            }
        } else {
            throw UsageError("malformed --n item '" + item + "'");
        }
    }
    for (long n : out)
        if (n < 1) throw UsageError("n values must be positive");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// "a:b,c:d" -> inclusive box
Box parse_window(const std::string& s) {
    Box b;
    for (const auto& item : split(s, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) throw UsageError("malformed --window item '" + item + "' (expected a:b)");
        const long lo = parse_long(parts[0], "--window"), hi = parse_long(parts[1], "--window");
        if (lo > hi) throw UsageError("empty window range '" + item + "'");
        b.lo.push_back(lo);
        b.hi.push_back(hi);
    }
    return b;
}

// "x1,x2;x1,x2"
std::vector<std::vector<double>> parse_points(const std::string& s, const std::string& what) {
    std::vector<std::vector<double>> out;
    for (const auto& item : split(s, ';')) out.push_back(parse_vector(item, what));
    return out;
}

struct Common {
    std::string example;
    std::string input;
    std::string out_dir;
    int threads = 0;
    double tol = kOmegaTol;
};

void add_source(CLI::App* sub, Common& c) {
    auto* ex = sub->add_option("--example", c.example, "builtin example name");
    auto* in = sub->add_option("--input", c.input, "function file");
    ex->excludes(in);
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--out", c.out_dir, "output directory (default: stdout)");
    sub->add_option("--threads", c.threads, "thread count")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", c.tol, "tolerance for |phi^| = 1 detection")->check(CLI::PositiveNumber);
}

LatticeFunction load(const Common& c) {
    if (c.example.empty() == c.input.empty()) throw UsageError("exactly one of --example or --input is required");
    if (!c.example.empty()) return builtin_example(c.example);
    return read_function_file(c.input);
}

// Writes to <out_dir>/<name> when an output directory is set, else to `out`.
class Sink {
public:
    Sink(const Common& c, std::ostream& out) : dir_(c.out_dir), out_(out) {
        if (!dir_.empty()) std::filesystem::create_directories(dir_);
    }
    bool to_files() const { return !dir_.empty(); }

    template <class F>
    void emit(const std::string& name, F&& write) {
        if (dir_.empty()) {
            write(out_);
            return;
        }
        const auto path = std::filesystem::path(dir_) / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot write " + path.string());
        write(f);
        out_ << "wrote " << path.string() << '\n';
    }

private:
    std::string dir_;
    std::ostream& out_;
};

void write_grid_csv(std::ostream& o, const DenseGrid& g) {
    const int d = g.box.dim();
    for (int j = 1; j <= d; ++j) o << 'x' << '_' << j << ',';
    o << "re,im\n";
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        const LatticePoint x = g.point(i);
        for (int j = 0; j < d; ++j) o << x[j] << ',';
        o << fmt(g.values[i].real()) << ',' << fmt(g.values[i].imag()) << '\n';
    }
}

// 8-bit binary graymap. Rows follow axis 0, columns axis 1; d = 1 gives a single row.
void write_graymap(Sink& sink, const std::string& stem, const DenseGrid& g, const std::string& mode) {
    const int d = g.box.dim();
    if (d > 2) throw UsageError("graymap output needs d <= 2");
    std::vector<double> v(g.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mode == "abs" ? std::abs(g.values[i]) : g.values[i].real();
    double lo = v.empty() ? 0 : *std::min_element(v.begin(), v.end());
    double hi = v.empty() ? 0 : *std::max_element(v.begin(), v.end());
    const std::size_t rows = d == 2 ? static_cast<std::size_t>(g.box.extent(0)) : 1;
    const std::size_t cols = static_cast<std::size_t>(g.box.extent(d - 1));
    sink.emit(stem + ".pgm", [&](std::ostream& o) {
        o << "P5\n" << cols << ' ' << rows << "\n255\n";
        for (double x : v) {
            const double u = hi > lo ? (x - lo) / (hi - lo) : 0.0;
            o.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * u))));
        }
    });
    sink.emit(stem + ".txt", [&](std::ostream& o) {
        o << "mode " << mode << "\nmin " << fmt(lo) << "\nmax " << fmt(hi) << '\n';
        for (int j = 0; j < d; ++j)
            o << (d == 2 && j == 0 ? "rows" : "cols") << " axis " << j + 1 << ' ' << g.box.lo[j] << ' ' << g.box.hi[j]
              << '\n';
        o << "gray = round(255 (value - min) / (max - min))\n";
    });
}

int verdict_code(const BoundReport& r) { return is_violation(r.verdict) ? kVerdictFailure : kOk; }

// ---- analyze ----

void write_analysis(std::ostream& o, const SpectralAnalysis& a) {
    const int d = a.normalized.dim();
    o << "# verdict: " << to_string(a.verdict) << '\n';
    o << "scale = " << fmt(a.scale.real()) << ' ' << fmt(a.scale.imag()) << '\n';
    o << "points = " << a.points.size() << '\n';
    if (a.mu_phi) {
        o << "mu_phi = " << a.mu_phi->to_string() << '\n';
        o << "minimal =";
        for (std::size_t q : a.minimal) o << ' ' << q;
        o << '\n';
    }
    for (const auto& w : a.warnings) o << "warning: " << w << '\n';
    for (std::size_t q = 0; q < a.points.size(); ++q) {
        const auto& p = a.points[q];
        o << "\n[point " << q << "]\n";
        o << "xi =";
        for (double v : p.xi) o << ' ' << fmt(v);
        o << "\nvalue = " << fmt(p.value.real()) << ' ' << fmt(p.value.imag()) << '\n';
        o << "omega = " << fmt(p.omega) << '\n';
        o << "verdict = " << to_string(p.cls.verdict) << '\n';
        if (!p.cls.diagnostic.empty()) o << "diagnostic = " << p.cls.diagnostic << '\n';
        if (!p.cls.success()) continue;
        o << "alpha =";
        for (double v : p.cls.alpha) o << ' ' << fmt(v);
        o << "\nm =";
        for (int w : p.cls.P.weights()) o << ' ' << w;
        o << "\nE =";
        const auto& E = p.cls.P.exponent();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) o << ' ' << fmt(E(i, j));
        o << "\nmu = " << p.cls.mu.to_string() << '\n';
        o << "P:\n";
        for (const auto& [beta, c] : p.cls.P.coefficients().terms()) {
            o << "  ";
            for (int b : beta) o << b << ',';
            o << fmt(c.real()) << ',' << fmt(c.imag()) << '\n';
        }
    }
}

void write_omega_csv(std::ostream& o, const SpectralAnalysis& a) {
    const int d = a.normalized.dim();
    for (int j = 1; j <= d; ++j) o << "xi_" << j << ',';
    o << "re,im,omega\n";
    for (const auto& p : a.points) {
        for (double v : p.xi) o << fmt(v) << ',';
        o << fmt(p.value.real()) << ',' << fmt(p.value.imag()) << ',' << fmt(p.omega) << '\n';
    }
}

SpectralAnalysis run_analysis(const LatticeFunction& f, const Common& c) {
    AnalyzeOptions opts;
    opts.tol = c.tol;
    return analyze(f, opts);
}

int cmd_analyze(const Common& c, std::ostream& out) {
    const SpectralAnalysis a = run_analysis(load(c), c);
    Sink sink(c, out);
    sink.emit("analysis.txt", [&](std::ostream& o) { write_analysis(o, a); });
    if (!sink.to_files()) out << '\n';
    sink.emit("omega.csv", [&](std::ostream& o) { write_omega_csv(o, a); });
    return kOk;
}

// ---- power ----

WindowedPower power_on_window(const LatticeFunction& f, long n, PowerMethod method, const std::optional<Box>& window,
                              const Common& c) {
    if (!window) return {power_dense(f, n, method), ""};
    const SpectralAnalysis a = run_analysis(f, c);
    return power_window(f, &a, n, *window, method);
}

int cmd_power(const Common& c, const std::string& n_spec, const std::string& window_spec, const std::string& method_s,
              const std::string& graymap, std::ostream& out) {
    const LatticeFunction f = load(c);
    const auto ns = parse_n_list(n_spec);
    const PowerMethod method = parse_power_method(method_s);
    std::optional<Box> window;
    if (!window_spec.empty()) {
        window = parse_window(window_spec);
        if (window->dim() != f.dim()) throw UsageError("--window dimension does not match the input");
    }
    if (graymap != "none" && c.out_dir.empty()) throw UsageError("--graymap needs --out");
    Sink sink(c, out);
    for (long n : ns) {
        const WindowedPower r = power_on_window(f, n, method, window, c);
        const std::string stem = "power_n" + std::to_string(n);
        sink.emit(stem + ".csv", [&](std::ostream& o) {
            o << "# n: " << n << '\n';
            if (!r.note.empty()) o << "# note: " << r.note << '\n';
            write_grid_csv(o, r.grid);
        });
        if (graymap != "none") write_graymap(sink, stem, r.grid, graymap);
    }
    return kOk;
}

// ---- llt ----

int cmd_llt(const Common& c, const std::string& n_spec, const std::string& window_spec, const std::string& graymap,
            std::ostream& out) {
    const LatticeFunction f = load(c);
    const auto ns = parse_n_list(n_spec);
    if (graymap != "none" && c.out_dir.empty()) throw UsageError("--graymap needs --out");
    const SpectralAnalysis a = run_analysis(f, c);
    Sink sink(c, out);
    if (!a.succeeded()) {
        BoundReport r;
        r.kind = "llt-error";
        r.verdict = "not-applicable";
        r.note = std::string("Omega(phi) is not entirely of positive homogeneous type (") + to_string(a.verdict) + ")";
        sink.emit("llt_report.csv", [&](std::ostream& o) { write_report_csv(o, r); });
        return kOk;
    }
    const BoundReport r = llt_report(f, ns);
    sink.emit("llt_report.csv", [&](std::ostream& o) { write_report_csv(o, r); });
    if (!window_spec.empty() || sink.to_files()) {
        for (long n : ns) {
            Box w = window_spec.empty() ? llt_error(a, n).window : parse_window(window_spec);
            if (w.dim() != f.dim()) throw UsageError("--window dimension does not match the input");
            const DenseGrid g = llt_approx_grid(a, n, w);
            const std::string stem = "llt_n" + std::to_string(n);
            sink.emit(stem + ".csv", [&](std::ostream& o) {
                o << "# n: " << n << '\n';
                write_grid_csv(o, g);
            });
            if (graymap != "none") write_graymap(sink, stem, g, graymap);
        }
    }
    return verdict_code(r);
}

// ---- polynomial source for attractor / legendre ----

HomogeneousPolynomial polynomial_source(const Common& c, const std::string& poly_path, long point) {
    if (!poly_path.empty()) {
        if (!c.example.empty() || !c.input.empty()) throw UsageError("--poly excludes --example and --input");
        std::ifstream in(poly_path);
        if (!in) throw UsageError("cannot open " + poly_path);
        return read_polynomial_csv(in);
    }
    const SpectralAnalysis a = run_analysis(load(c), c);
    std::size_t q = 0;
    if (point >= 0) {
        q = static_cast<std::size_t>(point);
        if (q >= a.points.size()) throw UsageError("--point out of range");
    } else if (!a.minimal.empty()) {
        q = a.minimal.front();
    }
    if (a.points.empty() || !a.points[q].cls.success())
        throw UsageError("the selected point of Omega is not of positive homogeneous type");
    return a.points[q].cls.P;
}

int cmd_attractor(const Common& c, const std::string& poly, long point, double t, const std::string& window_spec,
                  const std::string& shift_spec, const std::string& graymap, std::ostream& out) {
    if (!(t > 0)) throw UsageError("--t must be positive");
    const HomogeneousPolynomial P = polynomial_source(c, poly, point);
    const Box w = parse_window(window_spec);
    if (w.dim() != P.dim()) throw UsageError("--window dimension does not match P");
    std::vector<double> shift;
    if (!shift_spec.empty()) shift = parse_vector(shift_spec, "--shift");
    if (graymap != "none" && c.out_dir.empty()) throw UsageError("--graymap needs --out");
    const AttractorGrid H = attractor_grid(P, t, w, shift);
    Sink sink(c, out);
    sink.emit("attractor.csv", [&](std::ostream& o) {
        o << "# t: " << fmt(t) << '\n';
        write_grid_csv(o, H.values);
    });
    if (graymap != "none") write_graymap(sink, "attractor", H.values, graymap);
    return kOk;
}

int cmd_legendre(const Common& c, const std::string& poly, long point, const std::string& at, int samples,
                 std::ostream& out) {
    const HomogeneousPolynomial P = polynomial_source(c, poly, point);
    const ConjugateEvaluator ev(P);
    const int d = P.dim();
    std::vector<std::vector<double>> xs;
    if (!at.empty()) {
        xs = parse_points(at, "--at");
    } else {
        for (const auto& s : sphere_samples(d, samples, 7))
            for (double r : {0.5, 1.0, 2.0}) {
                std::vector<double> x(d);
                for (int j = 0; j < d; ++j) x[j] = r * s[j];
                xs.push_back(x);
            }
    }
    for (const auto& x : xs)
        if (static_cast<int>(x.size()) != d) throw UsageError("--at point dimension does not match P");
    Sink sink(c, out);
    sink.emit("legendre.csv", [&](std::ostream& o) {
        for (int j = 1; j <= d; ++j) o << "x_" << j << ',';
        o << "value";
        for (int j = 1; j <= d; ++j) o << ",argmax_" << j;
        o << '\n';
        for (const auto& x : xs) {
            const ConjugateResult r = ev.evaluate(x);
            for (double v : x) o << fmt(v) << ',';
            o << fmt(r.value);
            for (double v : r.argmax) o << ',' << fmt(v);
            o << '\n';
        }
    });
    return kOk;
}

// ---- bounds / stability / theta ----

std::vector<LatticePoint> parse_lattice_vectors(const std::string& s) {
    std::vector<LatticePoint> out;
    for (const auto& item : split(s, ';')) {
        LatticePoint v;
        for (const auto& t : split(item, ',')) v.push_back(parse_long(t, "--v"));
        out.push_back(v);
    }
    return out;
}

int cmd_bounds(const Common& c, const std::string& kind, const std::string& n_spec, int N, const std::string& v_spec,
               const std::string& beta_spec, std::ostream& out) {
    const LatticeFunction f = load(c);
    const auto ns = parse_n_list(n_spec);
    BoundReport r;
    if (kind == "gaussian") {
        r = gaussian_bound_fit(f, ns);
    } else if (kind == "subexp") {
        r = subexp_bound_fit(f, ns, N);
    } else if (kind == "sup") {
        r = sup_decay_report(f, ns);
    } else if (kind == "derivative") {
        if (v_spec.empty() || beta_spec.empty()) throw UsageError("derivative bounds need --v and --beta");
        const auto v = parse_lattice_vectors(v_spec);
        std::vector<int> beta;
        for (const auto& t : split(beta_spec, ',')) beta.push_back(static_cast<int>(parse_long(t, "--beta")));
        for (const auto& vj : v)
            if (static_cast<int>(vj.size()) != f.dim()) throw UsageError("--v vector dimension does not match the input");
        if (beta.size() != v.size()) throw UsageError("--beta needs one order per --v vector");
        r = derivative_bound_fit(f, v, beta, ns);
    } else {
        throw UsageError("unknown --kind '" + kind + "' (gaussian, subexp, derivative, sup)");
    }
    Sink sink(c, out);
    sink.emit("bounds_" + kind + ".csv", [&](std::ostream& o) { write_report_csv(o, r); });
    return verdict_code(r);
}

int cmd_stability(const Common& c, long n_max, const std::string& method_s, std::ostream& out) {
    if (n_max < 2) throw UsageError("--nmax must be >= 2");
    const LatticeFunction f = load(c);
    const BoundReport r = stability_report(f, n_max, parse_power_method(method_s));
    Sink sink(c, out);
    sink.emit("stability.csv", [&](std::ostream& o) { write_report_csv(o, r); });
    return verdict_code(r);
}

int cmd_theta(const Common& c, const std::string& n_spec, const std::string& window_spec, long check_nmax,
              std::ostream& out) {
    const LatticeFunction f = load(c);
    if (!is_probability(f)) throw UsageError("theta needs a probability distribution");
    const WalkProfile p = walk_profile(f);
    const auto ns = parse_n_list(n_spec);
    const Box w = parse_window(window_spec);
    if (w.dim() != f.dim()) throw UsageError("--window dimension does not match the input");
    std::string verdict = "reported";
    if (check_nmax > 0) verdict = support_periodicity_check(f, check_nmax) ? "support-inclusion-holds" : "fail";
    Sink sink(c, out);
    sink.emit("theta.csv", [&](std::ostream& o) {
        o << "# verdict: " << verdict << '\n';
        o << "# omega_points: " << p.omega.size() << '\n';
        o << "n";
        for (int j = 1; j <= f.dim(); ++j) o << ",x_" << j;
        o << ",theta,theta_cosine\n";
        const DenseGrid g(w);
        for (long n : ns)
            for (std::size_t i = 0; i < g.values.size(); ++i) {
                const LatticePoint x = g.point(i);
                o << n;
                for (auto v : x) o << ',' << v;
                o << ',' << fmt(theta(p, n, x)) << ',' << fmt(theta_cosine(p, n, x)) << '\n';
            }
    });
    return verdict == "fail" ? kVerdictFailure : kOk;
}

int cmd_examples(const std::string& action, const std::string& name, const Common& c, std::ostream& out) {
    if (action == "list") {
        for (const auto& e : builtin_examples()) out << e.name << ',' << e.description << '\n';
        return kOk;
    }
    if (action == "emit") {
        if (name.empty()) throw UsageError("examples emit needs a name");
        const LatticeFunction f = builtin_example(name);
        if (c.out_dir.empty()) {
            write_function(out, f);
        } else {
            Sink sink(c, out);
            std::string file = name;
            std::replace_if(file.begin(), file.end(), [](char ch) { return !std::isalnum(static_cast<unsigned char>(ch)); }, '_');
            sink.emit(file + ".txt", [&](std::ostream& o) { write_function(o, f); });
        }
        return kOk;
    }
    throw UsageError("examples action must be 'list' or 'emit'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Convolution powers of finitely supported functions on Z^d", "latconv"};
    app.require_subcommand(1, 1);

    Common c;
    std::string n_spec = "32:256:x2", window, method = "fast", graymap = "none", poly, at, shift, kind = "gaussian",
                v_spec, beta_spec, action, name;
    long n_max = 512, point = -1, check_nmax = 0;
    double t = 1.0;
    int N = 4, samples = 20;
    auto graymap_check = CLI::IsMember({"none", "re", "abs"});
    auto method_check = CLI::IsMember({"direct", "fast", "spectral"});

    auto* s_analyze = app.add_subcommand("analyze", "locate Omega(phi) and classify each point");
    add_source(s_analyze, c);
    add_common(s_analyze, c);

    auto* s_power = app.add_subcommand("power", "convolution powers as CSV or graymap");
    add_source(s_power, c);
    add_common(s_power, c);
    s_power->add_option("--n", n_spec, "n list or range (a:b, a:b:s, a:b:xk)")->required();
    s_power->add_option("--window", window, "output window a:b,...");
    s_power->add_option("--method", method, "direct|fast|spectral")->check(method_check);
    s_power->add_option("--graymap", graymap, "none|re|abs")->check(graymap_check);

    auto* s_llt = app.add_subcommand("llt", "local limit approximation and its error");
    add_source(s_llt, c);
    add_common(s_llt, c);
    s_llt->add_option("--n", n_spec, "n list or range");
    s_llt->add_option("--window", window, "approximation window a:b,...");
    s_llt->add_option("--graymap", graymap, "none|re|abs")->check(graymap_check);

    auto* s_attr = app.add_subcommand("attractor", "H_P^t on a lattice window");
    add_source(s_attr, c);
    add_common(s_attr, c);
    s_attr->add_option("--poly", poly, "polynomial CSV instead of an analyzed input");
    s_attr->add_option("--point", point, "index into Omega (default: first minimal point)");
    s_attr->add_option("--t", t, "time parameter");
    s_attr->add_option("--window", window, "window a:b,...")->required();
    s_attr->add_option("--shift", shift, "shift s_1,...,s_d");
    s_attr->add_option("--graymap", graymap, "none|re|abs")->check(graymap_check);

    auto* s_leg = app.add_subcommand("legendre", "Legendre-Fenchel transform of Re P");
    add_source(s_leg, c);
    add_common(s_leg, c);
    s_leg->add_option("--poly", poly, "polynomial CSV instead of an analyzed input");
    s_leg->add_option("--point", point, "index into Omega (default: first minimal point)");
    s_leg->add_option("--at", at, "query points x1,x2;x1,x2");
    s_leg->add_option("--samples", samples, "sphere directions when --at is absent")->check(CLI::PositiveNumber);

    auto* s_bounds = app.add_subcommand("bounds", "fit pointwise bound constants");
    add_source(s_bounds, c);
    add_common(s_bounds, c);
    s_bounds->add_option("--kind", kind, "gaussian|subexp|derivative|sup");
    s_bounds->add_option("--n", n_spec, "n list or range");
    s_bounds->add_option("--N", N, "polynomial order for subexp")->check(CLI::NonNegativeNumber);
    s_bounds->add_option("--v", v_spec, "lattice vectors v1;v2 for derivative");
    s_bounds->add_option("--beta", beta_spec, "orders b1,b2 for derivative");

    auto* s_stab = app.add_subcommand("stability", "l1 norms of phi^(n) up to n_max");
    add_source(s_stab, c);
    add_common(s_stab, c);
    s_stab->add_option("--nmax", n_max, "largest n");
    s_stab->add_option("--method", method, "direct|fast|spectral")->check(method_check);

    auto* s_theta = app.add_subcommand("theta", "periodicity prefactor for probability inputs");
    add_source(s_theta, c);
    add_common(s_theta, c);
    s_theta->add_option("--n", n_spec, "n list or range")->required();
    s_theta->add_option("--window", window, "window a:b,...")->required();
    s_theta->add_option("--check", check_nmax, "verify support inclusion for n <= value");

    auto* s_ex = app.add_subcommand("examples", "list or emit builtin examples");
    s_ex->add_option("action", action, "list|emit")->required();
    s_ex->add_option("name", name, "example name for emit");
    s_ex->add_option("--out", c.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "latconv: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*s_analyze) return cmd_analyze(c, out);
        if (*s_power) return cmd_power(c, n_spec, window, method, graymap, out);
        if (*s_llt) return cmd_llt(c, n_spec, window, graymap, out);
        if (*s_attr) return cmd_attractor(c, poly, point, t, window, shift, graymap, out);
        if (*s_leg) return cmd_legendre(c, poly, point, at, samples, out);
        if (*s_bounds) return cmd_bounds(c, kind, n_spec, N, v_spec, beta_spec, out);
        if (*s_stab) return cmd_stability(c, n_max, method, out);
        if (*s_theta) return cmd_theta(c, n_spec, window, check_nmax, out);
        if (*s_ex) return cmd_examples(action, name, c, out);
    } catch (const UsageError& e) {
        err << "latconv: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "latconv: malformed function file: " << e.what() << '\n';
        return kUsage;
    } catch (const ResourceError& e) {
        err << "latconv: " << e.what() << '\n';
        return kResource;
    } catch (const PreconditionError& e) {
        err << "latconv: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "latconv: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}

}  // namespace latconv::cli
