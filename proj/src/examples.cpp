#include "latconv/examples.hpp"

#include <cmath>
#include <sstream>

#include "latconv/errors.hpp"

namespace latconv {

namespace {

using Entries = std::vector<std::pair<LatticePoint, cplx>>;

LatticeFunction make2(const Entries& e) { return LatticeFunction::from_entries(2, e); }

LatticeFunction intro() {
    const double s3 = std::sqrt(3.0);
    const double c = 1.0 / (22.0 + 2.0 * s3);
    const cplx i(0, 1);
    return make2({
        {{0, 0}, 8.0 * c},
        {{1, 0}, (5.0 + s3) * c},
        {{-1, 0}, (5.0 + s3) * c},
        {{2, 0}, -2.0 * c},
        {{-2, 0}, -2.0 * c},
        {{1, -1}, i * (s3 - 1.0) * c},
        {{-1, -1}, i * (s3 - 1.0) * c},
        {{1, 1}, -i * (s3 - 1.0) * c},
        {{-1, 1}, -i * (s3 - 1.0) * c},
        {{0, 1}, cplx(2, -2) * c},
        {{0, -1}, cplx(2, 2) * c},
    });
}

// -20 at (+-2, 0); with +20 the symbol is not 1 at the origin.
LatticeFunction ex71() {
    const double c = 1.0 / 512.0;
    return make2({
        {{0, 0}, 326 * c},  {{2, 0}, -20 * c}, {{-2, 0}, -20 * c}, {{4, 0}, 1 * c},  {{-4, 0}, 1 * c},
        {{0, 1}, 64 * c},   {{0, -1}, 64 * c}, {{0, 2}, -16 * c},  {{0, -2}, -16 * c},
        {{1, 0}, 76 * c},   {{-1, 0}, 52 * c}, {{3, 0}, -4 * c},   {{-3, 0}, 4 * c},
        {{1, 1}, -6 * c},   {{-1, 1}, 6 * c},  {{1, -1}, -6 * c},  {{-1, -1}, 6 * c},
        {{3, 1}, 2 * c},    {{-3, 1}, -2 * c}, {{3, -1}, 2 * c},   {{-3, -1}, -2 * c},
    });
}

LatticeFunction ex72() {
    const double a = std::sqrt(2.0 + std::sqrt(2.0));
    const cplx q = cplx(1, 1) / (4.0 * a);
    const double r = 1.0 / (std::sqrt(2.0) * a);
    return make2({
        {{-1, 1}, q}, {{-1, -1}, q}, {{1, 1}, -q}, {{1, -1}, -q}, {{0, 1}, r}, {{0, -1}, -r},
    });
}

LatticeFunction ex73() {
    return make2({
        {{0, 0}, 3.0 / 8},
        {{1, 1}, 1.0 / 8},
        {{-1, -1}, 1.0 / 8},
        {{1, -1}, 1.0 / 4},
        {{-1, 1}, 1.0 / 4},
        {{2, -2}, -1.0 / 16},
        {{-2, 2}, -1.0 / 16},
    });
}

LatticeFunction ex74a() {
    return LatticeFunction::from_entries(1, {{{0}, 19.0 / 64},
                                             {{1}, 0.5},
                                             {{-1}, 0.5},
                                             {{2}, -5.0 / 32},
                                             {{-2}, -5.0 / 32},
                                             {{4}, 1.0 / 128},
                                             {{-4}, 1.0 / 128}});
}

LatticeFunction ex74b() { return LatticeFunction::from_entries(1, {{{0}, 0.5}, {{1}, 0.25}, {{-1}, 0.25}}); }

LatticeFunction unstable1d() {
    return LatticeFunction::from_entries(1, {{{0}, cplx(5.0 / 8, -0.5)},
                                             {{1}, cplx(0.25, 0.25)},
                                             {{-1}, cplx(0.25, 0.25)},
                                             {{2}, -1.0 / 16},
                                             {{-2}, -1.0 / 16}});
}

LatticeFunction lazy1d() { return LatticeFunction::from_entries(1, {{{0}, 0.5}, {{1}, 0.25}, {{-1}, 0.25}}); }

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ',');) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(p, &used);
        } catch (const std::exception&) {
            throw PreconditionError("bad integer list: " + s);
        }
        if (used != p.size()) throw PreconditionError("bad integer list: " + s);
        out.push_back(v);
    }
    if (out.empty()) throw PreconditionError("empty integer list");
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ',');) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(p, &used);
        } catch (const std::exception&) {
            throw PreconditionError("bad number list: " + s);
        }
        if (used != p.size()) throw PreconditionError("bad number list: " + s);
        out.push_back(v);
    }
    return out;
}

std::string strip_parens(std::string s) {
    std::string out;
    for (char c : s)
        if (c != '(' && c != ')' && c != ' ') out += c;
    return out;
}

}  // namespace

LatticeFunction phi_m_lambda(const std::vector<int>& m, const std::vector<double>& lambda) {
    const int d = static_cast<int>(m.size());
    if (d == 0 || lambda.size() != m.size()) throw PreconditionError("phi_m_lambda: m and lambda must have equal length");
    LatticePoint zero(d, 0);
    LatticeFunction result = delta(zero);
    for (int j = 0; j < d; ++j) {
        if (m[j] < 1) throw PreconditionError("phi_m_lambda: m_j must be positive");
        if (!(lambda[j] > 0)) throw PreconditionError("phi_m_lambda: lambda_j must be positive");
        LatticePoint e(d, 0);
        e[j] = 1;
        LatticePoint me(d, 0);
        me[j] = -1;
        // delta_0 - rho_j
        const LatticeFunction step = LatticeFunction::from_entries(d, {{zero, 1.0}, {e, -0.5}, {me, -0.5}});
        LatticeFunction term = step;
        for (int k = 1; k < m[j]; ++k) term = convolve(term, step);
        result = subtract(result, term.scaled(lambda[j]));
    }
    return result;
}

LatticeFunction phi_m(const std::vector<int>& m) {
    const int d = static_cast<int>(m.size());
    if (d == 0) throw PreconditionError("phi_m: empty m");
    Entries e;
    for (int j = 0; j < d; ++j) {
        if (m[j] < 1) throw PreconditionError("phi_m: m_j must be positive");
        LatticePoint p(d, 0);
        p[j] = m[j];
        e.emplace_back(p, 1.0 / (2.0 * d));
        p[j] = -m[j];
        e.emplace_back(p, 1.0 / (2.0 * d));
    }
    return LatticeFunction::from_entries(d, e);
}

LatticeFunction simple_random_walk(int d) {
    if (d < 1) throw PreconditionError("srw: dimension must be positive");
    return phi_m(std::vector<int>(d, 1));
}

LatticeFunction builtin_example(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : strip_parens(spec.substr(colon + 1));
    auto no_arg = [&] {
        if (colon != std::string::npos) throw PreconditionError("example '" + name + "' takes no parameters");
    };
    if (name == "intro") return no_arg(), intro();
    if (name == "ex71") return no_arg(), ex71();
    if (name == "ex72") return no_arg(), ex72();
    if (name == "ex73") return no_arg(), ex73();
    if (name == "ex74") return no_arg(), tensor(ex74a(), ex74b());
    if (name == "ex74a") return no_arg(), ex74a();
    if (name == "ex74b") return no_arg(), ex74b();
    if (name == "unstable1d") return no_arg(), unstable1d();
    if (name == "lazy1d") return no_arg(), lazy1d();
    if (name == "ex75") {
        if (arg.empty()) throw PreconditionError("ex75 needs parameters, e.g. ex75:3,2");
        const auto semi = arg.find(';');
        const std::vector<int> m = parse_ints(arg.substr(0, semi));
        std::vector<double> lambda;
        if (semi == std::string::npos) {
            const double d = static_cast<double>(m.size());
            for (int mj : m) lambda.push_back(std::ldexp(1.0, 1 - mj) / (2.0 * d));
        } else {
            lambda = parse_doubles(arg.substr(semi + 1));
        }
        return phi_m_lambda(m, lambda);
    }
    if (name == "srw") {
        const std::vector<int> d = parse_ints(arg.empty() ? "2" : arg);
        if (d.size() != 1) throw PreconditionError("srw takes a single dimension");
        return simple_random_walk(d[0]);
    }
    if (name == "phim") {
        if (arg.empty()) throw PreconditionError("phim needs parameters, e.g. phim:2,1");
        return phi_m(parse_ints(arg));
    }
    throw PreconditionError("unknown example: " + spec);
}

std::vector<ExampleInfo> builtin_examples() {
    return {
        {"intro", "complex 11-point function, Omega = {(0, pi/3)}, mu = 3/4"},
        {"ex71", "real 21-point function, semi-elliptic P with E = diag(1/6, 1/4)"},
        {"ex72", "complex 6-point function with two drifting packets"},
        {"ex73", "real 7-point function with a rotated exponent, Omega = {(0,0), (pi,pi)}"},
        {"ex74", "tensor product ex74a x ex74b, mu_phi = 2/3"},
        {"ex74a", "1-d factor of ex74"},
        {"ex74b", "1-d factor of ex74 (lazy Bernoulli walk)"},
        {"ex75:<m1,..>[;<l1,..>]", "delta_0 - sum_j lambda_j (delta_0 - rho_j)^(m_j); default lambda_j = 2^(1-m_j)/(2d)"},
        {"srw:<d>", "simple random walk on Z^d"},
        {"phim:<m1,..>", "walk with steps +-m_j e_j, probability 1/(2d) each"},
        {"unstable1d", "1-d function with sup |phi^| = 1 whose powers grow in l1"},
        {"lazy1d", "lazy Bernoulli walk (delta_0 + rho)/2"},
    };
}

}  // namespace latconv
