#include "latconv/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "latconv/errors.hpp"
#include "latconv/fft.hpp"

namespace latconv {

namespace {

constexpr double kZero = 1e-300;

bool is_zero(cplx v) { return std::abs(v) < kZero; }

int lex_compare(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] < b[j]) return -1;
        if (a[j] > b[j]) return 1;
    }
    return 0;
}

void require_same_dim(const LatticeFunction& f, const LatticeFunction& g, const char* op) {
    if (f.dim() != g.dim()) throw PreconditionError(std::string(op) + ": dimension mismatch");
}

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& shape) {
    std::vector<std::size_t> s(shape.size(), 1);
    for (int j = static_cast<int>(shape.size()) - 2; j >= 0; --j) s[j] = s[j + 1] * shape[j + 1];
    return s;
}

std::vector<std::size_t> shape_of(const Box& b) {
    std::vector<std::size_t> s(b.dim());
    for (int j = 0; j < b.dim(); ++j) s[j] = static_cast<std::size_t>(b.extent(j));
    return s;
}

// Walks the box in row-major order, emitting nonzero entries.
LatticeFunction extract_sparse(const Box& box, const std::vector<cplx>& values) {
    const int d = box.dim();
    std::vector<std::int64_t> coords;
    std::vector<cplx> vals;
    LatticePoint x = box.lo;
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        if (!is_zero(values[idx])) {
            coords.insert(coords.end(), x.begin(), x.end());
            vals.push_back(values[idx]);
        }
        for (int j = d - 1; j >= 0; --j) {
            if (++x[j] <= box.hi[j]) break;
            x[j] = box.lo[j];
        }
    }
    return LatticeFunction::from_sorted(d, std::move(coords), std::move(vals));
}

void check_cap(std::size_t cells, const PowerOptions& opts, const char* what) {
    const double bytes = static_cast<double>(cells) * sizeof(cplx);
    if (bytes > static_cast<double>(opts.memory_cap_bytes)) {
        throw ResourceError(std::string(what) + ": box of " + std::to_string(cells) + " cells exceeds memory cap of " +
                            std::to_string(opts.memory_cap_bytes) + " bytes");
    }
}

}  // namespace

std::size_t Box::volume() const {
    std::size_t v = 1;
    for (int j = 0; j < dim(); ++j) {
        if (hi[j] < lo[j]) return 0;
        v *= static_cast<std::size_t>(extent(j));
    }
    return v;
}

bool Box::contains(std::span<const std::int64_t> x) const {
    for (int j = 0; j < dim(); ++j)
        if (x[j] < lo[j] || x[j] > hi[j]) return false;
    return true;
}

Box Box::hull(const Box& other) const {
    Box b = *this;
    for (int j = 0; j < dim(); ++j) {
        b.lo[j] = std::min(lo[j], other.lo[j]);
        b.hi[j] = std::max(hi[j], other.hi[j]);
    }
    return b;
}

LatticeFunction::LatticeFunction(int dim) : dim_(dim) {
    if (dim < 1) throw PreconditionError("LatticeFunction: dimension must be >= 1");
}

LatticeFunction LatticeFunction::from_entries(int dim, const std::vector<std::pair<LatticePoint, cplx>>& entries) {
    for (const auto& e : entries)
        if (static_cast<int>(e.first.size()) != dim) throw PreconditionError("LatticeFunction: dimension mismatch");
    std::vector<std::size_t> order(entries.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return entries[a].first < entries[b].first; });
    std::vector<std::int64_t> coords;
    std::vector<cplx> vals;
    for (std::size_t k = 0; k < order.size();) {
        const LatticePoint& key = entries[order[k]].first;
        cplx sum = 0;
        while (k < order.size() && entries[order[k]].first == key) sum += entries[order[k++]].second;
        if (!is_zero(sum)) {
            coords.insert(coords.end(), key.begin(), key.end());
            vals.push_back(sum);
        }
    }
    return from_sorted(dim, std::move(coords), std::move(vals));
}

LatticeFunction LatticeFunction::from_sorted(int dim, std::vector<std::int64_t> coords, std::vector<cplx> values) {
    LatticeFunction f(dim);
    const auto d = static_cast<std::size_t>(dim);
    std::size_t out = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (is_zero(values[i])) continue;
        if (out != i) {
            std::copy_n(coords.begin() + static_cast<std::ptrdiff_t>(i * d), d,
                        coords.begin() + static_cast<std::ptrdiff_t>(out * d));
            values[out] = values[i];
        }
        ++out;
    }
    coords.resize(out * d);
    values.resize(out);
    f.coords_ = std::move(coords);
    f.values_ = std::move(values);
    return f;
}

LatticePoint LatticeFunction::point(std::size_t i) const {
    auto c = coords(i);
    return LatticePoint(c.begin(), c.end());
}

cplx LatticeFunction::at(std::span<const std::int64_t> x) const {
    if (static_cast<int>(x.size()) != dim_) throw PreconditionError("LatticeFunction::at: dimension mismatch");
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        int c = lex_compare(coords(mid), x);
        if (c == 0) return values_[mid];
        if (c < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return 0.0;
}

Box LatticeFunction::bounding_box() const {
    Box b{LatticePoint(dim_, 0), LatticePoint(dim_, -1)};
    if (empty()) return b;
    b.lo = point(0);
    b.hi = point(0);
    for (std::size_t i = 1; i < size(); ++i) {
        auto c = coords(i);
        for (int j = 0; j < dim_; ++j) {
            b.lo[j] = std::min(b.lo[j], c[j]);
            b.hi[j] = std::max(b.hi[j], c[j]);
        }
    }
    return b;
}

LatticeFunction LatticeFunction::scaled(cplx c) const {
    std::vector<cplx> v(values_);
    for (auto& x : v) x *= c;
    return from_sorted(dim_, coords_, std::move(v));
}

bool LatticeFunction::operator==(const LatticeFunction& other) const {
    return dim_ == other.dim_ && coords_ == other.coords_ && values_ == other.values_;
}

DenseGrid::DenseGrid(Box b) : box(std::move(b)), values(box.volume(), cplx(0.0)) {}

std::size_t DenseGrid::index(std::span<const std::int64_t> x) const {
    std::size_t idx = 0;
    for (int j = 0; j < box.dim(); ++j) idx = idx * static_cast<std::size_t>(box.extent(j)) + (x[j] - box.lo[j]);
    return idx;
}

cplx DenseGrid::at(std::span<const std::int64_t> x) const {
    if (!box.contains(x)) return 0.0;
    return values[index(x)];
}

LatticePoint DenseGrid::point(std::size_t idx) const {
    LatticePoint x(box.dim());
    for (int j = box.dim() - 1; j >= 0; --j) {
        const auto e = static_cast<std::size_t>(box.extent(j));
        x[j] = box.lo[j] + static_cast<std::int64_t>(idx % e);
        idx /= e;
    }
    return x;
}

LatticeFunction DenseGrid::to_sparse() const { return extract_sparse(box, values); }

DenseGrid DenseGrid::from_sparse(const LatticeFunction& f, const Box& box) {
    DenseGrid g(box);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (box.contains(f.coords(i))) g.values[g.index(f.coords(i))] = f.value(i);
    return g;
}

const char* to_string(PowerMethod m) {
    switch (m) {
        case PowerMethod::Direct: return "direct";
        case PowerMethod::Fast: return "fast";
        case PowerMethod::Spectral: return "spectral";
    }
    return "?";
}

PowerMethod parse_power_method(const std::string& s) {
    if (s == "direct") return PowerMethod::Direct;
    if (s == "fast") return PowerMethod::Fast;
    if (s == "spectral") return PowerMethod::Spectral;
    throw PreconditionError("unknown power method '" + s + "'");
}

LatticeFunction delta(const LatticePoint& y) {
    return LatticeFunction::from_sorted(static_cast<int>(y.size()), y, {cplx(1.0)});
}

LatticeFunction translate(const LatticeFunction& f, const LatticePoint& y) {
    if (static_cast<int>(y.size()) != f.dim()) throw PreconditionError("translate: dimension mismatch");
    std::vector<std::int64_t> coords;
    coords.reserve(f.size() * y.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto c = f.coords(i);
        for (int j = 0; j < f.dim(); ++j) coords.push_back(c[j] + y[j]);
    }
    return LatticeFunction::from_sorted(f.dim(), std::move(coords), f.values());
}

namespace {
LatticeFunction merge(const LatticeFunction& f, const LatticeFunction& g, double sign) {
    require_same_dim(f, g, "add");
    std::vector<std::int64_t> coords;
    std::vector<cplx> vals;
    std::size_t i = 0, k = 0;
    auto push = [&](std::span<const std::int64_t> c, cplx v) {
        coords.insert(coords.end(), c.begin(), c.end());
        vals.push_back(v);
    };
    while (i < f.size() || k < g.size()) {
        int c = i == f.size() ? 1 : k == g.size() ? -1 : lex_compare(f.coords(i), g.coords(k));
        if (c < 0) {
            push(f.coords(i), f.value(i));
            ++i;
        } else if (c > 0) {
            push(g.coords(k), sign * g.value(k));
            ++k;
        } else {
            push(f.coords(i), f.value(i) + sign * g.value(k));
            ++i;
            ++k;
        }
    }
    return LatticeFunction::from_sorted(f.dim(), std::move(coords), std::move(vals));
}
}  // namespace

LatticeFunction add(const LatticeFunction& f, const LatticeFunction& g) { return merge(f, g, 1.0); }
LatticeFunction subtract(const LatticeFunction& f, const LatticeFunction& g) { return merge(f, g, -1.0); }

LatticeFunction convolve(const LatticeFunction& f, const LatticeFunction& g) {
    require_same_dim(f, g, "convolve");
    const int d = f.dim();
    if (f.empty() || g.empty()) return LatticeFunction(d);
    const Box bf = f.bounding_box(), bg = g.bounding_box();
    Box box{LatticePoint(d), LatticePoint(d)};
    for (int j = 0; j < d; ++j) {
        box.lo[j] = bf.lo[j] + bg.lo[j];
        box.hi[j] = bf.hi[j] + bg.hi[j];
    }
    const double volume = static_cast<double>(box.volume());
    const double products = static_cast<double>(f.size()) * static_cast<double>(g.size());
    if (volume <= std::max(64.0 * products, 65536.0) && volume <= 6.7e7) {
        const auto shape = shape_of(box);
        const auto strides = strides_of(shape);
        auto offsets = [&](const LatticeFunction& h, const Box& bh) {
            std::vector<std::size_t> off(h.size());
            for (std::size_t i = 0; i < h.size(); ++i) {
                auto c = h.coords(i);
                std::size_t o = 0;
                for (int j = 0; j < d; ++j) o += static_cast<std::size_t>(c[j] - bh.lo[j]) * strides[j];
                off[i] = o;
            }
            return off;
        };
        const auto of = offsets(f, bf);
        const auto og = offsets(g, bg);
        std::vector<cplx> acc(box.volume(), cplx(0.0));
        for (std::size_t i = 0; i < f.size(); ++i) {
            const cplx fv = f.value(i);
            cplx* base = acc.data() + of[i];
            for (std::size_t k = 0; k < g.size(); ++k) base[og[k]] += fv * g.value(k);
        }
        return extract_sparse(box, acc);
    }
    std::map<LatticePoint, cplx> acc;
    LatticePoint x(d);
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto a = f.coords(i);
        for (std::size_t k = 0; k < g.size(); ++k) {
            auto b = g.coords(k);
            for (int j = 0; j < d; ++j) x[j] = a[j] + b[j];
            acc[x] += f.value(i) * g.value(k);
        }
    }
    std::vector<std::int64_t> coords;
    std::vector<cplx> vals;
    for (const auto& [key, v] : acc) {
        coords.insert(coords.end(), key.begin(), key.end());
        vals.push_back(v);
    }
    return LatticeFunction::from_sorted(d, std::move(coords), std::move(vals));
}

LatticeFunction tensor(const LatticeFunction& f, const LatticeFunction& g) {
    const int d = f.dim() + g.dim();
    std::vector<std::int64_t> coords;
    std::vector<cplx> vals;
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t k = 0; k < g.size(); ++k) {
            auto a = f.coords(i);
            auto b = g.coords(k);
            coords.insert(coords.end(), a.begin(), a.end());
            coords.insert(coords.end(), b.begin(), b.end());
            vals.push_back(f.value(i) * g.value(k));
        }
    }
    return LatticeFunction::from_sorted(d, std::move(coords), std::move(vals));
}

void for_each_direct_power(const LatticeFunction& f, long n_max,
                           const std::function<void(long, const LatticeFunction&)>& visit) {
    if (n_max < 1) return;
    LatticeFunction cur = f;
    visit(1, cur);
    for (long k = 2; k <= n_max; ++k) {
        cur = convolve(cur, f);
        visit(k, cur);
    }
}

namespace {

struct PowerLayout {
    Box result;                     // support box of f^(n)
    std::vector<std::size_t> fft;   // transform size per axis
    std::vector<std::size_t> strides;
    std::size_t total = 1;
};

PowerLayout layout_for(const LatticeFunction& f, long n, const PowerOptions& opts, const char* what) {
    const int d = f.dim();
    const Box b = f.bounding_box();
    PowerLayout L;
    L.result = Box{LatticePoint(d), LatticePoint(d)};
    L.fft.resize(d);
    for (int j = 0; j < d; ++j) {
        L.result.lo[j] = n * b.lo[j];
        L.result.hi[j] = n * b.hi[j];
        L.fft[j] = fft::good_size(static_cast<std::size_t>(L.result.extent(j)));
        L.total *= L.fft[j];
    }
    check_cap(L.total, opts, what);
    L.strides = strides_of(L.fft);
    return L;
}

// Copies the leading result box out of the cyclic buffer.
DenseGrid crop(const PowerLayout& L, const std::vector<cplx>& buf, double scale) {
    DenseGrid out(L.result);
    const int d = L.result.dim();
    std::vector<std::size_t> j(d, 0);
    for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
        std::size_t src = 0;
        for (int a = 0; a < d; ++a) src += j[a] * L.strides[a];
        out.values[idx] = buf[src] * scale;
        for (int a = d - 1; a >= 0; --a) {
            if (++j[a] < static_cast<std::size_t>(L.result.extent(a))) break;
            j[a] = 0;
        }
    }
    return out;
}

DenseGrid fast_power(const LatticeFunction& f, long n, const PowerOptions& opts) {
    const PowerLayout L = layout_for(f, n, opts, "power(fast)");
    const Box b = f.bounding_box();
    std::vector<cplx> buf(L.total, cplx(0.0));
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto c = f.coords(i);
        std::size_t o = 0;
        for (int j = 0; j < f.dim(); ++j) o += static_cast<std::size_t>(c[j] - b.lo[j]) * L.strides[j];
        buf[o] = f.value(i);
    }
    fft::transform(buf, L.fft, -1);
    // Binary expansion of n, squaring in place on the full box.
    for (auto& z : buf) {
        cplx base = z, acc = 1.0;
        for (long e = n; e > 0; e >>= 1) {
            if (e & 1) acc *= base;
            if (e > 1) base *= base;
        }
        z = acc;
    }
    fft::transform(buf, L.fft, +1);
    return crop(L, buf, 1.0 / static_cast<double>(L.total));
}

DenseGrid spectral_power(const LatticeFunction& f, long n, const PowerOptions& opts) {
    const PowerLayout L = layout_for(f, n, opts, "power(spectral)");
    const int d = f.dim();
    const Box b = f.bounding_box();
    // tw[j][r] = exp(2 pi i r / N_j)
    std::vector<std::vector<cplx>> tw(d);
    for (int j = 0; j < d; ++j) {
        const auto N = L.fft[j];
        tw[j].resize(N);
        for (std::size_t r = 0; r < N; ++r)
            tw[j][r] = std::polar(1.0, 2.0 * M_PI * static_cast<double>(r) / static_cast<double>(N));
    }
    auto mod = [](std::int64_t a, std::size_t N) {
        const auto m = static_cast<std::int64_t>(N);
        return static_cast<std::size_t>(((a % m) + m) % m);
    };
    std::vector<cplx> buf(L.total);
    std::vector<std::size_t> k(d, 0);
    for (std::size_t idx = 0; idx < L.total; ++idx) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            auto c = f.coords(i);
            cplx ph = f.value(i);
            for (int j = 0; j < d; ++j) ph *= tw[j][mod(c[j] * static_cast<std::int64_t>(k[j]), L.fft[j])];
            s += ph;
        }
        cplx v = std::polar(std::pow(std::abs(s), static_cast<double>(n)), static_cast<double>(n) * std::arg(s));
        for (int j = 0; j < d; ++j) v *= tw[j][mod(-n * b.lo[j] * static_cast<std::int64_t>(k[j]), L.fft[j])];
        buf[idx] = v;
        for (int j = d - 1; j >= 0; --j) {
            if (++k[j] < L.fft[j]) break;
            k[j] = 0;
        }
    }
    fft::transform(buf, L.fft, -1);
    return crop(L, buf, 1.0 / static_cast<double>(L.total));
}

}  // namespace

DenseGrid periodized_power(const LatticeFunction& f, long n, const Box& window, const std::vector<std::size_t>& period,
                           const PowerOptions& opts) {
    const int d = f.dim();
    if (n < 1) throw PreconditionError("power: n must be >= 1");
    if (window.dim() != d || static_cast<int>(period.size()) != d)
        throw PreconditionError("periodized_power: dimension mismatch");
    std::size_t total = 1;
    for (auto N : period) {
        if (N == 0) throw PreconditionError("periodized_power: zero period");
        total *= N;
    }
    check_cap(total, opts, "power(periodized)");
    const auto strides = strides_of(period);
    auto offset = [&](std::span<const std::int64_t> x) {
        std::size_t o = 0;
        for (int j = 0; j < d; ++j) {
            const auto N = static_cast<std::int64_t>(period[j]);
            o += static_cast<std::size_t>(((x[j] % N) + N) % N) * strides[j];
        }
        return o;
    };
    std::vector<cplx> buf(total, cplx(0.0));
    for (std::size_t i = 0; i < f.size(); ++i) buf[offset(f.coords(i))] += f.value(i);
    fft::transform(buf, period, -1);
    for (auto& z : buf) z = std::polar(std::pow(std::abs(z), static_cast<double>(n)), static_cast<double>(n) * std::arg(z));
    fft::transform(buf, period, +1);
    DenseGrid out(window);
    const double scale = 1.0 / static_cast<double>(total);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = buf[offset(out.point(i))] * scale;
    return out;
}

DenseGrid power_dense(const LatticeFunction& f, long n, PowerMethod method, const PowerOptions& opts) {
    if (n < 1) throw PreconditionError("power: n must be >= 1");
    if (f.empty()) return DenseGrid(Box{LatticePoint(f.dim(), 0), LatticePoint(f.dim(), -1)});
    switch (method) {
        case PowerMethod::Fast: return fast_power(f, n, opts);
        case PowerMethod::Spectral: return spectral_power(f, n, opts);
        case PowerMethod::Direct: break;
    }
    const LatticeFunction p = power(f, n, PowerMethod::Direct, opts);
    const Box b = f.bounding_box();
    Box r{LatticePoint(f.dim()), LatticePoint(f.dim())};
    for (int j = 0; j < f.dim(); ++j) {
        r.lo[j] = n * b.lo[j];
        r.hi[j] = n * b.hi[j];
    }
    check_cap(r.volume(), opts, "power(direct, dense)");
    return DenseGrid::from_sparse(p, r);
}

LatticeFunction power(const LatticeFunction& f, long n, PowerMethod method, const PowerOptions& opts) {
    if (n < 1) throw PreconditionError("power: n must be >= 1");
    if (method != PowerMethod::Direct) return power_dense(f, n, method, opts).to_sparse();
    LatticeFunction result = f;
    for_each_direct_power(f, n, [&](long k, const LatticeFunction& g) {
        if (k == n) result = g;
    });
    return result;
}

double norm_l1(const LatticeFunction& f) {
    double s = 0;
    for (const auto& v : f.values()) s += std::abs(v);
    return s;
}

double norm_linf(const LatticeFunction& f) {
    double m = 0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double norm_l1(const DenseGrid& g) {
    double s = 0;
    for (const auto& v : g.values) s += std::abs(v);
    return s;
}

double norm_linf(const DenseGrid& g) {
    double m = 0;
    for (const auto& v : g.values) m = std::max(m, std::abs(v));
    return m;
}

LatticeFunction read_function(std::istream& in) {
    std::string line;
    int lineno = 0;
    int dim = 0;
    std::vector<std::pair<LatticePoint, cplx>> entries;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (dim == 0) {
            if (tok.size() != 2 || tok[0] != "dim") throw ParseError(lineno, "expected 'dim <d>'");
            try {
                std::size_t pos = 0;
                dim = std::stoi(tok[1], &pos);
                if (pos != tok[1].size() || dim < 1) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError(lineno, "invalid dimension '" + tok[1] + "'");
            }
            continue;
        }
        if (static_cast<int>(tok.size()) != dim + 2)
            throw ParseError(lineno, "expected " + std::to_string(dim + 2) + " fields, got " + std::to_string(tok.size()));
        LatticePoint x(dim);
        for (int j = 0; j < dim; ++j) {
            try {
                std::size_t pos = 0;
                x[j] = std::stoll(tok[j], &pos);
                if (pos != tok[j].size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError(lineno, "invalid lattice coordinate '" + tok[j] + "'");
            }
        }
        double parts[2];
        for (int k = 0; k < 2; ++k) {
            const std::string& t = tok[dim + k];
            char* end = nullptr;
            parts[k] = std::strtod(t.c_str(), &end);
            if (end != t.c_str() + t.size() || !std::isfinite(parts[k]))
                throw ParseError(lineno, "invalid number '" + t + "'");
        }
        entries.emplace_back(std::move(x), cplx(parts[0], parts[1]));
    }
    if (dim == 0) throw ParseError(lineno, "missing 'dim <d>' header");
    return LatticeFunction::from_entries(dim, entries);
}

LatticeFunction read_function_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open '" + path + "'");
    return read_function(in);
}

void write_function(std::ostream& out, const LatticeFunction& f) {
    out << "dim " << f.dim() << '\n';
    char buf[64];
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (auto c : f.coords(i)) out << c << ' ';
        std::snprintf(buf, sizeof buf, "%.17g %.17g", f.value(i).real(), f.value(i).imag());
        out << buf << '\n';
    }
}

}  // namespace latconv
