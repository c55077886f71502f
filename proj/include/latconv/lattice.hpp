#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace latconv {

using cplx = std::complex<double>;
using LatticePoint = std::vector<std::int64_t>;

// Inclusive integer box lo..hi per axis.
struct Box {
    LatticePoint lo;
    LatticePoint hi;

    int dim() const { return static_cast<int>(lo.size()); }
    std::int64_t extent(int j) const { return hi[j] - lo[j] + 1; }
    std::size_t volume() const;
    bool contains(std::span<const std::int64_t> x) const;
    // Smallest box containing both.
    Box hull(const Box& other) const;
};

// Finitely supported function Z^d -> C. Entries are kept sorted in
// lexicographic order and entries with |value| < 1e-300 are never stored.
class LatticeFunction {
public:
    explicit LatticeFunction(int dim = 1);

    // Duplicate keys are summed.
    static LatticeFunction from_entries(int dim, const std::vector<std::pair<LatticePoint, cplx>>& entries);

    int dim() const { return dim_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    std::span<const std::int64_t> coords(std::size_t i) const {
        return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    LatticePoint point(std::size_t i) const;
    cplx value(std::size_t i) const { return values_[i]; }
    const std::vector<cplx>& values() const { return values_; }

    // Zero when x is outside the support.
    cplx at(std::span<const std::int64_t> x) const;
    cplx at(const LatticePoint& x) const { return at(std::span<const std::int64_t>(x)); }

    Box bounding_box() const;
    LatticeFunction scaled(cplx c) const;

    bool operator==(const LatticeFunction& other) const;

    // Keys must be strictly increasing in lexicographic order; zeros are dropped.
    static LatticeFunction from_sorted(int dim, std::vector<std::int64_t> coords, std::vector<cplx> values);

private:
    int dim_;
    std::vector<std::int64_t> coords_;
    std::vector<cplx> values_;
};

// Dense samples over a box, row-major with the last axis fastest, which is
// also lexicographic order.
struct DenseGrid {
    Box box;
    std::vector<cplx> values;

    DenseGrid() = default;
    explicit DenseGrid(Box b);

    std::size_t index(std::span<const std::int64_t> x) const;
    cplx at(std::span<const std::int64_t> x) const;  // zero outside the box
    LatticePoint point(std::size_t idx) const;
    LatticeFunction to_sparse() const;
    static DenseGrid from_sparse(const LatticeFunction& f, const Box& box);
};

enum class PowerMethod { Direct, Fast, Spectral };

struct PowerOptions {
    std::size_t memory_cap_bytes = std::size_t{2} << 30;
};

const char* to_string(PowerMethod m);
PowerMethod parse_power_method(const std::string& s);

LatticeFunction delta(const LatticePoint& y);
LatticeFunction translate(const LatticeFunction& f, const LatticePoint& y);
LatticeFunction add(const LatticeFunction& f, const LatticeFunction& g);
LatticeFunction subtract(const LatticeFunction& f, const LatticeFunction& g);
LatticeFunction convolve(const LatticeFunction& f, const LatticeFunction& g);
LatticeFunction tensor(const LatticeFunction& f, const LatticeFunction& g);

LatticeFunction power(const LatticeFunction& f, long n, PowerMethod method = PowerMethod::Direct,
                      const PowerOptions& opts = {});
// Fast and spectral paths return the full support box of phi^(n).
DenseGrid power_dense(const LatticeFunction& f, long n, PowerMethod method, const PowerOptions& opts = {});
// sum_m phi^(n)(x + N m) over the window, from a transform of size N (one
// period per axis). Equals phi^(n) on the window when the mass of phi^(n)
// outside one period around the window is negligible.
DenseGrid periodized_power(const LatticeFunction& f, long n, const Box& window, const std::vector<std::size_t>& period,
                           const PowerOptions& opts = {});

// Iterated direct convolution; calls visit(k, f^(k)) for k = 1..n_max.
void for_each_direct_power(const LatticeFunction& f, long n_max,
                           const std::function<void(long, const LatticeFunction&)>& visit);

double norm_l1(const LatticeFunction& f);
double norm_linf(const LatticeFunction& f);
double norm_l1(const DenseGrid& g);
double norm_linf(const DenseGrid& g);

// Function file format: "dim <d>" then "<x1..xd> <re> <im>" lines, '#' comments.
LatticeFunction read_function(std::istream& in);
LatticeFunction read_function_file(const std::string& path);
void write_function(std::ostream& out, const LatticeFunction& f);

}  // namespace latconv
