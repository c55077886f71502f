#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace testsupport {

Table to_table(const LatticeFunction& f) {
    Table t;
    for (std::size_t i = 0; i < f.size(); ++i) t[f.point(i)] = f.value(i);
    return t;
}

Table naive_convolve(const Table& a, const Table& b) {
    Table out;
    for (const auto& [x, u] : a)
        for (const auto& [y, v] : b) {
            LatticePoint z(x.size());
            for (std::size_t j = 0; j < x.size(); ++j) z[j] = x[j] + y[j];
            out[z] += u * v;
        }
    return out;
}

Table naive_power(const Table& a, long n) {
    Table acc = a;
    for (long k = 1; k < n; ++k) acc = naive_convolve(acc, a);
    return acc;
}

double max_diff(const Table& a, const LatticeFunction& f) {
    double m = 0;
    for (const auto& [x, v] : a) m = std::max(m, std::abs(v - f.at(x)));
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto it = a.find(f.point(i));
        if (it == a.end()) m = std::max(m, std::abs(f.value(i)));
    }
    return m;
}

double max_diff(const LatticeFunction& f, const latconv::DenseGrid& g) {
    double m = 0;
    for (std::size_t i = 0; i < g.values.size(); ++i) m = std::max(m, std::abs(g.values[i] - f.at(g.point(i))));
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!g.box.contains(f.coords(i))) m = std::max(m, std::abs(f.value(i)));
    return m;
}

LatticeFunction random_function(std::mt19937_64& rng, int d, int points, int radius, bool complex_values) {
    std::uniform_int_distribution<int> coord(-radius, radius);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::set<LatticePoint> sites;
    const double cap = std::pow(2.0 * radius + 1.0, d);
    points = std::min<int>(points, static_cast<int>(cap));
    while (static_cast<int>(sites.size()) < points) {
        LatticePoint x(d);
        for (auto& c : x) c = coord(rng);
        sites.insert(x);
    }
    std::vector<std::pair<LatticePoint, cplx>> e;
    for (const auto& x : sites) e.emplace_back(x, cplx(val(rng), complex_values ? val(rng) : 0.0));
    return LatticeFunction::from_entries(d, e);
}

}  // namespace testsupport
