#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "latconv/lattice.hpp"

namespace testsupport {

using latconv::cplx;
using latconv::LatticeFunction;
using latconv::LatticePoint;
using Table = std::map<LatticePoint, cplx>;

Table to_table(const LatticeFunction& f);
// Plain double loop over both supports.
Table naive_convolve(const Table& a, const Table& b);
Table naive_power(const Table& a, long n);
double max_diff(const Table& a, const LatticeFunction& f);
double max_diff(const LatticeFunction& f, const latconv::DenseGrid& g);

// Random support of `points` distinct sites in [-radius, radius]^d.
LatticeFunction random_function(std::mt19937_64& rng, int d, int points, int radius, bool complex_values = true);

}  // namespace testsupport
