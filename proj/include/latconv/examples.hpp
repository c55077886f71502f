#pragma once

#include <string>
#include <vector>

#include "latconv/lattice.hpp"

namespace latconv {

struct ExampleInfo {
    std::string name;
    std::string description;
};

// Builtin functions by name: intro, ex71, ex72, ex73, ex74, ex74a, ex74b,
// ex75:<m1,..>[;<l1,..>], srw:<d>, phim:<m1,..>, unstable1d, lazy1d.
LatticeFunction builtin_example(const std::string& spec);
std::vector<ExampleInfo> builtin_examples();

// Building blocks, exposed for tests.
LatticeFunction phi_m_lambda(const std::vector<int>& m, const std::vector<double>& lambda);
LatticeFunction phi_m(const std::vector<int>& m);
LatticeFunction simple_random_walk(int d);

}  // namespace latconv
