#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace latconv::fft {

// Smallest size >= n whose prime factors are all in {2, 3, 5, 7}.
std::size_t good_size(std::size_t n);

// Unnormalized in-place multidimensional DFT, row-major, last axis fastest.
// sign = -1 computes sum_j a_j e^{-2 pi i j.k/N}, sign = +1 the conjugate kernel.
void transform(std::vector<std::complex<double>>& data, const std::vector<std::size_t>& dims, int sign);

}  // namespace latconv::fft
