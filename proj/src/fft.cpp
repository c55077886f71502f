#include "latconv/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace latconv::fft {

std::size_t good_size(std::size_t n) {
    if (n <= 1) return 1;
    for (std::size_t m = n;; ++m) {
        std::size_t r = m;
        for (std::size_t p : {2, 3, 5, 7})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

namespace {
std::mutex planner_mutex;  // the FFTW planner is not thread-safe
}

void transform(std::vector<std::complex<double>>& data, const std::vector<std::size_t>& dims, int sign) {
    std::size_t total = 1;
    std::vector<int> n(dims.size());
    for (std::size_t j = 0; j < dims.size(); ++j) {
        total *= dims[j];
        n[j] = static_cast<int>(dims[j]);
    }
    if (total != data.size()) throw std::invalid_argument("fft::transform: size mismatch");
    if (total <= 1) return;
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft(static_cast<int>(n.size()), n.data(), ptr, ptr, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                             FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
}

}  // namespace latconv::fft
