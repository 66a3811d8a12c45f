#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace sunfluct {

// In-place radix-2 complex FFT. Length must be a power of two.
// forward: X_k = sum_n x_n exp(-2 pi i k n / N)  (no scaling)
// inverse: x_n = (1/N) sum_k X_k exp(+2 pi i k n / N)
void fft(std::vector<std::complex<double>>& data, bool inverse);

std::size_t next_pow2(std::size_t n);

}  // namespace sunfluct
