#pragma once

#include <complex>
#include <vector>

namespace glebd {

// In-place radix-2 complex FFT; data.size() must be a power of two.
// inverse=true applies the conjugate transform and divides by n.
void fft_inplace(std::vector<std::complex<double>>& data, bool inverse);

std::size_t next_pow2(std::size_t n);

// Raw (un-normalized) circular autocorrelation sums via FFT after
// zero-padding to 2n: out[k] = sum_i x[i] x[i+k], k = 0..max_lag.
std::vector<double> autocorr_sums(const std::vector<double>& x,
                                  std::size_t max_lag);

}  // namespace glebd
