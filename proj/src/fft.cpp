#include "glebd/fft.hpp"

#include <cmath>
#include <numbers>

#include "glebd/errors.hpp"

namespace glebd {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_inplace(std::vector<std::complex<double>>& data, bool inverse) {
  const std::size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw ValidationError("fft: length must be a nonzero power of two");

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = data[i + k];
        std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& c : data) c *= inv_n;
  }
}

std::vector<double> autocorr_sums(const std::vector<double>& x,
                                  std::size_t max_lag) {
  const std::size_t n = x.size();
  if (max_lag >= n)
    throw ValidationError("autocorr_sums: max_lag must be < series length");
  const std::size_t m = next_pow2(2 * n);
  std::vector<std::complex<double>> buf(m, {0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) buf[i] = {x[i], 0.0};
  fft_inplace(buf, false);
  for (auto& c : buf) c = c * std::conj(c);
  fft_inplace(buf, true);
  std::vector<double> out(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) out[k] = buf[k].real();
  return out;
}

}  // namespace glebd
