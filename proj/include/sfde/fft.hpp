#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Core>

namespace sfde {

inline bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

inline Eigen::Index next_power_of_two(Eigen::Index n) {
  Eigen::Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Unnormalized DFT in place: y_j = sum_k x_k exp(sign * 2 pi i j k / n).
// Iterative radix-2 for powers of two, direct summation otherwise.
template <typename Derived>
void fft_inplace(Eigen::DenseBase<Derived>& x, int sign) {
  using Complex = typename Derived::Scalar;
  using Real = typename Complex::value_type;
  const Eigen::Index n = x.size();
  if (n <= 1) return;
  const Real two_pi = 2 * std::numbers::pi_v<Real>;

  if (!is_power_of_two(n)) {
    std::vector<Complex> out(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      Complex acc(0);
      for (Eigen::Index k = 0; k < n; ++k)
        acc += x[k] * std::polar(Real(1), sign * two_pi * static_cast<Real>((j * k) % n) / n);
      out[j] = acc;
    }
    for (Eigen::Index j = 0; j < n; ++j) x[j] = out[j];
    return;
  }

  for (Eigen::Index i = 1, j = 0; i < n; ++i) {
    Eigen::Index bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  std::vector<Complex> twiddle(n / 2);
  for (Eigen::Index k = 0; k < n / 2; ++k)
    twiddle[k] = std::polar(Real(1), sign * two_pi * static_cast<Real>(k) / n);
  for (Eigen::Index len = 2; len <= n; len <<= 1) {
    const Eigen::Index half = len / 2, stride = n / len;
    for (Eigen::Index start = 0; start < n; start += len) {
      for (Eigen::Index k = 0; k < half; ++k) {
        const Complex u = x[start + k];
        const Complex v = x[start + k + half] * twiddle[k * stride];
        x[start + k] = u + v;
        x[start + k + half] = u - v;
      }
    }
  }
}

template <typename Derived>
void fft_inplace(Eigen::DenseBase<Derived>&& x, int sign) {
  fft_inplace(x, sign);
}

}  // namespace sfde
