#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qcs/grids.hpp"
#include "qcs/periodogram.hpp"
#include "qcs/tensor.hpp"

namespace qcs {

// Periodized kernel W_n(u) = (1/b_n) * sum_{j in {-1,0,1}} W((u + 2*pi*j)/b_n).
// Exact for 0 < b_n <= 1 because W has support [-pi, pi].
double wrapped_kernel_weights(const KernelSpec& kernel, double b_n, double u);

// W_n^k = (2*pi/n) * sum_{s=1}^{n-1} W_n(omega_k - omega_s), the mass the
// smoother actually applies at Fourier index k; divides the smoothed value to
// give the normalized estimate. Evaluated in O(1) via the identity
// W_n^k = (2*pi/n) * (sum_m w[m] - w[k]) with w[m] = W_n(2*pi*m/n).
double smoothing_normalizer(const KernelSpec& kernel, double b_n,
                            std::size_t n, std::size_t k);

// True when the normalizer is too small to divide by (possible only for
// pathological bandwidth/grid combinations).
bool degenerate_normalizer(double wnk);

// The smoothed cross-periodogram
//   G(omega) = (2*pi/n) * sum_{s=1}^{n-1} W_n(omega - 2*pi*s/n) * I(2*pi*s/n)
// with the s = 0 ordinate excluded. Values are stored at eval_omegas; when
// fourier_half is true those are exactly omega_s = 2*pi*s/n, s = 0..n/2, and
// the remaining Fourier ordinates are reachable through the conjugation
// identity G(2*pi - omega) = conj(G(omega)).
struct SmoothedSpectrum {
  std::size_t n = 0;
  int d = 0;
  int K = 0;
  std::vector<double> levels;
  KernelSpec kernel;
  double bandwidth = 0.0;
  bool fourier_half = false;
  std::vector<double> eval_omegas;
  std::vector<double> normalizers;  // W_n^k per eval omega
  HermitianTensor values;           // unnormalized G at eval omegas

  // Unnormalized smoothed value at eval index si.
  std::complex<double> value(int j1, int j2, int k1, int k2, std::size_t si) const {
    return values.value(j1, j2, k1, k2, si);
  }
  // Normalized value (the estimate of the quantile cross-spectral density).
  std::complex<double> normalized(int j1, int j2, int k1, int k2, std::size_t si) const {
    return values.value(j1, j2, k1, k2, si) / normalizers[si];
  }
  // Normalized value on the full Fourier grid s = 0..n-1 (fourier_half only);
  // the upper half is the exact conjugate of the stored lower half.
  std::complex<double> normalized_full(int j1, int j2, int k1, int k2,
                                       std::size_t s) const {
    if (s <= n / 2) return normalized(j1, j2, k1, k2, s);
    return std::conj(normalized(j1, j2, k1, k2, n - s));
  }
  double normalizer_full(std::size_t s) const {
    return s <= n / 2 ? normalizers[s] : normalizers[n - s];
  }
};

// General evaluation at arbitrary frequencies by direct windowed summation
// (ascending s). Used for non-Fourier grids and as the reference the fast
// path is tested against.
SmoothedSpectrum smooth_periodogram(const CCRPeriodogram& perio,
                                    const KernelSpec& kernel, double b_n,
                                    const std::vector<double>& eval_omegas,
                                    int workers = 1);

// Fast path for the default grid omega_s = 2*pi*s/n, s = 0..n/2: one circular
// convolution per stored cell. Identical to smooth_periodogram on that grid
// up to FFT rounding.
SmoothedSpectrum smooth_periodogram_fourier(const CCRPeriodogram& perio,
                                            const KernelSpec& kernel, double b_n,
                                            int workers = 1);

// The kernel weight table w[m] = W_n(2*pi*m/n), m = 0..n-1, shared by the
// fast smoother and the covariance estimator.
std::vector<double> kernel_weight_table(const KernelSpec& kernel, double b_n,
                                        std::size_t n);

}  // namespace qcs
