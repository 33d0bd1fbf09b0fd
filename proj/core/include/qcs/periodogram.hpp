#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qcs/ranks.hpp"
#include "qcs/tensor.hpp"

namespace qcs {

// Discrete Fourier transforms of the clipped indicator series,
//   coeffs(j, k, s) = sum_t I{R[t,j] <= n*tau_k} exp(-i*2*pi*s*t/n).
// The conjugation identity coeffs(j,k,n-s) = conj(coeffs(j,k,s)) and the
// real values at s = 0 (the indicator count) and s = n/2 hold exactly: the
// transform computes the lower half and mirrors the rest.
struct QuantileDFT {
  std::size_t n = 0;
  int d = 0;
  int K = 0;
  std::vector<double> levels;
  std::vector<std::complex<double>> coeffs;  // ((j*K + k)*n + s)

  std::complex<double> coeff(int j, int k, std::size_t s) const {
    return coeffs[(static_cast<std::size_t>(j) * K + k) * n + s];
  }
  const std::complex<double>* series(int j, int k) const {
    return coeffs.data() + (static_cast<std::size_t>(j) * K + k) * n;
  }
};

QuantileDFT quantile_dft(const ClippedTensor& clipped, int workers = 1);

// Rank-based copula cross-periodogram at all Fourier frequencies,
//   I(j1,j2,k1,k2,s) = coeffs(j1,k1,s) * conj(coeffs(j2,k2,s)) / (2*pi*n).
// Stored Hermitian-canonically; diagonal cells are exactly real.
struct CCRPeriodogram {
  std::size_t n = 0;
  int d = 0;
  int K = 0;
  std::vector<double> levels;
  HermitianTensor values;  // ns = n

  std::complex<double> value(int j1, int j2, int k1, int k2, std::size_t s) const {
    return values.value(j1, j2, k1, k2, s);
  }
};

CCRPeriodogram ccr_periodogram_matrix(const QuantileDFT& dfts, int workers = 1);

}  // namespace qcs
