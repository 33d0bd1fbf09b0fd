#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "qcs/smoother.hpp"

namespace qcs {

enum class BandKind { spectrum, coherency };

// Pointwise bands center +- Phi^{-1}(1 - alpha/2) * sigma over the canonical
// atom-pair cells and the Fourier half grid. Bands are symmetric about the
// center; same-atom cells have an imaginary band of exactly zero width.
struct ConfidenceBand {
  std::size_t n = 0;
  int d = 0;
  int K = 0;
  std::vector<double> levels;
  std::vector<double> eval_omegas;
  bool fourier_half = false;
  double alpha = 0.0;
  BandKind kind = BandKind::spectrum;
  int atoms = 0;
  std::size_t ns = 0;
  // Canonical cell-major (a1 <= a2), same cell order as HermitianTensor.
  std::vector<double> center_re, lo_re, hi_re;
  std::vector<double> center_im, lo_im, hi_im;
  // Raw variances below -1e-8 before the 0-clamp, for diagnostics.
  long long negative_variance_warnings = 0;
  double worst_negative_variance = 0.0;

  std::size_t index(int a1, int a2, std::size_t e) const {
    const long long a = atoms;
    const long long row_start = static_cast<long long>(a1) * a -
                                static_cast<long long>(a1) * (a1 - 1) / 2;
    return static_cast<std::size_t>(row_start + (a2 - a1)) * ns + e;
  }
};

struct BandPair {
  ConfidenceBand spectrum;
  ConfidenceBand coherency;
};

// Covariance estimator for the smoothed quantile spectra at Fourier index k,
// atoms (a, b, c, d) each encoding a (component, quantile) pair:
//   (2*pi / (n W_n^k))^2 * [ sum_{s!=0} W_n(2pi(k-s)/n)^2 Gac(w_s) Gbd(-w_s)
//                          + sum_{s!=0} W_n(2pi(k-s)/n) W_n(2pi(k+s)/n)
//                                       Gad(w_s) Gbc(-w_s) ]
// with normalized values G and negative frequencies via conjugation. The
// prefactor is squared: each of the two weight factors carries one 1/(sum W)
// normalization, which makes the expression the finite-sample covariance of
// the normalized estimate (Brillinger's Theorem 7.4.3 form). Direct windowed
// evaluation; the reference the fast band path is validated against.
std::complex<double> smoothed_covariance(const SmoothedSpectrum& spec,
                                         int a, int b, int c, int d,
                                         std::size_t k);

// The two coherency covariance expansions at one cell (a1, a2) and Fourier
// index k: (Cov(L12, L12), Cov(L12, L21)), assembled from smoothed_covariance
// terms and normalized spectral values at k. Single-point reference path.
std::pair<std::complex<double>, std::complex<double>> coherency_covariance(
    const SmoothedSpectrum& spec, int a1, int a2, std::size_t k);

// Band for the normalized spectrum: center G~, variance split
//   (Re sigma)^2 = 0 v { Cov(H12,H12)                         same atom
//                      ; (Cov(H12,H12) + Re Cov(H12,H21))/2   otherwise }
//   (Im sigma)^2 = 0 v { 0                                    same atom
//                      ; (Cov(H12,H12) - Re Cov(H12,H21))/2   otherwise }
// sigma applied directly (no extra (n b_n)^{-1/2} factor).
ConfidenceBand ci_spectrum(const SmoothedSpectrum& spec, double alpha,
                           int workers = 1);

// Band for the coherency: center R, variance split as above with the
// Cov(L.,L.) pair. clip_to_unit clips the reported real band to [-1, 1].
ConfidenceBand ci_coherency(const SmoothedSpectrum& spec, double alpha,
                            bool clip_to_unit = false, int workers = 1);

// Both bands in one pass over the shared covariance arrays.
BandPair ci_bands(const SmoothedSpectrum& spec, double alpha,
                  bool clip_to_unit = false, int workers = 1);

}  // namespace qcs
