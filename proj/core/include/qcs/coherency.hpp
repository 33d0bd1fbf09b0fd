#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qcs/smoother.hpp"
#include "qcs/tensor.hpp"

namespace qcs {

// R(omega; tau1, tau2) = G12 / sqrt(G11 * G22), one value per canonical
// atom pair and evaluation frequency. The ratio is invariant to the
// normalizer, so it is formed from the raw smoothed values.
struct CoherencyField {
  std::size_t n = 0;
  int d = 0;
  int K = 0;
  std::vector<double> levels;
  std::vector<double> eval_omegas;
  bool fourier_half = false;
  HermitianTensor coherency;
  std::vector<double> coherence;  // |R|^2, canonical cell-major like the tensor

  std::complex<double> value(int j1, int j2, int k1, int k2, std::size_t e) const {
    return coherency.value(j1, j2, k1, k2, e);
  }
  double coherence_value(int j1, int j2, int k1, int k2, std::size_t e) const {
    int a1 = coherency.atom(j1, k1);
    int a2 = coherency.atom(j2, k2);
    if (a1 > a2) std::swap(a1, a2);  // |R|^2 is swap-invariant
    return coherence[coherency.cell_index(a1, a2) * coherency.ns() + e];
  }
};

// Cartesian and polar components of the smoothed cross-spectrum:
// cospectrum = Re, quadrature = -Im, amplitude = modulus,
// phase = principal argument in (-pi, pi] with phase(0) = 0.
struct SpectralDecomposition {
  std::size_t n = 0;
  int d = 0;
  int K = 0;
  std::vector<double> levels;
  std::vector<double> eval_omegas;
  bool fourier_half = false;
  bool normalized = false;
  int atoms = 0;
  std::size_t ns = 0;
  // Canonical cell-major storage, same cell order as HermitianTensor.
  std::vector<double> cospectrum;
  std::vector<double> quadrature;
  std::vector<double> amplitude;
  std::vector<double> phase;

  double cospectrum_value(int j1, int j2, int k1, int k2, std::size_t e) const;
  double quadrature_value(int j1, int j2, int k1, int k2, std::size_t e) const;
  double amplitude_value(int j1, int j2, int k1, int k2, std::size_t e) const;
  double phase_value(int j1, int j2, int k1, int k2, std::size_t e) const;
};

// Elementwise ratio against the positive real diagonals. Same-atom entries
// are exactly 1. Throws DegenerateDenominatorError when an auto-spectrum is
// not strictly positive, and InternalConsistencyError when a coherence
// exceeds 1 by more than 1e-10 (values within that slack are clipped).
CoherencyField quantile_coherency(const SmoothedSpectrum& spec, int workers = 1);

// Table of derived quantities. With normalized = true the components are
// taken from the normalizer-corrected estimate so they line up with the
// confidence bands; the raw default matches the plain smoothed values.
SpectralDecomposition spectral_decompositions(const SmoothedSpectrum& spec,
                                              bool normalized = false,
                                              int workers = 1);

}  // namespace qcs
