#include "qcs/coherency.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "qcs/errors.hpp"
#include "qcs/parallel.hpp"

namespace qcs {

namespace {
std::size_t canonical_index(int atoms, int a1, int a2) {
  const long long a = atoms;
  const long long row_start =
      static_cast<long long>(a1) * a - static_cast<long long>(a1) * (a1 - 1) / 2;
  return static_cast<std::size_t>(row_start + (a2 - a1));
}

[[noreturn]] void throw_degenerate(int j, double tau, double omega, double value) {
  std::ostringstream msg;
  msg << "auto-spectrum is not strictly positive at series j=" << (j + 1)
      << ", tau=" << tau << ", omega=" << omega << " (value " << value << ")";
  throw DegenerateDenominatorError(msg.str());
}
}  // namespace

CoherencyField quantile_coherency(const SmoothedSpectrum& spec, int workers) {
  CoherencyField out;
  out.n = spec.n;
  out.d = spec.d;
  out.K = spec.K;
  out.levels = spec.levels;
  out.eval_omegas = spec.eval_omegas;
  out.fourier_half = spec.fourier_half;
  const std::size_t ne = spec.eval_omegas.size();
  out.coherency = HermitianTensor(spec.d, spec.K, ne);
  out.coherence.assign(out.coherency.cell_count() * ne, 0.0);

  const int atoms = out.coherency.atoms();
  std::vector<const std::complex<double>*> diag(atoms);
  for (int a = 0; a < atoms; ++a) {
    diag[a] = spec.values.cell(a, a);
    for (std::size_t e = 0; e < ne; ++e) {
      const double v = diag[a][e].real();
      if (!(v > 0.0))
        throw_degenerate(a / spec.K, spec.levels[a % spec.K], spec.eval_omegas[e], v);
    }
  }

  struct Cell {
    int a1, a2;
  };
  std::vector<Cell> cells;
  cells.reserve(out.coherency.cell_count());
  for (int a1 = 0; a1 < atoms; ++a1)
    for (int a2 = a1; a2 < atoms; ++a2) cells.push_back({a1, a2});

  std::vector<double> excess(cells.size(), 0.0);
  parallel_for(cells.size(), workers, [&](std::size_t idx) {
    const auto [a1, a2] = cells[idx];
    std::complex<double>* dst = out.coherency.cell(a1, a2);
    double* coh = out.coherence.data() + out.coherency.cell_index(a1, a2) * ne;
    if (a1 == a2) {
      for (std::size_t e = 0; e < ne; ++e) {
        dst[e] = std::complex<double>(1.0, 0.0);
        coh[e] = 1.0;
      }
      return;
    }
    const std::complex<double>* num = spec.values.cell(a1, a2);
    double worst = 0.0;
    for (std::size_t e = 0; e < ne; ++e) {
      const double denom = std::sqrt(diag[a1][e].real() * diag[a2][e].real());
      const std::complex<double> r = num[e] / denom;
      dst[e] = r;
      double c = std::norm(r);
      if (c > 1.0) {
        worst = std::max(worst, c - 1.0);
        if (c <= 1.0 + 1e-10) c = 1.0;  // Cauchy-Schwarz holds; rounding slack
      }
      coh[e] = c;
    }
    excess[idx] = worst;
  });

  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    if (excess[idx] > 1e-10) {
      std::ostringstream msg;
      msg << "coherence exceeds 1 by " << excess[idx]
          << " at atom pair (" << cells[idx].a1 << ", " << cells[idx].a2
          << "); the smoothed spectrum violates Cauchy-Schwarz";
      throw InternalConsistencyError(msg.str());
    }
  }
  return out;
}

SpectralDecomposition spectral_decompositions(const SmoothedSpectrum& spec,
                                              bool normalized, int workers) {
  SpectralDecomposition out;
  out.n = spec.n;
  out.d = spec.d;
  out.K = spec.K;
  out.levels = spec.levels;
  out.eval_omegas = spec.eval_omegas;
  out.fourier_half = spec.fourier_half;
  out.normalized = normalized;
  out.atoms = spec.values.atoms();
  out.ns = spec.eval_omegas.size();
  const std::size_t total = spec.values.cell_count() * out.ns;
  out.cospectrum.assign(total, 0.0);
  out.quadrature.assign(total, 0.0);
  out.amplitude.assign(total, 0.0);
  out.phase.assign(total, 0.0);

  const std::size_t ne = out.ns;
  std::vector<std::pair<int, int>> cells;
  cells.reserve(spec.values.cell_count());
  for (int a1 = 0; a1 < out.atoms; ++a1)
    for (int a2 = a1; a2 < out.atoms; ++a2) cells.emplace_back(a1, a2);

  parallel_for(cells.size(), workers, [&](std::size_t idx) {
    const auto [a1, a2] = cells[idx];
    const std::complex<double>* src = spec.values.cell(a1, a2);
    const std::size_t base = spec.values.cell_index(a1, a2) * ne;
    for (std::size_t e = 0; e < ne; ++e) {
      std::complex<double> v = src[e];
      if (normalized) v /= spec.normalizers[e];
      const double re = v.real();
      const double im = v.imag();
      out.cospectrum[base + e] = re;
      out.quadrature[base + e] = -im;
      out.amplitude[base + e] = std::abs(v);
      out.phase[base + e] = (re == 0.0 && im == 0.0) ? 0.0 : std::atan2(im, re);
    }
  });
  return out;
}

namespace {
// Swapping the atoms conjugates the underlying complex value.
enum class Component { kCos, kQuad, kAmp, kPhase };

double decomposition_value(const SpectralDecomposition& d, Component c,
                           int j1, int j2, int k1, int k2, std::size_t e) {
  int a1 = j1 * d.K + k1;
  int a2 = j2 * d.K + k2;
  bool swapped = false;
  if (a1 > a2) {
    std::swap(a1, a2);
    swapped = true;
  }
  const std::size_t i = canonical_index(d.atoms, a1, a2) * d.ns + e;
  switch (c) {
    case Component::kCos:
      return d.cospectrum[i];
    case Component::kQuad:
      return swapped ? -d.quadrature[i] : d.quadrature[i];
    case Component::kAmp:
      return d.amplitude[i];
    case Component::kPhase: {
      const double p = d.phase[i];
      if (!swapped) return p;
      // conj flips the argument's sign; the principal branch keeps pi at pi.
      return (p == std::atan2(0.0, -1.0) || p == 0.0) ? p : -p;
    }
  }
  return 0.0;
}
}  // namespace

double SpectralDecomposition::cospectrum_value(int j1, int j2, int k1, int k2,
                                               std::size_t e) const {
  return decomposition_value(*this, Component::kCos, j1, j2, k1, k2, e);
}
double SpectralDecomposition::quadrature_value(int j1, int j2, int k1, int k2,
                                               std::size_t e) const {
  return decomposition_value(*this, Component::kQuad, j1, j2, k1, k2, e);
}
double SpectralDecomposition::amplitude_value(int j1, int j2, int k1, int k2,
                                              std::size_t e) const {
  return decomposition_value(*this, Component::kAmp, j1, j2, k1, k2, e);
}
double SpectralDecomposition::phase_value(int j1, int j2, int k1, int k2,
                                          std::size_t e) const {
  return decomposition_value(*this, Component::kPhase, j1, j2, k1, k2, e);
}

}  // namespace qcs
