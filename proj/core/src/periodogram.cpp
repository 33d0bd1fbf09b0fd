#include "qcs/periodogram.hpp"

#include <memory>
#include <numbers>
#include <utility>
#include <vector>

#include "qcs/fft.hpp"
#include "qcs/parallel.hpp"

namespace qcs {

QuantileDFT quantile_dft(const ClippedTensor& clipped, int workers) {
  QuantileDFT out;
  out.n = clipped.n;
  out.d = clipped.d;
  out.K = clipped.K;
  out.levels = clipped.levels;
  const std::size_t n = clipped.n;
  const std::size_t series = static_cast<std::size_t>(clipped.d) * clipped.K;
  out.coeffs.resize(series * n);

  parallel_for(series, workers, [&](std::size_t idx) {
    thread_local std::unique_ptr<Dft> dft;
    if (!dft || dft->size() != n) dft = std::make_unique<Dft>(n);
    const std::uint8_t* bits = clipped.bits.data() + idx * n;
    std::vector<std::complex<double>> in(n);
    for (std::size_t t = 0; t < n; ++t)
      in[t] = std::complex<double>(static_cast<double>(bits[t]), 0.0);
    std::complex<double>* coeffs = out.coeffs.data() + idx * n;
    dft->forward(in.data(), coeffs);
    // Real input: enforce the conjugation identity exactly instead of
    // carrying the transform's rounding residue in the upper half.
    coeffs[0] = std::complex<double>(coeffs[0].real(), 0.0);
    if (n % 2 == 0)
      coeffs[n / 2] = std::complex<double>(coeffs[n / 2].real(), 0.0);
    for (std::size_t s = 1; s < (n + 1) / 2; ++s)
      coeffs[n - s] = std::conj(coeffs[s]);
  });
  return out;
}

CCRPeriodogram ccr_periodogram_matrix(const QuantileDFT& dfts, int workers) {
  CCRPeriodogram out;
  out.n = dfts.n;
  out.d = dfts.d;
  out.K = dfts.K;
  out.levels = dfts.levels;
  const std::size_t n = dfts.n;
  const int atoms = dfts.d * dfts.K;
  out.values = HermitianTensor(dfts.d, dfts.K, n);
  const double scale = 1.0 / (2.0 * std::numbers::pi * static_cast<double>(n));

  // Enumerate canonical cells (a1 <= a2) as flat work items.
  std::vector<std::pair<int, int>> cells;
  cells.reserve(out.values.cell_count());
  for (int a1 = 0; a1 < atoms; ++a1)
    for (int a2 = a1; a2 < atoms; ++a2) cells.emplace_back(a1, a2);

  parallel_for(cells.size(), workers, [&](std::size_t idx) {
    const auto [a1, a2] = cells[idx];
    const std::complex<double>* d1 = dfts.coeffs.data() + static_cast<std::size_t>(a1) * n;
    const std::complex<double>* d2 = dfts.coeffs.data() + static_cast<std::size_t>(a2) * n;
    std::complex<double>* cell = out.values.cell(a1, a2);
    if (a1 == a2) {
      // |d|^2 / (2*pi*n): exactly real, never negative.
      for (std::size_t s = 0; s < n; ++s)
        cell[s] = std::complex<double>(std::norm(d1[s]) * scale, 0.0);
    } else {
      for (std::size_t s = 0; s < n; ++s)
        cell[s] = d1[s] * std::conj(d2[s]) * scale;
    }
  });
  return out;
}

}  // namespace qcs
