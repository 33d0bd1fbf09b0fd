#include "qcs/smoother.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <utility>

#include "qcs/errors.hpp"
#include "qcs/fft.hpp"
#include "qcs/parallel.hpp"

namespace qcs {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_bandwidth(double b_n) {
  if (!(b_n > 0.0) || b_n > 1.0)
    throw BandwidthError("bandwidth must lie in (0, 1], got " + std::to_string(b_n));
}

std::vector<std::pair<int, int>> canonical_cells(int atoms) {
  std::vector<std::pair<int, int>> cells;
  cells.reserve(static_cast<std::size_t>(atoms) * (atoms + 1) / 2);
  for (int a1 = 0; a1 < atoms; ++a1)
    for (int a2 = a1; a2 < atoms; ++a2) cells.emplace_back(a1, a2);
  return cells;
}
}  // namespace

double wrapped_kernel_weights(const KernelSpec& kernel, double b_n, double u) {
  check_bandwidth(b_n);
  double acc = 0.0;
  for (int j = -1; j <= 1; ++j)
    acc += kernel_value(kernel, (u + kTwoPi * j) / b_n);
  return acc / b_n;
}

std::vector<double> kernel_weight_table(const KernelSpec& kernel, double b_n,
                                        std::size_t n) {
  check_bandwidth(b_n);
  std::vector<double> w(n);
  for (std::size_t m = 0; m < n; ++m)
    w[m] = wrapped_kernel_weights(kernel, b_n,
                                  kTwoPi * static_cast<double>(m) / static_cast<double>(n));
  return w;
}

namespace {
// W_n^k for every k at once: the sum over s != k of the periodic weight table.
std::vector<double> normalizer_table(const std::vector<double>& w, std::size_t n) {
  double total = 0.0;
  for (double v : w) total += v;
  std::vector<double> wnk(n);
  const double scale = kTwoPi / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) wnk[k] = scale * (total - w[k]);
  return wnk;
}
}  // namespace

double smoothing_normalizer(const KernelSpec& kernel, double b_n,
                            std::size_t n, std::size_t k) {
  // omega_k - omega_s runs over the full weight table except the s = k image,
  // so the sum collapses to (total mass - w[k]).
  const auto w = kernel_weight_table(kernel, b_n, n);
  double total = 0.0;
  for (double v : w) total += v;
  return kTwoPi / static_cast<double>(n) * (total - w[k % n]);
}

bool degenerate_normalizer(double wnk) { return !(wnk > 1e-6); }

SmoothedSpectrum smooth_periodogram(const CCRPeriodogram& perio,
                                    const KernelSpec& kernel, double b_n,
                                    const std::vector<double>& eval_omegas,
                                    int workers) {
  check_bandwidth(b_n);
  SmoothedSpectrum out;
  out.n = perio.n;
  out.d = perio.d;
  out.K = perio.K;
  out.levels = perio.levels;
  out.kernel = kernel;
  out.bandwidth = b_n;
  out.fourier_half = false;
  out.eval_omegas = eval_omegas;
  const std::size_t n = perio.n;
  const std::size_t ne = eval_omegas.size();
  out.values = HermitianTensor(perio.d, perio.K, ne);

  // Per-omega weights, shared across cells: weights[e][s-1] = W_n(omega - omega_s).
  out.normalizers.resize(ne);
  std::vector<std::vector<double>> weights(ne);
  parallel_for(ne, workers, [&](std::size_t e) {
    auto& wv = weights[e];
    wv.resize(n - 1);
    double total = 0.0;
    for (std::size_t s = 1; s < n; ++s) {
      const double u = eval_omegas[e] - kTwoPi * static_cast<double>(s) / static_cast<double>(n);
      const double v = wrapped_kernel_weights(kernel, b_n, u);
      wv[s - 1] = v;
      total += v;
    }
    out.normalizers[e] = kTwoPi / static_cast<double>(n) * total;
  });

  const auto cells = canonical_cells(out.values.atoms());
  const double scale = kTwoPi / static_cast<double>(n);
  parallel_for(cells.size(), workers, [&](std::size_t idx) {
    const auto [a1, a2] = cells[idx];
    const std::complex<double>* src = perio.values.cell(a1, a2);
    std::complex<double>* dst = out.values.cell(a1, a2);
    for (std::size_t e = 0; e < ne; ++e) {
      const auto& wv = weights[e];
      if (a1 == a2) {
        // Diagonal cells are weighted sums of nonnegative reals.
        double acc = 0.0;
        for (std::size_t s = 1; s < n; ++s) acc += wv[s - 1] * src[s].real();
        dst[e] = std::complex<double>(scale * acc, 0.0);
      } else {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t s = 1; s < n; ++s) acc += wv[s - 1] * src[s];
        dst[e] = scale * acc;
      }
    }
  });
  return out;
}

SmoothedSpectrum smooth_periodogram_fourier(const CCRPeriodogram& perio,
                                            const KernelSpec& kernel, double b_n,
                                            int workers) {
  check_bandwidth(b_n);
  SmoothedSpectrum out;
  out.n = perio.n;
  out.d = perio.d;
  out.K = perio.K;
  out.levels = perio.levels;
  out.kernel = kernel;
  out.bandwidth = b_n;
  out.fourier_half = true;
  const std::size_t n = perio.n;
  const std::size_t ne = n / 2 + 1;
  out.eval_omegas.resize(ne);
  for (std::size_t s = 0; s < ne; ++s)
    out.eval_omegas[s] = kTwoPi * static_cast<double>(s) / static_cast<double>(n);
  out.values = HermitianTensor(perio.d, perio.K, ne);

  const auto w = kernel_weight_table(kernel, b_n, n);
  const auto wnk = normalizer_table(w, n);
  out.normalizers.assign(wnk.begin(), wnk.begin() + ne);

  // G[k] = (2*pi/n) * (w (*) I')[k] with the s = 0 ordinate zeroed; the
  // circular convolution covers every k in one FFT pass per cell.
  std::vector<std::complex<double>> wc(n);
  for (std::size_t m = 0; m < n; ++m) wc[m] = std::complex<double>(w[m], 0.0);
  std::vector<std::complex<double>> fw(n);
  {
    Dft dft(n);
    dft.forward(wc.data(), fw.data());
  }

  const auto cells = canonical_cells(out.values.atoms());
  const double scale = kTwoPi / static_cast<double>(n);
  parallel_for(cells.size(), workers, [&](std::size_t idx) {
    thread_local std::unique_ptr<Dft> dft;
    if (!dft || dft->size() != n) dft = std::make_unique<Dft>(n);
    const auto [a1, a2] = cells[idx];
    const std::complex<double>* src = perio.values.cell(a1, a2);
    std::vector<std::complex<double>> padded(src, src + n);
    padded[0] = std::complex<double>(0.0, 0.0);
    std::vector<std::complex<double>> conv(n);
    dft->circular_convolve_spectrum(fw.data(), padded.data(), conv.data());
    std::complex<double>* dst = out.values.cell(a1, a2);
    if (a1 == a2) {
      // Sums of nonnegative reals: discard the transform's rounding residue
      // in the imaginary part.
      for (std::size_t e = 0; e < ne; ++e)
        dst[e] = std::complex<double>(scale * conv[e].real(), 0.0);
    } else {
      for (std::size_t e = 0; e < ne; ++e) dst[e] = scale * conv[e];
    }
  });
  return out;
}

}  // namespace qcs
