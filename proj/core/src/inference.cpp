#include "qcs/inference.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <vector>

#include "qcs/errors.hpp"
#include "qcs/fft.hpp"
#include "qcs/parallel.hpp"
#include "qcs/rng.hpp"

namespace qcs {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_fourier_grid(const SmoothedSpectrum& spec) {
  if (!spec.fourier_half)
    throw InvalidArgumentError(
        "covariance estimation requires the spectrum on the Fourier half grid");
}

double checked_level(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw InvalidLevelError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  return alpha;
}

double checked_normalizer(double wnk) {
  if (degenerate_normalizer(wnk))
    throw BandwidthError("smoothing normalizer is degenerate; bandwidth too small for n");
  return wnk;
}

// Normalized value of the atom pair (a1, a2) on the full grid s = 0..n-1.
std::complex<double> normalized_cell(const SmoothedSpectrum& spec, int a1, int a2,
                                     std::size_t s) {
  const std::size_t half = spec.n / 2;
  const bool upper = s > half;
  const std::size_t e = upper ? spec.n - s : s;
  std::complex<double> v = a1 <= a2 ? spec.values.cell(a1, a2)[e]
                                    : std::conj(spec.values.cell(a2, a1)[e]);
  v /= spec.normalizers[e];
  return upper ? std::conj(v) : v;
}

[[noreturn]] void throw_nonpositive_diagonal(const SmoothedSpectrum& spec, int atom,
                                             std::size_t k, double value) {
  std::ostringstream msg;
  msg << "auto-spectrum is not strictly positive at series j=" << (atom / spec.K + 1)
      << ", tau=" << spec.levels[atom % spec.K] << ", omega=" << spec.eval_omegas[k]
      << " (value " << value << ")";
  throw DegenerateDenominatorError(msg.str());
}
}  // namespace

std::complex<double> smoothed_covariance(const SmoothedSpectrum& spec,
                                         int a, int b, int c, int d,
                                         std::size_t k) {
  require_fourier_grid(spec);
  const std::size_t n = spec.n;
  if (k >= n) throw InvalidArgumentError("Fourier index out of range");
  const double wnk = checked_normalizer(spec.normalizer_full(k));
  const auto w = kernel_weight_table(spec.kernel, spec.bandwidth, n);

  std::complex<double> s1{0.0, 0.0};
  std::complex<double> s2{0.0, 0.0};
  for (std::size_t s = 1; s < n; ++s) {
    const double w_minus = w[(k + n - s) % n];
    const double w_plus = w[(k + s) % n];
    if (w_minus == 0.0 && w_plus == 0.0) continue;
    if (w_minus != 0.0) {
      const std::complex<double> gac = normalized_cell(spec, a, c, s);
      const std::complex<double> gbd = std::conj(normalized_cell(spec, b, d, s));
      s1 += (w_minus * w_minus) * gac * gbd;
      if (w_plus != 0.0) {
        const std::complex<double> gad = normalized_cell(spec, a, d, s);
        const std::complex<double> gbc = std::conj(normalized_cell(spec, b, c, s));
        s2 += (w_minus * w_plus) * gad * gbc;
      }
    }
  }
  const double pre = kTwoPi / (static_cast<double>(n) * wnk);
  return pre * pre * (s1 + s2);
}

std::pair<std::complex<double>, std::complex<double>> coherency_covariance(
    const SmoothedSpectrum& spec, int a1, int a2, std::size_t k) {
  require_fourier_grid(spec);
  const double g11 = normalized_cell(spec, a1, a1, k).real();
  const double g22 = normalized_cell(spec, a2, a2, k).real();
  if (!(g11 > 0.0)) throw_nonpositive_diagonal(spec, a1, k, g11);
  if (!(g22 > 0.0)) throw_nonpositive_diagonal(spec, a2, k, g22);
  const std::complex<double> g12 = normalized_cell(spec, a1, a2, k);

  const std::complex<double> c1212 = smoothed_covariance(spec, a1, a2, a1, a2, k);
  const std::complex<double> c1221 = smoothed_covariance(spec, a1, a2, a2, a1, k);
  const std::complex<double> c1112 = smoothed_covariance(spec, a1, a1, a1, a2, k);
  const std::complex<double> c2212 = smoothed_covariance(spec, a2, a2, a1, a2, k);
  const std::complex<double> c1222 = smoothed_covariance(spec, a1, a2, a2, a2, k);
  const std::complex<double> c1211 = smoothed_covariance(spec, a1, a2, a1, a1, k);
  const std::complex<double> c1111 = smoothed_covariance(spec, a1, a1, a1, a1, k);
  const std::complex<double> c2222 = smoothed_covariance(spec, a2, a2, a2, a2, k);
  const std::complex<double> c1122 = smoothed_covariance(spec, a1, a1, a2, a2, k);

  const std::complex<double> trio = c1111 / (g11 * g11) +
                                    2.0 * (c1122 / (g11 * g22)).real() +
                                    c2222 / (g22 * g22);
  const std::complex<double> c_same =
      (c1212 - (g12 * c1112).real() / g11 - (g12 * c2212).real() / g22 +
       0.25 * std::norm(g12) * trio) /
      (g11 * g22);
  const std::complex<double> c_conj =
      (c1221 - g12 * c1222 / g22 - g12 * c1211 / g11 + 0.25 * g12 * g12 * trio) /
      (g11 * g22);
  return {c_same, c_conj};
}

namespace {

// Shared machinery for the all-cells band construction. Every covariance term
// splits into a circular convolution against the squared weight table (dense,
// one FFT per product array) and a mirror sum
//   M(P)(k) = sum_{s != 0} w[(k-s) mod n] w[(k+s) mod n] P[s],
// whose weight product is nonzero only where the windows around k and -k
// overlap, i.e. for k within the kernel width of 0, n/2 or n.
struct CovEngine {
  const SmoothedSpectrum& spec;
  std::size_t n;
  std::size_t half;
  std::size_t ne;               // half + 1 stored frequencies
  std::vector<double> w;        // weight table w[m] = W_n(2 pi m / n)
  std::vector<std::complex<double>> fw2;  // forward transform of w^2
  long window;                  // half width of the kernel support in bins
  std::vector<double> wslice;   // w[alpha mod n] for alpha in [-window, window]
  std::vector<std::size_t> folds;  // k in 0..half with a nonzero mirror sum
  std::vector<double> pre2;     // (2 pi / (n W_n^k))^2 over k = 0..half
  std::vector<std::vector<double>> gdiag;     // per atom: full-grid real G~
  std::vector<std::vector<double>> atom_cov;  // per atom: Cov(Haa, Haa)(k)

  explicit CovEngine(const SmoothedSpectrum& s, int workers) : spec(s) {
    require_fourier_grid(spec);
    n = spec.n;
    half = n / 2;
    ne = half + 1;
    w = kernel_weight_table(spec.kernel, spec.bandwidth, n);
    window = static_cast<long>(static_cast<double>(n) * spec.bandwidth / 2.0) + 2;
    window = std::min<long>(window, static_cast<long>(n));
    for (std::size_t k = 0; k < ne; ++k) {
      const std::size_t twok = (2 * k) % n;
      if (std::min(twok, n - twok) <= static_cast<std::size_t>(2 * window))
        folds.push_back(k);
    }
    {
      const long nn = static_cast<long>(n);
      wslice.resize(static_cast<std::size_t>(2 * window + 1));
      for (long alpha = -window; alpha <= window; ++alpha)
        wslice[static_cast<std::size_t>(alpha + window)] =
            w[static_cast<std::size_t>((alpha % nn + nn) % nn)];
    }

    pre2.resize(ne);
    for (std::size_t k = 0; k < ne; ++k) {
      const double wnk = checked_normalizer(spec.normalizers[k]);
      const double pre = kTwoPi / (static_cast<double>(n) * wnk);
      pre2[k] = pre * pre;
    }

    std::vector<std::complex<double>> w2(n);
    for (std::size_t m = 0; m < n; ++m) w2[m] = std::complex<double>(w[m] * w[m], 0.0);
    fw2.resize(n);
    {
      Dft dft(n);
      dft.forward(w2.data(), fw2.data());
    }

    const int atoms = spec.values.atoms();
    gdiag.resize(atoms);
    atom_cov.resize(atoms);
    parallel_for(static_cast<std::size_t>(atoms), workers, [&](std::size_t a) {
      auto& g = gdiag[a];
      g.resize(n);
      const std::complex<double>* cell = spec.values.cell(static_cast<int>(a),
                                                          static_cast<int>(a));
      for (std::size_t e = 0; e <= half; ++e) g[e] = cell[e].real() / spec.normalizers[e];
      for (std::size_t s = half + 1; s < n; ++s) g[s] = g[n - s];

      // Cov(Haa, Haa): both sums share the real product array g^2.
      std::vector<std::complex<double>> p(n);
      for (std::size_t s = 0; s < n; ++s) p[s] = std::complex<double>(g[s] * g[s], 0.0);
      std::vector<std::complex<double>> conv(n);
      convolve(p, conv);
      auto& out = atom_cov[a];
      out.resize(ne);
      for (std::size_t k = 0; k < ne; ++k) out[k] = pre2[k] * conv[k].real();
      for (std::size_t k : folds)
        out[k] = pre2[k] * (conv[k].real() + mirror_real(p, k));
    });
  }

  // conv[k] = sum_{s != 0} w^2[(k-s) mod n] p[s]; p is clobbered at index 0.
  void convolve(std::vector<std::complex<double>>& p,
                std::vector<std::complex<double>>& out) const {
    thread_local std::unique_ptr<Dft> dft;
    if (!dft || dft->size() != n) dft = std::make_unique<Dft>(n);
    p[0] = std::complex<double>(0.0, 0.0);
    dft->circular_convolve_spectrum(fw2.data(), p.data(), out.data());
  }

  double mirror_real(const std::vector<std::complex<double>>& p, std::size_t k) const {
    const std::size_t twok = (2 * k) % n;
    const std::size_t dist = std::min(twok, n - twok);
    if (dist > static_cast<std::size_t>(2 * window)) return 0.0;
    double acc = 0.0;
    const long kk = static_cast<long>(k);
    const long nn = static_cast<long>(n);
    for (long alpha = -window; alpha <= window; ++alpha) {
      const double wa = w[static_cast<std::size_t>((alpha % nn + nn) % nn)];
      if (wa == 0.0) continue;
      const long beta = ((2 * kk - alpha) % nn + nn) % nn;
      const double wb = w[static_cast<std::size_t>(beta)];
      if (wb == 0.0) continue;
      const long s = ((kk - alpha) % nn + nn) % nn;
      if (s == 0) continue;
      acc += wa * wb * p[static_cast<std::size_t>(s)].real();
    }
    return acc;
  }

  // One fused windowed pass over the fold points: the weight product is
  // shared by every array of a cell, so all mirror sums accumulate together.
  // Za/Zb/V may be null (spectrum-only bands); outputs must arrive zeroed.
  // Term order and skips match the single-array mirrors exactly.
  void mirror_cell(const std::complex<double>* Y, const std::complex<double>* X,
                   const std::complex<double>* Za, const std::complex<double>* Zb,
                   const std::complex<double>* V, std::complex<double>* mY,
                   double* mX, std::complex<double>* mZa, std::complex<double>* mZb,
                   double* mV) const {
    const long nn = static_cast<long>(n);
    const std::size_t wlen = wslice.size();
    for (std::size_t k : folds) {
      std::complex<double> accY{0.0, 0.0}, accZa{0.0, 0.0}, accZb{0.0, 0.0};
      double accX = 0.0, accV = 0.0;
      const long long kk = static_cast<long long>(k);
      // beta = (2k - alpha) mod n and s = (k - alpha) mod n both step down
      // by one per alpha, so a single wrap branch replaces the modulos.
      long beta = static_cast<long>((2 * kk + window) % nn);
      long s = static_cast<long>((kk + window) % nn);
      for (std::size_t i = 0; i < wlen; ++i) {
        const double wa = wslice[i];
        const double wb = w[static_cast<std::size_t>(beta)];
        const long si = s;
        if (--beta < 0) beta += nn;
        if (--s < 0) s += nn;
        if (wa == 0.0 || wb == 0.0 || si == 0) continue;
        const double c = wa * wb;
        accY += c * Y[si];
        accX += c * X[si].real();
        if (Za) {
          accZa += c * Za[si];
          accZb += c * Zb[si];
          accV += c * V[si].real();
        }
      }
      mY[k] = accY;
      mX[k] = accX;
      if (Za) {
        mZa[k] = accZa;
        mZb[k] = accZb;
        mV[k] = accV;
      }
    }
  }
};

void init_band(ConfidenceBand& band, const SmoothedSpectrum& spec, double alpha,
               BandKind kind) {
  band.n = spec.n;
  band.d = spec.d;
  band.K = spec.K;
  band.levels = spec.levels;
  band.eval_omegas = spec.eval_omegas;
  band.fourier_half = spec.fourier_half;
  band.alpha = alpha;
  band.kind = kind;
  band.atoms = spec.values.atoms();
  band.ns = spec.eval_omegas.size();
  const std::size_t total = spec.values.cell_count() * band.ns;
  band.center_re.assign(total, 0.0);
  band.lo_re.assign(total, 0.0);
  band.hi_re.assign(total, 0.0);
  band.center_im.assign(total, 0.0);
  band.lo_im.assign(total, 0.0);
  band.hi_im.assign(total, 0.0);
}

struct NegativeVarianceStats {
  long long count = 0;
  double worst = 0.0;

  void observe(double raw) {
    if (raw < -1e-8) {
      ++count;
      worst = std::min(worst, raw);
    }
  }
};

void run_band_engine(const SmoothedSpectrum& spec, double alpha, bool clip_to_unit,
                     int workers, ConfidenceBand* spectrum, ConfidenceBand* coherency) {
  checked_level(alpha);
  const double quantile = inverse_normal_cdf(1.0 - alpha / 2.0);
  CovEngine engine(spec, workers);
  const std::size_t n = engine.n;
  const std::size_t half = engine.half;
  const std::size_t ne = engine.ne;

  if (spectrum) init_band(*spectrum, spec, alpha, BandKind::spectrum);
  if (coherency) init_band(*coherency, spec, alpha, BandKind::coherency);

  const int atoms = spec.values.atoms();
  std::vector<std::pair<int, int>> cells;
  cells.reserve(spec.values.cell_count());
  for (int a1 = 0; a1 < atoms; ++a1)
    for (int a2 = a1; a2 < atoms; ++a2) cells.emplace_back(a1, a2);

  std::vector<NegativeVarianceStats> stats(cells.size());

  parallel_for(cells.size(), workers, [&](std::size_t idx) {
    const auto [a1, a2] = cells[idx];
    const std::size_t base = spec.values.cell_index(a1, a2) * ne;
    NegativeVarianceStats& st = stats[idx];

    if (a1 == a2) {
      // Same atom: G~ real, Cov(H12,H21) = Cov(H12,H12) = Cov(Haa,Haa).
      const auto& g = engine.gdiag[a1];
      const auto& cov = engine.atom_cov[a1];
      for (std::size_t k = 0; k < ne; ++k) {
        const double raw = cov[k];
        st.observe(raw);
        const double sigma = std::sqrt(std::max(raw, 0.0));
        if (spectrum) {
          const std::size_t i = base + k;
          spectrum->center_re[i] = g[k];
          spectrum->lo_re[i] = g[k] - quantile * sigma;
          spectrum->hi_re[i] = g[k] + quantile * sigma;
          spectrum->center_im[i] = 0.0;
          spectrum->lo_im[i] = 0.0;
          spectrum->hi_im[i] = 0.0;
        }
        if (coherency) {
          const std::size_t i = base + k;
          coherency->center_re[i] = 1.0;
          coherency->lo_re[i] = 1.0;
          coherency->hi_re[i] = 1.0;
          coherency->center_im[i] = 0.0;
          coherency->lo_im[i] = 0.0;
          coherency->hi_im[i] = 0.0;
        }
      }
      return;
    }

    const auto& ga = engine.gdiag[a1];
    const auto& gb = engine.gdiag[a2];
    const std::complex<double>* stored = spec.values.cell(a1, a2);

    // Full-grid normalized cross values; upper half by conjugation.
    std::vector<std::complex<double>> gab(n);
    for (std::size_t e = 0; e <= half; ++e) gab[e] = stored[e] / spec.normalizers[e];
    for (std::size_t s = half + 1; s < n; ++s) gab[s] = std::conj(gab[n - s]);

    // Product arrays behind the covariance terms of this cell.
    std::vector<std::complex<double>> X(n), Y(n), Za(n), Zb(n), V(n);
    for (std::size_t s = 0; s < n; ++s) {
      const std::complex<double> g = gab[s];
      X[s] = std::complex<double>(ga[s] * gb[s], 0.0);
      Y[s] = g * g;
      Za[s] = ga[s] * g;
      Zb[s] = g * gb[s];
      V[s] = std::complex<double>(std::norm(g), 0.0);
    }

    std::vector<std::complex<double>> cX(n), cY(n);
    engine.convolve(X, cX);
    engine.convolve(Y, cY);
    const bool want_coh = coherency != nullptr;
    std::vector<std::complex<double>> cZa, cZb, cV;
    if (want_coh) {
      cZa.resize(n);
      cZb.resize(n);
      cV.resize(n);
      engine.convolve(Za, cZa);
      engine.convolve(Zb, cZb);
      engine.convolve(V, cV);
    }

    const auto& cov_aa = engine.atom_cov[a1];
    const auto& cov_bb = engine.atom_cov[a2];

    // Mirror tables, zero away from the fold points.
    std::vector<std::complex<double>> mYv(ne), mZav, mZbv;
    std::vector<double> mXv(ne, 0.0), mVv;
    if (want_coh) {
      mZav.resize(ne);
      mZbv.resize(ne);
      mVv.assign(ne, 0.0);
    }
    engine.mirror_cell(Y.data(), X.data(), want_coh ? Za.data() : nullptr,
                       want_coh ? Zb.data() : nullptr,
                       want_coh ? V.data() : nullptr, mYv.data(), mXv.data(),
                       want_coh ? mZav.data() : nullptr,
                       want_coh ? mZbv.data() : nullptr,
                       want_coh ? mVv.data() : nullptr);

    for (std::size_t k = 0; k < ne; ++k) {
      const double pre = engine.pre2[k];
      const std::complex<double> mY = mYv[k];
      const double mX = mXv[k];
      const std::complex<double> c_same_h =
          pre * (std::complex<double>(cX[k].real(), 0.0) + mY);
      const std::complex<double> c_conj_h = pre * (cY[k] + mX);

      if (spectrum) {
        const double raw_re = 0.5 * (c_same_h.real() + c_conj_h.real());
        const double raw_im = 0.5 * (c_same_h.real() - c_conj_h.real());
        st.observe(raw_re);
        st.observe(raw_im);
        const double sr = std::sqrt(std::max(raw_re, 0.0));
        const double si = std::sqrt(std::max(raw_im, 0.0));
        const std::complex<double> center = gab[k];
        const std::size_t i = base + k;
        spectrum->center_re[i] = center.real();
        spectrum->lo_re[i] = center.real() - quantile * sr;
        spectrum->hi_re[i] = center.real() + quantile * sr;
        spectrum->center_im[i] = center.imag();
        spectrum->lo_im[i] = center.imag() - quantile * si;
        spectrum->hi_im[i] = center.imag() + quantile * si;
      }

      if (want_coh) {
        const double g11 = ga[k];
        const double g22 = gb[k];
        if (!(g11 > 0.0)) throw_nonpositive_diagonal(spec, a1, k, g11);
        if (!(g22 > 0.0)) throw_nonpositive_diagonal(spec, a2, k, g22);
        const std::complex<double> g12 = gab[k];

        const std::complex<double> mZa = mZav[k];
        const std::complex<double> mZb = mZbv[k];
        const std::complex<double> c1112 = pre * (std::conj(cZa[k]) + mZa);
        const std::complex<double> c1211 = pre * (cZa[k] + mZa);
        const std::complex<double> c2212 = pre * (std::conj(cZb[k]) + mZb);
        const std::complex<double> c1222 = pre * (cZb[k] + mZb);
        const double c1122 = pre * (cV[k].real() + mVv[k]);
        const double c1111 = cov_aa[k];
        const double c2222 = cov_bb[k];

        const double trio = c1111 / (g11 * g11) + 2.0 * c1122 / (g11 * g22) +
                            c2222 / (g22 * g22);
        const std::complex<double> c_same =
            (c_same_h - (g12 * c1112).real() / g11 - (g12 * c2212).real() / g22 +
             0.25 * std::norm(g12) * trio) /
            (g11 * g22);
        const std::complex<double> c_conj =
            (c_conj_h - g12 * c1222 / g22 - g12 * c1211 / g11 +
             0.25 * g12 * g12 * trio) /
            (g11 * g22);

        const double raw_re = 0.5 * (c_same.real() + c_conj.real());
        const double raw_im = 0.5 * (c_same.real() - c_conj.real());
        st.observe(raw_re);
        st.observe(raw_im);
        const double sr = std::sqrt(std::max(raw_re, 0.0));
        const double si = std::sqrt(std::max(raw_im, 0.0));

        // Same operations as the coherency field, so the centers agree
        // bit for bit with the derived-quantity output.
        const std::complex<double> center =
            stored[k] / std::sqrt(spec.values.cell(a1, a1)[k].real() *
                                  spec.values.cell(a2, a2)[k].real());
        double lo_r = center.real() - quantile * sr;
        double hi_r = center.real() + quantile * sr;
        if (clip_to_unit) {
          lo_r = std::max(lo_r, -1.0);
          hi_r = std::min(hi_r, 1.0);
        }
        const std::size_t i = base + k;
        coherency->center_re[i] = center.real();
        coherency->lo_re[i] = lo_r;
        coherency->hi_re[i] = hi_r;
        coherency->center_im[i] = center.imag();
        coherency->lo_im[i] = center.imag() - quantile * si;
        coherency->hi_im[i] = center.imag() + quantile * si;
      }
    }
  });

  NegativeVarianceStats total;
  for (const auto& st : stats) {
    total.count += st.count;
    total.worst = std::min(total.worst, st.worst);
  }
  for (ConfidenceBand* band : {spectrum, coherency}) {
    if (!band) continue;
    band->negative_variance_warnings = total.count;
    band->worst_negative_variance = total.worst;
  }
}

}  // namespace

ConfidenceBand ci_spectrum(const SmoothedSpectrum& spec, double alpha, int workers) {
  ConfidenceBand band;
  run_band_engine(spec, alpha, /*clip_to_unit=*/false, workers, &band, nullptr);
  return band;
}

ConfidenceBand ci_coherency(const SmoothedSpectrum& spec, double alpha,
                            bool clip_to_unit, int workers) {
  ConfidenceBand band;
  run_band_engine(spec, alpha, clip_to_unit, workers, nullptr, &band);
  return band;
}

BandPair ci_bands(const SmoothedSpectrum& spec, double alpha, bool clip_to_unit,
                  int workers) {
  BandPair bands;
  run_band_engine(spec, alpha, clip_to_unit, workers, &bands.spectrum,
                  &bands.coherency);
  return bands;
}

}  // namespace qcs
