#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qcs {

// n observations x d component series, row-major, no missing values.
struct TimeSeriesMatrix {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> values;      // values[t*d + j]
  std::vector<std::string> names;  // d column labels

  double at(std::size_t t, std::size_t j) const { return values[t * d + j]; }
  double& at(std::size_t t, std::size_t j) { return values[t * d + j]; }
};

// Validates n >= 2, d >= 1, all entries finite; takes ownership of the data.
TimeSeriesMatrix make_time_series(std::size_t n, std::size_t d,
                                  std::vector<double> values,
                                  std::vector<std::string> names = {});

// Strictly increasing quantile levels, all inside the open interval (0,1).
struct QuantileGrid {
  std::vector<double> levels;
  std::size_t size() const { return levels.size(); }
};

QuantileGrid validate_quantile_grid(std::vector<double> levels);

// The Fourier frequencies omega_s = 2*pi*s/n, s = 0..n-1.
struct FrequencyGrid {
  std::size_t n = 0;
  std::vector<double> omegas;
};

FrequencyGrid make_fourier_grid(std::size_t n);

// Smoothing kernels, all supported on [-pi, pi] and integrating to 1.
//   epanechnikov: W(v) = 3/(4*pi) * (1 - (v/pi)^2), order 2
//   rectangular:  W(v) = 1/(2*pi), order 2
enum class KernelKind { epanechnikov, rectangular };

struct KernelSpec {
  KernelKind name = KernelKind::epanechnikov;
  int order = 2;
};

// W(v); zero outside [-pi, pi].
double kernel_value(const KernelSpec& kernel, double v);

// Integral of v^m * W(v) over [-pi, pi] by Simpson quadrature (used by the
// bias oracle and by the kernel-normalization self checks).
double kernel_moment(const KernelSpec& kernel, int m);

const char* kernel_name(KernelKind kind);
KernelKind parse_kernel_name(const std::string& name);

// The default bandwidth 0.4 * n^(-1/4): undersmoothing, so that smoothing
// bias is negligible against the band width and CIs need no bias correction.
double default_bandwidth(std::size_t n);

}  // namespace qcs
