#include "qcs/grids.hpp"

#include <cmath>
#include <numbers>

#include "qcs/errors.hpp"

namespace qcs {

namespace {
constexpr double kPi = std::numbers::pi;
}

TimeSeriesMatrix make_time_series(std::size_t n, std::size_t d,
                                  std::vector<double> values,
                                  std::vector<std::string> names) {
  if (n < 2) throw InvalidArgumentError("time series needs n >= 2 observations");
  if (d < 1) throw InvalidArgumentError("time series needs d >= 1 components");
  if (values.size() != n * d)
    throw InvalidArgumentError("time series buffer size does not match n*d");
  for (double v : values) {
    if (!std::isfinite(v))
      throw InvalidDataError("time series contains a non-finite entry");
  }
  if (names.empty()) {
    names.resize(d);
    for (std::size_t j = 0; j < d; ++j) names[j] = "x" + std::to_string(j + 1);
  }
  if (names.size() != d)
    throw InvalidArgumentError("column name count does not match d");
  TimeSeriesMatrix m;
  m.n = n;
  m.d = d;
  m.values = std::move(values);
  m.names = std::move(names);
  return m;
}

QuantileGrid validate_quantile_grid(std::vector<double> levels) {
  if (levels.empty())
    throw InvalidArgumentError("quantile grid must not be empty");
  for (double tau : levels) {
    if (!(tau > 0.0 && tau < 1.0))
      throw BoundaryQuantileError("quantile level " + std::to_string(tau) +
                                  " outside the open interval (0,1)");
  }
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i] > levels[i - 1]))
      throw QuantileOrderingError("quantile levels must be strictly increasing");
  }
  return QuantileGrid{std::move(levels)};
}

FrequencyGrid make_fourier_grid(std::size_t n) {
  if (n < 2) throw InvalidArgumentError("Fourier grid needs n >= 2");
  FrequencyGrid g;
  g.n = n;
  g.omegas.resize(n);
  for (std::size_t s = 0; s < n; ++s)
    g.omegas[s] = 2.0 * kPi * static_cast<double>(s) / static_cast<double>(n);
  return g;
}

double kernel_value(const KernelSpec& kernel, double v) {
  if (v < -kPi || v > kPi) return 0.0;
  switch (kernel.name) {
    case KernelKind::epanechnikov: {
      const double z = v / kPi;
      return 3.0 / (4.0 * kPi) * (1.0 - z * z);
    }
    case KernelKind::rectangular:
      return 1.0 / (2.0 * kPi);
  }
  return 0.0;
}

double kernel_moment(const KernelSpec& kernel, int m) {
  // Composite Simpson on [-pi, pi]; the integrands are polynomials, so a
  // moderate panel count already reaches ~1e-12 absolute error.
  const int panels = 1 << 12;
  const double h = 2.0 * kPi / panels;
  auto f = [&](double v) { return std::pow(v, m) * kernel_value(kernel, v); };
  double acc = f(-kPi) + f(kPi);
  for (int i = 1; i < panels; ++i) {
    const double v = -kPi + h * i;
    acc += f(v) * ((i % 2) ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

const char* kernel_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::epanechnikov: return "epanechnikov";
    case KernelKind::rectangular: return "rectangular";
  }
  return "unknown";
}

KernelKind parse_kernel_name(const std::string& name) {
  if (name == "epanechnikov") return KernelKind::epanechnikov;
  if (name == "rectangular") return KernelKind::rectangular;
  throw InvalidArgumentError("unknown kernel: " + name);
}

double default_bandwidth(std::size_t n) {
  return 0.4 * std::pow(static_cast<double>(n), -0.25);
}

}  // namespace qcs
