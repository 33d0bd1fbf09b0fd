#include "qcs/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "qcs/errors.hpp"
#include "qcs/rng.hpp"

namespace qcs {

namespace {
std::vector<std::string> default_names(std::size_t d) {
  std::vector<std::string> names(d);
  for (std::size_t j = 0; j < d; ++j) names[j] = "x" + std::to_string(j + 1);
  return names;
}

TimeSeriesMatrix wrap(std::size_t n, std::size_t d, std::vector<double> values) {
  TimeSeriesMatrix out;
  out.n = n;
  out.d = d;
  out.values = std::move(values);
  out.names = default_names(d);
  return out;
}

void check_qvar_shape(const QVARSpec& spec) {
  if (spec.d < 1) throw InvalidArgumentError("QVAR dimension must be >= 1");
  if (spec.p < 0) throw InvalidArgumentError("QVAR order must be >= 0");
  if (spec.coeff.size() != static_cast<std::size_t>(spec.p))
    throw InvalidArgumentError("QVAR needs one coefficient matrix per lag");
  const std::size_t dd = static_cast<std::size_t>(spec.d) * spec.d;
  for (const auto& lag : spec.coeff)
    if (lag.size() != dd)
      throw InvalidArgumentError("QVAR coefficient matrix has wrong shape");
  if (spec.intercept.size() != static_cast<std::size_t>(spec.d))
    throw InvalidArgumentError("QVAR needs one intercept function per row");
}
}  // namespace

double CoeffFunc::operator()(double u) const {
  switch (form) {
    case CoeffForm::constant:
      return a;
    case CoeffForm::linear:
      return a + b * (u - 0.5);
    case CoeffForm::normal_quantile:
      return inverse_normal_cdf(u);
  }
  return 0.0;
}

TimeSeriesMatrix simulate_qvar(const QVARSpec& spec, std::size_t n,
                               std::size_t burn_in, std::uint64_t seed) {
  check_qvar_shape(spec);
  if (n < 1) throw InvalidArgumentError("need n >= 1 observations");
  const std::size_t d = static_cast<std::size_t>(spec.d);
  const std::size_t p = static_cast<std::size_t>(spec.p);

  PhiloxStream rng(seed, 0);
  // Zero-initialized ring of the last p states.
  std::vector<std::vector<double>> history(std::max<std::size_t>(p, 1),
                                           std::vector<double>(d, 0.0));
  std::vector<double> u(d), x(d);
  std::vector<double> values;
  values.reserve(n * d);

  const std::size_t total = burn_in + n;
  for (std::size_t t = 0; t < total; ++t) {
    for (std::size_t l = 0; l < d; ++l) u[l] = rng.next_uniform();
    for (std::size_t l = 0; l < d; ++l) {
      // Row l consumes U_{t,l} in the intercept and every lag matrix.
      double acc = spec.intercept[l](u[l]);
      for (std::size_t j = 1; j <= p; ++j) {
        const auto& theta = spec.coeff[j - 1];
        const auto& prev = history[(t + p - j) % p];
        for (std::size_t m = 0; m < d; ++m) acc += theta[l * d + m](u[l]) * prev[m];
      }
      x[l] = acc;
    }
    if (p > 0) history[t % p] = x;
    if (t >= burn_in) values.insert(values.end(), x.begin(), x.end());
  }
  return wrap(n, d, std::move(values));
}

TimeSeriesMatrix simulate_var1(const VARModel& model, std::size_t n,
                               std::size_t burn_in, std::uint64_t seed) {
  if (model.A.rows != model.A.cols || model.A.rows < 1)
    throw InvalidArgumentError("VAR(1) coefficient matrix must be square");
  if (n < 1) throw InvalidArgumentError("need n >= 1 observations");
  const std::size_t d = static_cast<std::size_t>(model.A.rows);

  PhiloxStream rng(seed, 0);
  std::vector<double> prev(d, 0.0), x(d);
  std::vector<double> values;
  values.reserve(n * d);
  const std::size_t total = burn_in + n;
  for (std::size_t t = 0; t < total; ++t) {
    for (std::size_t l = 0; l < d; ++l) {
      double acc = rng.next_normal();
      for (std::size_t m = 0; m < d; ++m)
        acc += model.A(static_cast<int>(l), static_cast<int>(m)) * prev[m];
      x[l] = acc;
    }
    prev = x;
    if (t >= burn_in) values.insert(values.end(), x.begin(), x.end());
  }
  return wrap(n, d, std::move(values));
}

TimeSeriesMatrix simulate_toy(ToyKind kind, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidArgumentError("need n >= 2 observations");
  std::vector<double> values(n * 2);

  if (kind == ToyKind::independent_noise) {
    PhiloxStream first(seed, 1);
    PhiloxStream second(seed, 2);
    for (std::size_t t = 0; t < n; ++t) {
      values[t * 2] = first.next_normal();
      values[t * 2 + 1] = second.next_normal();
    }
    return wrap(n, 2, std::move(values));
  }

  // One shared stream of n+1 normals eps_0..eps_n; x_t = eps_{t+1} and the
  // lagged kind takes the square one row earlier.
  PhiloxStream rng(seed, 0);
  std::vector<double> eps(n + 1);
  for (auto& e : eps) e = rng.next_normal();
  for (std::size_t t = 0; t < n; ++t) {
    values[t * 2] = eps[t + 1];
    const double y = kind == ToyKind::eps_square_now ? eps[t + 1] : eps[t];
    values[t * 2 + 1] = y * y;
  }
  return wrap(n, 2, std::move(values));
}

TimeSeriesMatrix simulate_white_noise(double rho, std::size_t n, std::uint64_t seed) {
  if (!(rho > -1.0) || !(rho < 1.0))
    throw InvalidArgumentError("cross correlation must lie in (-1, 1)");
  if (n < 2) throw InvalidArgumentError("need n >= 2 observations");
  PhiloxStream rng(seed, 0);
  const double mix = std::sqrt(1.0 - rho * rho);
  std::vector<double> values(n * 2);
  for (std::size_t t = 0; t < n; ++t) {
    const double e1 = rng.next_normal();
    const double e2 = rng.next_normal();
    values[t * 2] = e1;
    values[t * 2 + 1] = rho * e1 + mix * e2;
  }
  return wrap(n, 2, std::move(values));
}

bool qvar_stable_hint(const QVARSpec& spec) {
  check_qvar_shape(spec);
  if (spec.p == 0) return true;
  for (const auto& lag : spec.coeff)
    for (const auto& f : lag)
      if (f.form == CoeffForm::normal_quantile) return false;

  const int d = spec.d;
  const int p = spec.p;
  // Affine coefficients make the companion matrix affine in u, so the
  // operator norm is maximized at an endpoint.
  for (double u : {0.0, 1.0}) {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d * p, d * p);
    for (int j = 0; j < p; ++j)
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          companion(r, j * d + c) = spec.coeff[j][r * d + c](u);
    for (int j = 1; j < p; ++j)
      for (int r = 0; r < d; ++r) companion(j * d + r, (j - 1) * d + r) = 1.0;
    if (companion.jacobiSvd().singularValues()(0) >= 1.0) return false;
  }
  return true;
}

bool var1_stable(const RealMatrix& A) {
  if (A.rows != A.cols || A.rows < 1) return false;
  Eigen::MatrixXd a(A.rows, A.cols);
  for (int r = 0; r < A.rows; ++r)
    for (int c = 0; c < A.cols; ++c) a(r, c) = A(r, c);
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  double radius = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    radius = std::max(radius, std::abs(es.eigenvalues()(i)));
  return radius < 1.0;
}

}  // namespace qcs
