#include "qcs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "qcs/errors.hpp"
#include "qcs/rng.hpp"

namespace qcs {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Gauss-Legendre half-weights and nodes used by Genz's BVND rule
// (6, 12 and 20 point sets for |r| < 0.3, < 0.75 and the rest).
constexpr double kW6[3] = {0.1713244923791704, 0.3607615730481386,
                           0.4679139345726910};
constexpr double kX6[3] = {-0.9324695142031521, -0.6612093864662645,
                           -0.2386191860831969};
constexpr double kW12[6] = {0.04717533638651183, 0.1069393259953184,
                            0.1600783285433462,  0.2031674267230659,
                            0.2334925365383548,  0.2491470458134028};
constexpr double kX12[6] = {-0.9815606342467192, -0.9041172563704749,
                            -0.7699026741943047, -0.5873179542866175,
                            -0.3678314989981802, -0.1252334085114689};
constexpr double kW20[10] = {0.01761400713915212, 0.04060142980038694,
                             0.06267204833410907, 0.08327674157670475,
                             0.1019301198172404,  0.1181945319615184,
                             0.1316886384491766,  0.1420961093183820,
                             0.1491729864726037,  0.1527533871307258};
constexpr double kX20[10] = {-0.9931285991850949,  -0.9639719272779138,
                             -0.9122344282513259,  -0.8391169718222188,
                             -0.7463319064601508,  -0.6360536807265150,
                             -0.5108670019508271,  -0.3737060887154195,
                             -0.2277858511416451,  -0.07652652113349733};

void check_open_tau(double tau, const char* which) {
  if (!(tau > 0.0) || !(tau < 1.0)) {
    std::ostringstream msg;
    msg << which << " must lie strictly inside (0, 1), got " << tau;
    throw BoundaryQuantileError(msg.str());
  }
}

double frechet_denominator(double tau1, double tau2) {
  return std::sqrt(tau1 * (1.0 - tau1)) * std::sqrt(tau2 * (1.0 - tau2));
}

Eigen::MatrixXd to_eigen(const RealMatrix& m) {
  Eigen::MatrixXd out(m.rows, m.cols);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) out(r, c) = m(r, c);
  return out;
}

double spectral_radius(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, /*computeEigenvectors=*/false);
  double radius = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    radius = std::max(radius, std::abs(es.eigenvalues()(i)));
  return radius;
}
}  // namespace

double bivariate_normal_upper(double dh, double dk, double r) {
  // Genz (2004) BVND, translated from tvpack; abs error below 1e-14.
  const double* xw;
  const double* ww;
  int lg;
  const double ar = std::abs(r);
  if (ar < 0.3) {
    xw = kX6;
    ww = kW6;
    lg = 3;
  } else if (ar < 0.75) {
    xw = kX12;
    ww = kW12;
    lg = 6;
  } else {
    xw = kX20;
    ww = kW20;
    lg = 10;
  }

  double h = dh;
  double k = dk;
  double hk = h * k;
  double bvn = 0.0;
  if (ar < 0.925) {
    if (ar > 0.0) {
      const double hs = (h * h + k * k) / 2.0;
      const double asr = std::asin(r);
      for (int i = 0; i < lg; ++i) {
        for (int is = -1; is <= 1; is += 2) {
          const double sn = std::sin(asr * (is * xw[i] + 1.0) / 2.0);
          bvn += ww[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
        }
      }
      bvn *= asr / (2.0 * kTwoPi);
    }
    return bvn + normal_cdf(-h) * normal_cdf(-k);
  }

  if (r < 0.0) {
    k = -k;
    hk = -hk;
  }
  if (ar < 1.0) {
    const double as = (1.0 - r) * (1.0 + r);
    double a = std::sqrt(as);
    const double bs = (h - k) * (h - k);
    const double c = (4.0 - hk) / 8.0;
    const double d = (12.0 - hk) / 16.0;
    double asr = -(bs / as + hk) / 2.0;
    if (asr > -100.0)
      bvn = a * std::exp(asr) *
            (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
    if (-hk < 100.0) {
      const double b = std::sqrt(bs);
      bvn -= std::exp(-hk / 2.0) * std::sqrt(kTwoPi) * normal_cdf(-b / a) * b *
             (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
    }
    a /= 2.0;
    for (int i = 0; i < lg; ++i) {
      for (int is = -1; is <= 1; is += 2) {
        const double x = a * (is * xw[i] + 1.0);
        const double xs = x * x;
        const double rs = std::sqrt(1.0 - xs);
        asr = -(bs / xs + hk) / 2.0;
        if (asr > -100.0) {
          bvn += a * ww[i] * std::exp(asr) *
                 (std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs -
                  (1.0 + c * xs * (1.0 + d * xs)));
        }
      }
    }
    bvn = -bvn / kTwoPi;
  }
  if (r > 0.0) return bvn + normal_cdf(-std::max(h, k));
  bvn = -bvn;
  if (k > h) bvn += normal_cdf(k) - normal_cdf(h);
  return bvn;
}

double gaussian_copula_cdf(double tau1, double tau2, double rho) {
  if (!(tau1 >= 0.0 && tau1 <= 1.0) || !(tau2 >= 0.0 && tau2 <= 1.0))
    throw InvalidArgumentError("copula arguments must lie in [0, 1]");
  if (!(rho >= -1.0 && rho <= 1.0))
    throw InvalidArgumentError("correlation must lie in [-1, 1]");
  // Exact limits keep the independence and comonotone cases free of
  // quadrature and normal-quantile roundtrip error.
  if (tau1 == 0.0 || tau2 == 0.0) return 0.0;
  if (tau1 == 1.0) return tau2;
  if (tau2 == 1.0) return tau1;
  if (rho == 0.0) return tau1 * tau2;
  if (rho == 1.0) return std::min(tau1, tau2);
  if (rho == -1.0) return std::max(tau1 + tau2 - 1.0, 0.0);
  const double x1 = inverse_normal_cdf(tau1);
  const double x2 = inverse_normal_cdf(tau2);
  return bivariate_normal_upper(-x1, -x2, rho);
}

double iid_quantile_coherency(double rho, double tau1, double tau2) {
  check_open_tau(tau1, "tau1");
  check_open_tau(tau2, "tau2");
  return (gaussian_copula_cdf(tau1, tau2, rho) - tau1 * tau2) /
         frechet_denominator(tau1, tau2);
}

std::pair<double, double> frechet_bounds(double tau1, double tau2) {
  check_open_tau(tau1, "tau1");
  check_open_tau(tau2, "tau2");
  const double denom = frechet_denominator(tau1, tau2);
  const double lower = (std::max(tau1 + tau2 - 1.0, 0.0) - tau1 * tau2) / denom;
  const double upper = (std::min(tau1, tau2) - tau1 * tau2) / denom;
  return {lower, upper};
}

ComplexMatrix var1_spectrum(const RealMatrix& A, double omega) {
  if (A.rows != A.cols || A.rows < 1)
    throw InvalidArgumentError("VAR(1) coefficient matrix must be square");
  const Eigen::MatrixXd a = to_eigen(A);
  if (!(spectral_radius(a) < 1.0))
    throw StabilityError("VAR(1) coefficient matrix has spectral radius >= 1");
  const int d = A.rows;
  const std::complex<double> phase = std::polar(1.0, -omega);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d) - phase * a.cast<std::complex<double>>();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  if (!lu.isInvertible())
    throw NumericalSingularityError("transfer matrix I - A e^{-i omega} is singular");
  const Eigen::MatrixXcd b = lu.inverse();
  const Eigen::MatrixXcd f = (b * b.adjoint()) / kTwoPi;
  ComplexMatrix out(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) out(r, c) = f(r, c);
  return out;
}

std::complex<double> traditional_coherency(const ComplexMatrix& f, int j1, int j2) {
  const double f11 = f(j1, j1).real();
  const double f22 = f(j2, j2).real();
  if (!(f11 > 0.0) || !(f22 > 0.0))
    throw DegenerateDenominatorError("spectral matrix diagonal is not strictly positive");
  return f(j1, j2) / std::sqrt(f11 * f22);
}

std::complex<double> traditional_coherency(const ComplexMatrix& f) {
  return traditional_coherency(f, 0, 1);
}

GaussianProcessSpec GaussianProcessSpec::white_noise(double rho) {
  if (!(rho > -1.0) || !(rho < 1.0))
    throw InvalidArgumentError("white noise cross correlation must lie in (-1, 1)");
  GaussianProcessSpec spec;
  spec.kind = Kind::white_noise;
  spec.rho = rho;
  return spec;
}

GaussianProcessSpec GaussianProcessSpec::var1(RealMatrix A) {
  if (A.rows != A.cols || A.rows < 1)
    throw InvalidArgumentError("VAR(1) coefficient matrix must be square");
  GaussianProcessSpec spec;
  spec.kind = Kind::var1;
  spec.A = std::move(A);
  return spec;
}

QuantileSpectrumOracle::QuantileSpectrumOracle(const GaussianProcessSpec& spec)
    : spec_(spec) {
  if (spec_.kind == GaussianProcessSpec::Kind::white_noise) {
    d_ = 2;
    L_ = 0;
    rho_.assign(4, std::vector<double>(1, 0.0));
    rho_[0][0] = 1.0;
    rho_[1][0] = spec_.rho;
    rho_[2][0] = spec_.rho;
    rho_[3][0] = 1.0;
    return;
  }

  const Eigen::MatrixXd a = to_eigen(spec_.A);
  d_ = spec_.A.rows;
  if (!(spectral_radius(a) < 1.0))
    throw StabilityError("VAR(1) coefficient matrix has spectral radius >= 1");

  // c_0 = sum_j A^j (A^j)', truncated once a term's norm drops below 1e-14.
  Eigen::MatrixXd c0 = Eigen::MatrixXd::Zero(d_, d_);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(d_, d_);
  for (int j = 0; j < 100000; ++j) {
    const Eigen::MatrixXd term = power * power.transpose();
    c0 += term;
    if (term.norm() < 1e-14) break;
    power = a * power;
  }

  const double q = a.jacobiSvd().singularValues()(0);
  if (spec_.max_lag > 0) {
    L_ = spec_.max_lag;
  } else if (q < 1.0) {
    // tail sum_{k>L} ||c_k|| <= ||c_0|| q^{L+1} / (1-q) < tolerance
    const double target = spec_.tolerance * (1.0 - q) / std::max(c0.norm(), 1e-300);
    L_ = static_cast<int>(std::ceil(std::log(std::max(target, 1e-300)) / std::log(q)));
    L_ = std::max(L_, 64);
  } else {
    // operator norm >= 1 with spectral radius < 1: walk the powers directly
    Eigen::MatrixXd pk = a;
    int k = 1;
    while (pk.norm() >= spec_.tolerance && k < 65536) {
      pk = a * pk;
      ++k;
    }
    if (k >= 65536)
      throw StabilityError("lag truncation did not converge; matrix is too close to instability");
    L_ = std::max(k, 64);
  }

  rho_.assign(static_cast<std::size_t>(d_) * d_, std::vector<double>(L_ + 1, 0.0));
  std::vector<double> scale(d_);
  for (int j = 0; j < d_; ++j) scale[j] = std::sqrt(c0(j, j));
  Eigen::MatrixXd ck = c0;
  for (int k = 0; k <= L_; ++k) {
    for (int j1 = 0; j1 < d_; ++j1) {
      for (int j2 = 0; j2 < d_; ++j2) {
        double r = ck(j1, j2) / (scale[j1] * scale[j2]);
        r = std::clamp(r, -1.0, 1.0);
        rho_[static_cast<std::size_t>(j1) * d_ + j2][k] = r;
      }
    }
    ck = a * ck;
  }
}

std::complex<double> QuantileSpectrumOracle::at(double omega, double tau1, double tau2,
                                                int j1, int j2) const {
  if (j1 < 0 || j1 >= d_ || j2 < 0 || j2 >= d_)
    throw InvalidArgumentError("component index out of range");
  const double tt = tau1 * tau2;
  const auto gamma = [&](double r) { return gaussian_copula_cdf(tau1, tau2, r) - tt; };
  const auto& fwd = rho_[static_cast<std::size_t>(j1) * d_ + j2];
  const auto& rev = rho_[static_cast<std::size_t>(j2) * d_ + j1];
  std::complex<double> acc(gamma(fwd[0]), 0.0);
  for (int k = 1; k <= L_; ++k) {
    // rho_{-k}^{j1 j2} = rho_k^{j2 j1}
    const double gp = gamma(fwd[k]);
    const double gm = gamma(rev[k]);
    const double c = std::cos(k * omega);
    const double s = std::sin(k * omega);
    acc += std::complex<double>((gp + gm) * c, (gm - gp) * s);
  }
  return acc / kTwoPi;
}

std::complex<double> QuantileSpectrumOracle::derivative(double omega, int order,
                                                        double tau1, double tau2,
                                                        int j1, int j2) const {
  if (order < 0 || order > 4)
    throw InvalidArgumentError("derivative order must lie in 0..4");
  if (order == 0) return at(omega, tau1, tau2, j1, j2);
  const auto f = [&](double w) { return at(w, tau1, tau2, j1, j2); };
  const auto stencil = [&](double h) -> std::complex<double> {
    switch (order) {
      case 1:
        return (f(omega + h) - f(omega - h)) / (2.0 * h);
      case 2:
        return (f(omega + h) - 2.0 * f(omega) + f(omega - h)) / (h * h);
      case 3:
        return (f(omega + 2 * h) - 2.0 * f(omega + h) + 2.0 * f(omega - h) -
                f(omega - 2 * h)) /
               (2.0 * h * h * h);
      default:
        return (f(omega + 2 * h) - 4.0 * f(omega + h) + 6.0 * f(omega) -
                4.0 * f(omega - h) + f(omega - 2 * h)) /
               (h * h * h * h);
    }
  };
  // central differences are O(h^2); one Richardson step cancels that term
  const double h = 1e-3;
  return (4.0 * stencil(h / 2.0) - stencil(h)) / 3.0;
}

std::complex<double> QuantileSpectrumOracle::fourier_derivative(double omega, int order,
                                                                double tau1, double tau2,
                                                                int j1, int j2) const {
  if (order < 0) throw InvalidArgumentError("derivative order must be nonnegative");
  const double tt = tau1 * tau2;
  const auto gamma = [&](double r) { return gaussian_copula_cdf(tau1, tau2, r) - tt; };
  const auto& fwd = rho_[static_cast<std::size_t>(j1) * d_ + j2];
  const auto& rev = rho_[static_cast<std::size_t>(j2) * d_ + j1];
  std::complex<double> acc(0.0, 0.0);
  if (order == 0) acc = gamma(fwd[0]);
  for (int k = 1; k <= L_; ++k) {
    const std::complex<double> ik(0.0, static_cast<double>(k));
    const std::complex<double> dp = std::pow(-ik, order);
    const std::complex<double> dm = std::pow(ik, order);
    acc += gamma(fwd[k]) * dp * std::polar(1.0, -k * omega);
    acc += gamma(rev[k]) * dm * std::polar(1.0, k * omega);
  }
  return acc / kTwoPi;
}

std::complex<double> gaussian_quantile_spectrum(const GaussianProcessSpec& spec,
                                                double omega, double tau1, double tau2,
                                                int j1, int j2) {
  return QuantileSpectrumOracle(spec).at(omega, tau1, tau2, j1, j2);
}

ComplexMatrix bias_matrix(const GaussianProcessSpec& spec, double omega,
                          double tau1, double tau2, double b_n,
                          const KernelSpec& kernel, int k_order) {
  if (k_order < 1) throw InvalidArgumentError("k_order must be >= 1");
  if (!(b_n > 0.0)) throw BandwidthError("bandwidth must be positive");
  QuantileSpectrumOracle oracle(spec);
  const int d = oracle.dimension();
  ComplexMatrix out(d, d);
  double factorial = 1.0;
  double bpow = b_n;
  for (int order = 2; order <= k_order; ++order) {
    factorial *= order;
    bpow *= b_n;
    const double moment = kernel_moment(kernel, order);
    if (moment == 0.0) continue;
    const double coeff = bpow / factorial * moment;
    for (int j1 = 0; j1 < d; ++j1)
      for (int j2 = 0; j2 < d; ++j2)
        out(j1, j2) += coeff * oracle.derivative(omega, order, tau1, tau2, j1, j2);
  }
  return out;
}

std::complex<double> direct_ccr_reference(const TimeSeriesMatrix& X, double omega,
                                          double tau1, double tau2, int j1, int j2) {
  check_open_tau(tau1, "tau1");
  check_open_tau(tau2, "tau2");
  if (j1 < 0 || static_cast<std::size_t>(j1) >= X.d || j2 < 0 ||
      static_cast<std::size_t>(j2) >= X.d)
    throw InvalidArgumentError("component index out of range");
  const std::size_t n = X.n;

  // Literal counting ranks and explicit exponential sums; no shared code
  // with the transform path beyond the documented clip rule.
  const auto transform = [&](int j, double tau) {
    const double threshold =
        static_cast<double>(n) * tau + 1e-12 * static_cast<double>(n);
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      std::size_t rank = 0;
      for (std::size_t s = 0; s < n; ++s)
        if (X.at(s, j) <= X.at(t, j)) ++rank;
      if (static_cast<double>(rank) <= threshold)
        acc += std::polar(1.0, -omega * static_cast<double>(t));
    }
    return acc;
  };

  const std::complex<double> d1 = transform(j1, tau1);
  const std::complex<double> d2 = transform(j2, tau2);
  return d1 * std::conj(d2) / (kTwoPi * static_cast<double>(n));
}

}  // namespace qcs
