#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "qcs/grids.hpp"
#include "qcs/matrix.hpp"

namespace qcs {

// P(X > dh, Y > dk) for a standard bivariate normal pair with correlation r.
// Genz's BVND rule (tvpack): arcsine-transformed Gauss-Legendre quadrature
// for |r| < 0.925, the tail expansion otherwise; absolute error below 1e-14.
double bivariate_normal_upper(double dh, double dk, double r);

// Gaussian copula C(tau1, tau2; rho). Boundary taus and rho in {-1, 0, 1}
// are returned in closed form, so the independence, comonotone and
// countermonotone limits are exact.
double gaussian_copula_cdf(double tau1, double tau2, double rho);

// (C(tau1, tau2; rho) - tau1*tau2) / sqrt(tau1(1-tau1) tau2(1-tau2)):
// the quantile coherency of correlated Gaussian white noise, constant in
// frequency. Boundary taus raise BoundaryQuantileError.
double iid_quantile_coherency(double rho, double tau1, double tau2);

// Coherency bounds induced by the Frechet-Hoeffding extreme copulas,
// (lower, upper); any serially independent pair lies inside.
std::pair<double, double> frechet_bounds(double tau1, double tau2);

// f(omega) = (2*pi)^{-1} (I - A e^{-i omega})^{-1} (I - A' e^{+i omega})^{-1}
// for a VAR(1) with unit innovation covariance.
ComplexMatrix var1_spectrum(const RealMatrix& A, double omega);

// R = f12 / sqrt(f11 * f22) from a 2x2 (or larger, using the leading block's
// indices j1=0, j2=1) spectral matrix.
std::complex<double> traditional_coherency(const ComplexMatrix& f);
std::complex<double> traditional_coherency(const ComplexMatrix& f, int j1, int j2);

// A Gaussian process whose quantile spectra have closed form: correlated
// white noise or a stable VAR(1) with unit innovation covariance.
struct GaussianProcessSpec {
  enum class Kind { white_noise, var1 };
  Kind kind = Kind::white_noise;
  double rho = 0.0;    // white noise cross correlation
  RealMatrix A;        // VAR(1) coefficient matrix
  int max_lag = 0;     // 0 = choose from the geometric tail bound
  double tolerance = 1e-12;

  static GaussianProcessSpec white_noise(double rho);
  static GaussianProcessSpec var1(RealMatrix A);

  int dimension() const { return kind == Kind::white_noise ? 2 : A.rows; }
};

// Quantile cross-spectra of a Gaussian process via the per-lag copula
// transform of the autocorrelations:
//   gamma_k = C(tau1, tau2; rho_k) - tau1 tau2,
//   f(omega) = (2*pi)^{-1} sum_{|k| <= L} gamma_k e^{-i k omega}.
// The lag correlation tables are precomputed once; evaluations are pure.
class QuantileSpectrumOracle {
 public:
  explicit QuantileSpectrumOracle(const GaussianProcessSpec& spec);

  int dimension() const { return d_; }
  int max_lag() const { return L_; }

  std::complex<double> at(double omega, double tau1, double tau2, int j1, int j2) const;

  // order-th omega derivative by central differences with step h = 1e-3 and
  // one Richardson refinement; fixed so reported bias values are reproducible.
  std::complex<double> derivative(double omega, int order, double tau1, double tau2,
                                  int j1, int j2) const;

  // Exact derivative of the truncated Fourier sum, for cross-checking the
  // finite-difference path.
  std::complex<double> fourier_derivative(double omega, int order, double tau1,
                                          double tau2, int j1, int j2) const;

 private:
  GaussianProcessSpec spec_;
  int d_ = 0;
  int L_ = 0;
  // rho_[j1 * d + j2][k] for k = 0..L; negative lags via rho_{-k} = rho_k'.
  std::vector<std::vector<double>> rho_;
};

// One-shot wrapper around the oracle.
std::complex<double> gaussian_quantile_spectrum(const GaussianProcessSpec& spec,
                                                double omega, double tau1, double tau2,
                                                int j1, int j2);

// Smoothing bias sum_{l=2}^{k_order} (b_n^l / l!) (int v^l W) f^{(l)}(omega),
// elementwise over the component pairs at one (tau1, tau2).
ComplexMatrix bias_matrix(const GaussianProcessSpec& spec, double omega,
                          double tau1, double tau2, double b_n,
                          const KernelSpec& kernel, int k_order);

// Literal rank-indicator periodogram at one frequency: explicit ranks on
// columns (j1, j2), explicit complex-exponential sums, product over 2*pi*n.
// Independent of the transform-based path so it can vouch for it.
std::complex<double> direct_ccr_reference(const TimeSeriesMatrix& X, double omega,
                                          double tau1, double tau2, int j1, int j2);

}  // namespace qcs
