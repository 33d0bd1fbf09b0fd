#include "qcs/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "qcs/errors.hpp"
#include "qcs/ranks.hpp"
#include "qcs/rng.hpp"
#include "test_util.hpp"

using namespace qcs;
using qcs::test::kPi;

TEST(BivariateNormal, FactorsWhenIndependent) {
  for (double a : {-1.3, 0.0, 0.7, 2.1})
    for (double b : {-0.4, 0.5, 1.9}) {
      const double expect = (1.0 - normal_cdf(a)) * (1.0 - normal_cdf(b));
      EXPECT_NEAR(bivariate_normal_upper(a, b, 0.0), expect, 1e-14);
    }
}

TEST(GaussianCopula, ClosedFormLimits) {
  EXPECT_DOUBLE_EQ(gaussian_copula_cdf(0.3, 0.6, 0.0), 0.3 * 0.6);
  EXPECT_DOUBLE_EQ(gaussian_copula_cdf(0.3, 0.6, 1.0), 0.3);
  EXPECT_DOUBLE_EQ(gaussian_copula_cdf(0.3, 0.6, -1.0), 0.0);
  EXPECT_DOUBLE_EQ(gaussian_copula_cdf(0.7, 0.8, -1.0), 0.5);
  EXPECT_DOUBLE_EQ(gaussian_copula_cdf(0.0, 0.6, 0.4), 0.0);
  EXPECT_DOUBLE_EQ(gaussian_copula_cdf(1.0, 0.6, 0.4), 0.6);
}

TEST(GaussianCopula, MedianClosedForm) {
  // C(1/2, 1/2; rho) = 1/4 + asin(rho) / (2*pi).
  for (double rho = -0.95; rho <= 0.951; rho += 0.1) {
    const double expect = 0.25 + std::asin(rho) / (2.0 * kPi);
    EXPECT_NEAR(gaussian_copula_cdf(0.5, 0.5, rho), expect, 1e-14)
        << "rho = " << rho;
  }
}

TEST(GaussianCopula, SymmetricAndMonotoneInRho) {
  double prev = -1.0;
  for (double rho = -0.9; rho <= 0.91; rho += 0.15) {
    const double c = gaussian_copula_cdf(0.35, 0.65, rho);
    EXPECT_NEAR(c, gaussian_copula_cdf(0.65, 0.35, rho), 1e-14);
    EXPECT_GT(c, prev);
    prev = c;
  }
}

TEST(GaussianCopula, RejectsOutOfRangeArguments) {
  EXPECT_THROW(gaussian_copula_cdf(-0.1, 0.5, 0.0), InvalidArgumentError);
  EXPECT_THROW(gaussian_copula_cdf(0.5, 1.1, 0.0), InvalidArgumentError);
  EXPECT_THROW(gaussian_copula_cdf(0.5, 0.5, 1.2), InvalidArgumentError);
}

TEST(IidCoherency, MedianPairMatchesArcsineLaw) {
  EXPECT_NEAR(iid_quantile_coherency(0.6, 0.5, 0.5),
              2.0 * std::asin(0.6) / kPi, 1e-13);
  EXPECT_NEAR(iid_quantile_coherency(0.3, 0.5, 0.5),
              2.0 * std::asin(0.3) / kPi, 1e-13);
  EXPECT_EQ(iid_quantile_coherency(0.0, 0.5, 0.5), 0.0);
  EXPECT_THROW(iid_quantile_coherency(0.5, 0.0, 0.5), BoundaryQuantileError);
  EXPECT_THROW(iid_quantile_coherency(0.5, 0.5, 1.0), BoundaryQuantileError);
}

TEST(FrechetBounds, ExtremeQuantilePairHitsMinusOneAndOneNineteenth) {
  const auto [lo, hi] = frechet_bounds(0.05, 0.95);
  EXPECT_NEAR(lo, -1.0, 1e-14);
  EXPECT_NEAR(hi, 1.0 / 19.0, 1e-14);
  // Symmetric pair: comonotone bound is +1.
  const auto [lo2, hi2] = frechet_bounds(0.3, 0.3);
  EXPECT_NEAR(hi2, 1.0, 1e-14);
  EXPECT_LT(lo2, 0.0);
}

TEST(Var1Spectrum, ZeroFrequencyHandValue) {
  RealMatrix A(2, 2);
  A(0, 1) = 0.5;
  A(1, 0) = 0.5;
  const auto f = var1_spectrum(A, 0.0);
  const double s = 1.0 / (2.0 * kPi);
  EXPECT_NEAR(f(0, 0).real(), s * 20.0 / 9.0, 1e-12);
  EXPECT_NEAR(f(1, 1).real(), s * 20.0 / 9.0, 1e-12);
  EXPECT_NEAR(f(0, 1).real(), s * 16.0 / 9.0, 1e-12);
  EXPECT_NEAR(f(0, 1).imag(), 0.0, 1e-12);
  EXPECT_NEAR(traditional_coherency(f).real(), 0.8, 1e-12);
}

TEST(Var1Spectrum, NegatedFrequencyIsConjugateTranspose) {
  RealMatrix A(2, 2);
  A(0, 0) = 0.3;
  A(0, 1) = 0.4;
  A(1, 0) = -0.2;
  A(1, 1) = 0.1;
  const auto f = var1_spectrum(A, 0.7);
  const auto g = var1_spectrum(A, -0.7);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      EXPECT_NEAR(std::abs(g(i, j) - std::conj(f(j, i))), 0.0, 1e-13);
}

TEST(Var1Spectrum, UnstableMatrixThrows) {
  EXPECT_THROW(var1_spectrum(RealMatrix::identity(2), 0.3), StabilityError);
}

TEST(QuantileOracle, WhiteNoiseReducesToTheLagZeroCopula) {
  GaussianProcessSpec spec = GaussianProcessSpec::white_noise(0.6);
  QuantileSpectrumOracle oracle(spec);
  EXPECT_EQ(oracle.dimension(), 2);
  for (double omega : {0.0, 0.4, kPi}) {
    // Cross spectrum: flat in omega at (C(t1,t2;rho) - t1*t2)/(2*pi).
    const double expect =
        (gaussian_copula_cdf(0.25, 0.75, 0.6) - 0.25 * 0.75) / (2.0 * kPi);
    const auto v = oracle.at(omega, 0.25, 0.75, 0, 1);
    EXPECT_NEAR(v.real(), expect, 1e-14);
    EXPECT_NEAR(v.imag(), 0.0, 1e-14);
    // Auto spectrum: copula of a variable with itself is the minimum.
    const double auto_expect = (0.25 - 0.25 * 0.25) / (2.0 * kPi);
    EXPECT_NEAR(oracle.at(omega, 0.25, 0.25, 0, 0).real(), auto_expect, 1e-14);
    const double cross_level =
        (std::min(0.25, 0.75) - 0.25 * 0.75) / (2.0 * kPi);
    EXPECT_NEAR(oracle.at(omega, 0.25, 0.75, 1, 1).real(), cross_level, 1e-14);
  }
}

TEST(QuantileOracle, WhiteNoiseAgreesWithIidCoherency) {
  GaussianProcessSpec spec = GaussianProcessSpec::white_noise(0.45);
  QuantileSpectrumOracle oracle(spec);
  const double f12 = oracle.at(0.9, 0.3, 0.7, 0, 1).real();
  const double f11 = oracle.at(0.9, 0.3, 0.3, 0, 0).real();
  const double f22 = oracle.at(0.9, 0.7, 0.7, 1, 1).real();
  EXPECT_NEAR(f12 / std::sqrt(f11 * f22),
              iid_quantile_coherency(0.45, 0.3, 0.7), 1e-13);
}

TEST(QuantileOracle, Var1TruncationIsConverged) {
  RealMatrix A(2, 2);
  A(0, 1) = 0.5;
  A(1, 0) = 0.5;
  GaussianProcessSpec spec = GaussianProcessSpec::var1(A);
  QuantileSpectrumOracle oracle(spec);
  GaussianProcessSpec longer = spec;
  longer.max_lag = 2 * oracle.max_lag();
  QuantileSpectrumOracle oracle2(longer);
  for (double omega : {0.1, 1.0, 2.5})
    EXPECT_NEAR(std::abs(oracle.at(omega, 0.25, 0.75, 0, 1) -
                         oracle2.at(omega, 0.25, 0.75, 0, 1)),
                0.0, 1e-10);
}

TEST(QuantileOracle, ZeroCouplingVarMatchesWhiteNoise) {
  GaussianProcessSpec spec = GaussianProcessSpec::var1(RealMatrix(2, 2));
  QuantileSpectrumOracle oracle(spec);
  EXPECT_NEAR(std::abs(oracle.at(0.3, 0.25, 0.75, 0, 1)), 0.0, 1e-14);
  EXPECT_NEAR(oracle.at(0.3, 0.25, 0.75, 0, 0).real(),
              (0.25 - 0.25 * 0.75) / (2.0 * kPi), 1e-14);
}

TEST(QuantileOracle, HermitianInFrequencyAndAtoms) {
  RealMatrix A(2, 2);
  A(0, 0) = 0.2;
  A(0, 1) = 0.5;
  A(1, 0) = 0.1;
  A(1, 1) = -0.3;
  QuantileSpectrumOracle oracle(GaussianProcessSpec::var1(A));
  const auto v = oracle.at(0.8, 0.25, 0.75, 0, 1);
  EXPECT_NEAR(std::abs(oracle.at(-0.8, 0.25, 0.75, 0, 1) - std::conj(v)), 0.0,
              1e-13);
  EXPECT_NEAR(std::abs(oracle.at(0.8, 0.75, 0.25, 1, 0) - std::conj(v)), 0.0,
              1e-13);
}

TEST(QuantileOracle, FiniteDifferenceMatchesExactFourierDerivative) {
  RealMatrix A(2, 2);
  A(0, 1) = 0.5;
  A(1, 0) = 0.5;
  QuantileSpectrumOracle oracle(GaussianProcessSpec::var1(A));
  for (int order = 1; order <= 3; ++order) {
    const auto fd = oracle.derivative(0.7, order, 0.25, 0.75, 0, 1);
    const auto exact = oracle.fourier_derivative(0.7, order, 0.25, 0.75, 0, 1);
    EXPECT_NEAR(std::abs(fd - exact), 0.0, 1e-6 * (1.0 + std::abs(exact)))
        << "order " << order;
  }
}

TEST(QuantileOracle, WrapperMatchesClassPath) {
  GaussianProcessSpec spec = GaussianProcessSpec::white_noise(0.3);
  QuantileSpectrumOracle oracle(spec);
  EXPECT_EQ(gaussian_quantile_spectrum(spec, 0.5, 0.25, 0.5, 0, 1),
            oracle.at(0.5, 0.25, 0.5, 0, 1));
}

TEST(BiasOracle, VanishesForFlatSpectraAndFirstOrder) {
  const KernelSpec ep{KernelKind::epanechnikov, 2};
  GaussianProcessSpec wn = GaussianProcessSpec::white_noise(0.5);
  const auto zero = bias_matrix(wn, 0.7, 0.25, 0.75, 0.1, ep, 4);
  for (const auto& v : zero.v) EXPECT_NEAR(std::abs(v), 0.0, 1e-14);

  RealMatrix A(2, 2);
  A(0, 1) = 0.5;
  A(1, 0) = 0.5;
  GaussianProcessSpec var = GaussianProcessSpec::var1(A);
  const auto first = bias_matrix(var, 0.7, 0.25, 0.75, 0.1, ep, 1);
  for (const auto& v : first.v) EXPECT_EQ(std::abs(v), 0.0);
}

TEST(BiasOracle, ShrinksWithTheBandwidth) {
  const KernelSpec ep{KernelKind::epanechnikov, 2};
  RealMatrix A(2, 2);
  A(0, 1) = 0.5;
  A(1, 0) = 0.5;
  GaussianProcessSpec var = GaussianProcessSpec::var1(A);
  const auto full = bias_matrix(var, 0.5, 0.25, 0.75, 0.2, ep, 2);
  const auto half = bias_matrix(var, 0.5, 0.25, 0.75, 0.1, ep, 2);
  double nf = 0.0, nh = 0.0;
  for (const auto& v : full.v) nf += std::norm(v);
  for (const auto& v : half.v) nh += std::norm(v);
  ASSERT_GT(nf, 0.0);
  // Second-order kernel: leading bias scales like b^2, so norms shrink ~16x.
  EXPECT_LT(nh, 0.3 * nf);
}

TEST(DirectReference, TwoPointHandValue) {
  const auto X = make_time_series(2, 1, {0.0, 1.0});
  for (double omega : {0.0, kPi}) {
    const auto v = direct_ccr_reference(X, omega, 0.5, 0.5, 0, 0);
    EXPECT_NEAR(v.real(), 1.0 / (4.0 * kPi), 1e-15);
    EXPECT_NEAR(v.imag(), 0.0, 1e-15);
  }
}

TEST(DirectReference, ValidatesComponentIndices) {
  const auto X = qcs::test::coupled_var1(32, 51);
  EXPECT_THROW(direct_ccr_reference(X, 0.5, 0.5, 0.5, 0, 2),
               InvalidArgumentError);
  EXPECT_THROW(direct_ccr_reference(X, 0.5, 0.5, 0.5, -1, 0),
               InvalidArgumentError);
}
