#include "qcs/periodogram.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "qcs/grids.hpp"
#include "qcs/oracle.hpp"
#include "qcs/ranks.hpp"
#include "test_util.hpp"

using namespace qcs;
using qcs::test::kPi;

namespace {

QuantileDFT dft_of(const TimeSeriesMatrix& X, const std::vector<double>& levels) {
  const auto grid = validate_quantile_grid(levels);
  return quantile_dft(clip_matrix(rank_matrix(X), grid));
}

}  // namespace

TEST(QuantileDft, TwoPointHandCase) {
  // Ranks {1,2}, tau = 0.5 clips to bits {1,0}: the transform of a unit
  // impulse at t = 0 is identically one.
  const auto X = make_time_series(2, 1, {0.0, 1.0});
  const auto D = dft_of(X, {0.5});
  EXPECT_EQ(D.coeff(0, 0, 0), std::complex<double>(1.0, 0.0));
  EXPECT_EQ(D.coeff(0, 0, 1), std::complex<double>(1.0, 0.0));
}

TEST(QuantileDft, ZeroFrequencyCountsIndicators) {
  const auto X = qcs::test::coupled_var1(100, 21);
  const auto D = dft_of(X, {0.05, 0.25, 0.5});
  for (int j = 0; j < D.d; ++j) {
    for (int k = 0; k < D.K; ++k) {
      const double expect = std::floor(100.0 * D.levels[k] + 0.5);
      EXPECT_DOUBLE_EQ(D.coeff(j, k, 0).real(), expect);
      EXPECT_EQ(D.coeff(j, k, 0).imag(), 0.0);
    }
  }
}

TEST(QuantileDft, ConjugationIdentityIsExact) {
  const auto X = qcs::test::coupled_var1(96, 22);
  const auto D = dft_of(X, {0.25, 0.75});
  for (int j = 0; j < D.d; ++j)
    for (int k = 0; k < D.K; ++k)
      for (std::size_t s = 1; s < 96; ++s)
        EXPECT_EQ(D.coeff(j, k, 96 - s), std::conj(D.coeff(j, k, s)));
}

TEST(QuantileDft, RealAtZeroAndNyquist) {
  const auto X = qcs::test::coupled_var1(64, 23);
  const auto D = dft_of(X, {0.5});
  for (int j = 0; j < D.d; ++j) {
    EXPECT_EQ(D.coeff(j, 0, 0).imag(), 0.0);
    EXPECT_EQ(D.coeff(j, 0, 32).imag(), 0.0);
  }
}

TEST(Periodogram, MatchesDefinitionInBothOrientations) {
  const auto X = qcs::test::coupled_var1(64, 24);
  const auto D = dft_of(X, {0.25, 0.5, 0.75});
  const auto I = ccr_periodogram_matrix(D);
  const double scale = 1.0 / (2.0 * kPi * 64.0);
  for (int j1 = 0; j1 < 2; ++j1)
    for (int j2 = 0; j2 < 2; ++j2)
      for (int k1 = 0; k1 < 3; ++k1)
        for (int k2 = 0; k2 < 3; ++k2)
          for (std::size_t s = 0; s < 64; s += 7) {
            const auto expect =
                D.coeff(j1, k1, s) * std::conj(D.coeff(j2, k2, s)) * scale;
            EXPECT_NEAR(std::abs(I.value(j1, j2, k1, k2, s) - expect), 0.0,
                        1e-12 * (1.0 + std::abs(expect)));
          }
}

TEST(Periodogram, HermitianSwapIsExactAndDiagonalReal) {
  const auto X = qcs::test::coupled_var1(128, 25);
  const auto I = ccr_periodogram_matrix(dft_of(X, {0.25, 0.75}));
  for (std::size_t s = 0; s < 128; s += 11) {
    for (int k1 = 0; k1 < 2; ++k1)
      for (int k2 = 0; k2 < 2; ++k2) {
        EXPECT_EQ(I.value(0, 1, k1, k2, s), std::conj(I.value(1, 0, k2, k1, s)));
        EXPECT_EQ(I.value(0, 0, k1, k2, s), std::conj(I.value(0, 0, k2, k1, s)));
      }
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        EXPECT_EQ(I.value(j, j, k, k, s).imag(), 0.0);
        EXPECT_GE(I.value(j, j, k, k, s).real(), 0.0);
      }
  }
}

TEST(Periodogram, TwoPointHandValue) {
  const auto X = make_time_series(2, 1, {0.0, 1.0});
  const auto I = ccr_periodogram_matrix(dft_of(X, {0.5}));
  EXPECT_NEAR(I.value(0, 0, 0, 0, 0).real(), 1.0 / (4.0 * kPi), 1e-15);
  EXPECT_NEAR(I.value(0, 0, 0, 0, 1).real(), 1.0 / (4.0 * kPi), 1e-15);
}

TEST(Periodogram, AgreesWithDirectReferenceAtSixteenPoints) {
  const auto X = qcs::test::coupled_var1(16, 26);
  const auto I = ccr_periodogram_matrix(dft_of(X, {0.25, 0.5, 0.75}));
  const std::vector<double> taus{0.25, 0.5, 0.75};
  for (std::size_t s = 0; s < 16; ++s) {
    const double omega = 2.0 * kPi * static_cast<double>(s) / 16.0;
    for (int k1 = 0; k1 < 3; ++k1)
      for (int k2 = 0; k2 < 3; ++k2) {
        const auto direct =
            direct_ccr_reference(X, omega, taus[k1], taus[k2], 0, 1);
        const auto fast = I.value(0, 1, k1, k2, s);
        EXPECT_NEAR(std::abs(fast - direct), 0.0,
                    1e-10 * (1.0 + std::abs(direct)));
      }
  }
}
