#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qcs/grids.hpp"
#include "qcs/matrix.hpp"

namespace qcs {

// The three primitive coefficient forms; everything simulated here is
// reproducible bit for bit, so arbitrary callables are deliberately out.
enum class CoeffForm { constant, linear, normal_quantile };

struct CoeffFunc {
  CoeffForm form = CoeffForm::constant;
  double a = 0.0;  // constant value, or the linear intercept
  double b = 0.0;  // linear slope against (u - 0.5)

  double operator()(double u) const;

  static CoeffFunc constant(double c) { return {CoeffForm::constant, c, 0.0}; }
  static CoeffFunc linear(double alpha, double beta) {
    return {CoeffForm::linear, alpha, beta};
  }
  static CoeffFunc normal_quantile() { return {CoeffForm::normal_quantile, 0.0, 0.0}; }
};

// X_t = sum_{j=1..p} Theta_j(U_t) X_{t-j} + theta_0(U_t), where every
// function in row l is driven by the same uniform U_{t,l}.
struct QVARSpec {
  int p = 0;
  int d = 0;
  std::vector<std::vector<CoeffFunc>> coeff;  // coeff[j-1][row*d + col]
  std::vector<CoeffFunc> intercept;           // one per row
};

// X_t = A X_{t-1} + eps_t with standard normal innovations.
struct VARModel {
  RealMatrix A;
};

enum class ToyKind { eps_square_now, eps_square_lag1, independent_noise };

TimeSeriesMatrix simulate_qvar(const QVARSpec& spec, std::size_t n,
                               std::size_t burn_in, std::uint64_t seed);

TimeSeriesMatrix simulate_var1(const VARModel& model, std::size_t n,
                               std::size_t burn_in, std::uint64_t seed);

// (eps_t, eps_t^2), (eps_t, eps_{t-1}^2), or two independent normal columns.
// The squared variants share one normal stream of n+1 draws, so the lagged
// kind is the unlagged kind with the second column shifted one row.
TimeSeriesMatrix simulate_toy(ToyKind kind, std::size_t n, std::uint64_t seed);

// Correlated Gaussian white noise: x = e1, y = rho*e1 + sqrt(1-rho^2)*e2.
TimeSeriesMatrix simulate_white_noise(double rho, std::size_t n, std::uint64_t seed);

// Sufficient stability check sup_u ||companion(Theta(u))||_2 < 1, evaluable
// only when no lag coefficient is the unbounded normal-quantile form; the
// affine forms attain the sup at u in {0,1}. Returns false when the check
// cannot certify stability (the simulation itself is still permitted).
bool qvar_stable_hint(const QVARSpec& spec);

bool var1_stable(const RealMatrix& A);

}  // namespace qcs
