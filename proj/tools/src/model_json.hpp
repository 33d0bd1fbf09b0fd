#pragma once

#include <cstdint>
#include <string>

#include "qcs/grids.hpp"
#include "qcs/models.hpp"
#include "qcs/oracle.hpp"

namespace qcs::cli {

// Model description loaded from JSON. Supported shapes:
//   {"type":"qvar","p":1,"d":2,
//    "coeff":[{"lag":1,"row":0,"col":1,"form":"linear","params":[0,1.2]},...],
//    "intercept":[{"row":0,"form":"normal_quantile"},...]}
//   {"type":"var1","A":[[0,0.5],[0.5,0]]}
//   {"type":"toy","kind":"eps_square_now"}
//   {"type":"white_noise","rho":0.6}
// Rows and columns are 0-based; omitted coefficients stay constant(0).
struct ModelSpec {
  enum class Type { qvar, var1, toy, white_noise };
  Type type = Type::white_noise;
  QVARSpec qvar;
  VARModel var1;
  ToyKind toy = ToyKind::eps_square_now;
  double rho = 0.0;
};

ModelSpec load_model_json(const std::string& path);

TimeSeriesMatrix simulate_model(const ModelSpec& model, std::size_t n,
                                std::size_t burn_in, std::uint64_t seed);

// Closed-form spectral description; only white_noise and var1 have one.
GaussianProcessSpec oracle_spec(const ModelSpec& model);

}  // namespace qcs::cli
