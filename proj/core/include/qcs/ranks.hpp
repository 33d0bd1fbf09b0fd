#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qcs/grids.hpp"

namespace qcs {

// Per-column maximum ranks: ranks[t*d + j] = #{s : X[s,j] <= X[t,j]}.
// With distinct values each column is a permutation of 1..n; tied entries
// share the largest rank of their tie group.
struct RankMatrix {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<std::int64_t> ranks;

  std::int64_t at(std::size_t t, std::size_t j) const { return ranks[t * d + j]; }
};

std::vector<std::int64_t> max_ranks(const std::vector<double>& column);

RankMatrix rank_matrix(const TimeSeriesMatrix& x);

// Indicator series I{rank <= n*tau}. The comparison carries a +1e-12*n nudge
// so that grid levels whose product n*tau lands one ulp below an integer
// still count that integer in (e.g. tau = 0.05 with n a multiple of 20).
std::vector<std::uint8_t> clip_series(const std::vector<std::int64_t>& ranks,
                                      std::size_t n, double tau);

// All clipped indicator series of a sample: bit(t, j, k) = I{R[t,j] <= n*tau_k}.
// Stored one (j,k) series at a time, contiguous in t, ready for transforms.
struct ClippedTensor {
  std::size_t n = 0;
  int d = 0;
  int K = 0;
  std::vector<double> levels;
  std::vector<std::uint8_t> bits;  // ((j*K + k)*n + t)

  std::uint8_t bit(std::size_t t, int j, int k) const {
    return bits[(static_cast<std::size_t>(j) * K + k) * n + t];
  }
  const std::uint8_t* series(int j, int k) const {
    return bits.data() + (static_cast<std::size_t>(j) * K + k) * n;
  }
};

ClippedTensor clip_matrix(const RankMatrix& ranks, const QuantileGrid& grid);

}  // namespace qcs
