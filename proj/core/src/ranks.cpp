#include "qcs/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcs/errors.hpp"

namespace qcs {

std::vector<std::int64_t> max_ranks(const std::vector<double>& column) {
  const std::size_t n = column.size();
  for (double v : column) {
    if (!std::isfinite(v)) throw InvalidDataError("rank input contains a non-finite value");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return column[a] < column[b]; });
  std::vector<std::int64_t> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    // Tie group [i, j): every member gets the group's maximum rank j.
    std::size_t j = i + 1;
    while (j < n && column[order[j]] == column[order[i]]) ++j;
    for (std::size_t q = i; q < j; ++q)
      ranks[order[q]] = static_cast<std::int64_t>(j);
    i = j;
  }
  return ranks;
}

RankMatrix rank_matrix(const TimeSeriesMatrix& x) {
  RankMatrix r;
  r.n = x.n;
  r.d = x.d;
  r.ranks.resize(x.n * x.d);
  std::vector<double> column(x.n);
  for (std::size_t j = 0; j < x.d; ++j) {
    for (std::size_t t = 0; t < x.n; ++t) column[t] = x.at(t, j);
    const auto col_ranks = max_ranks(column);
    for (std::size_t t = 0; t < x.n; ++t) r.ranks[t * x.d + j] = col_ranks[t];
  }
  return r;
}

std::vector<std::uint8_t> clip_series(const std::vector<std::int64_t>& ranks,
                                      std::size_t n, double tau) {
  const double threshold =
      static_cast<double>(n) * tau + 1e-12 * static_cast<double>(n);
  std::vector<std::uint8_t> bits(ranks.size());
  for (std::size_t t = 0; t < ranks.size(); ++t)
    bits[t] = static_cast<double>(ranks[t]) <= threshold ? 1 : 0;
  return bits;
}

ClippedTensor clip_matrix(const RankMatrix& ranks, const QuantileGrid& grid) {
  ClippedTensor c;
  c.n = ranks.n;
  c.d = static_cast<int>(ranks.d);
  c.K = static_cast<int>(grid.size());
  c.levels = grid.levels;
  c.bits.resize(ranks.n * ranks.d * grid.size());
  std::vector<std::int64_t> column(ranks.n);
  for (int j = 0; j < c.d; ++j) {
    for (std::size_t t = 0; t < ranks.n; ++t) column[t] = ranks.at(t, j);
    for (int k = 0; k < c.K; ++k) {
      const auto bits = clip_series(column, ranks.n, grid.levels[k]);
      std::copy(bits.begin(), bits.end(),
                c.bits.begin() + (static_cast<std::size_t>(j) * c.K + k) * c.n);
    }
  }
  return c;
}

}  // namespace qcs
