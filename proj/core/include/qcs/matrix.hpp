#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qcs {

// Dense row-major matrices small enough that plain vectors beat a linear
// algebra dependency in the public interface.
struct RealMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  RealMatrix() = default;
  RealMatrix(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }

  static RealMatrix identity(int n) {
    RealMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

struct ComplexMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::complex<double>> v;

  ComplexMatrix() = default;
  ComplexMatrix(int r, int c)
      : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, std::complex<double>{0.0, 0.0}) {}

  std::complex<double>& operator()(int r, int c) {
    return v[static_cast<std::size_t>(r) * cols + c];
  }
  std::complex<double> operator()(int r, int c) const {
    return v[static_cast<std::size_t>(r) * cols + c];
  }
};

}  // namespace qcs
