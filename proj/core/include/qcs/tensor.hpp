#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qcs {

// Storage shared by all spectral tensors indexed (j1, j2, k1, k2, s).
//
// A (component, quantile) pair is an atom a = j*K + k. Every quantity held
// here is Hermitian under swapping the two atoms,
//     T(j1,j2,k1,k2,s) = conj(T(j2,j1,k2,k1,s)),
// so only cells with atom1 <= atom2 are stored and the swapped half is
// reconstructed by conjugation. That makes the pairing identity exact by
// construction and halves memory; off-diagonal cells of interest are the
// 55 canonical pairs for d=2, K=5.
class HermitianTensor {
 public:
  HermitianTensor() = default;
  HermitianTensor(int d, int K, std::size_t ns)
      : d_(d), K_(K), ns_(ns),
        data_(cell_count() * ns, std::complex<double>{0.0, 0.0}) {}

  int d() const { return d_; }
  int K() const { return K_; }
  std::size_t ns() const { return ns_; }
  int atoms() const { return d_ * K_; }
  std::size_t cell_count() const {
    const std::size_t a = static_cast<std::size_t>(atoms());
    return a * (a + 1) / 2;
  }

  int atom(int j, int k) const { return j * K_ + k; }

  // Canonical cell index for a1 <= a2 (upper triangular, row major):
  // row a1 starts after the a1 longer rows above it.
  std::size_t cell_index(int a1, int a2) const {
    const long long a = atoms();
    const long long row_start = static_cast<long long>(a1) * a -
                                static_cast<long long>(a1) * (a1 - 1) / 2;
    return static_cast<std::size_t>(row_start + (a2 - a1));
  }

  std::complex<double>* cell(int a1, int a2) {
    return data_.data() + cell_index(a1, a2) * ns_;
  }
  const std::complex<double>* cell(int a1, int a2) const {
    return data_.data() + cell_index(a1, a2) * ns_;
  }

  // Value in the spec's index order; the swapped half comes out conjugated.
  std::complex<double> value(int j1, int j2, int k1, int k2, std::size_t s) const {
    const int a1 = atom(j1, k1);
    const int a2 = atom(j2, k2);
    if (a1 <= a2) return cell(a1, a2)[s];
    return std::conj(cell(a2, a1)[s]);
  }

  std::vector<std::complex<double>>& raw() { return data_; }
  const std::vector<std::complex<double>>& raw() const { return data_; }

 private:
  int d_ = 0;
  int K_ = 0;
  std::size_t ns_ = 0;
  std::vector<std::complex<double>> data_;
};

}  // namespace qcs
