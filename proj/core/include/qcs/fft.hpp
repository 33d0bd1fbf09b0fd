#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace qcs {

// Complex-to-complex transform of a fixed length, both directions.
// Plans are created with deterministic heuristics (never timed), so the same
// input always produces the same output bytes, in any thread. One Dft object
// must not be executed concurrently from two threads; give each worker its
// own instance (plan creation itself is internally serialized).
class Dft {
 public:
  explicit Dft(std::size_t n);
  ~Dft();
  Dft(Dft&&) noexcept;
  Dft& operator=(Dft&&) noexcept;
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  std::size_t size() const;

  // out[s] = sum_t in[t] * exp(-i*2*pi*s*t/n)
  void forward(const std::complex<double>* in, std::complex<double>* out);
  // out[t] = sum_s in[s] * exp(+i*2*pi*s*t/n)   (unnormalized)
  void inverse(const std::complex<double>* in, std::complex<double>* out);

  // Circular convolution (a \circledast b)[k] = sum_s a[(k-s) mod n] * b[s],
  // computed as ifft(fft(a) .* fft(b)) / n.
  void circular_convolve(const std::complex<double>* a,
                         const std::complex<double>* b,
                         std::complex<double>* out);

  // Convolution against a spectrum prepared with forward(); saves the
  // repeated kernel transform when one kernel meets many inputs.
  void circular_convolve_spectrum(const std::complex<double>* fa,
                                  const std::complex<double>* b,
                                  std::complex<double>* out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qcs
