#include "qcs/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

#include "qcs/errors.hpp"

namespace qcs {

namespace {
// FFTW plan creation/destruction is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// fftw_complex and std::complex<double> share layout by specification; the
// void* casts keep gcc's class-memaccess check out of the raw copies.
void raw_copy(void* dst, const void* src, std::size_t bytes) {
  std::memcpy(dst, src, bytes);
}
}  // namespace

struct Dft::Impl {
  std::size_t n = 0;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_complex* scratch = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  explicit Impl(std::size_t size) : n(size) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    in = fftw_alloc_complex(n);
    out = fftw_alloc_complex(n);
    scratch = fftw_alloc_complex(n);
    // FFTW_ESTIMATE picks the plan from static heuristics, so the algorithm
    // (and therefore the rounding) is a pure function of n.
    fwd = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    inv = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd || !inv) throw InternalConsistencyError("FFTW plan creation failed");
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
    fftw_free(in);
    fftw_free(out);
    fftw_free(scratch);
  }
};

Dft::Dft(std::size_t n) : impl_(std::make_unique<Impl>(n)) {
  if (n < 1) throw InvalidArgumentError("transform length must be positive");
}

Dft::~Dft() = default;
Dft::Dft(Dft&&) noexcept = default;
Dft& Dft::operator=(Dft&&) noexcept = default;

std::size_t Dft::size() const { return impl_->n; }

void Dft::forward(const std::complex<double>* in, std::complex<double>* out) {
  const std::size_t bytes = impl_->n * sizeof(fftw_complex);
  raw_copy(impl_->in, in, bytes);
  fftw_execute(impl_->fwd);
  raw_copy(out, impl_->out, bytes);
}

void Dft::inverse(const std::complex<double>* in, std::complex<double>* out) {
  const std::size_t bytes = impl_->n * sizeof(fftw_complex);
  raw_copy(impl_->in, in, bytes);
  fftw_execute(impl_->inv);
  raw_copy(out, impl_->out, bytes);
}

void Dft::circular_convolve(const std::complex<double>* a,
                            const std::complex<double>* b,
                            std::complex<double>* out) {
  const std::size_t n = impl_->n;
  std::vector<std::complex<double>> fa(n);
  forward(a, fa.data());
  circular_convolve_spectrum(fa.data(), b, out);
}

void Dft::circular_convolve_spectrum(const std::complex<double>* fa,
                                     const std::complex<double>* b,
                                     std::complex<double>* out) {
  const std::size_t n = impl_->n;
  const std::size_t bytes = n * sizeof(fftw_complex);
  raw_copy(impl_->in, b, bytes);
  fftw_execute(impl_->fwd);
  raw_copy(impl_->scratch, impl_->out, bytes);
  auto* sc = reinterpret_cast<std::complex<double>*>(impl_->scratch);
  auto* dst = reinterpret_cast<std::complex<double>*>(impl_->in);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) dst[i] = fa[i] * sc[i] * scale;
  fftw_execute(impl_->inv);
  raw_copy(out, impl_->out, bytes);
}

}  // namespace qcs
