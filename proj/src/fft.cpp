#include "hogroup/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>

#include "hogroup/error.hpp"

namespace hogroup {
namespace {

// FFTW planning is not thread-safe.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct RealFFT::Impl {
  double* rbuf = nullptr;
  fftw_complex* cbuf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
};

RealFFT::RealFFT(std::vector<int> dims) : impl_(std::make_unique<Impl>()), dims_(std::move(dims)) {
  if (dims_.empty()) throw Error("grid", "fft_dims", "empty FFT shape");
  real_size_ = 1;
  for (int n : dims_) {
    if (n < 1) throw Error("grid", "fft_dims", "nonpositive FFT size");
    real_size_ *= n;
  }
  complex_size_ = real_size_ / dims_.back() * (dims_.back() / 2 + 1);
  std::lock_guard<std::mutex> lock(plan_mutex());
  impl_->rbuf = fftw_alloc_real(real_size_);
  impl_->cbuf = fftw_alloc_complex(complex_size_);
  const int rank = static_cast<int>(dims_.size());
  impl_->fwd = fftw_plan_dft_r2c(rank, dims_.data(), impl_->rbuf, impl_->cbuf, FFTW_ESTIMATE);
  impl_->inv = fftw_plan_dft_c2r(rank, dims_.data(), impl_->cbuf, impl_->rbuf,
                                 FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
}

RealFFT::~RealFFT() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(impl_->fwd);
  fftw_destroy_plan(impl_->inv);
  fftw_free(impl_->rbuf);
  fftw_free(impl_->cbuf);
}

void RealFFT::forward(const double* in, std::complex<double>* out) {
  std::memcpy(impl_->rbuf, in, real_size_ * sizeof(double));
  fftw_execute(impl_->fwd);
  std::memcpy(static_cast<void*>(out), impl_->cbuf, complex_size_ * sizeof(fftw_complex));
}

void RealFFT::inverse(const std::complex<double>* in, double* out) {
  std::memcpy(impl_->cbuf, in, complex_size_ * sizeof(fftw_complex));
  fftw_execute(impl_->inv);
  std::memcpy(out, impl_->rbuf, real_size_ * sizeof(double));
}

double RealFFT::frequency(int k, int n, double h) {
  int kk = k <= n / 2 ? k : k - n;
  return 2.0 * M_PI * kk / (n * h);
}

int fft_size(int n) {
  for (int m = std::max(1, n);; ++m) {
    int r = m;
    for (int p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

}  // namespace hogroup
