#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace hogroup {

// Multi-dimensional real FFT (row-major, last axis halved in the spectrum).
// Plans are built with FFTW_ESTIMATE, so results do not depend on timing.
class RealFFT {
 public:
  explicit RealFFT(std::vector<int> dims);
  ~RealFFT();
  RealFFT(const RealFFT&) = delete;
  RealFFT& operator=(const RealFFT&) = delete;

  const std::vector<int>& dims() const { return dims_; }
  std::size_t real_size() const { return real_size_; }
  std::size_t complex_size() const { return complex_size_; }

  void forward(const double* in, std::complex<double>* out);
  // Unnormalized: inverse(forward(x)) = real_size() * x.
  void inverse(const std::complex<double>* in, double* out);

  // Angular frequency of spectral index `k` along `axis` for spacing h.
  static double frequency(int k, int n, double h);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::vector<int> dims_;
  std::size_t real_size_ = 0, complex_size_ = 0;
};

// Smallest size >= n of the form 2^a 3^b 5^c.
int fft_size(int n);

}  // namespace hogroup
