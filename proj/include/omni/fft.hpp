#ifndef OMNI_FFT_HPP
#define OMNI_FFT_HPP

#include <complex>
#include <cstddef>

namespace omni {

// RAII wrapper around FFTW-aligned complex storage. All transforms run on
// buffers of this type so cached plans always see the same alignment.
class AlignedComplexBuffer {
 public:
  explicit AlignedComplexBuffer(std::size_t count);
  ~AlignedComplexBuffer();
  AlignedComplexBuffer(const AlignedComplexBuffer&) = delete;
  AlignedComplexBuffer& operator=(const AlignedComplexBuffer&) = delete;

  std::complex<double>* data() { return data_; }
  const std::complex<double>* data() const { return data_; }
  std::size_t size() const { return count_; }
  void zero();

 private:
  std::complex<double>* data_ = nullptr;
  std::size_t count_ = 0;
};

// In-place transforms on aligned buffers. Plans are cached per shape,
// created with deterministic (estimate-mode) planning, and executed
// single-threaded so results are independent of the thread count.
void fft2d_forward(std::complex<double>* data, int width, int height);
void fft2d_inverse(std::complex<double>* data, int width, int height);  // scaled by 1/(w*h)
void fft1d_forward(std::complex<double>* data, int n);

}  // namespace omni

#endif
