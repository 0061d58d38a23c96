#include "omni/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "omni/errors.hpp"

namespace omni {

namespace {

std::mutex g_plan_mutex;

fftw_plan plan_for(int width, int height, int sign) {
  // Cached per (w, h, sign). Plans are created once on a scratch aligned
  // buffer and reused via the new-array interface; FFTW_ESTIMATE keeps plan
  // selection deterministic across runs.
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  const auto key = std::make_tuple(width, height, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  fftw_complex* scratch = static_cast<fftw_complex*>(
      fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(width) * height));
  if (!scratch) throw numeric_error("fft: allocation failure");
  fftw_plan plan =
      (height == 1)
          ? fftw_plan_dft_1d(width, scratch, scratch, sign, FFTW_ESTIMATE)
          : fftw_plan_dft_2d(height, width, scratch, scratch, sign, FFTW_ESTIMATE);
  fftw_free(scratch);
  if (!plan) throw numeric_error("fft: planning failure");
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

AlignedComplexBuffer::AlignedComplexBuffer(std::size_t count) : count_(count) {
  data_ = static_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * count));
  if (!data_) throw numeric_error("fft: allocation failure");
}

AlignedComplexBuffer::~AlignedComplexBuffer() {
  if (data_) fftw_free(data_);
}

void AlignedComplexBuffer::zero() {
  for (std::size_t i = 0; i < count_; ++i) data_[i] = {0.0, 0.0};
}

void fft2d_forward(std::complex<double>* data, int width, int height) {
  fftw_plan plan = plan_for(width, height, FFTW_FORWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

void fft2d_inverse(std::complex<double>* data, int width, int height) {
  fftw_plan plan = plan_for(width, height, FFTW_BACKWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
  const double scale = 1.0 / (static_cast<double>(width) * height);
  const std::size_t n = static_cast<std::size_t>(width) * height;
  for (std::size_t i = 0; i < n; ++i) data[i] *= scale;
}

void fft1d_forward(std::complex<double>* data, int n) {
  fftw_plan plan = plan_for(n, 1, FFTW_FORWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

}  // namespace omni
