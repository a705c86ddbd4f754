#include "wmlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "wmlab/errors.hpp"

namespace wmlab {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw InvalidArgument("FFT length must be positive");
  std::vector<std::complex<double>> scratch(n);
  const int len = static_cast<int>(n);
  std::lock_guard lock(planner_mutex());
  fwd_ = fftw_plan_dft_1d(len, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_FORWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  bwd_ = fftw_plan_dft_1d(len, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_BACKWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!fwd_ || !bwd_) throw InvalidArgument("FFTW planning failed");
}

Fft::~Fft() {
  std::lock_guard lock(planner_mutex());
  if (fwd_) fftw_destroy_plan(fwd_);
  if (bwd_) fftw_destroy_plan(bwd_);
}

void Fft::forward(std::span<std::complex<double>> data) const {
  if (data.size() != n_) throw InvalidArgument("FFT buffer length mismatch");
  fftw_execute_dft(fwd_, as_fftw(data.data()), as_fftw(data.data()));
}

void Fft::backward(std::span<std::complex<double>> data) const {
  if (data.size() != n_) throw InvalidArgument("FFT buffer length mismatch");
  fftw_execute_dft(bwd_, as_fftw(data.data()), as_fftw(data.data()));
}

const Fft& Fft::of(std::size_t n) {
  static std::mutex cache_mutex;
  static std::map<std::size_t, std::unique_ptr<Fft>> cache;
  std::lock_guard lock(cache_mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Fft>(n);
  return *slot;
}

}  // namespace wmlab
