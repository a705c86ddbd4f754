#pragma once

#include <complex>
#include <cstddef>
#include <span>

struct fftw_plan_s;

namespace wmlab {

/// In-place 1D complex DFT of fixed length backed by FFTW. Both directions
/// are unnormalized: forward uses exp(-2*pi*i*k*j/n), backward exp(+...).
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const noexcept { return n_; }
  void forward(std::span<std::complex<double>> data) const;
  void backward(std::span<std::complex<double>> data) const;

  /// Shared plan for length n; plans are created once and live for the
  /// lifetime of the process. Safe to call from several threads.
  static const Fft& of(std::size_t n);

 private:
  std::size_t n_;
  fftw_plan_s* fwd_ = nullptr;
  fftw_plan_s* bwd_ = nullptr;
};

}  // namespace wmlab
