#pragma once
// Uniform periodic axes and FFT-based (band-limited) calculus on them.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace wmlab {

using cplx = std::complex<double>;

/// Half-open uniform axis [min, max) with n nodes at min + i*step.
struct Axis {
  double min = 0.0;
  double max = 1.0;
  std::size_t n = 2;

  double step() const noexcept { return (max - min) / static_cast<double>(n); }
  double at(std::size_t i) const noexcept { return min + static_cast<double>(i) * step(); }
  double length() const noexcept { return max - min; }
  /// Throws InvalidArgument unless n is a power of two >= 4 and min < max.
  void validate() const;

  friend bool operator==(const Axis&, const Axis&) = default;
};

bool is_power_of_two(std::size_t n) noexcept;

/// Angular wavenumbers in FFT order (0, 1, ..., n/2-1, -n/2, ..., -1) * 2*pi/L.
std::vector<double> wavenumbers(const Axis& axis);

/// d^order f / dx^order of a periodic band-limited sample set. The Nyquist
/// mode is dropped for odd orders.
std::vector<cplx> derivative(std::span<const cplx> f, const Axis& axis, int order);
std::vector<double> derivative(std::span<const double> f, const Axis& axis, int order);

/// Band-limited periodic interpolation: returns g with g[i] = f(x_i + s).
std::vector<cplx> shifted(std::span<const cplx> f, const Axis& axis, double s);

}  // namespace wmlab
