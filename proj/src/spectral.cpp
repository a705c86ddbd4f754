#include "wmlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wmlab/errors.hpp"
#include "wmlab/fft.hpp"
#include "wmlab/kernels.hpp"

namespace wmlab {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

void Axis::validate() const {
  if (!(std::isfinite(min) && std::isfinite(max) && min < max))
    throw InvalidArgument("axis extents must be finite and strictly ordered");
  if (n < 4 || !is_power_of_two(n)) throw InvalidArgument("axis point count must be a power of two >= 4");
}

std::vector<double> wavenumbers(const Axis& axis) {
  const std::size_t n = axis.n;
  const double dk = 2.0 * std::numbers::pi / axis.length();
  std::vector<double> k(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto signed_j = j < n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
    k[j] = signed_j * dk;
  }
  return k;
}

std::vector<cplx> derivative(std::span<const cplx> f, const Axis& axis, int order) {
  if (f.size() != axis.n) throw GridMismatch("derivative: sample count does not match axis");
  if (order < 0) throw InvalidArgument("derivative order must be nonnegative");
  std::vector<cplx> work(f.begin(), f.end());
  if (order == 0) return work;
  if (std::all_of(f.begin(), f.end(), [&](const cplx& z) { return z == f.front(); })) {
    std::fill(work.begin(), work.end(), cplx{});
    return work;
  }
  const Fft& fft = Fft::of(axis.n);
  fft.forward(work);
  const auto k = wavenumbers(axis);
  std::vector<cplx> factor(axis.n);
  for (std::size_t j = 0; j < axis.n; ++j) {
    cplx ik_pow{1.0, 0.0};
    for (int r = 0; r < order; ++r) ik_pow *= cplx{0.0, k[j]};
    factor[j] = ik_pow;
  }
  if (order % 2 == 1) factor[axis.n / 2] = 0.0;
  kernels::cmul(work, factor);
  fft.backward(work);
  kernels::scale(work, 1.0 / static_cast<double>(axis.n));
  return work;
}

std::vector<double> derivative(std::span<const double> f, const Axis& axis, int order) {
  std::vector<cplx> c(f.begin(), f.end());
  const auto d = derivative(std::span<const cplx>(c), axis, order);
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i].real();
  return out;
}

std::vector<cplx> shifted(std::span<const cplx> f, const Axis& axis, double s) {
  if (f.size() != axis.n) throw GridMismatch("shifted: sample count does not match axis");
  std::vector<cplx> work(f.begin(), f.end());
  if (s == 0.0) return work;
  const Fft& fft = Fft::of(axis.n);
  fft.forward(work);
  const auto k = wavenumbers(axis);
  std::vector<cplx> factor(axis.n);
  for (std::size_t j = 0; j < axis.n; ++j) factor[j] = std::polar(1.0, k[j] * s);
  // split the Nyquist mode symmetrically so real inputs stay real
  factor[axis.n / 2] = std::cos(k[axis.n / 2] * s);
  kernels::cmul(work, factor);
  fft.backward(work);
  kernels::scale(work, 1.0 / static_cast<double>(axis.n));
  return work;
}

}  // namespace wmlab
