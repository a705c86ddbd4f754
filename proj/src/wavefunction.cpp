#include "wmlab/wavefunction.hpp"

#include <algorithm>
#include <cmath>

#include "wmlab/errors.hpp"
#include "wmlab/kernels.hpp"

namespace wmlab {

WaveFunction WaveFunction::zeros(const Axis& grid, double time) {
  grid.validate();
  return {grid, std::vector<cplx>(grid.n, cplx{}), time};
}

double WaveFunction::norm_sq() const { return kernels::norm_sq(values) * grid.step(); }

void WaveFunction::normalize() {
  const double n2 = norm_sq();
  if (!(n2 > 0.0)) throw AllZero("cannot normalize the zero wavefunction");
  kernels::scale(values, 1.0 / std::sqrt(n2));
}

double WaveFunction::boundary_ratio() const {
  double peak = 0.0;
  for (const auto& v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  return std::abs(values.front()) / peak;
}

void WaveFunction::validate() const {
  grid.validate();
  if (values.size() != grid.n) throw GridMismatch("wavefunction storage does not match its axis");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidArgument("wavefunction contains non-finite values");
}

void WaveFunction::validate_physical() const {
  validate();
  if (std::abs(norm_sq() - 1.0) > 1e-8) throw InvalidArgument("wavefunction is not normalized");
  if (boundary_ratio() >= 1e-10) throw BoundaryLeak("wavefunction does not vanish at the grid boundary");
}

cplx inner(const WaveFunction& a, const WaveFunction& b) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size())
    throw GridMismatch("inner product of wavefunctions on different grids");
  std::vector<cplx> prod(a.values.size());
  kernels::conj_mul(prod, a.values, b.values);
  double re = 0.0, im = 0.0;
  for (const auto& z : prod) {
    re += z.real();
    im += z.imag();
  }
  return cplx{re, im} * a.grid.step();
}

double fidelity(const WaveFunction& a, const WaveFunction& b) {
  const double na = a.norm_sq(), nb = b.norm_sq();
  if (!(na > 0.0) || !(nb > 0.0)) throw AllZero("fidelity with the zero wavefunction");
  return std::norm(inner(a, b)) / (na * nb);
}

}  // namespace wmlab
