#pragma once

#include <complex>
#include <vector>

#include "wmlab/spectral.hpp"

namespace wmlab {

/// Complex amplitude Phi(q_i) on a periodic position axis.
struct WaveFunction {
  Axis grid;
  std::vector<cplx> values;
  double time = 0.0;

  static WaveFunction zeros(const Axis& grid, double time = 0.0);

  /// sum |Phi|^2 dq
  double norm_sq() const;
  void normalize();
  /// |Phi(q_min)| / max |Phi|; 0 for the zero function. On the periodic
  /// axis q_min and q_max are the same point, so node 0 is the one sample
  /// sitting on the boundary.
  double boundary_ratio() const;
  /// Storage matches the axis and all values are finite.
  void validate() const;
  /// validate() plus unit norm within 1e-8 and boundary_ratio < 1e-10.
  void validate_physical() const;
};

/// <a|b> = sum conj(a) b dq. Throws GridMismatch for different axes.
cplx inner(const WaveFunction& a, const WaveFunction& b);
/// |<a|b>|^2 / (<a|a><b|b>)
double fidelity(const WaveFunction& a, const WaveFunction& b);

}  // namespace wmlab
