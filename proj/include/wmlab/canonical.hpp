#pragma once
// Complex normal-mode coordinates of the oscillator and the phase-angle
// picture built on them.

#include <complex>

#include "wmlab/phasespace.hpp"

namespace wmlab {

/// (q1, p1) = (p/sqrt(2 hbar m w) + i sqrt(m w / 2 hbar) q, its conjugate
/// partner). For images of real points p1 == conj(q1).
struct NormalModePoint {
  cplx q1;
  cplx p1;
};

/// Angle in (-pi, pi].
struct PhaseAngle {
  double theta = 0.0;
};

NormalModePoint to_normal_modes(PhasePoint pt, const PhysParams& par);
/// Inverse of to_normal_modes; only meaningful when p1 == conj(q1).
PhasePoint from_normal_modes(const NormalModePoint& nm, const PhysParams& par);

/// hbar * omega * q1 * p1. Real and equal to hamiltonian() on real images.
cplx transformed_hamiltonian(const NormalModePoint& nm, const PhysParams& par);

/// q1 * exp(i omega t): hamilton_flow pulled back through the transformation.
cplx normal_mode_flow(cplx q1, double t, const PhysParams& par);

/// q1 * exp(hbar omega t), the rate written for the transformed Hamilton
/// equations taken at face value. Kept for the verification report only.
cplx normal_mode_flow_literal(cplx q1, double t, const PhysParams& par);

/// theta = atan2(m w q, p). Throws OriginUndefined at (0, 0).
PhaseAngle phase_angle(PhasePoint pt, const PhysParams& par);

/// Maps an angle onto (-pi, pi].
double wrap_angle(double theta);

}  // namespace wmlab
