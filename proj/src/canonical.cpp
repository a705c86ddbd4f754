#include "wmlab/canonical.hpp"

#include <cmath>
#include <numbers>

#include "wmlab/errors.hpp"

namespace wmlab {
namespace {

struct ModeScales {
  double p_scale;  // 1 / sqrt(2 hbar m w)
  double q_scale;  // sqrt(m w / (2 hbar))
};

ModeScales scales(const PhysParams& par) {
  const double mw = par.m * par.omega;
  return {1.0 / std::sqrt(2.0 * par.hbar * mw), std::sqrt(mw / (2.0 * par.hbar))};
}

}  // namespace

NormalModePoint to_normal_modes(PhasePoint pt, const PhysParams& par) {
  const auto [a, b] = scales(par);
  return {{a * pt.p, b * pt.q}, {a * pt.p, -b * pt.q}};
}

PhasePoint from_normal_modes(const NormalModePoint& nm, const PhysParams& par) {
  const auto [a, b] = scales(par);
  const cplx sum = nm.q1 + nm.p1;   // 2 a p
  const cplx diff = nm.q1 - nm.p1;  // 2 i b q
  return {diff.imag() / (2.0 * b), sum.real() / (2.0 * a)};
}

cplx transformed_hamiltonian(const NormalModePoint& nm, const PhysParams& par) {
  return par.hbar * par.omega * nm.q1 * nm.p1;
}

cplx normal_mode_flow(cplx q1, double t, const PhysParams& par) { return q1 * std::polar(1.0, par.omega * t); }

cplx normal_mode_flow_literal(cplx q1, double t, const PhysParams& par) {
  return q1 * std::exp(par.hbar * par.omega * t);
}

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(theta, two_pi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

PhaseAngle phase_angle(PhasePoint pt, const PhysParams& par) {
  if (pt.q == 0.0 && pt.p == 0.0) throw OriginUndefined("phase angle is undefined at the origin");
  double theta = std::atan2(par.m * par.omega * pt.q, pt.p);
  if (theta <= -std::numbers::pi) theta = std::numbers::pi;
  return {theta};
}

}  // namespace wmlab
