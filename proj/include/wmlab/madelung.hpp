#pragma once
// Amplitude/phase split Phi = R exp(iS/hbar) and residual evaluators for
// the continuity and quantum Hamilton-Jacobi equations.

#include <cstdint>
#include <string>
#include <vector>

#include "wmlab/fock.hpp"
#include "wmlab/phasespace.hpp"
#include "wmlab/wavefunction.hpp"

namespace wmlab {

inline constexpr double kNodeEpsRel = 1e-3;

/// How the additive constant of S is fixed. `pin_at_peak` sets S = 0 where
/// R is largest; `raw` keeps S = hbar arg(Phi) at the first live cell, which
/// preserves the time dependence of the global phase between snapshots.
enum class PhaseGauge { pin_at_peak, raw };

struct MadelungPair {
  Axis grid;
  std::vector<double> R;
  std::vector<double> S;
  double hbar = 1.0;
  double node_eps = 0.0;  // kNodeEpsRel * max R
  double time = 0.0;

  bool live(std::size_t i) const { return R[i] > node_eps; }
};

/// Throws AllZero for the zero wavefunction.
MadelungPair decompose(const WaveFunction& phi, double hbar, PhaseGauge gauge = PhaseGauge::pin_at_peak);
WaveFunction compose(const MadelungPair& pair);

/// A residual sampled on grid nodes; `mask[i]` marks the nodes where it is
/// defined.
struct ResidualField {
  Axis grid;
  std::vector<double> values;
  std::vector<std::uint8_t> mask;
  std::string equation;
  std::string convention;

  /// Largest |value| over masked nodes with |q| <= window.
  double max_abs(double window) const;
  std::size_t evaluated(double window) const;
};

/// d(R^2)/dt + d/dq(R^2 S'/m) with a two-snapshot time difference and the
/// flux averaged over both snapshots. Spatial derivatives are spectral and
/// taken on the reconstructed Phi. Throws GridMismatch.
ResidualField continuity_residual(const MadelungPair& t0, const MadelungPair& t1, double dt, const PhysParams& par);

/// (2/hbar) Im[conj(Phi_bar) (i hbar dPhi/dt - H Phi)] with the same time
/// stencil: the Schrodinger-operator form of the continuity residual.
ResidualField schrodinger_continuity_residual(const MadelungPair& t0, const MadelungPair& t1, double dt,
                                              const PhysParams& par);

/// dS/dt + S'^2/(2m) - (hbar^2/(2 m R)) R'' + m w^2 q^2 / 2.
ResidualField qhj_residual(const MadelungPair& pair, double dSdt, const PhysParams& par);
ResidualField qhj_residual(const MadelungPair& pair, const std::vector<double>& dSdt, const PhysParams& par);

/// -(hbar^2 / (2 m R)) R'' on every node (masked where R <= node_eps).
ResidualField quantum_potential(const MadelungPair& pair, const PhysParams& par);

/// hbar arg(conj(Phi0) Phi1) / dt, the gauge-free phase rate between two snapshots.
std::vector<double> phase_time_derivative(const WaveFunction& phi0, const WaveFunction& phi1, double dt,
                                          double hbar);

/// Residuals of the transformed-space pair for Phi(q1, t) = sum c_n(t) q1^n
/// with c_n(t) from bargmann_evolve, on a real segment 0.1 <= q1 <= 4.
/// r21 is the printed continuity-like equation, r21_flipped the same with
/// the sign of the hbar omega R^2 term reversed, r22 the printed phase equation.
struct TransformedPairResiduals {
  std::vector<double> q1;
  std::vector<double> r21;
  std::vector<double> r21_flipped;
  std::vector<double> r22;
};

TransformedPairResiduals transformed_pair_residuals(const BargmannPoly& poly, double t, const PhysParams& par,
                                                    std::size_t n_points = 79);

/// Same quantities with the printed time dependence: every q1^n coefficient
/// grows as exp(hbar omega (1/2 - n) t).
TransformedPairResiduals transformed_pair_residuals_literal(const BargmannPoly& poly, double t, const PhysParams& par,
                                                            std::size_t n_points = 79);

}  // namespace wmlab
