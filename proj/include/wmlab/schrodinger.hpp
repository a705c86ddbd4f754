#pragma once
// Position-space Schrodinger dynamics of the oscillator and the comparison
// against Liouville transport of the Wigner image.

#include <cstddef>
#include <vector>

#include "wmlab/phasespace.hpp"
#include "wmlab/wavefunction.hpp"

namespace wmlab {

inline constexpr std::size_t kMaxHermiteLevel = 40;

/// Default 1D grid for eigenstates up to n = 10: [-10, 10), 512 cells.
Axis default_position_axis();

/// Normalized, real Hermite function of level n from the three-term
/// recurrence. Throws InvalidArgument for n > 40 and GridTooNarrow when the
/// state does not decay to 1e-10 of its peak at the grid ends.
WaveFunction hermite_eigenstate(std::size_t n, const Axis& grid, const PhysParams& par);

/// Closed-form coherent state whose center follows hamilton_flow(center, t).
/// Phase convention: p_c (q - q_c/2)/hbar - omega t/2.
WaveFunction coherent_state(PhasePoint center, double t, const Axis& grid, const PhysParams& par);

/// E_n = hbar omega (n + 1/2)
double oscillator_energy(std::size_t n, const PhysParams& par);

/// Smallest admissible step count for a duration t: ceil(40 omega |t|).
std::size_t min_split_steps(double t, const PhysParams& par);
/// Step count used when none is given: max(min_split_steps, 512 steps per period).
std::size_t default_split_steps(double t, const PhysParams& par);

/// Strang splitting: half potential kick, exact spectral kinetic drift,
/// half potential kick. Boundary magnitude is checked after every step
/// (BoundaryLeak) and the norm at the end (NormDrift above 1e-8).
WaveFunction split_step_evolve(const WaveFunction& phi, double t, std::size_t n_steps, const PhysParams& par);

/// H Phi with a spectral second derivative.
std::vector<cplx> apply_hamiltonian(const WaveFunction& phi, const PhysParams& par);

/// <Phi|H|Phi> / <Phi|Phi>
double energy_expectation(const WaveFunction& phi, const PhysParams& par);

struct EquivalenceReport {
  double l2 = 0.0;       // sqrt(sum (A - B)^2 dq dp)
  double max_abs = 0.0;  // max |A - B|
  std::size_t n_steps = 0;
  PhaseDensity quantum;    // Wigner image of the Schrodinger-evolved state
  PhaseDensity classical;  // Liouville-evolved Wigner image of the initial state
};

/// Evolves phi0 both ways over t with the same step count: split steps for
/// the wavefunction, one backtrace per step for the Liouville side. phi0
/// must live on grid.q_axis(). n_steps == 0 selects default_split_steps.
EquivalenceReport equivalence_report(const WaveFunction& phi0, double t, const PhaseGrid& grid,
                                     const PhysParams& par, std::size_t n_steps = 0);

}  // namespace wmlab
