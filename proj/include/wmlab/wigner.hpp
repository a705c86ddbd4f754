#pragma once
// The Wigner-Moyal pair between phase-space densities F(q,p) and two-point
// density functions rho(q - dq/2, q + dq/2), with pure-state factorization.

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "wmlab/phasespace.hpp"
#include "wmlab/wavefunction.hpp"

namespace wmlab {

/// rho(q_i, delta_j), row-major with rows indexed by q. The delta axis is
/// tied to the momentum grid: it holds n_p points with spacing
/// 2 pi hbar / (n_p dp), centered so that delta = 0 sits at j = n_p / 2.
struct DensitySlice {
  PhaseGrid grid;  // the momentum grid the slice was (or will be) paired with
  double hbar = 1.0;
  std::vector<cplx> values;
  double time = 0.0;

  double delta_step() const noexcept;
  double delta(std::size_t j) const noexcept;
  cplx& at(std::size_t i, std::size_t j) { return values[i * grid.n_p + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return values[i * grid.n_p + j]; }

  /// max |rho(q, -delta) - conj(rho(q, delta))| over the paired columns.
  double hermiticity_error() const;
};

/// rho(q, delta) = sum_k F(q, p_k) exp(i p_k delta / hbar) dp.
DensitySlice wigner_forward(const PhaseDensity& f, const PhysParams& par);

struct InverseDiagnostics {
  double hermiticity_error = 0.0;
  double imag_residue = 0.0;  // largest discarded imaginary part
};

/// F(q, p) = (1/(2 pi hbar)) sum_j rho(q, delta_j) exp(-i p delta_j / hbar) d(delta).
/// Throws NonHermitianInput when the conjugate symmetry fails by more than
/// 1e-6 (relative to max(1, max |rho|)).
PhaseDensity wigner_inverse(const DensitySlice& rho, InverseDiagnostics* diag = nullptr);

/// conj(Phi(q - delta/2)) Phi(q + delta/2) with band-limited interpolation of
/// Phi; samples falling outside [q_min, q_max) are zero. phi must live on
/// grid.q_axis().
DensitySlice wavefunction_to_slice(const WaveFunction& phi, const PhaseGrid& grid, const PhysParams& par);

/// wigner_inverse(wavefunction_to_slice(phi))
PhaseDensity wigner_density(const WaveFunction& phi, const PhaseGrid& grid, const PhysParams& par);

/// Discrete two-point density M(a, b) = conj(Phi(x_a)) Phi(x_b) dx, so that
/// its trace is the norm.
struct EndpointMatrix {
  Axis grid;
  Eigen::MatrixXcd values;

  static EndpointMatrix pure(const WaveFunction& phi);
  /// sum_s w_s |Phi_s><Phi_s| in the same convention.
  static EndpointMatrix mixture(const std::vector<WaveFunction>& states, const std::vector<double>& weights);

  double trace() const;
  double hermiticity_error() const;
};

struct PureFactorization {
  double purity = 0.0;
  std::optional<WaveFunction> phi;   // present when purity > 0.999
  double reconstruction_error = 0.0; // Frobenius norm of M - Phi Phi^dagger (pure case)
};

inline constexpr double kPurityThreshold = 0.999;

/// Purity tr(M^2) and, for nearly pure input, the dominant state with its
/// largest-magnitude component made real-positive.
PureFactorization factorize_pure(const EndpointMatrix& em);

}  // namespace wmlab
