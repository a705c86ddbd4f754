#pragma once
// Truncated ladder operators, number states, the oscillator spectrum and
// the holomorphic polynomial picture where a^dagger multiplies by q1 and a
// differentiates.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

#include "wmlab/phasespace.hpp"

namespace wmlab {

inline constexpr std::size_t kDefaultTruncation = 64;
inline constexpr std::size_t kBargmannMaxDegree = 64;

struct FockOperator {
  std::size_t dim = 0;
  Eigen::MatrixXcd values;
};

struct FockState {
  std::size_t dim = 0;
  Eigen::VectorXcd values;
  bool normalized = false;
};

struct LadderSet {
  FockOperator a;
  FockOperator adag;
  FockOperator n_op;
};

/// a|n> = sqrt(n)|n-1>, a^dagger|n> = sqrt(n+1)|n+1> truncated at D, n_op = a^dagger a.
/// Throws InvalidArgument for D < 2.
LadderSet ladder_matrices(std::size_t dim);

/// (a^dagger)^n |0>: component sqrt(n!) at index n, or 1 when normalized.
/// Throws OutOfTruncation for n >= D.
FockState number_state(std::size_t n, std::size_t dim, bool normalized);

struct SpectrumEntry {
  std::size_t index = 0;
  double energy = 0.0;
  bool trusted = false;
};

/// Sorted eigenvalues of hbar omega (a^dagger a + P/2), P the identity on the
/// trusted subspace n <= D-2. The last entry belongs to the truncation edge
/// and is flagged untrusted.
std::vector<SpectrumEntry> ho_spectrum(std::size_t dim, const PhysParams& par);

/// Phi(q1) = sum c_n q1^n. The zero polynomial has no coefficients; any
/// other value keeps a nonzero trailing coefficient.
struct BargmannPoly {
  std::vector<cplx> coeffs;

  static BargmannPoly monomial(std::size_t n, cplx c = 1.0);
  /// Drops trailing zero coefficients.
  void canonicalize();
  bool is_zero() const noexcept { return coeffs.empty(); }
  /// Degree of a nonzero polynomial; 0 for the zero polynomial.
  std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  cplx operator()(cplx q1) const;
  /// d/dq1 evaluated at q1
  cplx derivative(cplx q1, int order = 1) const;
};

enum class BargmannAction { create, annihilate, hamiltonian };

/// create: q1 * Phi, annihilate: dPhi/dq1, hamiltonian: hbar omega (q1 d/dq1 + 1/2) Phi.
/// Throws DegreeOverflow when the input or result reaches max_degree.
BargmannPoly bargmann_apply(BargmannAction which, const BargmannPoly& poly, const PhysParams& par,
                            std::size_t max_degree = kBargmannMaxDegree);

/// c_n(t) = c_n(0) exp(-i omega (n + 1/2) t)
BargmannPoly bargmann_evolve(const BargmannPoly& poly, double t, const PhysParams& par);

/// Isomorphism onto the matrix picture: q1^n <-> unnormalized |n>, so the
/// vector component is c_n sqrt(n!). Throws OutOfTruncation when the degree
/// does not fit in D.
FockState bargmann_to_fock(const BargmannPoly& poly, std::size_t dim);
BargmannPoly fock_to_bargmann(const FockState& state);

/// [a_lit, a^dagger] for the literal identification a_lit = -i hbar d/dq1.
/// Equal to -i hbar on every degree.
cplx literal_commutator(const PhysParams& par);

/// Exponential rate of q1^n under the transformed Schrodinger equation as
/// printed, hbar omega (1/2 - n), and under the repaired operators,
/// -i omega (n + 1/2).
double literal_monomial_rate(std::size_t n, const PhysParams& par);
cplx repaired_monomial_rate(std::size_t n, const PhysParams& par);

struct PhaseCircleReport {
  std::size_t n = 0;
  std::size_t theta_points = 0;
  double create_deviation = 0.0;      // max |q1 Phi_n - e^{i(n+1)theta}|
  double annihilate_deviation = 0.0;  // max |Phi_n' - n e^{i(n-1)theta}|, or max |a Phi_0| for n = 0
  double orthogonality_deviation = 0.0;  // max over m, k <= n+1 of |<e^{im theta}, e^{ik theta}> - 2 pi delta|
};

/// Evaluates Phi_n on q1 = e^{i theta} for theta_points equally spaced angles
/// in [0, 2 pi) and compares the ladder actions against the shifted modes.
PhaseCircleReport phase_circle_action(std::size_t n, std::size_t theta_points = 256);

}  // namespace wmlab
