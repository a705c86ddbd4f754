#pragma once
// Spin functions of the isotropic 2D oscillator and their two-mode
// (Schwinger) operator form.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "wmlab/canonical.hpp"
#include "wmlab/fock.hpp"
#include "wmlab/phasespace.hpp"

namespace wmlab {

struct Phase4Point {
  double x = 0.0, y = 0.0, px = 0.0, py = 0.0;
};

struct SpinValues {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
};

SpinValues spin_functions(const Phase4Point& pt, const PhysParams& par);

/// s1^2 + s2^2 + s3^2 - s0^2 / 4
double casimir_residual(const SpinValues& s);

/// table[i][j] = {S_i, S_j} by central differences over (x, y, px, py),
/// indices 0..3 for S0..S3.
using BracketTable = std::array<std::array<double, 4>, 4>;
BracketTable spin_bracket_table(const Phase4Point& pt, const PhysParams& par);

struct TwoModePoint {
  cplx q1, p1, q2, p2;
};

/// The normal-mode map applied to (x, px) and (y, py).
TwoModePoint two_mode_transform(const Phase4Point& pt, const PhysParams& par);

/// Spin functions written in normal-mode variables. s1_literal is the
/// printed (hbar/2i)[(q1^2 - q2^2) + (p1^2 - p2^2)]; s1 is
/// (hbar/2)(q1 p2 + q2 p1), which equals S1 of the (q, p) form.
struct TransformedSpin {
  cplx s0, s1, s1_literal, s2, s3;
};
TransformedSpin transformed_spin(const TwoModePoint& z, const PhysParams& par);

/// Operators on the D^2-dimensional two-mode space, basis index n1*D + n2.
struct TwoModeOperator {
  std::size_t dim_per_mode = 0;
  Eigen::MatrixXcd values;
};

struct TwoModeOperators {
  std::size_t dim_per_mode = 0;
  TwoModeOperator a1, a1dag, a2, a2dag;
  TwoModeOperator n_op;        // a1^dagger a1 + a2^dagger a2, dimensionless
  TwoModeOperator s0p;         // hbar (N + 1)
  TwoModeOperator s1p;         // (hbar/2)(a1^dagger a2 + a2^dagger a1)
  TwoModeOperator s1p_literal; // (hbar/2i)[(a1^dagger^2 - a2^dagger^2) + (a1^2 - a2^2)]
  TwoModeOperator s2p;         // (hbar/2)(a1^dagger a1 - a2^dagger a2)
  TwoModeOperator s3p;         // (hbar/2i)(a1^dagger a2 - a2^dagger a1)
};

TwoModeOperators two_mode_operators(std::size_t dim_per_mode, const PhysParams& par);

/// Projector onto two-mode states with n1 + n2 <= N_max (all sectors complete below D).
Eigen::VectorXd sector_mask(std::size_t dim_per_mode, std::size_t n_max);

struct SpinRow {
  std::size_t N = 0;
  double m = 0.0;          // S2' eigenvalue, action units
  double s_squared = 0.0;  // <S0'^2/4 - hbar^2/4> on the joint eigenvector
  bool complete = false;
};

/// Joint eigenbasis of N and S2' from numerical diagonalization: N is
/// diagonalized first, S2' inside each eigenspace. Rows sorted by N, then m.
/// Sectors N >= D are emitted with complete = false.
std::vector<SpinRow> spin_spectrum(std::size_t dim_per_mode, const PhysParams& par);

/// hbar^2 ((lambda - 1)/2)((lambda + 1)/2). Throws DomainError for lambda < 1.
double lambda_relation(double lambda, const PhysParams& par);
/// hbar^2 (N/2)(N/2 + 1)
double casimir_eigenvalue(std::size_t N, const PhysParams& par);

/// (a1^dagger)^n1 (a2^dagger)^n2 |0,0>, component sqrt(n1! n2!) at n1*D + n2.
/// Throws OutOfTruncation unless n1, n2 < D.
Eigen::VectorXcd spin_eigenvector(std::size_t n1, std::size_t n2, std::size_t dim_per_mode);

}  // namespace wmlab
