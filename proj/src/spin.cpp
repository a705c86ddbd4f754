#include "wmlab/spin.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "wmlab/errors.hpp"

namespace wmlab {

SpinValues spin_functions(const Phase4Point& pt, const PhysParams& par) {
  par.validate();
  const double m = par.m, w = par.omega;
  const auto [x, y, px, py] = pt;
  return {((px * px + py * py) / m + m * w * w * (x * x + y * y)) / (2.0 * w),
          (px * py / m + m * w * w * x * y) / (2.0 * w),
          (m * w * w * (x * x - y * y) + (px * px - py * py) / m) / (4.0 * w), 0.5 * (x * py - y * px)};
}

double casimir_residual(const SpinValues& s) {
  return s.s1 * s.s1 + s.s2 * s.s2 + s.s3 * s.s3 - 0.25 * s.s0 * s.s0;
}

BracketTable spin_bracket_table(const Phase4Point& pt, const PhysParams& par) {
  par.validate();
  auto component = [&par](int k) {
    return [&par, k](std::span<const double> z) -> cplx {
      const SpinValues s = spin_functions({z[0], z[1], z[2], z[3]}, par);
      const double v[4] = {s.s0, s.s1, s.s2, s.s3};
      return v[k];
    };
  };
  const double z[4] = {pt.x, pt.y, pt.px, pt.py};
  BracketTable t{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          i == j ? 0.0 : poisson_bracket(component(i), component(j), z).real();
  return t;
}

TwoModePoint two_mode_transform(const Phase4Point& pt, const PhysParams& par) {
  const NormalModePoint a = to_normal_modes({pt.x, pt.px}, par);
  const NormalModePoint b = to_normal_modes({pt.y, pt.py}, par);
  return {a.q1, a.p1, b.q1, b.p1};
}

TransformedSpin transformed_spin(const TwoModePoint& z, const PhysParams& par) {
  const double h = par.hbar;
  const cplx two_i{0.0, 2.0};
  return {h * (z.q1 * z.p1 + z.q2 * z.p2), 0.5 * h * (z.q1 * z.p2 + z.q2 * z.p1),
          h / two_i * ((z.q1 * z.q1 - z.q2 * z.q2) + (z.p1 * z.p1 - z.p2 * z.p2)),
          0.5 * h * (z.q1 * z.p1 - z.q2 * z.p2), h / two_i * (z.q1 * z.p2 - z.q2 * z.p1)};
}

TwoModeOperators two_mode_operators(std::size_t dim_per_mode, const PhysParams& par) {
  par.validate();
  const LadderSet l = ladder_matrices(dim_per_mode);
  const auto d = static_cast<Eigen::Index>(dim_per_mode);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  auto kron = [](const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    Eigen::MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      for (Eigen::Index j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
  };
  auto op = [dim_per_mode](Eigen::MatrixXcd m) { return TwoModeOperator{dim_per_mode, std::move(m)}; };

  TwoModeOperators o;
  o.dim_per_mode = dim_per_mode;
  o.a1 = op(kron(l.a.values, id));
  o.a1dag = op(kron(l.adag.values, id));
  o.a2 = op(kron(id, l.a.values));
  o.a2dag = op(kron(id, l.adag.values));
  const auto& A1 = o.a1.values;
  const auto& A1d = o.a1dag.values;
  const auto& A2 = o.a2.values;
  const auto& A2d = o.a2dag.values;
  const double h = par.hbar;
  const Eigen::Index n = d * d;
  o.n_op = op(kron(l.n_op.values, id) + kron(id, l.n_op.values));
  o.s0p = op(h * (o.n_op.values + Eigen::MatrixXcd::Identity(n, n)));
  o.s1p = op(0.5 * h * (A1d * A2 + A2d * A1));
  o.s1p_literal = op(h / cplx{0.0, 2.0} * ((A1d * A1d - A2d * A2d) + (A1 * A1 - A2 * A2)));
  o.s2p = op(0.5 * h * (kron(l.n_op.values, id) - kron(id, l.n_op.values)));
  o.s3p = op(h / cplx{0.0, 2.0} * (A1d * A2 - A2d * A1));
  return o;
}

Eigen::VectorXd sector_mask(std::size_t dim_per_mode, std::size_t n_max) {
  const auto d = static_cast<Eigen::Index>(dim_per_mode);
  Eigen::VectorXd mask = Eigen::VectorXd::Zero(d * d);
  for (Eigen::Index n1 = 0; n1 < d; ++n1)
    for (Eigen::Index n2 = 0; n2 < d; ++n2)
      if (static_cast<std::size_t>(n1 + n2) <= n_max) mask(n1 * d + n2) = 1.0;
  return mask;
}

std::vector<SpinRow> spin_spectrum(std::size_t dim_per_mode, const PhysParams& par) {
  const TwoModeOperators o = two_mode_operators(dim_per_mode, par);
  const double h = par.hbar;
  const Eigen::Index n = o.n_op.values.rows();
  const Eigen::MatrixXcd s_sq =
      0.25 * o.s0p.values * o.s0p.values - 0.25 * h * h * Eigen::MatrixXcd::Identity(n, n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig_n(o.n_op.values);
  std::map<long, std::vector<Eigen::Index>> groups;
  for (Eigen::Index k = 0; k < n; ++k) groups[std::lround(eig_n.eigenvalues()(k))].push_back(k);

  std::vector<SpinRow> rows;
  for (const auto& [N, cols] : groups) {
    Eigen::MatrixXcd basis(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = eig_n.eigenvectors().col(cols[c]);
    const Eigen::MatrixXcd proj = basis.adjoint() * o.s2p.values * basis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig_m(0.5 * (proj + proj.adjoint()));
    for (Eigen::Index k = 0; k < eig_m.eigenvalues().size(); ++k) {
      const Eigen::VectorXcd v = basis * eig_m.eigenvectors().col(k);
      SpinRow r;
      r.N = static_cast<std::size_t>(N);
      r.m = eig_m.eigenvalues()(k);
      r.s_squared = (v.adjoint() * s_sq * v)(0, 0).real();
      r.complete = r.N + 1 <= dim_per_mode;
      rows.push_back(r);
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SpinRow& a, const SpinRow& b) {
    return a.N != b.N ? a.N < b.N : a.m < b.m;
  });
  return rows;
}

double lambda_relation(double lambda, const PhysParams& par) {
  par.validate();
  if (!(lambda >= 1.0)) throw DomainError("lambda must be at least 1");
  return par.hbar * par.hbar * (0.5 * (lambda - 1.0)) * (0.5 * (lambda + 1.0));
}

double casimir_eigenvalue(std::size_t N, const PhysParams& par) {
  const double half = 0.5 * static_cast<double>(N);
  return par.hbar * par.hbar * half * (half + 1.0);
}

Eigen::VectorXcd spin_eigenvector(std::size_t n1, std::size_t n2, std::size_t dim_per_mode) {
  if (dim_per_mode < 2) throw InvalidArgument("truncation must be at least 2");
  if (n1 >= dim_per_mode || n2 >= dim_per_mode)
    throw OutOfTruncation("mode occupation (" + std::to_string(n1) + "," + std::to_string(n2) +
                          ") exceeds truncation " + std::to_string(dim_per_mode));
  const auto d = static_cast<Eigen::Index>(dim_per_mode);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
  double norm = 1.0;
  for (std::size_t k = 2; k <= n1; ++k) norm *= std::sqrt(static_cast<double>(k));
  for (std::size_t k = 2; k <= n2; ++k) norm *= std::sqrt(static_cast<double>(k));
  v(static_cast<Eigen::Index>(n1) * d + static_cast<Eigen::Index>(n2)) = norm;
  return v;
}

}  // namespace wmlab
