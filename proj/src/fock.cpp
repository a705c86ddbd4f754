#include "wmlab/fock.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wmlab/errors.hpp"

namespace wmlab {
namespace {

void require_dim(std::size_t dim) {
  if (dim < 2) throw InvalidArgument("truncation must be at least 2");
}

double sqrt_factorial(std::size_t n) {
  double acc = 1.0;
  for (std::size_t k = 2; k <= n; ++k) acc *= std::sqrt(static_cast<double>(k));
  return acc;
}

}  // namespace

LadderSet ladder_matrices(std::size_t dim) {
  require_dim(dim);
  const auto d = static_cast<Eigen::Index>(dim);
  LadderSet s{{dim, Eigen::MatrixXcd::Zero(d, d)}, {dim, Eigen::MatrixXcd::Zero(d, d)},
              {dim, Eigen::MatrixXcd::Zero(d, d)}};
  for (Eigen::Index n = 1; n < d; ++n) {
    const double r = std::sqrt(static_cast<double>(n));
    s.a.values(n - 1, n) = r;
    s.adag.values(n, n - 1) = r;
  }
  for (Eigen::Index n = 0; n < d; ++n) s.n_op.values(n, n) = static_cast<double>(n);
  return s;
}

FockState number_state(std::size_t n, std::size_t dim, bool normalized) {
  require_dim(dim);
  if (n >= dim)
    throw OutOfTruncation("number state " + std::to_string(n) + " needs truncation above " + std::to_string(dim));
  FockState s{dim, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim)), normalized};
  s.values(static_cast<Eigen::Index>(n)) = normalized ? 1.0 : sqrt_factorial(n);
  return s;
}

std::vector<SpectrumEntry> ho_spectrum(std::size_t dim, const PhysParams& par) {
  par.validate();
  const LadderSet l = ladder_matrices(dim);
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd valid = Eigen::MatrixXcd::Identity(d, d);
  valid(d - 1, d - 1) = 0.0;
  const Eigen::MatrixXcd h = par.hbar * par.omega * (l.adag.values * l.a.values + 0.5 * valid);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  std::vector<double> ev(eig.eigenvalues().data(), eig.eigenvalues().data() + d);
  std::sort(ev.begin(), ev.end());
  std::vector<SpectrumEntry> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = {i, ev[i], i + 1 < dim};
  return out;
}

BargmannPoly BargmannPoly::monomial(std::size_t n, cplx c) {
  BargmannPoly p;
  p.coeffs.assign(n + 1, 0.0);
  p.coeffs[n] = c;
  p.canonicalize();
  return p;
}

void BargmannPoly::canonicalize() {
  while (!coeffs.empty() && coeffs.back() == cplx{}) coeffs.pop_back();
}

cplx BargmannPoly::operator()(cplx q1) const {
  cplx acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * q1 + *it;
  return acc;
}

cplx BargmannPoly::derivative(cplx q1, int order) const {
  if (order < 0) throw InvalidArgument("derivative order must be nonnegative");
  cplx acc{};
  for (std::size_t n = coeffs.size(); n-- > static_cast<std::size_t>(order);) {
    double falling = 1.0;
    for (int r = 0; r < order; ++r) falling *= static_cast<double>(n - static_cast<std::size_t>(r));
    acc = acc * q1 + falling * coeffs[n];
  }
  return acc;
}

BargmannPoly bargmann_apply(BargmannAction which, const BargmannPoly& poly, const PhysParams& par,
                            std::size_t max_degree) {
  par.validate();
  BargmannPoly in = poly;
  in.canonicalize();
  if (!in.is_zero() && in.degree() >= max_degree)
    throw DegreeOverflow("polynomial degree " + std::to_string(in.degree()) + " is not below " +
                         std::to_string(max_degree));
  BargmannPoly out;
  if (in.is_zero()) return out;
  const auto& c = in.coeffs;
  switch (which) {
    case BargmannAction::create:
      if (in.degree() + 1 >= max_degree) throw DegreeOverflow("create would reach the maximum degree");
      out.coeffs.assign(c.size() + 1, 0.0);
      std::copy(c.begin(), c.end(), out.coeffs.begin() + 1);
      break;
    case BargmannAction::annihilate:
      out.coeffs.assign(c.size() - 1, 0.0);
      for (std::size_t n = 1; n < c.size(); ++n) out.coeffs[n - 1] = static_cast<double>(n) * c[n];
      break;
    case BargmannAction::hamiltonian:
      out.coeffs.resize(c.size());
      for (std::size_t n = 0; n < c.size(); ++n) out.coeffs[n] = par.hbar * par.omega * (static_cast<double>(n) + 0.5) * c[n];
      break;
  }
  out.canonicalize();
  return out;
}

BargmannPoly bargmann_evolve(const BargmannPoly& poly, double t, const PhysParams& par) {
  par.validate();
  BargmannPoly out = poly;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n)
    out.coeffs[n] *= std::polar(1.0, -par.omega * (static_cast<double>(n) + 0.5) * t);
  out.canonicalize();
  return out;
}

FockState bargmann_to_fock(const BargmannPoly& poly, std::size_t dim) {
  require_dim(dim);
  if (poly.coeffs.size() > dim) throw OutOfTruncation("polynomial degree does not fit the truncation");
  FockState s{dim, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim)), false};
  for (std::size_t n = 0; n < poly.coeffs.size(); ++n)
    s.values(static_cast<Eigen::Index>(n)) = poly.coeffs[n] * sqrt_factorial(n);
  return s;
}

BargmannPoly fock_to_bargmann(const FockState& state) {
  BargmannPoly p;
  p.coeffs.resize(static_cast<std::size_t>(state.values.size()));
  for (std::size_t n = 0; n < p.coeffs.size(); ++n)
    p.coeffs[n] = state.values(static_cast<Eigen::Index>(n)) / sqrt_factorial(n);
  p.canonicalize();
  return p;
}

cplx literal_commutator(const PhysParams& par) {
  par.validate();
  const LadderSet l = ladder_matrices(4);
  const Eigen::MatrixXcd a_lit = cplx{0.0, -par.hbar} * l.a.values;
  const Eigen::MatrixXcd comm = a_lit * l.adag.values - l.adag.values * a_lit;
  return comm(0, 0);
}

double literal_monomial_rate(std::size_t n, const PhysParams& par) {
  return par.hbar * par.omega * (0.5 - static_cast<double>(n));
}

cplx repaired_monomial_rate(std::size_t n, const PhysParams& par) {
  return {0.0, -par.omega * (static_cast<double>(n) + 0.5)};
}

PhaseCircleReport phase_circle_action(std::size_t n, std::size_t theta_points) {
  if (theta_points < 2 * (n + 2)) throw InvalidArgument("theta grid too coarse for the requested level");
  const PhysParams unit{};
  PhaseCircleReport rep{n, theta_points, 0.0, 0.0, 0.0};
  const BargmannPoly phi = BargmannPoly::monomial(n);
  const BargmannPoly up = bargmann_apply(BargmannAction::create, phi, unit);
  const BargmannPoly down = bargmann_apply(BargmannAction::annihilate, phi, unit);
  const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(theta_points);
  const auto nd = static_cast<double>(n);
  for (std::size_t k = 0; k < theta_points; ++k) {
    const double th = dtheta * static_cast<double>(k);
    const cplx q1 = std::polar(1.0, th);
    rep.create_deviation = std::max(rep.create_deviation, std::abs(up(q1) - std::polar(1.0, (nd + 1.0) * th)));
    const cplx expect_down = n == 0 ? cplx{} : nd * std::polar(1.0, (nd - 1.0) * th);
    rep.annihilate_deviation = std::max(rep.annihilate_deviation, std::abs(down(q1) - expect_down));
  }
  for (std::size_t a = 0; a <= n + 1; ++a)
    for (std::size_t b = 0; b <= n + 1; ++b) {
      cplx acc{};
      for (std::size_t k = 0; k < theta_points; ++k) {
        const double th = dtheta * static_cast<double>(k);
        acc += std::conj(std::polar(1.0, static_cast<double>(a) * th)) * std::polar(1.0, static_cast<double>(b) * th);
      }
      acc *= dtheta;
      const double expect = a == b ? 2.0 * std::numbers::pi : 0.0;
      rep.orthogonality_deviation = std::max(rep.orthogonality_deviation, std::abs(acc - expect));
    }
  return rep;
}

}  // namespace wmlab
