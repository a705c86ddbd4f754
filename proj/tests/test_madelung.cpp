#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wmlab/errors.hpp"
#include "wmlab/madelung.hpp"
#include "wmlab/schrodinger.hpp"

using namespace wmlab;
constexpr double kPi = std::numbers::pi;

namespace {

WaveFunction phased(WaveFunction phi, double angle, double time) {
  for (auto& v : phi.values) v *= std::polar(1.0, angle);
  phi.time = time;
  return phi;
}

}  // namespace

TEST_SUITE("madelung") {
  TEST_CASE("plane wave reads off R = 1 and S = hbar q") {
    const double hbar = 0.8;
    const Axis ax{-4.0 * kPi, 4.0 * kPi, 128};
    WaveFunction phi = WaveFunction::zeros(ax);
    for (std::size_t i = 0; i < ax.n; ++i) phi.values[i] = std::polar(1.0, ax.at(i));
    const MadelungPair p = decompose(phi, hbar);
    for (std::size_t i = 0; i < ax.n; ++i) {
      CHECK(std::abs(p.R[i] - 1.0) < 1e-14);
      CHECK(std::abs((p.S[i] - p.S[0]) - hbar * (ax.at(i) - ax.at(0))) < 1e-11);
    }
  }

  TEST_CASE("real positive ground state has S = 0") {
    const MadelungPair p = decompose(hermite_eigenstate(0, default_position_axis(), {}), 1.0);
    for (double s : p.S) CHECK(s == 0.0);
  }

  TEST_CASE("compose inverts decompose") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g;
    const Axis ax = default_position_axis();
    for (int k = 0; k < 50; ++k) {
      WaveFunction phi = WaveFunction::zeros(ax);
      for (std::size_t n = 0; n < 8; ++n) {
        const WaveFunction h = hermite_eigenstate(n, ax, {});
        const cplx c{g(rng), g(rng)};
        for (std::size_t i = 0; i < ax.n; ++i) phi.values[i] += c * h.values[i];
      }
      phi.normalize();
      const MadelungPair p = decompose(phi, 1.0);
      CHECK(1.0 - fidelity(compose(p), phi) < 1e-12);
      for (std::size_t i = 0; i < ax.n; ++i)
        if (p.live(i)) CHECK(std::abs(compose(decompose(phi, 1.0, PhaseGauge::raw)).values[i] - phi.values[i]) < 1e-10);
    }
  }

  TEST_CASE("zero wavefunction is rejected") {
    CHECK_THROWS_AS(decompose(WaveFunction::zeros(default_position_axis()), 1.0), AllZero);
  }

  TEST_CASE("uniform R with constant S has zero residuals exactly") {
    const Axis ax{-5.0, 5.0, 64};
    MadelungPair p{ax, std::vector<double>(ax.n, 0.3), std::vector<double>(ax.n, 0.2), 1.0, 0.3e-3, 0.0};
    MadelungPair q = p;
    q.time = 0.1;
    const ResidualField r = continuity_residual(p, q, 0.1, {});
    for (std::size_t i = 0; i < ax.n; ++i) CHECK(r.values[i] == 0.0);
    CHECK(r.evaluated(100.0) == ax.n);
  }

  TEST_CASE("continuity residual for stationary eigenstates") {
    const Axis ax = default_position_axis();
    const double dt = 1e-3;
    for (std::size_t n = 0; n <= 2; ++n) {
      const WaveFunction psi = hermite_eigenstate(n, ax, {});
      const WaveFunction later = phased(psi, -oscillator_energy(n, {}) * dt, dt);
      const ResidualField r = continuity_residual(decompose(psi, 1.0, PhaseGauge::raw),
                                                  decompose(later, 1.0, PhaseGauge::raw), dt, {});
      CHECK(r.max_abs(1e9) < 1e-8);
      CHECK(r.equation == "Eq.10");
    }
  }

  TEST_CASE("continuity residual for a moving coherent state") {
    const Axis ax = default_position_axis();
    const double dt = 1e-3;
    const PhasePoint c{1.0, 0.5};
    const auto a = decompose(coherent_state(c, -0.5 * dt, ax, {}), 1.0, PhaseGauge::raw);
    const auto b = decompose(coherent_state(c, 0.5 * dt, ax, {}), 1.0, PhaseGauge::raw);
    const ResidualField r = continuity_residual(a, b, dt, {});
    CHECK(r.max_abs(4.0) < 1e-5);
    CHECK(r.evaluated(4.0) > 100);
    const ResidualField x = schrodinger_continuity_residual(a, b, dt, {});
    double diff = 0.0;
    for (std::size_t i = 0; i < ax.n; ++i)
      if (r.mask[i] && x.mask[i] && std::abs(ax.at(i)) <= 4.0) diff = std::max(diff, std::abs(r.values[i] - x.values[i]));
    CHECK(diff < 1e-8);
  }

  TEST_CASE("non-positive time step and mismatched grids are rejected") {
    const auto a = decompose(hermite_eigenstate(0, default_position_axis(), {}), 1.0);
    const auto b = decompose(hermite_eigenstate(0, Axis{-8.0, 8.0, 256}, {}), 1.0);
    CHECK_THROWS_AS(continuity_residual(a, a, 0.0, {}), InvalidArgument);
    CHECK_THROWS_AS(continuity_residual(a, b, 1e-3, {}), GridMismatch);
  }

  TEST_CASE("quantum Hamilton-Jacobi residual for eigenstates") {
    const Axis ax = default_position_axis();
    const auto p0 = decompose(hermite_eigenstate(0, ax, {}), 1.0);
    CHECK(qhj_residual(p0, -0.5, {}).max_abs(4.0) < 1e-6);
    const auto p1 = decompose(hermite_eigenstate(1, ax, {}), 1.0);
    const ResidualField r1 = qhj_residual(p1, -1.5, {});
    CHECK(r1.max_abs(4.0) < 1e-5);
    CHECK(r1.mask[ax.n / 2] == 0);
    const auto p2 = decompose(hermite_eigenstate(2, ax, {}), 1.0);
    CHECK(qhj_residual(p2, -2.5, {}).max_abs(4.0) < 1e-5);
    CHECK(qhj_residual(p2, -2.0, {}).max_abs(4.0) > 0.4);
  }

  TEST_CASE("quantum potential of the ground state") {
    const Axis ax = default_position_axis();
    const ResidualField qp = quantum_potential(decompose(hermite_eigenstate(0, ax, {}), 1.0), {});
    CHECK(std::abs(qp.values[ax.n / 2] - 0.5) < 1e-6);
    for (std::size_t i = 0; i < ax.n; ++i)
      if (qp.mask[i] && std::abs(ax.at(i)) < 3.0) CHECK(std::abs(qp.values[i] - 0.5 * (1.0 - ax.at(i) * ax.at(i))) < 1e-6);
  }

  TEST_CASE("phase rate between snapshots") {
    const Axis ax = default_position_axis();
    const WaveFunction psi = hermite_eigenstate(0, ax, {});
    const auto rate = phase_time_derivative(psi, phased(psi, -0.5 * 1e-3, 1e-3), 1e-3, 1.0);
    for (double v : rate) CHECK(std::abs(v + 0.5) < 1e-10);
  }

  TEST_CASE("transformed pair: phase equation vanishes for monomials") {
    for (std::size_t n = 0; n <= 10; ++n) {
      const auto r = transformed_pair_residuals(BargmannPoly::monomial(n), 0.7, {});
      for (double v : r.r22) CHECK(std::abs(v) < 1e-10);
      CHECK(r.q1.front() == doctest::Approx(0.1));
      CHECK(r.q1.back() == doctest::Approx(4.0));
    }
  }

  TEST_CASE("transformed pair: printed continuity equation leaves (2n+1) hbar omega q1^(2n)") {
    const PhysParams par{1.0, 1.3, 0.7};
    for (std::size_t n = 0; n <= 3; ++n) {
      const auto r = transformed_pair_residuals(BargmannPoly::monomial(n), 0.0, par);
      for (std::size_t i = 0; i < r.q1.size(); ++i) {
        const double expect = (2.0 * n + 1.0) * par.hbar * par.omega * std::pow(r.q1[i], 2.0 * n);
        CHECK(std::abs(r.r21[i] - expect) < 1e-10 * std::max(1.0, expect));
      }
    }
  }

  TEST_CASE("transformed pair: printed dynamics satisfy the sign-flipped equation") {
    for (std::size_t n = 0; n <= 4; ++n) {
      const auto r = transformed_pair_residuals_literal(BargmannPoly::monomial(n), 0.2, {});
      for (std::size_t i = 0; i < r.q1.size(); ++i)
        CHECK(std::abs(r.r21_flipped[i]) < 1e-10 * std::max(1.0, std::pow(r.q1[i], 2.0 * n)));
    }
  }

  TEST_CASE("transformed pair of the zero polynomial") {
    CHECK_THROWS_AS(transformed_pair_residuals(BargmannPoly{}, 0.0, {}), AllZero);
  }
}
