#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "wmlab/errors.hpp"
#include "wmlab/schrodinger.hpp"
#include "wmlab/wigner.hpp"

using namespace wmlab;
using test_support::max_abs_diff;
constexpr double kPi = std::numbers::pi;

namespace {

std::size_t zero_index(double lo, double step) { return static_cast<std::size_t>(std::lround(-lo / step)); }

WaveFunction random_state(std::mt19937_64& rng, const Axis& ax, const PhysParams& par, std::size_t levels) {
  std::normal_distribution<double> g;
  WaveFunction phi = WaveFunction::zeros(ax);
  for (std::size_t n = 0; n < levels; ++n) {
    const WaveFunction h = hermite_eigenstate(n, ax, par);
    const cplx c{g(rng), g(rng)};
    for (std::size_t i = 0; i < ax.n; ++i) phi.values[i] += c * h.values[i];
  }
  phi.normalize();
  return phi;
}

}  // namespace

TEST_SUITE("wigner") {
  TEST_CASE("ground-state oracle rho(0,0) = sqrt(m w / pi hbar)") {
    const PhysParams par;
    const PhaseGrid g = PhaseGrid::square(8.0, 256);
    const DensitySlice rho = wigner_forward(coherent_density(g, {0.0, 0.0}, par), par);
    const cplx v = rho.at(zero_index(g.q_min, g.dq()), g.n_p / 2);
    CHECK(std::abs(v - 0.5641895835477563) < 1e-6);
    CHECK(rho.delta(g.n_p / 2) == 0.0);
    CHECK(rho.delta_step() == doctest::Approx(2.0 * kPi / (g.n_p * g.dp())));
  }

  TEST_CASE("the oracle scales with the parameters") {
    const PhysParams par{2.0, 1.5, 0.5};
    const PhaseGrid g = PhaseGrid::square(6.0, 256);
    const DensitySlice rho = wigner_forward(coherent_density(g, {0.0, 0.0}, par), par);
    const cplx v = rho.at(zero_index(g.q_min, g.dq()), g.n_p / 2);
    CHECK(std::abs(v - std::sqrt(par.m * par.omega / (kPi * par.hbar))) < 1e-6);
  }

  TEST_CASE("forward images of real densities are Hermitian with a real nonnegative diagonal") {
    const PhysParams par;
    const PhaseGrid g = PhaseGrid::square(8.0, 128);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PhaseDensity f = PhaseDensity::zeros(g);
    for (auto& v : f.values) v = u(rng);
    const DensitySlice rho = wigner_forward(f, par);
    CHECK(rho.hermiticity_error() < 1e-10);
    for (std::size_t i = 0; i < g.n_q; ++i) {
      CHECK(std::abs(rho.at(i, g.n_p / 2).imag()) < 1e-10);
      CHECK(rho.at(i, g.n_p / 2).real() >= -1e-10);
    }
  }

  TEST_CASE("roundtrip and Parseval") {
    const PhysParams par;
    const PhaseGrid g = PhaseGrid::square(8.0, 256);
    const PhaseDensity f = coherent_density(g, {1.0, 0.7}, par);
    InverseDiagnostics diag;
    const DensitySlice rho = wigner_forward(f, par);
    const PhaseDensity back = wigner_inverse(rho, &diag);
    CHECK(max_abs_diff(f.values, back.values) < 1e-10);
    CHECK(diag.imag_residue < 1e-10);
    double lhs = 0.0, rhs = 0.0;
    for (double v : f.values) lhs += v * v;
    for (const cplx& v : rho.values) rhs += std::norm(v);
    lhs *= g.dq() * g.dp();
    rhs *= g.dq() * rho.delta_step() / (2.0 * kPi * par.hbar);
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }

  TEST_CASE("roundtrip of an arbitrary real field") {
    const PhysParams par{1.0, 1.0, 0.7};
    const PhaseGrid g{-3.0, 5.0, -4.0, 4.0, 64, 32};
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n;
    PhaseDensity f = PhaseDensity::zeros(g);
    for (auto& v : f.values) v = n(rng);
    CHECK(max_abs_diff(f.values, wigner_inverse(wigner_forward(f, par)).values) < 1e-10);
  }

  TEST_CASE("non-Hermitian slices are rejected") {
    const PhaseGrid g = PhaseGrid::square(4.0, 16);
    DensitySlice rho{g, 1.0, std::vector<cplx>(g.size()), 0.0};
    rho.at(3, 2) = {0.0, 1.0};
    CHECK_THROWS_AS(wigner_inverse(rho), NonHermitianInput);
    rho.values.pop_back();
    CHECK_THROWS_AS(wigner_inverse(rho), GridMismatch);
  }

  TEST_CASE("delta-independent slice maps onto the p = 0 column") {
    const PhaseGrid g = PhaseGrid::square(4.0, 32);
    DensitySlice rho{g, 1.0, std::vector<cplx>(g.size()), 0.0};
    for (std::size_t i = 0; i < g.n_q; ++i)
      for (std::size_t j = 0; j < g.n_p; ++j) rho.at(i, j) = std::exp(-g.q(i) * g.q(i));
    const PhaseDensity f = wigner_inverse(rho);
    const std::size_t j0 = zero_index(g.p_min, g.dp());
    for (std::size_t i = 0; i < g.n_q; ++i)
      for (std::size_t j = 0; j < g.n_p; ++j) {
        if (j == j0) {
          CHECK(f.at(i, j) > 0.0);
        } else {
          CHECK(std::abs(f.at(i, j)) < 1e-14);
        }
      }
  }

  TEST_CASE("level 1 Wigner function is -1/(pi hbar) at the origin") {
    const PhysParams par;
    const PhaseGrid g = PhaseGrid::square(8.0, 256);
    const PhaseDensity f = wigner_density(hermite_eigenstate(1, g.q_axis(), par), g, par);
    CHECK(std::abs(f.at(zero_index(g.q_min, g.dq()), zero_index(g.p_min, g.dp())) + 1.0 / kPi) < 1e-4);
    CHECK(std::abs(f.mass() - 1.0) < 1e-8);
    CHECK_THROWS_AS(f.validate_classical(), InvalidArgument);
  }

  TEST_CASE("ground-state slice is the Gaussian product") {
    const PhysParams par;
    const PhaseGrid g = PhaseGrid::square(8.0, 256);
    const DensitySlice rho = wavefunction_to_slice(hermite_eigenstate(0, g.q_axis(), par), g, par);
    double err = 0.0, trace = 0.0;
    for (std::size_t i = 0; i < g.n_q; ++i) {
      trace += rho.at(i, g.n_p / 2).real() * g.dq();
      for (std::size_t j = 0; j < g.n_p; ++j) {
        const double q = g.q(i), d = rho.delta(j);
        const double expect = std::sqrt(1.0 / kPi) * std::exp(-(q * q + 0.25 * d * d));
        err = std::max(err, std::abs(rho.at(i, j) - expect));
      }
    }
    CHECK(err < 1e-8);
    CHECK(std::abs(trace - 1.0) < 1e-8);
  }

  TEST_CASE("slice diagonal is |Phi|^2 exactly") {
    const PhysParams par;
    const PhaseGrid g = PhaseGrid::square(8.0, 128);
    std::mt19937_64 rng(10);
    const WaveFunction phi = random_state(rng, g.q_axis(), par, 5);
    const DensitySlice rho = wavefunction_to_slice(phi, g, par);
    for (std::size_t i = 0; i < g.n_q; ++i) CHECK(std::abs(rho.at(i, g.n_p / 2) - std::norm(phi.values[i])) < 1e-15);
    CHECK_THROWS_AS(wavefunction_to_slice(phi, PhaseGrid::square(8.0, 64), par), GridMismatch);
  }

  TEST_CASE("pure states factorize with unit purity") {
    const PhysParams par;
    const Axis ax{-10.0, 10.0, 64};
    std::mt19937_64 rng(11);
    for (int k = 0; k < 20; ++k) {
      const WaveFunction phi = random_state(rng, ax, par, 6);
      const EndpointMatrix em = EndpointMatrix::pure(phi);
      CHECK(std::abs(em.trace() - 1.0) < 1e-12);
      CHECK(em.hermiticity_error() < 1e-14);
      const PureFactorization pf = factorize_pure(em);
      CHECK(std::abs(pf.purity - 1.0) < 1e-8);
      REQUIRE(pf.phi.has_value());
      CHECK(1.0 - fidelity(*pf.phi, phi) < 1e-10);
      CHECK(pf.reconstruction_error < 1e-10);
    }
  }

  TEST_CASE("recovered state has its largest component real-positive") {
    const Axis ax{-10.0, 10.0, 64};
    std::mt19937_64 rng(12);
    const WaveFunction phi = random_state(rng, ax, {}, 3);
    const PureFactorization pf = factorize_pure(EndpointMatrix::pure(phi));
    REQUIRE(pf.phi.has_value());
    const auto& v = pf.phi->values;
    const auto it = std::max_element(v.begin(), v.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    CHECK(std::abs(it->imag()) < 1e-14);
    CHECK(it->real() > 0.0);
  }

  TEST_CASE("equal mixture has purity one half and no factor") {
    const Axis ax{-10.0, 10.0, 64};
    const std::vector<WaveFunction> st{hermite_eigenstate(0, ax, {}), hermite_eigenstate(1, ax, {})};
    const PureFactorization pf = factorize_pure(EndpointMatrix::mixture(st, {0.5, 0.5}));
    CHECK(std::abs(pf.purity - 0.5) < 1e-6);
    CHECK_FALSE(pf.phi.has_value());
    CHECK_THROWS_AS(EndpointMatrix::mixture(st, {1.0}), InvalidArgument);
  }

  TEST_CASE("delta-like state is pure") {
    const Axis ax{-1.0, 1.0, 16};
    WaveFunction phi = WaveFunction::zeros(ax);
    phi.values[5] = 1.0 / std::sqrt(ax.step());
    const PureFactorization pf = factorize_pure(EndpointMatrix::pure(phi));
    CHECK(std::abs(pf.purity - 1.0) < 1e-12);
  }

  TEST_CASE("factorization requires unit trace") {
    const Axis ax{-10.0, 10.0, 64};
    WaveFunction phi = hermite_eigenstate(0, ax, {});
    for (auto& v : phi.values) v *= 2.0;
    CHECK_THROWS_AS(factorize_pure(EndpointMatrix::pure(phi)), InvalidArgument);
  }
}
