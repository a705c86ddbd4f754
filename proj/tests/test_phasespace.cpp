#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "wmlab/errors.hpp"
#include "wmlab/phasespace.hpp"

using namespace wmlab;
constexpr double kPi = std::numbers::pi;

TEST_SUITE("phasespace") {
  TEST_CASE("hamiltonian examples") {
    CHECK(hamiltonian({0.0, 0.0}, {}) == 0.0);
    CHECK(hamiltonian({1.0, 1.0}, {}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(hamiltonian({2.0, 0.0}, {1.0, 2.0, 1.0}) == doctest::Approx(8.0).epsilon(1e-15));
  }

  TEST_CASE("parameters must be positive and finite") {
    CHECK_THROWS_AS(PhysParams({0.0, 1.0, 1.0}).validate(), InvalidArgument);
    CHECK_THROWS_AS(PhysParams({1.0, -1.0, 1.0}).validate(), InvalidArgument);
    CHECK_THROWS_AS(PhysParams({1.0, 1.0, std::nan("")}).validate(), InvalidArgument);
    CHECK(PhysParams{2.0, 0.5, 1.0}.length_scale() == doctest::Approx(1.0));
  }

  TEST_CASE("grid validation") {
    CHECK_NOTHROW(PhaseGrid::square(8.0, 64).validate());
    CHECK_THROWS_AS(PhaseGrid::square(8.0, 60).validate(), InvalidArgument);
    PhaseGrid g = PhaseGrid::square(8.0, 64);
    g.q_max = g.q_min;
    CHECK_THROWS_AS(g.validate(), InvalidArgument);
  }

  TEST_CASE("hamilton_flow closed form") {
    const PhasePoint z = hamilton_flow({0.0, 1.0}, kPi / 2.0, {});
    CHECK(std::abs(z.q - 1.0) < 1e-15);
    CHECK(std::abs(z.p) < 1e-15);
    const PhasePoint w = hamilton_flow({0.3, -0.2}, 2.0 * kPi, {});
    CHECK(std::abs(w.q - 0.3) < 1e-14);
    CHECK(std::abs(w.p + 0.2) < 1e-14);
  }

  TEST_CASE("energy is conserved exactly along the flow") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const PhysParams par{1.7, 0.6, 0.9};
    for (int k = 0; k < 200; ++k) {
      const PhasePoint z{u(rng), u(rng)};
      const double t = 10.0 * u(rng);
      CHECK(std::abs(hamiltonian(hamilton_flow(z, t, par), par) - hamiltonian(z, par)) <
            1e-13 * std::max(1.0, hamiltonian(z, par)));
    }
  }

  TEST_CASE("flow composes as a group") {
    const PhysParams par{1.0, 1.3, 1.0};
    const PhasePoint z{0.7, -1.1};
    const PhasePoint a = hamilton_flow(hamilton_flow(z, 0.4, par), 0.9, par);
    const PhasePoint b = hamilton_flow(z, 1.3, par);
    CHECK(std::abs(a.q - b.q) < 1e-14);
    CHECK(std::abs(a.p - b.p) < 1e-14);
  }

  TEST_CASE("coherent density is a unit-mass classical density") {
    const PhaseGrid g = PhaseGrid::square(8.0, 128);
    const PhaseDensity f = coherent_density(g, {1.0, -0.5}, {});
    CHECK(std::abs(f.mass() - 1.0) < 1e-12);
    CHECK_NOTHROW(f.validate_classical());
    CHECK(std::abs(expectation(f, [](PhasePoint z) { return z.q; }) - 1.0) < 1e-10);
    CHECK(std::abs(expectation(f, [](PhasePoint z) { return z.p; }) + 0.5) < 1e-10);
    CHECK(frame_mass(f) < 1e-12);
  }

  TEST_CASE("validate_classical rejects negative or unnormalized densities") {
    const PhaseGrid g = PhaseGrid::square(4.0, 16);
    PhaseDensity f = coherent_density(g, {0.0, 0.0}, {});
    f.at(3, 3) = -1e-6;
    CHECK_NOTHROW(f.validate());
    CHECK_THROWS_AS(f.validate_classical(), InvalidArgument);
    PhaseDensity z = PhaseDensity::zeros(g);
    CHECK_THROWS_AS(z.validate_classical(), InvalidArgument);
    z.values.pop_back();
    CHECK_THROWS_AS(z.validate(), GridMismatch);
  }

  TEST_CASE("Liouville transport moves the center along the flow and keeps the mass") {
    const PhysParams par;
    const PhaseGrid g = PhaseGrid::square(8.0, 128);
    const PhaseDensity f0 = coherent_density(g, {1.5, 0.0}, par);
    const double t = 2.0;
    const PhaseDensity f1 = liouville_propagate(f0, t, par, 4);
    const PhasePoint c = hamilton_flow({1.5, 0.0}, t, par);
    CHECK(std::abs(f1.mass() - 1.0) < 1e-6);
    CHECK(std::abs(expectation(f1, [](PhasePoint z) { return z.q; }) - c.q) < 1e-4);
    CHECK(std::abs(expectation(f1, [](PhasePoint z) { return z.p; }) - c.p) < 1e-4);
    CHECK(f1.time == doctest::Approx(t));
  }

  TEST_CASE("functions of H are stationary") {
    const PhaseGrid g = PhaseGrid::square(8.0, 256);
    const PhaseDensity f0 = coherent_density(g, {0.0, 0.0}, {});
    const PhaseDensity f1 = liouville_propagate(f0, 1.7, {});
    CHECK(test_support::max_abs_diff(f0.values, f1.values) < 1e-6);
  }

  TEST_CASE("Liouville transport over a full period returns the input") {
    const PhaseGrid g = PhaseGrid::square(8.0, 128);
    const PhaseDensity f0 = coherent_density(g, {2.0, 1.0}, {});
    const PhaseDensity f1 = liouville_propagate(f0, 2.0 * kPi, {}, 1);
    CHECK(test_support::max_abs_diff(f0.values, f1.values) < 1e-12);
  }

  TEST_CASE("density reaching the frame raises BoundaryLeak") {
    const PhaseGrid g = PhaseGrid::square(4.0, 64);
    const PhaseDensity f0 = coherent_density(g, {2.5, 0.0}, {});
    CHECK_THROWS_AS(liouville_propagate(f0, 1.0, {1.0, 1.0, 1.0}), BoundaryLeak);
    CHECK_THROWS_AS(liouville_propagate(f0, 1.0, {}, 0), InvalidArgument);
  }

  TEST_CASE("Poisson bracket of the canonical pair") {
    PhaseFunction q = [](const PhasePoint& z) { return cplx(z.q); };
    PhaseFunction p = [](const PhasePoint& z) { return cplx(z.p); };
    CHECK(std::abs(poisson_bracket(q, p, {0.3, 0.9}) - 1.0) < 1e-10);
    CHECK(std::abs(poisson_bracket(p, q, {0.3, 0.9}) + 1.0) < 1e-10);
    PhaseFunction h = [](const PhasePoint& z) { return cplx(hamiltonian(z, {})); };
    // {q, H} = dH/dp = p
    CHECK(std::abs(poisson_bracket(q, h, {0.3, 0.9}) - 0.9) < 1e-8);
  }

  TEST_CASE("multi-dimensional Poisson bracket") {
    PhaseFunctionNd f = [](std::span<const double> z) { return cplx(z[0] * z[3]); };
    PhaseFunctionNd g = [](std::span<const double> z) { return cplx(z[1] * z[2]); };
    const double z[4] = {0.5, -0.3, 1.2, 0.7};
    // layout (x, y, px, py): {x py, y px} = y py - x px
    const double expect = -z[0] * z[2] + z[1] * z[3];
    CHECK(std::abs(poisson_bracket(f, g, std::span<const double>(z, 4)) - expect) < 1e-8);
    const double odd[3] = {0, 0, 0};
    CHECK_THROWS_AS(poisson_bracket(f, g, std::span<const double>(odd, 3)), InvalidArgument);
  }
}
