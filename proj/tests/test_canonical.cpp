#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wmlab/canonical.hpp"
#include "wmlab/errors.hpp"

using namespace wmlab;
constexpr double kPi = std::numbers::pi;

TEST_SUITE("canonical") {
  TEST_CASE("images of real points satisfy p1 = conj(q1)") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    const PhysParams par{0.7, 1.9, 1.3};
    for (int k = 0; k < 10; ++k) {
      const NormalModePoint nm = to_normal_modes({u(rng), u(rng)}, par);
      CHECK(std::abs(nm.p1 - std::conj(nm.q1)) == 0.0);
    }
  }

  TEST_CASE("the map inverts") {
    const PhysParams par{0.7, 1.9, 1.3};
    const PhasePoint z{0.4, -2.2};
    const PhasePoint back = from_normal_modes(to_normal_modes(z, par), par);
    CHECK(std::abs(back.q - z.q) < 1e-14);
    CHECK(std::abs(back.p - z.p) < 1e-14);
  }

  TEST_CASE("transformed Hamiltonian equals H") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const PhysParams par{1.4, 0.8, 0.6};
    for (int k = 0; k < 1000; ++k) {
      const PhasePoint z{u(rng), u(rng)};
      const cplx h1 = transformed_hamiltonian(to_normal_modes(z, par), par);
      CHECK(std::abs(h1 - hamiltonian(z, par)) < 1e-12);
    }
  }

  TEST_CASE("normal-mode flow examples") {
    const PhysParams par;
    const cplx q1{0.3, -0.8};
    CHECK(normal_mode_flow(q1, 0.0, par) == q1);
    CHECK(std::abs(normal_mode_flow(q1, kPi / 2.0, par) - cplx(0.0, 1.0) * q1) < 1e-15);
    CHECK(std::abs(std::abs(normal_mode_flow(q1, 12.3, par)) - std::abs(q1)) < 1e-15);
  }

  TEST_CASE("normal-mode flow is the pullback of hamilton_flow") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const PhysParams par{1.1, 2.3, 0.5};
    for (int k = 0; k < 100; ++k) {
      const PhasePoint z{u(rng), u(rng)};
      const double t = u(rng);
      const cplx a = to_normal_modes(hamilton_flow(z, t, par), par).q1;
      const cplx b = normal_mode_flow(to_normal_modes(z, par).q1, t, par);
      CHECK(std::abs(a - b) < 1e-10);
    }
  }

  TEST_CASE("the literal flow grows instead of rotating") {
    const PhysParams par;
    const cplx q1{1.0, 0.0};
    CHECK(std::abs(normal_mode_flow_literal(q1, 1.0, par)) == doctest::Approx(std::exp(1.0)));
  }

  TEST_CASE("phase angle examples") {
    const PhysParams par;
    CHECK(phase_angle({0.0, 2.0}, par).theta == 0.0);
    CHECK(phase_angle({1.0, 1.0}, par).theta == doctest::Approx(kPi / 4.0).epsilon(1e-15));
    CHECK(phase_angle({0.0, -1.0}, par).theta == doctest::Approx(kPi));
    CHECK_THROWS_AS(phase_angle({0.0, 0.0}, par), OriginUndefined);
  }

  TEST_CASE("on the shell H = hbar omega, q1 = exp(i theta)") {
    const PhysParams par{2.0, 0.5, 1.5};
    for (double th = -3.0; th < 3.1; th += 0.37) {
      const PhasePoint z{std::sqrt(2.0 * par.hbar / (par.m * par.omega)) * std::sin(th),
                         std::sqrt(2.0 * par.hbar * par.m * par.omega) * std::cos(th)};
      CHECK(std::abs(to_normal_modes(z, par).q1 - std::polar(1.0, th)) < 1e-12);
      CHECK(std::abs(wrap_angle(phase_angle(z, par).theta - th)) < 1e-12);
    }
  }

  TEST_CASE("phase additivity along the flow") {
    const PhysParams par{1.0, 1.7, 1.0};
    const PhasePoint z{0.3, 0.4};
    for (double t = -5.0; t < 5.0; t += 0.61) {
      const double d = phase_angle(hamilton_flow(z, t, par), par).theta - phase_angle(z, par).theta - par.omega * t;
      CHECK(std::abs(wrap_angle(d)) < 1e-8);
    }
  }

  TEST_CASE("wrap_angle lands in (-pi, pi]") {
    CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(3.0 * kPi + 0.1) == doctest::Approx(-kPi + 0.1));
    CHECK(wrap_angle(0.2) == doctest::Approx(0.2));
  }
}
