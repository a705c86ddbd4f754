#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "wmlab/errors.hpp"
#include "wmlab/schrodinger.hpp"

using namespace wmlab;
constexpr double kPi = std::numbers::pi;

TEST_SUITE("schrodinger") {
  TEST_CASE("ground state value at the origin") {
    const Axis ax = default_position_axis();
    const WaveFunction psi = hermite_eigenstate(0, ax, {});
    CHECK(std::abs(psi.values[ax.n / 2] - 0.7511255444649425) < 1e-9);
    for (const auto& v : psi.values) CHECK(v.imag() == 0.0);
  }

  TEST_CASE("Hermite functions are orthonormal") {
    const Axis ax = default_position_axis();
    std::vector<WaveFunction> st;
    for (std::size_t n = 0; n <= 10; ++n) st.push_back(hermite_eigenstate(n, ax, {}));
    for (std::size_t a = 0; a <= 10; ++a)
      for (std::size_t b = 0; b <= 10; ++b) CHECK(std::abs(inner(st[a], st[b]) - (a == b ? 1.0 : 0.0)) < 1e-8);
  }

  TEST_CASE("level n has n sign changes") {
    const Axis ax = default_position_axis();
    for (std::size_t n = 0; n <= 10; ++n) {
      const WaveFunction psi = hermite_eigenstate(n, ax, {});
      const double peak = std::abs(*std::max_element(psi.values.begin(), psi.values.end(),
                                                     [](cplx a, cplx b) { return std::abs(a) < std::abs(b); }));
      std::size_t changes = 0;
      double last = 0.0;
      for (const auto& v : psi.values) {
        if (std::abs(v.real()) < 1e-6 * peak) continue;
        if (last != 0.0 && (v.real() > 0.0) != (last > 0.0)) ++changes;
        last = v.real();
      }
      CHECK(changes == n);
    }
  }

  TEST_CASE("Hermite construction errors") {
    CHECK_THROWS_AS(hermite_eigenstate(41, default_position_axis(), {}), InvalidArgument);
    CHECK_THROWS_AS(hermite_eigenstate(0, Axis{-2.0, 2.0, 64}, {}), GridTooNarrow);
  }

  TEST_CASE("energies") {
    const Axis ax = default_position_axis();
    CHECK(std::abs(energy_expectation(hermite_eigenstate(0, ax, {}), {}) - 0.5) < 1e-7);
    CHECK(std::abs(energy_expectation(hermite_eigenstate(1, ax, {}), {}) - 1.5) < 1e-7);
    WaveFunction sup = hermite_eigenstate(0, ax, {});
    const WaveFunction one = hermite_eigenstate(1, ax, {});
    for (std::size_t i = 0; i < ax.n; ++i) sup.values[i] = (sup.values[i] + one.values[i]) / std::sqrt(2.0);
    CHECK(std::abs(energy_expectation(sup, {}) - 1.0) < 1e-7);
    CHECK(oscillator_energy(3, {1.0, 2.0, 0.5}) == doctest::Approx(3.5));
    CHECK_THROWS_AS(energy_expectation(WaveFunction::zeros(ax), {}), AllZero);
  }

  TEST_CASE("step counts") {
    CHECK(min_split_steps(1.0, {}) == 40);
    CHECK(default_split_steps(2.0 * kPi, {}) == 512);
    CHECK(default_split_steps(0.01, {}) == 1);
  }

  TEST_CASE("eigenstates pick up the energy phase") {
    const Axis ax = default_position_axis();
    const double t = 2.0 * kPi;
    for (std::size_t n = 0; n <= 5; ++n) {
      const WaveFunction psi = hermite_eigenstate(n, ax, {});
      const WaveFunction out = split_step_evolve(psi, t, default_split_steps(t, {}), {});
      CHECK(1.0 - fidelity(out, psi) < 1e-8);
      const WaveFunction short_run = split_step_evolve(psi, 1.0, 2000, {});
      const double phase = std::arg(inner(psi, short_run));
      CHECK(std::abs(std::remainder(phase + oscillator_energy(n, {}), 2.0 * kPi)) < 1e-6);
    }
  }

  TEST_CASE("coherent state returns after one period") {
    const Axis ax = default_position_axis();
    const WaveFunction psi = coherent_state({1.0, 0.0}, 0.0, ax, {});
    const WaveFunction out = split_step_evolve(psi, 2.0 * kPi, 512, {});
    CHECK(1.0 - fidelity(out, psi) < 1e-6);
    const WaveFunction quarter = split_step_evolve(psi, kPi / 2.0, 128, {});
    CHECK(1.0 - fidelity(quarter, coherent_state({1.0, 0.0}, kPi / 2.0, ax, {})) < 1e-6);
  }

  TEST_CASE("zero duration is the identity") {
    const WaveFunction psi = coherent_state({0.5, 0.5}, 0.0, default_position_axis(), {});
    const WaveFunction out = split_step_evolve(psi, 0.0, 1, {});
    CHECK(test_support::max_abs_diff(psi.values, out.values) == 0.0);
  }

  TEST_CASE("unitarity over 1e4 steps") {
    const WaveFunction psi = hermite_eigenstate(2, default_position_axis(), {});
    const WaveFunction out = split_step_evolve(psi, 10000 * 2.0 * kPi / 512.0, 10000, {});
    CHECK(std::abs(out.norm_sq() - 1.0) < 1e-10);
  }

  TEST_CASE("split-step guards") {
    const WaveFunction psi = hermite_eigenstate(0, default_position_axis(), {});
    CHECK_THROWS_AS(split_step_evolve(psi, 1.0, 10, {}), InvalidArgument);
    const Axis narrow{-6.0, 6.0, 256};
    const WaveFunction far = coherent_state({4.0, 0.0}, 0.0, narrow, {});
    CHECK_THROWS_AS(split_step_evolve(far, kPi, 200, {}), BoundaryLeak);
  }

  TEST_CASE("equivalence report at t = 0 is exact") {
    const PhaseGrid g = PhaseGrid::square(8.0, 64);
    const EquivalenceReport r = equivalence_report(coherent_state({1.0, 0.0}, 0.0, g.q_axis(), {}), 0.0, g, {});
    CHECK(r.l2 < 1e-12);
    CHECK(r.max_abs < 1e-12);
  }

  TEST_CASE("equivalence for a stationary eigenstate") {
    const PhaseGrid g = PhaseGrid::square(8.0, 128);
    const EquivalenceReport r = equivalence_report(hermite_eigenstate(1, g.q_axis(), {}), 1.3, g, {});
    CHECK(r.l2 < 1e-3);
    CHECK(r.n_steps == default_split_steps(1.3, {}));
  }

  TEST_CASE("equivalence distance converges at least quadratically in the grid") {
    std::vector<double> d;
    for (std::size_t n : {64u, 128u, 256u}) {
      const PhaseGrid g = PhaseGrid::square(8.0, n);
      d.push_back(equivalence_report(coherent_state({1.0, 0.0}, 0.0, g.q_axis(), {}), 2.0 * kPi, g, {}, 512).l2);
    }
    CHECK(d[2] < 1e-3);
    CHECK(std::log2(d[0] / d[1]) >= 1.8);
    CHECK(std::log2(d[1] / d[2]) >= 1.8);
    CHECK(d[0] / d[2] >= 3.0);
  }

  TEST_CASE("equivalence requires the state on the grid axis") {
    const PhaseGrid g = PhaseGrid::square(8.0, 64);
    CHECK_THROWS_AS(equivalence_report(hermite_eigenstate(0, default_position_axis(), {}), 1.0, g, {}), GridMismatch);
  }
}
