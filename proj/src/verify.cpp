#include "wmlab/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "wmlab/canonical.hpp"
#include "wmlab/errors.hpp"
#include "wmlab/fock.hpp"
#include "wmlab/madelung.hpp"
#include "wmlab/schrodinger.hpp"
#include "wmlab/spin.hpp"
#include "wmlab/wigner.hpp"

namespace wmlab {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

struct Outcome {
  double residual = 0.0;
  std::string note;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

class Suite {
 public:
  explicit Suite(const Config& cfg) : cfg(cfg), par(cfg.params), grid(cfg.grid()) {}

  void check(std::string id, std::string convention, std::string module, std::string operation,
             std::optional<double> threshold, const std::function<Outcome()>& body) {
    ReportEntry e;
    e.equation_id = std::move(id);
    e.convention = std::move(convention);
    e.module = std::move(module);
    e.operation = std::move(operation);
    e.threshold = threshold;
    try {
      Outcome o = body();
      e.residual = o.residual;
      e.note = std::move(o.note);
    } catch (const std::exception& ex) {
      e.residual.reset();
      e.note = ex.what();
    }
    report.add(std::move(e));
  }

  const Config& cfg;
  PhysParams par;
  PhaseGrid grid;
  VerificationReport report;
};

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Axis position_axis(const PhysParams& par, double half_width = 10.0, std::size_t n = 512) {
  const double l = par.length_scale();
  return {-half_width * l, half_width * l, n};
}

PhasePoint random_point(std::mt19937_64& rng, double scale = 3.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  const double q = u(rng);
  return {q, u(rng)};
}

Phase4Point random_point4(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const double x = u(rng), y = u(rng), px = u(rng);
  return {x, y, px, u(rng)};
}

cplx random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const double re = g(rng);
  return {re, g(rng)};
}

WaveFunction hermite_superposition(std::mt19937_64& rng, std::size_t max_level, const Axis& axis,
                                   const PhysParams& par) {
  WaveFunction out = WaveFunction::zeros(axis);
  for (std::size_t n = 0; n <= max_level; ++n) {
    const WaveFunction h = hermite_eigenstate(n, axis, par);
    const cplx c = random_complex(rng);
    for (std::size_t i = 0; i < axis.n; ++i) out.values[i] += c * h.values[i];
  }
  out.normalize();
  return out;
}

// Derivatives of a slice along delta (inner index) or q (outer index).
std::vector<cplx> slice_d_delta(const DensitySlice& rho) {
  const std::size_t nq = rho.grid.n_q, np = rho.grid.n_p;
  const Axis ax{rho.delta(0), rho.delta(0) + static_cast<double>(np) * rho.delta_step(), np};
  std::vector<cplx> out(rho.values.size());
  for (std::size_t i = 0; i < nq; ++i) {
    const std::span<const cplx> row(rho.values.data() + i * np, np);
    const auto d = derivative(row, ax, 1);
    std::copy(d.begin(), d.end(), out.begin() + static_cast<std::ptrdiff_t>(i * np));
  }
  return out;
}

std::vector<cplx> slice_d_q(const std::vector<cplx>& values, const PhaseGrid& g) {
  const std::size_t nq = g.n_q, np = g.n_p;
  std::vector<cplx> out(values.size()), col(nq);
  for (std::size_t j = 0; j < np; ++j) {
    for (std::size_t i = 0; i < nq; ++i) col[i] = values[i * np + j];
    const auto d = derivative(col, g.q_axis(), 1);
    for (std::size_t i = 0; i < nq; ++i) out[i * np + j] = d[i];
  }
  return out;
}

double op_norm_max(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// --- phasespace -----------------------------------------------------------

void phasespace_checks(Suite& s) {
  const auto& par = s.par;

  s.check("Eq.1", kRepaired, "phasespace", "hamiltonian", 1e-14, [&] {
    double r = std::abs(hamiltonian({0.0, 0.0}, {1, 1, 1}));
    r = std::max(r, std::abs(hamiltonian({1.0, 1.0}, {1, 1, 1}) - 1.0));
    r = std::max(r, std::abs(hamiltonian({2.0, 0.0}, {1, 2, 1}) - 8.0));
    return Outcome{r, "closed-form examples"};
  });

  s.check("Eq.2", kRepaired, "phasespace", "liouville_propagate", 1e-6, [&] {
    const PhaseDensity f0 = coherent_density(s.grid, {1.0, 0.0}, par);
    const PhaseDensity f1 = liouville_propagate(f0, 1.3 / par.omega, par);
    return Outcome{std::abs(f1.mass() - f0.mass()), "mass change over t = 1.3/omega"};
  });

  s.check("Eq.3", kRepaired, "phasespace", "hamilton_flow", 1e-8, [&] {
    std::mt19937_64 rng(3);
    const double t = 0.37 / par.omega, h = 1e-5 / par.omega;
    double r = 0.0;
    for (int k = 0; k < 20; ++k) {
      const PhasePoint z = random_point(rng);
      const PhasePoint a = hamilton_flow(z, t + h, par), b = hamilton_flow(z, t - h, par);
      const PhasePoint c = hamilton_flow(z, t, par);
      const double dq = (a.q - b.q) / (2.0 * h), dp = (a.p - b.p) / (2.0 * h);
      const double scale = std::max(1.0, std::hypot(c.p / par.m, par.m * par.omega * par.omega * c.q));
      r = std::max(r, std::abs(dq - c.p / par.m) / scale);
      r = std::max(r, std::abs(dp + par.m * par.omega * par.omega * c.q) / scale);
    }
    return Outcome{r, "central difference of the closed-form flow vs dH/dp, -dH/dq"};
  });

  s.check("Eq.4", kRepaired, "phasespace", "liouville_propagate", 1e-6, [&] {
    const PhaseDensity f0 = coherent_density(s.grid, {0.0, 0.0}, par);
    const PhaseDensity f1 = liouville_propagate(f0, 2.1 / par.omega, par);
    return Outcome{max_abs_diff(f0.values, f1.values), "f(H) is stationary"};
  });

  s.check("Eq.4-transport", kRepaired, "phasespace", "liouville_propagate", 1.0, [&] {
    const PhasePoint c0{1.0 * par.length_scale(), 0.0};
    const double t = 1.0 / par.omega;
    const PhaseDensity f1 = liouville_propagate(coherent_density(s.grid, c0, par), t, par);
    const double mass = f1.mass();
    const double q = expectation(f1, [](PhasePoint z) { return z.q; }) / mass;
    const double p = expectation(f1, [](PhasePoint z) { return z.p; }) / mass;
    const PhasePoint c1 = hamilton_flow(c0, t, par);
    const double cell = std::min(s.grid.dq(), s.grid.dp());
    return Outcome{std::hypot(q - c1.q, p - c1.p) / cell, "center offset in grid cells"};
  });
}

// --- wigner ---------------------------------------------------------------

void wigner_checks(Suite& s) {
  const auto& par = s.par;
  const double l = par.length_scale();

  s.check("Eq.5", kRepaired, "wigner", "wigner_forward/wigner_inverse", 1e-10, [&] {
    const PhaseDensity f = coherent_density(s.grid, {1.0 * l, 0.5 * par.m * par.omega * l}, par);
    const PhaseDensity g = wigner_inverse(wigner_forward(f, par));
    return Outcome{max_abs_diff(f.values, g.values), "max-norm roundtrip"};
  });

  s.check("Eq.5-parseval", kRepaired, "wigner", "wigner_forward", 1e-8, [&] {
    const PhaseDensity f = coherent_density(s.grid, {1.0 * l, 0.0}, par);
    const DensitySlice rho = wigner_forward(f, par);
    double lhs = 0.0, rhs = 0.0;
    for (double v : f.values) lhs += v * v;
    lhs *= s.grid.dq() * s.grid.dp();
    for (const cplx& v : rho.values) rhs += std::norm(v);
    rhs *= s.grid.dq() * rho.delta_step() / (2.0 * kPi * par.hbar);
    return Outcome{std::abs(lhs - rhs), ""};
  });

  s.check("Eq.5-oracle", kRepaired, "wigner", "wigner_forward", 1e-6, [&] {
    const PhaseDensity f = coherent_density(s.grid, {0.0, 0.0}, par);
    const DensitySlice rho = wigner_forward(f, par);
    const auto i0 = static_cast<std::size_t>(std::lround(-s.grid.q_min / s.grid.dq()));
    const cplx v = rho.at(i0, s.grid.n_p / 2);
    const double expect = std::sqrt(par.m * par.omega / (kPi * par.hbar));
    return Outcome{std::abs(v - expect), "rho(0,0) of the ground state"};
  });

  s.check("Eq.5-inverse-oracle", kRepaired, "wigner", "wigner_inverse", 1e-4, [&] {
    const WaveFunction phi = hermite_eigenstate(1, s.grid.q_axis(), par);
    const PhaseDensity f = wigner_density(phi, s.grid, par);
    const auto i0 = static_cast<std::size_t>(std::lround(-s.grid.q_min / s.grid.dq()));
    const auto j0 = static_cast<std::size_t>(std::lround(-s.grid.p_min / s.grid.dp()));
    return Outcome{std::abs(f.at(i0, j0) + 1.0 / (kPi * par.hbar)), "F(0,0) of level 1"};
  });

  s.check("Eq.6", kRepaired, "wigner", "wigner_forward", 1e-6, [&] {
    const PhasePoint c0{1.0 * l, 0.5 * par.m * par.omega * l};
    const double t0 = 0.4 / par.omega, h = 1e-4 / par.omega;
    const DensitySlice rp = wigner_forward(coherent_density(s.grid, hamilton_flow(c0, t0 + h, par), par), par);
    const DensitySlice rm = wigner_forward(coherent_density(s.grid, hamilton_flow(c0, t0 - h, par), par), par);
    const DensitySlice r0 = wigner_forward(coherent_density(s.grid, hamilton_flow(c0, t0, par), par), par);
    const auto dd = slice_d_delta(r0);
    const auto dqd = slice_d_q(dd, s.grid);
    double r = 0.0;
    for (std::size_t i = 0; i < s.grid.n_q; ++i)
      for (std::size_t j = 0; j < s.grid.n_p; ++j) {
        const std::size_t k = i * s.grid.n_p + j;
        const cplx dt = (rp.values[k] - rm.values[k]) / (2.0 * h);
        const cplx res = -kI * par.hbar * dt - par.hbar * par.hbar / par.m * dqd[k] +
                         par.m * par.omega * par.omega * s.grid.q(i) * r0.delta(j) * r0.values[k];
        r = std::max(r, std::abs(res));
      }
    return Outcome{r, "transported coherent density, central difference in t"};
  });

  const Axis small{-10.0 * l, 10.0 * l, 64};

  s.check("Eq.7", kRepaired, "wigner", "factorize_pure", 1e-8, [&] {
    std::mt19937_64 rng(7);
    double r = 0.0;
    for (int k = 0; k < 20; ++k) {
      const WaveFunction phi = hermite_superposition(rng, 5, small, par);
      r = std::max(r, std::abs(factorize_pure(EndpointMatrix::pure(phi)).purity - 1.0));
    }
    return Outcome{r, "|purity - 1| over 20 random pure states"};
  });

  s.check("Eq.7-fidelity", kRepaired, "wigner", "factorize_pure", 1e-10, [&] {
    std::mt19937_64 rng(7);
    double r = 0.0;
    for (int k = 0; k < 20; ++k) {
      const WaveFunction phi = hermite_superposition(rng, 5, small, par);
      const PureFactorization pf = factorize_pure(EndpointMatrix::pure(phi));
      if (!pf.phi) throw InvalidArgument("pure input was not factorized");
      r = std::max(r, 1.0 - fidelity(*pf.phi, phi));
    }
    return Outcome{r, "1 - fidelity over 20 random pure states"};
  });

  s.check("Eq.7-mixture", kRepaired, "wigner", "factorize_pure", 1e-6, [&] {
    const std::vector<WaveFunction> st{hermite_eigenstate(0, small, par), hermite_eigenstate(1, small, par)};
    const PureFactorization pf = factorize_pure(EndpointMatrix::mixture(st, {0.5, 0.5}));
    return Outcome{std::abs(pf.purity - 0.5) + (pf.phi ? 1.0 : 0.0), "equal mixture of levels 0 and 1"};
  });

  s.check("Eq.8", kRepaired, "madelung", "decompose/compose", 1e-12, [&] {
    std::mt19937_64 rng(8);
    const Axis ax = position_axis(par);
    double r = 0.0;
    for (int k = 0; k < 50; ++k) {
      const WaveFunction phi = hermite_superposition(rng, 8, ax, par);
      r = std::max(r, 1.0 - fidelity(compose(decompose(phi, par.hbar)), phi));
    }
    return Outcome{r, "1 - fidelity over 50 random states"};
  });
}

// --- madelung and schrodinger ---------------------------------------------

WaveFunction with_phase(WaveFunction phi, double angle, double time) {
  const cplx f = std::polar(1.0, angle);
  for (auto& v : phi.values) v *= f;
  phi.time = time;
  return phi;
}

void madelung_checks(Suite& s) {
  const auto& par = s.par;
  const Axis ax = position_axis(par);
  const double window = 4.0 * par.length_scale();
  const double dt = 1e-3 / par.omega;
  const PhasePoint c0{1.0 * par.length_scale(), 0.5 * par.m * par.omega * par.length_scale()};

  auto eigen_pairs = [&](std::size_t n) {
    const WaveFunction psi = hermite_eigenstate(n, ax, par);
    const double e = oscillator_energy(n, par);
    const WaveFunction later = with_phase(psi, -e * dt / par.hbar, dt);
    return std::pair{decompose(psi, par.hbar, PhaseGauge::raw), decompose(later, par.hbar, PhaseGauge::raw)};
  };
  auto coherent_pairs = [&] {
    return std::pair{decompose(coherent_state(c0, -0.5 * dt, ax, par), par.hbar, PhaseGauge::raw),
                     decompose(coherent_state(c0, 0.5 * dt, ax, par), par.hbar, PhaseGauge::raw)};
  };

  s.check("Eq.9", kRepaired, "madelung", "continuity_residual/qhj_residual", 1e-5, [&] {
    const auto [a, b] = coherent_pairs();
    const ResidualField cont = continuity_residual(a, b, dt, par);
    const WaveFunction mid = coherent_state(c0, 0.0, ax, par);
    const MadelungPair pm = decompose(mid, par.hbar, PhaseGauge::raw);
    const auto dsdt = phase_time_derivative(coherent_state(c0, -0.5 * dt, ax, par),
                                            coherent_state(c0, 0.5 * dt, ax, par), dt, par.hbar);
    const ResidualField qhj = qhj_residual(pm, dsdt, par);
    double imag_part = 0.0;
    for (std::size_t i = 1; i + 1 < ax.n; ++i) {
      if (!qhj.mask[i - 1] || !qhj.mask[i] || !qhj.mask[i + 1] || std::abs(ax.at(i)) > window) continue;
      const double dq = (qhj.values[i + 1] - qhj.values[i - 1]) / (2.0 * ax.step());
      imag_part = std::max(imag_part, pm.R[i] * pm.R[i] * std::abs(dq) / par.hbar);
    }
    return Outcome{std::max(cont.max_abs(window), imag_part), "zeroth and first order in delta, coherent state"};
  });

  s.check("Eq.10", kRepaired, "madelung", "continuity_residual", 1e-5, [&] {
    double r = 0.0;
    for (std::size_t n = 0; n <= 2; ++n) {
      const auto [a, b] = eigen_pairs(n);
      r = std::max(r, continuity_residual(a, b, dt, par).max_abs(window));
    }
    return Outcome{r, "Hermite levels 0..2"};
  });

  s.check("Eq.10-coherent", kRepaired, "madelung", "continuity_residual", 1e-5, [&] {
    const auto [a, b] = coherent_pairs();
    return Outcome{continuity_residual(a, b, dt, par).max_abs(window), ""};
  });

  s.check("Eq.11", kRepaired, "madelung", "qhj_residual", 1e-5, [&] {
    double r = 0.0;
    for (std::size_t n = 0; n <= 2; ++n) {
      const MadelungPair p = decompose(hermite_eigenstate(n, ax, par), par.hbar);
      r = std::max(r, qhj_residual(p, -oscillator_energy(n, par), par).max_abs(window));
    }
    return Outcome{r, "Hermite levels 0..2 with dS/dt = -E_n"};
  });

  s.check("Eq.11-quantum-potential", kRepaired, "madelung", "quantum_potential", 1e-6, [&] {
    const MadelungPair p = decompose(hermite_eigenstate(0, ax, par), par.hbar);
    const ResidualField qp = quantum_potential(p, par);
    return Outcome{std::abs(qp.values[ax.n / 2] - 0.5 * par.hbar * par.omega), "ground state at q = 0"};
  });

  s.check("Eq.11-coherent", kRepaired, "madelung", "qhj_residual", 1e-5, [&] {
    const WaveFunction a = coherent_state(c0, -0.5 * dt, ax, par), b = coherent_state(c0, 0.5 * dt, ax, par);
    const MadelungPair pm = decompose(coherent_state(c0, 0.0, ax, par), par.hbar, PhaseGauge::raw);
    return Outcome{qhj_residual(pm, phase_time_derivative(a, b, dt, par.hbar), par).max_abs(window), ""};
  });

  s.check("Eq.12", kRepaired, "schrodinger", "split_step_evolve", 1e-6, [&] {
    const double t = 1.0 / par.omega;
    double r = 0.0;
    for (std::size_t n = 0; n <= 5; ++n) {
      const WaveFunction psi = hermite_eigenstate(n, ax, par);
      const WaveFunction out = split_step_evolve(psi, t, 2000, par);
      const double phase = std::arg(inner(psi, out));
      r = std::max(r, std::abs(wrap_angle(phase + oscillator_energy(n, par) * t / par.hbar)));
    }
    return Outcome{r, "eigenstate phase error, levels 0..5"};
  });

  s.check("Eq.12-crosscheck", kRepaired, "madelung", "schrodinger_continuity_residual", 1e-8, [&] {
    const auto [a, b] = coherent_pairs();
    const ResidualField x = continuity_residual(a, b, dt, par);
    const ResidualField y = schrodinger_continuity_residual(a, b, dt, par);
    double r = 0.0;
    for (std::size_t i = 0; i < ax.n; ++i)
      if (x.mask[i] && y.mask[i] && std::abs(ax.at(i)) <= window) r = std::max(r, std::abs(x.values[i] - y.values[i]));
    return Outcome{r, "Madelung form vs Schrodinger-operator form"};
  });

  s.check("Eq.12-period", kRepaired, "schrodinger", "split_step_evolve", 1e-8, [&] {
    const double t = 2.0 * kPi / par.omega;
    double r = 0.0;
    for (std::size_t n = 0; n <= 5; ++n) {
      const WaveFunction psi = hermite_eigenstate(n, ax, par);
      WaveFunction expect = with_phase(psi, -oscillator_energy(n, par) * t / par.hbar, t);
      r = std::max(r, 1.0 - fidelity(split_step_evolve(psi, t, default_split_steps(t, par), par), expect));
    }
    return Outcome{r, "1 - fidelity after one period, levels 0..5"};
  });

  s.check("Eq.12-coherent", kRepaired, "schrodinger", "split_step_evolve", 1e-6, [&] {
    const double t = 2.0 * kPi / par.omega;
    const WaveFunction psi = coherent_state(c0, 0.0, ax, par);
    const WaveFunction out = split_step_evolve(psi, t, default_split_steps(t, par), par);
    return Outcome{1.0 - fidelity(out, coherent_state(c0, t, ax, par)), "1 - fidelity after one period"};
  });

  s.check("Eq.12-energy", kRepaired, "schrodinger", "energy_expectation", 1e-7, [&] {
    double r = 0.0;
    for (std::size_t n = 0; n <= 5; ++n)
      r = std::max(r, std::abs(energy_expectation(hermite_eigenstate(n, ax, par), par) - oscillator_energy(n, par)));
    return Outcome{r, "levels 0..5"};
  });

  s.check("Eq.12-unitarity", kRepaired, "schrodinger", "split_step_evolve", 1e-10, [&] {
    const std::size_t steps = 10000;
    const double t = static_cast<double>(steps) * 2.0 * kPi / (512.0 * par.omega);
    const WaveFunction psi = hermite_eigenstate(1, ax, par);
    return Outcome{std::abs(split_step_evolve(psi, t, steps, par).norm_sq() - 1.0), "norm drift over 1e4 steps"};
  });

  // Equivalence of the two pictures on the configured grid and on half of it.
  const double period = 2.0 * kPi / par.omega;
  const PhasePoint coh{1.0 * par.length_scale(), 0.0};
  std::optional<double> fine, coarse;
  std::string fine_err, coarse_err;
  try {
    const WaveFunction phi = coherent_state(coh, 0.0, s.grid.q_axis(), par);
    fine = equivalence_report(phi, period, s.grid, par, 512).l2;
  } catch (const std::exception& e) {
    fine_err = e.what();
  }
  try {
    const PhaseGrid g2 = PhaseGrid::square(s.cfg.extent, s.cfg.n / 2);
    const WaveFunction phi = coherent_state(coh, 0.0, g2.q_axis(), par);
    coarse = equivalence_report(phi, period, g2, par, 512).l2;
  } catch (const std::exception& e) {
    coarse_err = e.what();
  }
  const std::string n_text = std::to_string(s.cfg.n);
  const std::string half_text = std::to_string(s.cfg.n / 2);

  s.check("Eq.12-equivalence", kRepaired, "schrodinger", "equivalence_report",
          s.cfg.n >= 256 ? std::optional<double>(1e-3) : std::nullopt, [&] {
            if (!fine) throw Error("Error", fine_err);
            std::string note = "coherent state, one period, 512 steps, " + n_text + "^2 grid";
            if (s.cfg.n < 256) note += "; gated only on grids of 256^2 and finer";
            return Outcome{*fine, note};
          });

  s.check("Eq.12-convergence", kRepaired, "schrodinger", "equivalence_report",
          s.cfg.n >= 128 ? std::optional<double>(1.0 / 3.0) : std::nullopt, [&] {
            if (!fine) throw Error("Error", fine_err);
            if (!coarse) throw Error("Error", coarse_err);
            std::string note = "L2(" + n_text + "^2) / L2(" + half_text + "^2) = " + fmt(*fine) + " / " + fmt(*coarse);
            if (s.cfg.n < 128) note += "; gated only on grids of 128^2 and finer";
            return Outcome{*fine / *coarse, note};
          });
}

// --- canonical ------------------------------------------------------------

void canonical_checks(Suite& s) {
  const auto& par = s.par;

  s.check("Eq.13", kRepaired, "canonical", "to_normal_modes", 1e-14, [&] {
    std::mt19937_64 rng(13);
    double r = 0.0;
    for (int k = 0; k < 10; ++k) {
      const NormalModePoint nm = to_normal_modes(random_point(rng), par);
      r = std::max(r, std::abs(nm.p1 - std::conj(nm.q1)));
    }
    const NormalModePoint ex = to_normal_modes({0.0, std::sqrt(2.0 * par.hbar * par.m * par.omega)}, par);
    r = std::max(r, std::abs(ex.q1 - 1.0));
    return Outcome{r, "p1 = conj(q1) and the unit example"};
  });

  s.check("Eq.13-bracket", kRepaired, "canonical", "poisson_bracket", 1e-6, [&] {
    std::mt19937_64 rng(131);
    auto q1 = [&](const PhasePoint& z) { return to_normal_modes(z, par).q1; };
    auto p1 = [&](const PhasePoint& z) { return to_normal_modes(z, par).p1; };
    double r = 0.0;
    for (int k = 0; k < 10; ++k) r = std::max(r, std::abs(poisson_bracket(q1, p1, random_point(rng)) - kI / par.hbar));
    return Outcome{r, "{q1, p1} - i/hbar"};
  });

  s.check("Eq.13-canonical-literal", kLiteral, "canonical", "poisson_bracket", std::nullopt, [&] {
    auto q1 = [&](const PhasePoint& z) { return to_normal_modes(z, par).q1; };
    auto p1 = [&](const PhasePoint& z) { return to_normal_modes(z, par).p1; };
    return Outcome{std::abs(poisson_bracket(q1, p1, {0.3, -0.7}) - 1.0), "|{q1, p1} - 1|: the pair is not canonical"};
  });

  s.check("Eq.14", kRepaired, "canonical", "transformed_hamiltonian", 1e-12, [&] {
    std::mt19937_64 rng(14);
    double r = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const PhasePoint z = random_point(rng);
      r = std::max(r, std::abs(transformed_hamiltonian(to_normal_modes(z, par), par) - hamiltonian(z, par)));
    }
    return Outcome{r, "1000 random points"};
  });

  // F0(q1, p1) = q1^2 p1 transported by the true flow.
  auto transported = [&](NormalModePoint z, double t) {
    const PhasePoint x = from_normal_modes(z, par);
    const NormalModePoint b = to_normal_modes(hamilton_flow(x, -t, par), par);
    return b.q1 * b.q1 * b.p1;
  };
  auto liouville15 = [&](cplx rate) {
    std::mt19937_64 rng(15);
    const double h = 1e-4 / par.omega;
    double r = 0.0;
    for (int k = 0; k < 20; ++k) {
      const NormalModePoint z = to_normal_modes(random_point(rng, 2.0), par);
      const cplx dF = (transported(z, h) - transported(z, -h)) / (2.0 * h);
      const cplx dq = 2.0 * z.q1 * z.p1, dp = z.q1 * z.q1;
      r = std::max(r, std::abs(dF + rate * z.q1 * dq - rate * z.p1 * dp));
    }
    return r;
  };

  s.check("Eq.15", kLiteral, "canonical", "transformed Liouville equation", std::nullopt, [&] {
    return Outcome{liouville15(par.hbar * par.omega), "rate hbar omega as printed"};
  });
  s.check("Eq.15-chain-rule", kRepaired, "canonical", "transformed Liouville equation", 1e-6, [&] {
    return Outcome{liouville15(kI * par.omega), "rate i omega from the chain rule"};
  });

  s.check("Eq.16", kLiteral, "canonical", "normal_mode_flow_literal", std::nullopt, [&] {
    std::mt19937_64 rng(16);
    const double t = 0.5 / par.omega;
    double r = 0.0;
    for (int k = 0; k < 20; ++k) {
      const PhasePoint z = random_point(rng);
      const cplx truth = to_normal_modes(hamilton_flow(z, t, par), par).q1;
      r = std::max(r, std::abs(normal_mode_flow_literal(to_normal_modes(z, par).q1, t, par) - truth));
    }
    return Outcome{r, "dq1/dt = hbar omega q1 vs the pulled-back flow at t = 0.5/omega"};
  });

  s.check("Eq.16-chain-rule", kRepaired, "canonical", "normal_mode_flow", 1e-10, [&] {
    std::mt19937_64 rng(161);
    double r = 0.0;
    for (int k = 0; k < 100; ++k) {
      const PhasePoint z = random_point(rng);
      const double t = std::uniform_real_distribution<double>(-5.0, 5.0)(rng) / par.omega;
      const cplx truth = to_normal_modes(hamilton_flow(z, t, par), par).q1;
      r = std::max(r, std::abs(normal_mode_flow(to_normal_modes(z, par).q1, t, par) - truth));
    }
    return Outcome{r, "commuting square with hamilton_flow"};
  });

  // Gaussian in (q1, p1) treated as real coordinates on the phase grid.
  auto hyper_density = [&](double t) {
    const double k = par.hbar * par.omega * t;
    return PhaseDensity::sample(s.grid, [k](PhasePoint z) {
      const double a = z.q * std::exp(-k), b = z.p * std::exp(k);
      return std::exp(-(a * a + b * b)) / kPi;
    });
  };
  auto liouville18 = [&](double sign) {
    const double t0 = 0.2 / (par.hbar * par.omega), h = 1e-4 / (par.hbar * par.omega);
    const DensitySlice rp = wigner_forward(hyper_density(t0 + h), par);
    const DensitySlice rm = wigner_forward(hyper_density(t0 - h), par);
    const DensitySlice r0 = wigner_forward(hyper_density(t0), par);
    const auto dd = slice_d_delta(r0);
    const auto dq = slice_d_q(r0.values, s.grid);
    const double w = par.hbar * par.omega;
    double r = 0.0;
    for (std::size_t i = 0; i < s.grid.n_q; ++i)
      for (std::size_t j = 0; j < s.grid.n_p; ++j) {
        const std::size_t k = i * s.grid.n_p + j;
        const cplx dt = (rp.values[k] - rm.values[k]) / (2.0 * h);
        const cplx div = r0.values[k] + r0.delta(j) * dd[k];
        r = std::max(r, std::abs(dt + w * s.grid.q(i) * dq[k] + sign * w * div));
      }
    return r;
  };

  s.check("Eq.17", kRepaired, "wigner", "wigner_forward", 1e-12, [&] {
    const PhaseDensity f = hyper_density(0.0);
    const DensitySlice rho = wigner_forward(f, par);
    double r = 0.0;
    for (std::size_t i = 0; i < s.grid.n_q; ++i) {
      double marginal = 0.0;
      for (std::size_t j = 0; j < s.grid.n_p; ++j) marginal += f.at(i, j);
      r = std::max(r, std::abs(rho.at(i, s.grid.n_p / 2) - marginal * s.grid.dp()));
    }
    return Outcome{r, "delta = 0 column equals the p1 marginal"};
  });

  s.check("Eq.18", kLiteral, "wigner", "transformed density equation", std::nullopt, [&] {
    return Outcome{liouville18(-1.0), "printed sign of the delta term, hyperbolic flow"};
  });
  s.check("Eq.18-sign-repaired", kRepaired, "wigner", "transformed density equation", 1e-6, [&] {
    return Outcome{liouville18(+1.0), "d(rho)/dt + hbar omega q1 d(rho)/dq1 + hbar omega d(delta rho)/d(delta)"};
  });

  s.check("Eq.19", kRepaired, "wigner", "wavefunction_to_slice", 1e-12, [&] {
    const Axis ax = s.grid.q_axis();
    WaveFunction phi = WaveFunction::zeros(ax);
    for (std::size_t i = 0; i < ax.n; ++i) {
      const double q = ax.at(i) / par.length_scale();
      phi.values[i] = cplx{1.0 + 0.5 * q, 0.3 * q * q} * std::exp(-0.5 * q * q);
    }
    phi.normalize();
    const DensitySlice rho = wavefunction_to_slice(phi, s.grid, par);
    double r = 0.0;
    for (std::size_t i = 0; i < ax.n; ++i) r = std::max(r, std::abs(rho.at(i, s.grid.n_p / 2) - std::norm(phi.values[i])));
    return Outcome{r, "rho(q1, 0) = |Phi(q1)|^2"};
  });
}

// --- transformed Madelung pair and Fock space -----------------------------

BargmannPoly random_poly(std::mt19937_64& rng, std::size_t degree) {
  BargmannPoly p;
  for (std::size_t n = 0; n <= degree; ++n) p.coeffs.push_back(random_complex(rng));
  p.canonicalize();
  return p;
}

void transformed_checks(Suite& s) {
  const auto& par = s.par;

  s.check("Eq.20", kRepaired, "madelung", "decompose", 1e-12, [&] {
    std::mt19937_64 rng(20);
    const BargmannPoly p = bargmann_evolve(random_poly(rng, 4), 0.3 / par.omega, par);
    const Axis ax{0.1, 4.0, 64};
    WaveFunction phi = WaveFunction::zeros(ax);
    for (std::size_t i = 0; i < ax.n; ++i) phi.values[i] = p(ax.at(i));
    const MadelungPair mp = decompose(phi, par.hbar);
    double r = 1.0 - fidelity(compose(mp), phi);
    for (std::size_t i = 0; i < ax.n; ++i) r = std::max(r, std::abs(mp.R[i] - std::abs(phi.values[i])) / mp.R[i]);
    return Outcome{r, "R exp(iS/hbar) on the real q1 segment"};
  });

  s.check("Eq.21", kLiteral, "madelung", "transformed_pair_residuals", std::nullopt, [&] {
    const TransformedPairResiduals tr = transformed_pair_residuals(BargmannPoly::monomial(0), 0.0, par);
    double r = 0.0, dev = 0.0;
    for (double v : tr.r21) r = std::max(r, std::abs(v));
    for (std::size_t n = 0; n <= 3; ++n) {
      const auto t = transformed_pair_residuals(BargmannPoly::monomial(n), 0.0, par);
      for (std::size_t i = 0; i < t.q1.size(); ++i) {
        const double expect = (2.0 * static_cast<double>(n) + 1.0) * par.hbar * par.omega *
                              std::pow(t.q1[i], 2.0 * static_cast<double>(n));
        dev = std::max(dev, std::abs(t.r21[i] - expect) / std::max(1.0, expect));
      }
    }
    return Outcome{r, "vacuum residual hbar omega R^2; monomials match (2n+1) hbar omega q1^(2n) to " + fmt(dev)};
  });

  s.check("Eq.21-flipped", kLiteral, "madelung", "transformed_pair_residuals_literal", std::nullopt, [&] {
    std::mt19937_64 rng(21);
    double r = 0.0;
    for (std::size_t n = 0; n <= 5; ++n) {
      const auto t = transformed_pair_residuals_literal(BargmannPoly::monomial(n), 0.3, par);
      for (std::size_t i = 0; i < t.q1.size(); ++i) {
        const double scale = std::max(1.0, std::pow(t.q1[i], 2.0 * static_cast<double>(n)));
        r = std::max(r, std::abs(t.r21_flipped[i]) / scale);
      }
    }
    return Outcome{r, "printed dynamics with the sign of the hbar omega R^2 term reversed, monomials 0..5"};
  });

  s.check("Eq.22", kRepaired, "madelung", "transformed_pair_residuals", 1e-10, [&] {
    double r = 0.0;
    for (std::size_t n = 0; n <= 10; ++n) {
      const auto t = transformed_pair_residuals(BargmannPoly::monomial(n), 0.7 / par.omega, par);
      for (double v : t.r22) r = std::max(r, std::abs(v));
    }
    return Outcome{r, "monomials 0..10"};
  });

  s.check("Eq.23", kRepaired, "fock", "bargmann_evolve", 1e-6, [&] {
    std::mt19937_64 rng(23);
    const BargmannPoly p0 = random_poly(rng, 5);
    const double t = 0.4 / par.omega, h = 1e-4 / par.omega;
    const BargmannPoly a = bargmann_evolve(p0, t + h, par), b = bargmann_evolve(p0, t - h, par);
    const BargmannPoly hp = bargmann_apply(BargmannAction::hamiltonian, bargmann_evolve(p0, t, par), par);
    double r = 0.0, scale = 0.0;
    for (std::size_t n = 0; n < hp.coeffs.size(); ++n) {
      const cplx lhs = kI * par.hbar * (a.coeffs[n] - b.coeffs[n]) / (2.0 * h);
      r = std::max(r, std::abs(lhs - hp.coeffs[n]));
      scale = std::max(scale, std::abs(hp.coeffs[n]));
    }
    return Outcome{r / scale, "i hbar dPhi/dt = hbar omega (q1 d/dq1 + 1/2) Phi, relative"};
  });

  s.check("Eq.23-literal", kLiteral, "fock", "literal_monomial_rate", std::nullopt, [&] {
    double r = 0.0;
    for (std::size_t n = 0; n <= 5; ++n)
      r = std::max(r, std::abs(cplx(literal_monomial_rate(n, par)) - repaired_monomial_rate(n, par)));
    return Outcome{r, "|hbar omega (1/2 - n) - (-i omega (n + 1/2))|, n <= 5"};
  });

  const std::size_t D = s.cfg.truncation;

  s.check("Eq.24", kRepaired, "fock", "ladder_matrices", 1e-12, [&] {
    const LadderSet l = ladder_matrices(D);
    const Eigen::MatrixXcd comm = l.a.values * l.adag.values - l.adag.values * l.a.values;
    const Eigen::MatrixXcd h = par.hbar * par.omega * (l.n_op.values + 0.5 * comm);
    const auto t = static_cast<Eigen::Index>(D - 1);
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(t, t);
    for (Eigen::Index n = 0; n < t; ++n) expect(n, n) = oscillator_energy(static_cast<std::size_t>(n), par);
    return Outcome{op_norm_max(h.topLeftCorner(t, t) - expect), "hbar omega (a^dagger a + [a, a^dagger]/2), trusted block"};
  });

  s.check("Eq.24-commutator", kRepaired, "fock", "ladder_matrices", 1e-12, [&] {
    const LadderSet l = ladder_matrices(D);
    const Eigen::MatrixXcd comm = l.a.values * l.adag.values - l.adag.values * l.a.values;
    const auto t = static_cast<Eigen::Index>(D - 1);
    const double edge = comm(t, t).real();
    return Outcome{op_norm_max(comm.topLeftCorner(t, t) - Eigen::MatrixXcd::Identity(t, t)),
                   "truncation edge entry " + fmt(edge)};
  });

  s.check("Eq.25", kRepaired, "fock", "bargmann_to_fock", 1e-12, [&] {
    std::mt19937_64 rng(25);
    const LadderSet l = ladder_matrices(D);
    double r = 0.0;
    for (int k = 0; k < 10; ++k) {
      const BargmannPoly p = random_poly(rng, std::min<std::size_t>(D - 2, 30));
      const Eigen::VectorXcd v = bargmann_to_fock(p, D).values;
      const Eigen::VectorXcd up = bargmann_to_fock(bargmann_apply(BargmannAction::create, p, par), D).values;
      const Eigen::VectorXcd dn = bargmann_to_fock(bargmann_apply(BargmannAction::annihilate, p, par), D).values;
      const Eigen::VectorXcd mu = l.adag.values * v, md = l.a.values * v;
      r = std::max(r, (up - mu).norm() / std::max(1.0, mu.norm()));
      r = std::max(r, (dn - md).norm() / std::max(1.0, md.norm()));
    }
    return Outcome{r, "a^dagger = q1 and a = d/dq1 commute with the isomorphism, relative"};
  });

  s.check("Eq.25-literal", kLiteral, "fock", "literal_commutator", std::nullopt, [&] {
    const cplx c = literal_commutator(par);
    return Outcome{std::abs(c - 1.0), "[-i hbar d/dq1, q1] = (" + fmt(c.real()) + ", " + fmt(c.imag()) + ")"};
  });

  s.check("Eq.26", kRepaired, "fock", "bargmann_evolve", 1e-12, [&] {
    const double t = 0.9 / par.omega;
    double r = 0.0;
    for (std::size_t n = 0; n <= 10; ++n) {
      const BargmannPoly p = bargmann_evolve(BargmannPoly::monomial(n), t, par);
      r = std::max(r, std::abs(p.coeffs.back() - std::polar(1.0, -oscillator_energy(n, par) * t / par.hbar)));
    }
    return Outcome{r, "q1^n picks up exp(-i E_n t / hbar)"};
  });

  s.check("Eq.27", kRepaired, "fock", "ho_spectrum", 1e-12, [&] {
    double r = 0.0;
    for (const auto& e : ho_spectrum(D, par))
      if (e.trusted) r = std::max(r, std::abs(e.energy - oscillator_energy(e.index, par)));
    for (std::size_t n = 0; n <= std::min<std::size_t>(40, kBargmannMaxDegree - 2); ++n) {
      const BargmannPoly hp = bargmann_apply(BargmannAction::hamiltonian, BargmannPoly::monomial(n), par);
      r = std::max(r, std::abs(hp.coeffs[n] - oscillator_energy(n, par)));
    }
    return Outcome{r, "trusted matrix spectrum and monomials n <= 40"};
  });

  s.check("Eq.27-spacing", kRepaired, "fock", "ho_spectrum", 1e-12, [&] {
    const auto sp = ho_spectrum(D, par);
    double r = 0.0;
    for (std::size_t k = 1; k < sp.size(); ++k)
      if (sp[k].trusted) r = std::max(r, std::abs(sp[k].energy - sp[k - 1].energy - par.hbar * par.omega));
    return Outcome{r, "uniform spacing hbar omega"};
  });

  s.check("Eq.28", kRepaired, "fock", "number_state", 1e-12, [&] {
    const LadderSet l = ladder_matrices(D);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(D));
    v(0) = 1.0;
    double r = 0.0;
    for (std::size_t n = 0; n < D; ++n) {
      const Eigen::VectorXcd ns = number_state(n, D, false).values;
      r = std::max(r, (ns - v).norm() / v.norm());
      v = l.adag.values * v;
    }
    return Outcome{r, "(a^dagger)^n |0> by matrix powers, relative"};
  });
}

// --- phase-angle picture --------------------------------------------------

void phase_checks(Suite& s) {
  const auto& par = s.par;
  const double pr = std::sqrt(2.0 * par.hbar * par.m * par.omega);
  const double qr = std::sqrt(2.0 * par.hbar / (par.m * par.omega));
  auto shell = [&](double th) { return PhasePoint{qr * std::sin(th), pr * std::cos(th)}; };

  s.check("Eq.29", kRepaired, "canonical", "phase_angle", 1e-12, [&] {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    double r = 0.0;
    for (int k = 0; k < 100; ++k) {
      const PhasePoint z = shell(u(rng));
      const double th = phase_angle(z, par).theta;
      r = std::max(r, std::abs(std::cos(th) - z.p / pr));
      r = std::max(r, std::abs(std::sin(th) - std::sqrt(par.m * par.omega / (2.0 * par.hbar)) * z.q));
    }
    return Outcome{r, "cos and sin of the angle on the shell H = hbar omega"};
  });

  s.check("Eq.30", kRepaired, "canonical", "phase_angle", 1e-12, [&] {
    std::mt19937_64 rng(30);
    double r = std::abs(phase_angle({1.0 / (par.m * par.omega), 1.0}, par).theta - kPi / 4.0);
    for (int k = 0; k < 100; ++k) {
      const PhasePoint z = random_point(rng);
      const double th = phase_angle(z, par).theta;
      const double expect = par.m * par.omega * z.q / z.p;
      r = std::max(r, std::abs(std::tan(th) - expect) / std::max(1.0, std::abs(expect)));
    }
    return Outcome{r, "tan(theta) = m omega q / p and the pi/4 example"};
  });

  s.check("Eq.30a", kRepaired, "phasespace", "hamilton_flow", 1e-12, [&] {
    std::mt19937_64 rng(301);
    std::uniform_real_distribution<double> ut(-4.0, 4.0);
    double r = 0.0;
    for (int k = 0; k < 100; ++k) {
      const PhasePoint z = random_point(rng);
      const double t = ut(rng) / par.omega;
      const double e = hamiltonian(z, par), th = phase_angle(z, par).theta;
      const PhasePoint f = hamilton_flow(z, t, par);
      const double ph = par.omega * t + th;
      r = std::max(r, std::abs(f.p - std::sqrt(2.0 * par.m * e) * std::cos(ph)));
      r = std::max(r, std::abs(f.q - std::sqrt(2.0 * e / (par.m * par.omega * par.omega)) * std::sin(ph)));
    }
    return Outcome{r, "closed-form solution with amplitude from the initial energy"};
  });

  s.check("Eq.30a-additivity", kRepaired, "canonical", "phase_angle", 1e-8, [&] {
    std::mt19937_64 rng(302);
    std::uniform_real_distribution<double> ut(-4.0, 4.0);
    double r = 0.0;
    for (int k = 0; k < 100; ++k) {
      const PhasePoint z = random_point(rng);
      const double t = ut(rng) / par.omega;
      const double lhs = phase_angle(hamilton_flow(z, t, par), par).theta;
      r = std::max(r, std::abs(wrap_angle(lhs - phase_angle(z, par).theta - par.omega * t)));
    }
    return Outcome{r, "theta(t) = theta(0) + omega t mod 2 pi"};
  });

  s.check("Eq.31", kRepaired, "canonical", "to_normal_modes", 1e-12, [&] {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    double r = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double th = u(rng);
      r = std::max(r, std::abs(to_normal_modes(shell(th), par).q1 - std::polar(1.0, th)));
    }
    return Outcome{r, "q1 = exp(i theta) on the shell H = hbar omega"};
  });

  s.check("Eq.32", kRepaired, "fock", "bargmann_evolve", 1e-12, [&] {
    const double t = 1.1 / par.omega;
    double r = 0.0;
    for (std::size_t n = 0; n <= 10; ++n) {
      const BargmannPoly p = bargmann_evolve(BargmannPoly::monomial(n), t, par);
      for (int k = 0; k < 64; ++k) {
        const double th = 2.0 * kPi * k / 64.0;
        const cplx expect = std::polar(1.0, static_cast<double>(n) * th - oscillator_energy(n, par) * t / par.hbar);
        r = std::max(r, std::abs(p(std::polar(1.0, th)) - expect));
      }
    }
    return Outcome{r, "Phi_n on the unit circle"};
  });

  s.check("Eq.33", kRepaired, "fock", "phase_circle_action", 1e-12, [&] {
    double r = 0.0;
    for (std::size_t n = 0; n <= 10; ++n) {
      const PhaseCircleReport pc = phase_circle_action(n, 256);
      r = std::max({r, pc.create_deviation, pc.annihilate_deviation});
    }
    return Outcome{r, "create and annihilate on exp(i n theta), n <= 10, 256 angles"};
  });

  s.check("Eq.33-orthogonality", kRepaired, "fock", "phase_circle_action", 1e-10, [&] {
    double r = 0.0;
    for (std::size_t n = 0; n <= 10; ++n) r = std::max(r, phase_circle_action(n, 256).orthogonality_deviation);
    return Outcome{r, "discrete inner products of the circle modes"};
  });
}

// --- spin -----------------------------------------------------------------

double eps3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  return ((i == 1 && j == 2) || (i == 2 && j == 3) || (i == 3 && j == 1)) ? 1.0 : -1.0;
}

void spin_checks(Suite& s) {
  const auto& par = s.par;
  const std::size_t D = std::max<std::size_t>(2, s.cfg.spin_n_max + 1);
  const double h = par.hbar;

  s.check("Eq.34", kRepaired, "spin", "spin_functions", 1e-14, [&] {
    const SpinValues v = spin_functions({1.0, 0.0, 0.0, 1.0}, {1, 1, 1});
    const double r = std::max({std::abs(v.s0 - 1.0), std::abs(v.s1), std::abs(v.s2), std::abs(v.s3 - 0.5)});
    return Outcome{r, "(x, y, px, py) = (1, 0, 0, 1)"};
  });

  s.check("Eq.34-closure", kRepaired, "spin", "spin_bracket_table", 5e-6, [&] {
    std::mt19937_64 rng(34);
    double r = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Phase4Point z = random_point4(rng);
      const BracketTable t = spin_bracket_table(z, par);
      const SpinValues v = spin_functions(z, par);
      const double sv[4] = {v.s0, v.s1, v.s2, v.s3};
      for (int i = 1; i <= 3; ++i) {
        r = std::max(r, std::abs(t[0][static_cast<std::size_t>(i)]));
        for (int j = 1; j <= 3; ++j) {
          double rhs = 0.0;
          for (int l = 1; l <= 3; ++l) rhs -= eps3(i, j, l) * sv[l];
          r = std::max(r, std::abs(t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] - rhs));
        }
      }
    }
    return Outcome{r, "{S_i, S_j} = -eps_ijk S_k and {S_0, S_i} = 0 at 100 points"};
  });

  s.check("Eq.35", kRepaired, "spin", "casimir_residual", 1e-12, [&] {
    std::mt19937_64 rng(35);
    double r = 0.0;
    for (int k = 0; k < 1000; ++k) r = std::max(r, std::abs(casimir_residual(spin_functions(random_point4(rng), par))));
    return Outcome{r, "1000 random points"};
  });

  s.check("Eq.36", kRepaired, "spin", "spin_functions", 1e-12, [&] {
    std::mt19937_64 rng(36);
    double r = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Phase4Point z = random_point4(rng);
      const double hx = hamiltonian({z.x, z.px}, par), hy = hamiltonian({z.y, z.py}, par);
      r = std::max(r, std::abs(spin_functions(z, par).s0 * par.omega - hx - hy));
    }
    return Outcome{r, "omega S0 = Hx + Hy"};
  });

  const TwoModeOperators ops = two_mode_operators(D, par);
  const auto dim = static_cast<Eigen::Index>(D * D);
  const Eigen::MatrixXcd P = sector_mask(D, D - 1).cast<cplx>().asDiagonal();
  auto unit_vector = [&](std::size_t n1, std::size_t n2) {
    Eigen::VectorXcd v = spin_eigenvector(n1, n2, D);
    return Eigen::VectorXcd(v / v.norm());
  };

  s.check("Eq.37", kRepaired, "spin", "two_mode_operators", 1e-12, [&] {
    double r = 0.0;
    for (std::size_t n1 = 0; n1 < D; ++n1)
      for (std::size_t n2 = 0; n1 + n2 < D; ++n2) {
        const Eigen::VectorXcd v = unit_vector(n1, n2);
        const double lambda = static_cast<double>(n1 + n2 + 1);
        r = std::max(r, (ops.s0p.values * v - h * lambda * v).norm());
      }
    return Outcome{r, "S0' = hbar lambda on the number basis"};
  });

  s.check("Eq.38", kRepaired, "spin", "lambda_relation", 1e-9, [&] {
    double r = 0.0;
    for (const SpinRow& row : spin_spectrum(D, par))
      if (row.complete) r = std::max(r, std::abs(row.s_squared - lambda_relation(static_cast<double>(row.N + 1), par)));
    return Outcome{r, "operator s^2 vs hbar^2 ((lambda - 1)/2)((lambda + 1)/2)"};
  });

  s.check("Eq.38a", kRepaired, "spin", "two_mode_operators", 1e-9, [&] {
    const Eigen::MatrixXcd sum = ops.s1p.values * ops.s1p.values + ops.s2p.values * ops.s2p.values +
                                 ops.s3p.values * ops.s3p.values;
    const Eigen::MatrixXcd rhs = 0.25 * ops.s0p.values * ops.s0p.values - 0.25 * h * h * Eigen::MatrixXcd::Identity(dim, dim);
    return Outcome{op_norm_max(P * (sum - rhs) * P), "sum S_i'^2 = S0'^2/4 - hbar^2/4 on complete sectors"};
  });

  s.check("Eq.39", kRepaired, "spin", "spin_spectrum", 1e-9, [&] {
    const auto rows = spin_spectrum(D, par);
    double r = 0.0;
    std::string note = "joint (N, S2') spectrum vs enumeration, D = " + std::to_string(D);
    for (std::size_t N = 0; N < D; ++N) {
      std::vector<double> ms;
      for (const SpinRow& row : rows)
        if (row.N == N && row.complete) {
          ms.push_back(row.m);
          r = std::max(r, std::abs(row.s_squared - casimir_eigenvalue(N, par)));
        }
      if (ms.size() != N + 1) {
        r = std::max(r, 1.0);
        note += "; sector " + std::to_string(N) + " has " + std::to_string(ms.size()) + " states";
        continue;
      }
      for (std::size_t k = 0; k <= N; ++k) {
        const double expect = h * (static_cast<double>(k) - 0.5 * static_cast<double>(N));
        r = std::max(r, std::abs(ms[k] - expect));
      }
    }
    return Outcome{r, note};
  });

  s.check("Eq.40", kRepaired, "spin", "lambda_relation", 1e-12, [&] {
    double r = 0.0;
    for (std::size_t N = 0; N <= 20; ++N)
      r = std::max(r, std::abs(lambda_relation(static_cast<double>(N + 1), par) - casimir_eigenvalue(N, par)) /
                          std::max(1.0, casimir_eigenvalue(N, par)));
    try {
      lambda_relation(0.5, par);
      r = std::max(r, 1.0);
    } catch (const DomainError&) {
    }
    return Outcome{r, "N = lambda - 1, N <= 20; lambda < 1 rejected"};
  });

  s.check("Eq.41", kRepaired, "spin", "two_mode_transform", 1e-15, [&] {
    std::mt19937_64 rng(41);
    double r = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Phase4Point z = random_point4(rng);
      const NormalModePoint a = to_normal_modes({z.x, z.px}, par);
      const TwoModePoint t = two_mode_transform(z, par);
      r = std::max({r, std::abs(t.q1 - a.q1), std::abs(t.p1 - a.p1)});
    }
    return Outcome{r, "mode 1 from (x, px)"};
  });

  s.check("Eq.42", kRepaired, "spin", "two_mode_transform", 1e-15, [&] {
    std::mt19937_64 rng(42);
    double r = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Phase4Point z = random_point4(rng);
      const NormalModePoint b = to_normal_modes({z.y, z.py}, par);
      const TwoModePoint t = two_mode_transform(z, par);
      r = std::max({r, std::abs(t.q2 - b.q1), std::abs(t.p2 - b.p1)});
    }
    return Outcome{r, "mode 2 from (y, py)"};
  });

  auto transformed_dev = [&](auto pick_t, auto pick_s, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double r = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Phase4Point z = random_point4(rng);
      const TransformedSpin ts = transformed_spin(two_mode_transform(z, par), par);
      const SpinValues sv = spin_functions(z, par);
      r = std::max(r, std::abs(pick_t(ts) - pick_s(sv)) / std::max(1.0, std::abs(pick_s(sv))));
    }
    return r;
  };

  s.check("Eq.43", kRepaired, "spin", "transformed_spin", 1e-10, [&] {
    return Outcome{transformed_dev([](const TransformedSpin& t) { return t.s0; },
                                   [](const SpinValues& v) { return v.s0; }, 43),
                   "S0 in normal-mode variables"};
  });

  s.check("Eq.44", kLiteral, "spin", "transformed_spin", std::nullopt, [&] {
    return Outcome{transformed_dev([](const TransformedSpin& t) { return t.s1_literal; },
                                   [](const SpinValues& v) { return v.s1; }, 44),
                   "printed S1' vs S1, relative"};
  });

  s.check("Eq.44-S1-repaired", kRepaired, "spin", "transformed_spin", 1e-10, [&] {
    return Outcome{transformed_dev([](const TransformedSpin& t) { return t.s1; },
                                   [](const SpinValues& v) { return v.s1; }, 441),
                   "(hbar/2)(q1 p2 + q2 p1) vs S1"};
  });

  s.check("Eq.44-S2", kRepaired, "spin", "transformed_spin", 1e-10, [&] {
    return Outcome{transformed_dev([](const TransformedSpin& t) { return t.s2; },
                                   [](const SpinValues& v) { return v.s2; }, 442),
                   "S2 in normal-mode variables"};
  });

  s.check("Eq.45", kRepaired, "spin", "transformed_spin", 1e-10, [&] {
    return Outcome{transformed_dev([](const TransformedSpin& t) { return t.s3; },
                                   [](const SpinValues& v) { return v.s3; }, 45),
                   "S3 in normal-mode variables"};
  });

  s.check("Eq.45-su2", kRepaired, "spin", "two_mode_operators", std::nullopt, [&] {
    const Eigen::MatrixXcd c = ops.s1p.values * ops.s3p.values - ops.s3p.values * ops.s1p.values;
    return Outcome{op_norm_max(P * (c - kI * h * ops.s2p.values) * P), "[S1', S3'] - i hbar S2' on complete sectors"};
  });

  s.check("Eq.46", kRepaired, "spin", "two_mode_operators", 1e-10, [&] {
    const Eigen::MatrixXcd two_s2 = 2.0 * ops.s2p.values;
    const Eigen::MatrixXcd n12 = h * (ops.a1dag.values * ops.a1.values - ops.a2dag.values * ops.a2.values);
    const Eigen::MatrixXcd s0 = h * (ops.a1dag.values * ops.a1.values + ops.a2dag.values * ops.a2.values +
                                     Eigen::MatrixXcd::Identity(dim, dim));
    return Outcome{std::max(op_norm_max(two_s2 - n12), op_norm_max(ops.s0p.values - s0)),
                   "S2' and S0' from the ladder products"};
  });

  s.check("Eq.47", kRepaired, "spin", "two_mode_operators", 1e-12, [&] {
    const Eigen::VectorXcd v10 = unit_vector(1, 0), v00 = unit_vector(0, 0);
    const double r = std::max({(ops.s2p.values * v10 - 0.5 * h * v10).norm(), (ops.s0p.values * v00 - h * v00).norm(),
                               op_norm_max(ops.s0p.values * ops.s2p.values - ops.s2p.values * ops.s0p.values)});
    return Outcome{r, "S2'|1,0> = (hbar/2)|1,0>, S0'|0,0> = hbar|0,0>, [S0', S2'] = 0"};
  });

  s.check("Eq.48", kRepaired, "spin", "two_mode_operators", 1e-12, [&] {
    const Eigen::MatrixXcd Pm = sector_mask(D, D - 2).cast<cplx>().asDiagonal();
    auto comm = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return Eigen::MatrixXcd(a * b - b * a); };
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    const double r = std::max({op_norm_max(Pm * (comm(ops.a1.values, ops.a1dag.values) - id) * Pm),
                               op_norm_max(Pm * (comm(ops.a2.values, ops.a2dag.values) - id) * Pm),
                               op_norm_max(comm(ops.a1.values, ops.a2dag.values)),
                               op_norm_max(comm(ops.a1.values, ops.a2.values))});
    return Outcome{r, "two-mode canonical commutators below the truncation edge"};
  });

  s.check("Eq.48-literal", kLiteral, "spin", "literal_commutator", std::nullopt, [&] {
    return Outcome{std::abs(literal_commutator(par) - 1.0), "[a_i, a_i^dagger] with a_i = -i hbar d/dq_i"};
  });

  s.check("Eq.49", kRepaired, "spin", "two_mode_operators", 1e-12, [&] {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(ops.n_op.values);
    std::vector<double> expect;
    for (std::size_t n1 = 0; n1 < D; ++n1)
      for (std::size_t n2 = 0; n2 < D; ++n2) expect.push_back(static_cast<double>(n1 + n2));
    std::sort(expect.begin(), expect.end());
    double r = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) r = std::max(r, std::abs(eig.eigenvalues()(k) - expect[static_cast<std::size_t>(k)]));
    return Outcome{r, "dimensionless N = a1^dagger a1 + a2^dagger a2"};
  });

  s.check("Eq.49-literal", kLiteral, "spin", "two_mode_operators", std::nullopt, [&] {
    return Outcome{std::abs(h - 1.0) * static_cast<double>(2 * (D - 1)),
                   "largest eigenvalue gap between hbar N as printed and the dimensionless N; vanishes only at hbar = 1"};
  });

  s.check("Eq.50", kRepaired, "spin", "two_mode_operators", 1e-12, [&] {
    double r = 0.0;
    for (std::size_t n1 = 0; n1 < D; ++n1)
      for (std::size_t n2 = 0; n1 + n2 < D; ++n2) {
        const Eigen::VectorXcd v = unit_vector(n1, n2);
        const double lambda = (v.adjoint() * ops.s0p.values * v)(0, 0).real() / h;
        const double n = (v.adjoint() * ops.n_op.values * v)(0, 0).real();
        r = std::max(r, std::abs(n - (lambda - 1.0)));
      }
    return Outcome{r, "N = lambda - 1"};
  });

  const Eigen::MatrixXcd s_sq = ops.s1p.values * ops.s1p.values + ops.s2p.values * ops.s2p.values +
                                ops.s3p.values * ops.s3p.values;

  s.check("Eq.51", kRepaired, "spin", "two_mode_operators", 1e-9, [&] {
    double r = 0.0;
    for (std::size_t n1 = 0; n1 < D; ++n1)
      for (std::size_t n2 = 0; n1 + n2 < D; ++n2) {
        const Eigen::VectorXcd v = unit_vector(n1, n2);
        r = std::max(r, (s_sq * v - casimir_eigenvalue(n1 + n2, par) * v).norm());
      }
    return Outcome{r, "sum S_i'^2 = hbar^2 (N/2)(N/2 + 1) on complete sectors"};
  });

  s.check("Eq.51-literal", kLiteral, "spin", "two_mode_operators", std::nullopt, [&] {
    double r = 0.0;
    for (std::size_t N = 0; N < D; ++N) {
      const double half = 0.5 * static_cast<double>(N);
      const double printed = h * half * (half + 1.0);
      const double lifted = 0.25 * h * h * static_cast<double>((N + 1) * (N + 1));
      r = std::max(r, std::abs(printed - lifted));
    }
    return Outcome{r, "hbar (N/2)(N/2 + 1) as printed vs S'^2 = S0'^2/4"};
  });

  s.check("Eq.52", kRepaired, "spin", "spin_eigenvector", 1e-12, [&] {
    double r = 0.0;
    for (std::size_t n1 = 0; n1 < D; ++n1)
      for (std::size_t n2 = 0; n2 < D; ++n2) {
        const Eigen::VectorXcd v = unit_vector(n1, n2);
        const double n = static_cast<double>(n1 + n2);
        const double m = 0.5 * h * (static_cast<double>(n1) - static_cast<double>(n2));
        r = std::max(r, (ops.n_op.values * v - n * v).norm());
        r = std::max(r, (ops.s2p.values * v - m * v).norm());
      }
    const Eigen::VectorXcd raw = spin_eigenvector(std::min<std::size_t>(2, D - 1), std::min<std::size_t>(1, D - 1), D);
    double norm = 1.0;
    for (std::size_t k = 2; k <= std::min<std::size_t>(2, D - 1); ++k) norm *= std::sqrt(static_cast<double>(k));
    r = std::max(r, std::abs(raw.norm() - norm));
    return Outcome{r, "product states are joint eigenvectors of N and S2'"};
  });
}

}  // namespace

VerificationReport run_verification(const Config& cfg) {
  cfg.validate();
  Suite s(cfg);
  phasespace_checks(s);
  wigner_checks(s);
  madelung_checks(s);
  canonical_checks(s);
  transformed_checks(s);
  phase_checks(s);
  spin_checks(s);
  s.report.sort();
  return s.report;
}

}  // namespace wmlab
