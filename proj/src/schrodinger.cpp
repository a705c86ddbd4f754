#include "wmlab/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wmlab/errors.hpp"
#include "wmlab/fft.hpp"
#include "wmlab/kernels.hpp"
#include "wmlab/wigner.hpp"

namespace wmlab {

Axis default_position_axis() { return {-10.0, 10.0, 512}; }

WaveFunction hermite_eigenstate(std::size_t n, const Axis& grid, const PhysParams& par) {
  par.validate();
  grid.validate();
  if (n > kMaxHermiteLevel)
    throw InvalidArgument("Hermite level " + std::to_string(n) + " exceeds " + std::to_string(kMaxHermiteLevel));

  const double ell = par.length_scale();
  const double psi0_norm = std::pow(std::numbers::pi, -0.25) / std::sqrt(ell);
  WaveFunction out = WaveFunction::zeros(grid);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double xi = grid.at(i) / ell;
    double prev = 0.0;
    double cur = psi0_norm * std::exp(-0.5 * xi * xi);
    for (std::size_t k = 0; k < n; ++k) {
      const double kd = static_cast<double>(k);
      const double next = std::sqrt(2.0 / (kd + 1.0)) * xi * cur - std::sqrt(kd / (kd + 1.0)) * prev;
      prev = cur;
      cur = next;
    }
    out.values[i] = cur;
  }
  if (out.boundary_ratio() >= 1e-10)
    throw GridTooNarrow("Hermite state " + std::to_string(n) + " does not decay inside the grid");
  return out;
}

WaveFunction coherent_state(PhasePoint center, double t, const Axis& grid, const PhysParams& par) {
  par.validate();
  grid.validate();
  const PhasePoint c = hamilton_flow(center, t, par);
  const double mw = par.m * par.omega;
  const double amp = std::pow(mw / (std::numbers::pi * par.hbar), 0.25);
  WaveFunction out = WaveFunction::zeros(grid, t);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.at(i) - c.q;
    const double phase = (c.p * (grid.at(i) - 0.5 * c.q)) / par.hbar - 0.5 * par.omega * t;
    out.values[i] = amp * std::exp(-mw * x * x / (2.0 * par.hbar)) * std::polar(1.0, phase);
  }
  return out;
}

double oscillator_energy(std::size_t n, const PhysParams& par) {
  return par.hbar * par.omega * (static_cast<double>(n) + 0.5);
}

std::size_t min_split_steps(double t, const PhysParams& par) {
  return static_cast<std::size_t>(std::ceil(40.0 * par.omega * std::abs(t)));
}

std::size_t default_split_steps(double t, const PhysParams& par) {
  const double periods = par.omega * std::abs(t) / (2.0 * std::numbers::pi);
  const auto per_period = static_cast<std::size_t>(std::ceil(512.0 * periods - 1e-9));
  return std::max(min_split_steps(t, par), per_period);
}

WaveFunction split_step_evolve(const WaveFunction& phi, double t, std::size_t n_steps, const PhysParams& par) {
  par.validate();
  phi.validate();
  if (!std::isfinite(t)) throw InvalidArgument("evolution time must be finite");
  if (t == 0.0) return phi;
  if (n_steps < std::max<std::size_t>(1, min_split_steps(t, par)))
    throw InvalidArgument("split_step_evolve needs at least " + std::to_string(min_split_steps(t, par)) +
                          " steps for t = " + std::to_string(t));

  const Axis& ax = phi.grid;
  const std::size_t n = ax.n;
  const double dt = t / static_cast<double>(n_steps);
  const double mw2 = par.m * par.omega * par.omega;

  std::vector<cplx> half_kick(n), full_kick(n), drift(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = 0.5 * mw2 * ax.at(i) * ax.at(i);
    half_kick[i] = std::polar(1.0, -0.5 * v * dt / par.hbar);
    full_kick[i] = std::polar(1.0, -v * dt / par.hbar);
  }
  const auto k = wavenumbers(ax);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) drift[j] = std::polar(inv_n, -par.hbar * k[j] * k[j] * dt / (2.0 * par.m));

  const Fft& fft = Fft::of(n);
  const double norm0 = phi.norm_sq();
  WaveFunction out = phi;
  auto& psi = out.values;
  kernels::cmul(psi, half_kick);
  for (std::size_t s = 0; s < n_steps; ++s) {
    fft.forward(psi);
    kernels::cmul(psi, drift);
    fft.backward(psi);
    if (out.boundary_ratio() >= 1e-10)
      throw BoundaryLeak("wavefunction reached the grid boundary at step " + std::to_string(s + 1));
    kernels::cmul(psi, s + 1 == n_steps ? half_kick : full_kick);
  }
  out.time = phi.time + t;
  const double drift_norm = std::abs(out.norm_sq() - norm0);
  if (drift_norm > 1e-8) throw NormDrift("norm changed by " + std::to_string(drift_norm));
  return out;
}

std::vector<cplx> apply_hamiltonian(const WaveFunction& phi, const PhysParams& par) {
  par.validate();
  phi.validate();
  auto out = derivative(phi.values, phi.grid, 2);
  const double kin = -par.hbar * par.hbar / (2.0 * par.m);
  const double mw2 = par.m * par.omega * par.omega;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double q = phi.grid.at(i);
    out[i] = kin * out[i] + 0.5 * mw2 * q * q * phi.values[i];
  }
  return out;
}

double energy_expectation(const WaveFunction& phi, const PhysParams& par) {
  WaveFunction h_phi{phi.grid, apply_hamiltonian(phi, par), phi.time};
  const double n2 = phi.norm_sq();
  if (!(n2 > 0.0)) throw AllZero("energy of the zero wavefunction");
  return inner(phi, h_phi).real() / n2;
}

EquivalenceReport equivalence_report(const WaveFunction& phi0, double t, const PhaseGrid& grid,
                                     const PhysParams& par, std::size_t n_steps) {
  par.validate();
  grid.validate();
  if (!(phi0.grid == grid.q_axis())) throw GridMismatch("initial state must live on the phase grid q axis");
  if (n_steps == 0) n_steps = default_split_steps(t, par);

  EquivalenceReport rep;
  rep.n_steps = n_steps;
  const PhaseDensity w0 = wigner_density(phi0, grid, par);
  if (t == 0.0) {
    rep.quantum = w0;
    rep.classical = w0;
    return rep;
  }
  rep.quantum = wigner_density(split_step_evolve(phi0, t, n_steps, par), grid, par);
  rep.classical = liouville_propagate(w0, t, par, n_steps);

  std::vector<double> diff(grid.size());
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff[i] = rep.quantum.values[i] - rep.classical.values[i];
    rep.max_abs = std::max(rep.max_abs, std::abs(diff[i]));
  }
  rep.l2 = std::sqrt(kernels::sum_sq(diff) * grid.dq() * grid.dp());
  return rep;
}

}  // namespace wmlab
