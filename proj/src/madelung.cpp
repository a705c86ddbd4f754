#include "wmlab/madelung.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wmlab/errors.hpp"

namespace wmlab {
namespace {

double wrap_pi(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  x = std::fmod(x + std::numbers::pi, two_pi);
  if (x < 0.0) x += two_pi;
  return x - std::numbers::pi;
}

void require_same_grid(const MadelungPair& a, const MadelungPair& b) {
  if (!(a.grid == b.grid) || a.R.size() != b.R.size()) throw GridMismatch("Madelung pairs live on different grids");
}

ResidualField blank(const Axis& grid, std::string equation, std::string convention) {
  return {grid, std::vector<double>(grid.n, 0.0), std::vector<std::uint8_t>(grid.n, 0), std::move(equation),
          std::move(convention)};
}

// Phi with its first two spectral derivatives
struct Jet {
  std::vector<cplx> f, d1, d2;
};

Jet jet_of(const MadelungPair& pair) {
  const WaveFunction phi = compose(pair);
  Jet j{phi.values, derivative(phi.values, pair.grid, 1), derivative(phi.values, pair.grid, 2)};
  return j;
}

std::vector<double> current(const Jet& j, const PhysParams& par) {
  std::vector<double> out(j.f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = par.hbar / par.m * std::imag(std::conj(j.f[i]) * j.d1[i]);
  return out;
}

}  // namespace

MadelungPair decompose(const WaveFunction& phi, double hbar, PhaseGauge gauge) {
  phi.validate();
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  const std::size_t n = phi.values.size();
  MadelungPair out{phi.grid, std::vector<double>(n), std::vector<double>(n), hbar, 0.0, phi.time};
  double peak = 0.0;
  std::size_t peak_at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    out.R[i] = std::abs(phi.values[i]);
    if (out.R[i] > peak) {
      peak = out.R[i];
      peak_at = i;
    }
  }
  if (!(peak > 0.0)) throw AllZero("cannot decompose the zero wavefunction");
  out.node_eps = kNodeEpsRel * peak;

  // phase in units of hbar, unwrapped along runs of live cells
  bool prev_live = false;
  double prev_theta = 0.0, prev_unwrapped = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = std::arg(phi.values[i]);
    double s = theta;
    const bool is_live = out.live(i);
    if (is_live && prev_live) s = prev_unwrapped + wrap_pi(theta - prev_theta);
    out.S[i] = s;
    prev_live = is_live;
    prev_theta = theta;
    prev_unwrapped = s;
  }
  const double shift = gauge == PhaseGauge::pin_at_peak ? out.S[peak_at] : 0.0;
  for (auto& s : out.S) s = hbar * (s - shift);
  return out;
}

WaveFunction compose(const MadelungPair& pair) {
  WaveFunction phi = WaveFunction::zeros(pair.grid, pair.time);
  for (std::size_t i = 0; i < pair.R.size(); ++i) phi.values[i] = std::polar(pair.R[i], pair.S[i] / pair.hbar);
  return phi;
}

double ResidualField::max_abs(double window) const {
  double m = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (mask[i] && std::abs(grid.at(i)) <= window) m = std::max(m, std::abs(values[i]));
  return m;
}

std::size_t ResidualField::evaluated(double window) const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (mask[i] && std::abs(grid.at(i)) <= window) ++c;
  return c;
}

ResidualField continuity_residual(const MadelungPair& t0, const MadelungPair& t1, double dt, const PhysParams& par) {
  par.validate();
  require_same_grid(t0, t1);
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  const Jet j0 = jet_of(t0), j1 = jet_of(t1);
  const auto div0 = derivative(current(j0, par), t0.grid, 1);
  const auto div1 = derivative(current(j1, par), t1.grid, 1);
  ResidualField r = blank(t0.grid, "Eq.10", "paper-literal");
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (!t0.live(i) || !t1.live(i)) continue;
    r.mask[i] = 1;
    const double rho_rate = (t1.R[i] * t1.R[i] - t0.R[i] * t0.R[i]) / dt;
    r.values[i] = rho_rate + 0.5 * (div0[i] + div1[i]);
  }
  return r;
}

ResidualField schrodinger_continuity_residual(const MadelungPair& t0, const MadelungPair& t1, double dt,
                                              const PhysParams& par) {
  par.validate();
  require_same_grid(t0, t1);
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  const Jet j0 = jet_of(t0), j1 = jet_of(t1);
  const double kin = -par.hbar * par.hbar / (2.0 * par.m);
  const double mw2 = par.m * par.omega * par.omega;
  ResidualField r = blank(t0.grid, "Eq.12", "paper-literal");
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (!t0.live(i) || !t1.live(i)) continue;
    r.mask[i] = 1;
    const double q = t0.grid.at(i);
    const cplx h0 = kin * j0.d2[i] + 0.5 * mw2 * q * q * j0.f[i];
    const cplx h1 = kin * j1.d2[i] + 0.5 * mw2 * q * q * j1.f[i];
    const cplx mid = 0.5 * (j0.f[i] + j1.f[i]);
    const cplx time_part = std::conj(mid) * cplx{0.0, par.hbar} * (j1.f[i] - j0.f[i]) / dt;
    const cplx space_part = 0.5 * (std::conj(j0.f[i]) * h0 + std::conj(j1.f[i]) * h1);
    r.values[i] = 2.0 / par.hbar * std::imag(time_part - space_part);
  }
  return r;
}

ResidualField qhj_residual(const MadelungPair& pair, const std::vector<double>& dSdt, const PhysParams& par) {
  par.validate();
  if (dSdt.size() != pair.R.size()) throw GridMismatch("dS/dt field does not match the pair");
  const Jet j = jet_of(pair);
  const double mw2 = par.m * par.omega * par.omega;
  ResidualField r = blank(pair.grid, "Eq.11", "paper-literal");
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (!pair.live(i)) continue;
    r.mask[i] = 1;
    const cplx l1 = j.d1[i] / j.f[i];
    const cplx l2 = j.d2[i] / j.f[i];
    const double s_q = par.hbar * l1.imag();
    const double r_ratio = l2.real() + l1.imag() * l1.imag();
    const double q = pair.grid.at(i);
    r.values[i] = dSdt[i] + s_q * s_q / (2.0 * par.m) - par.hbar * par.hbar / (2.0 * par.m) * r_ratio +
                  0.5 * mw2 * q * q;
  }
  return r;
}

ResidualField qhj_residual(const MadelungPair& pair, double dSdt, const PhysParams& par) {
  return qhj_residual(pair, std::vector<double>(pair.R.size(), dSdt), par);
}

ResidualField quantum_potential(const MadelungPair& pair, const PhysParams& par) {
  par.validate();
  const Jet j = jet_of(pair);
  ResidualField r = blank(pair.grid, "Eq.11", "quantum-potential");
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (!pair.live(i)) continue;
    r.mask[i] = 1;
    const cplx l1 = j.d1[i] / j.f[i];
    const cplx l2 = j.d2[i] / j.f[i];
    r.values[i] = -par.hbar * par.hbar / (2.0 * par.m) * (l2.real() + l1.imag() * l1.imag());
  }
  return r;
}

std::vector<double> phase_time_derivative(const WaveFunction& phi0, const WaveFunction& phi1, double dt,
                                          double hbar) {
  if (!(phi0.grid == phi1.grid)) throw GridMismatch("snapshots live on different grids");
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  std::vector<double> out(phi0.values.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = hbar * std::arg(std::conj(phi0.values[i]) * phi1.values[i]) / dt;
  return out;
}

namespace {

// Phi, dPhi/dt, dPhi/dq, d2Phi/dq2 and d2Phi/dq dt at a real point for
// coefficients c_n(t) = c_n(0) exp(rate_n t).
struct PolyJet {
  cplx f, ft, fq, fqq, fqt;
};

PolyJet poly_jet(const std::vector<cplx>& c0, const std::vector<cplx>& rate, double t, double q) {
  PolyJet j{};
  for (std::size_t n = 0; n < c0.size(); ++n) {
    const cplx c = c0[n] * std::exp(rate[n] * t);
    const double nd = static_cast<double>(n);
    const double qn = std::pow(q, nd);
    const double qn1 = n >= 1 ? nd * std::pow(q, nd - 1.0) : 0.0;
    const double qn2 = n >= 2 ? nd * (nd - 1.0) * std::pow(q, nd - 2.0) : 0.0;
    j.f += c * qn;
    j.ft += rate[n] * c * qn;
    j.fq += c * qn1;
    j.fqq += c * qn2;
    j.fqt += rate[n] * c * qn1;
  }
  return j;
}

TransformedPairResiduals pair_residuals(const BargmannPoly& poly, const std::vector<cplx>& rate, double t,
                                        const PhysParams& par, std::size_t n_points) {
  BargmannPoly p = poly;
  p.canonicalize();
  if (p.is_zero()) throw AllZero("transformed pair of the zero polynomial");
  if (n_points < 2) throw InvalidArgument("need at least two sample points");
  const double hw = par.hbar * par.omega;
  const double q_lo = 0.1, q_hi = 4.0;
  TransformedPairResiduals out;
  for (std::size_t k = 0; k < n_points; ++k) {
    const double q = q_lo + (q_hi - q_lo) * static_cast<double>(k) / static_cast<double>(n_points - 1);
    const PolyJet j = poly_jet(p.coeffs, rate, t, q);
    if (j.f == cplx{}) throw AllZero("Phi vanishes on the sample segment");
    const double r2 = std::norm(j.f);
    const double r2_t = 2.0 * std::real(std::conj(j.f) * j.ft);
    const double r2_q = 2.0 * std::real(std::conj(j.f) * j.fq);
    // S = hbar arg Phi: S_t = hbar Im(Phi_t/Phi), S_q = hbar Im(Phi_q/Phi)
    const cplx lt = j.ft / j.f, lq = j.fq / j.f;
    const double s_q = par.hbar * lq.imag();
    const double s_tq = par.hbar * std::imag(j.fqt / j.f - lt * lq);
    const double s_qq = par.hbar * std::imag(j.fqq / j.f - lq * lq);
    out.q1.push_back(q);
    out.r21.push_back(r2_t + hw * q * r2_q + hw * r2);
    out.r21_flipped.push_back(r2_t + hw * q * r2_q - hw * r2);
    out.r22.push_back(s_tq + hw * (s_q + q * s_qq));
  }
  return out;
}

}  // namespace

TransformedPairResiduals transformed_pair_residuals(const BargmannPoly& poly, double t, const PhysParams& par,
                                                    std::size_t n_points) {
  par.validate();
  std::vector<cplx> rate(poly.coeffs.size());
  for (std::size_t n = 0; n < rate.size(); ++n) rate[n] = repaired_monomial_rate(n, par);
  return pair_residuals(poly, rate, t, par, n_points);
}

TransformedPairResiduals transformed_pair_residuals_literal(const BargmannPoly& poly, double t, const PhysParams& par,
                                                            std::size_t n_points) {
  par.validate();
  std::vector<cplx> rate(poly.coeffs.size());
  for (std::size_t n = 0; n < rate.size(); ++n) rate[n] = literal_monomial_rate(n, par);
  return pair_residuals(poly, rate, t, par, n_points);
}

}  // namespace wmlab
