#include "wmlab/wigner.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

#include "wmlab/errors.hpp"
#include "wmlab/fft.hpp"
#include "wmlab/kernels.hpp"

namespace wmlab {
namespace {

// exp(i p_min delta_j / hbar) and (-1)^k, the two factors that turn the
// centered transform into a plain DFT.
struct SliceTwiddles {
  std::vector<cplx> delta_phase;
  std::vector<cplx> alternating;
};

SliceTwiddles make_twiddles(const DensitySlice& s) {
  const std::size_t n = s.grid.n_p;
  SliceTwiddles tw{std::vector<cplx>(n), std::vector<cplx>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    tw.delta_phase[j] = std::polar(1.0, s.grid.p_min * s.delta(j) / s.hbar);
    tw.alternating[j] = (j % 2 == 0) ? 1.0 : -1.0;
  }
  return tw;
}

template <class Fn>
void log_debug(Fn&& fn) {
  static const bool enabled = std::getenv("WMLAB_DEBUG") != nullptr;
  if (enabled) fn(std::clog);
}

}  // namespace

double DensitySlice::delta_step() const noexcept {
  return 2.0 * std::numbers::pi * hbar / (static_cast<double>(grid.n_p) * grid.dp());
}

double DensitySlice::delta(std::size_t j) const noexcept {
  return (static_cast<double>(j) - static_cast<double>(grid.n_p / 2)) * delta_step();
}

double DensitySlice::hermiticity_error() const {
  const std::size_t n = grid.n_p;
  double err = 0.0;
  for (std::size_t i = 0; i < grid.n_q; ++i)
    for (std::size_t j = 1; j < n; ++j) err = std::max(err, std::abs(at(i, n - j) - std::conj(at(i, j))));
  return err;
}

DensitySlice wigner_forward(const PhaseDensity& f, const PhysParams& par) {
  par.validate();
  f.validate();
  const auto& g = f.grid;
  DensitySlice out{g, par.hbar, std::vector<cplx>(g.size()), f.time};
  const auto tw = make_twiddles(out);
  const Fft& fft = Fft::of(g.n_p);
  std::vector<cplx> row(g.n_p);
  for (std::size_t i = 0; i < g.n_q; ++i) {
    for (std::size_t k = 0; k < g.n_p; ++k) row[k] = f.at(i, k);
    kernels::cmul(row, tw.alternating);
    fft.backward(row);
    kernels::cmul(row, tw.delta_phase);
    kernels::scale(row, g.dp());
    std::copy(row.begin(), row.end(), out.values.begin() + static_cast<std::ptrdiff_t>(i * g.n_p));
  }
  return out;
}

PhaseDensity wigner_inverse(const DensitySlice& rho, InverseDiagnostics* diag) {
  const auto& g = rho.grid;
  g.validate();
  if (rho.values.size() != g.size()) throw GridMismatch("slice storage does not match grid");

  double peak = 0.0;
  for (const auto& v : rho.values) peak = std::max(peak, std::abs(v));
  const double herm = rho.hermiticity_error();
  if (herm > 1e-6 * std::max(1.0, peak))
    throw NonHermitianInput("density slice violates rho(q,-d) = conj(rho(q,d)) by " + std::to_string(herm));

  PhaseDensity out = PhaseDensity::zeros(g, rho.time);
  const auto tw = make_twiddles(rho);
  std::vector<cplx> conj_phase(tw.delta_phase.size());
  std::transform(tw.delta_phase.begin(), tw.delta_phase.end(), conj_phase.begin(),
                 [](cplx z) { return std::conj(z); });
  const Fft& fft = Fft::of(g.n_p);
  const double norm = rho.delta_step() / (2.0 * std::numbers::pi * rho.hbar);
  double imag_residue = 0.0;
  std::vector<cplx> row(g.n_p);
  for (std::size_t i = 0; i < g.n_q; ++i) {
    std::copy_n(rho.values.begin() + static_cast<std::ptrdiff_t>(i * g.n_p), g.n_p, row.begin());
    kernels::cmul(row, conj_phase);
    fft.forward(row);
    kernels::cmul(row, tw.alternating);
    kernels::scale(row, norm);
    for (std::size_t k = 0; k < g.n_p; ++k) {
      out.at(i, k) = row[k].real();
      imag_residue = std::max(imag_residue, std::abs(row[k].imag()));
    }
  }
  if (diag) *diag = {herm, imag_residue};
  if (imag_residue > 1e-10) {
    std::clog << "wmlab: wigner_inverse discarded imaginary residue " << imag_residue << '\n';
  } else {
    log_debug([&](std::ostream& os) { os << "wmlab: wigner_inverse imaginary residue " << imag_residue << '\n'; });
  }
  return out;
}

DensitySlice wavefunction_to_slice(const WaveFunction& phi, const PhaseGrid& grid, const PhysParams& par) {
  par.validate();
  grid.validate();
  phi.validate();
  if (!(phi.grid == grid.q_axis())) throw GridMismatch("wavefunction axis differs from the phase grid q axis");

  DensitySlice out{grid, par.hbar, std::vector<cplx>(grid.size()), phi.time};
  const std::size_t nq = grid.n_q;
  std::vector<cplx> column(nq);

  auto sample_at_offset = [&](double s) {
    auto v = shifted(phi.values, phi.grid, s);
    for (std::size_t i = 0; i < nq; ++i) {
      const double x = grid.q(i) + s;
      if (x < grid.q_min || x >= grid.q_max) v[i] = 0.0;
    }
    return v;
  };

  for (std::size_t j = 0; j < grid.n_p; ++j) {
    const double half = 0.5 * out.delta(j);
    const auto left = sample_at_offset(-half);
    const auto right = sample_at_offset(half);
    kernels::conj_mul(column, left, right);
    for (std::size_t i = 0; i < nq; ++i) out.at(i, j) = column[i];
  }
  return out;
}

PhaseDensity wigner_density(const WaveFunction& phi, const PhaseGrid& grid, const PhysParams& par) {
  return wigner_inverse(wavefunction_to_slice(phi, grid, par));
}

EndpointMatrix EndpointMatrix::pure(const WaveFunction& phi) { return mixture({phi}, {1.0}); }

EndpointMatrix EndpointMatrix::mixture(const std::vector<WaveFunction>& states, const std::vector<double>& weights) {
  if (states.empty() || states.size() != weights.size())
    throw InvalidArgument("mixture needs one weight per state");
  const Axis grid = states.front().grid;
  const auto n = static_cast<Eigen::Index>(grid.n);
  EndpointMatrix em{grid, Eigen::MatrixXcd::Zero(n, n)};
  for (std::size_t s = 0; s < states.size(); ++s) {
    states[s].validate();
    if (!(states[s].grid == grid)) throw GridMismatch("mixture components live on different grids");
    const Eigen::Map<const Eigen::VectorXcd> v(states[s].values.data(), n);
    em.values.noalias() += (weights[s] * grid.step()) * (v.conjugate() * v.transpose());
  }
  return em;
}

double EndpointMatrix::trace() const { return values.trace().real(); }

double EndpointMatrix::hermiticity_error() const { return (values - values.adjoint()).cwiseAbs().maxCoeff(); }

PureFactorization factorize_pure(const EndpointMatrix& em) {
  if (em.values.rows() != static_cast<Eigen::Index>(em.grid.n) || em.values.cols() != em.values.rows())
    throw GridMismatch("endpoint matrix shape does not match its axis");
  const double peak = em.values.cwiseAbs().maxCoeff();
  if (em.hermiticity_error() > 1e-10 * std::max(1.0, peak)) throw NonHermitianInput("endpoint matrix is not Hermitian");
  if (std::abs(em.trace() - 1.0) > 1e-6) throw InvalidArgument("endpoint matrix must have unit trace");

  PureFactorization out;
  out.purity = em.values.squaredNorm();  // tr(M^2) for Hermitian M
  if (!(out.purity > kPurityThreshold)) return out;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(em.values);
  const Eigen::Index top = eig.eigenvalues().size() - 1;
  const double lambda = eig.eigenvalues()(top);
  // M = conj(Phi) Phi^T dx, so the eigenvector is conj(Phi) up to phase
  Eigen::VectorXcd phi = eig.eigenvectors().col(top).conjugate() * std::sqrt(lambda / em.grid.step());
  Eigen::Index big = 0;
  phi.cwiseAbs().maxCoeff(&big);
  phi *= std::conj(phi(big)) / std::abs(phi(big));

  out.reconstruction_error =
      (em.values - em.grid.step() * (phi.conjugate() * phi.transpose())).norm();
  WaveFunction wf = WaveFunction::zeros(em.grid);
  for (Eigen::Index i = 0; i < phi.size(); ++i) wf.values[static_cast<std::size_t>(i)] = phi(i);
  out.phi = std::move(wf);
  return out;
}

}  // namespace wmlab
