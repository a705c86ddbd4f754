#include "wmlab/phasespace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wmlab/errors.hpp"
#include "wmlab/kernels.hpp"

namespace wmlab {

void PhysParams::validate() const {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(m) || !positive(omega) || !positive(hbar))
    throw InvalidArgument("physical parameters m, omega, hbar must be finite and positive");
}

double PhysParams::length_scale() const { return std::sqrt(hbar / (m * omega)); }

PhaseGrid PhaseGrid::square(double extent, std::size_t n) {
  PhaseGrid g{-extent, extent, -extent, extent, n, n};
  g.validate();
  return g;
}

void PhaseGrid::validate() const {
  q_axis().validate();
  p_axis().validate();
}

PhaseDensity PhaseDensity::zeros(const PhaseGrid& grid, double time) {
  grid.validate();
  return {grid, std::vector<double>(grid.size(), 0.0), time};
}

PhaseDensity PhaseDensity::sample(const PhaseGrid& grid, const std::function<double(PhasePoint)>& fn,
                                  double time) {
  PhaseDensity out = zeros(grid, time);
  for (std::size_t i = 0; i < grid.n_q; ++i)
    for (std::size_t j = 0; j < grid.n_p; ++j) out.at(i, j) = fn({grid.q(i), grid.p(j)});
  return out;
}

double PhaseDensity::mass() const { return kernels::sum(values) * grid.dq() * grid.dp(); }

void PhaseDensity::validate() const {
  grid.validate();
  if (values.size() != grid.size()) throw GridMismatch("density storage does not match grid");
  for (double v : values)
    if (!std::isfinite(v)) throw InvalidArgument("density contains non-finite values");
}

void PhaseDensity::validate_classical() const {
  validate();
  for (double v : values)
    if (v < -1e-12) throw InvalidArgument("classical density has negative values");
  if (std::abs(mass() - 1.0) > 1e-6) throw InvalidArgument("classical density is not normalized");
}

double hamiltonian(PhasePoint pt, const PhysParams& par) {
  return pt.p * pt.p / (2.0 * par.m) + 0.5 * par.m * par.omega * par.omega * pt.q * pt.q;
}

PhasePoint hamilton_flow(PhasePoint pt, double t, const PhysParams& par) {
  const double c = std::cos(par.omega * t);
  const double s = std::sin(par.omega * t);
  const double mw = par.m * par.omega;
  return {pt.q * c + pt.p / mw * s, pt.p * c - mw * pt.q * s};
}

double frame_mass(const PhaseDensity& f, std::size_t width) {
  const auto& g = f.grid;
  double acc = 0.0;
  for (std::size_t i = 0; i < g.n_q; ++i) {
    const bool edge_row = i < width || i + width >= g.n_q;
    for (std::size_t j = 0; j < g.n_p; ++j) {
      const bool edge_col = j < width || j + width >= g.n_p;
      if (edge_row || edge_col) acc += std::abs(f.at(i, j));
    }
  }
  return acc * g.dq() * g.dp();
}

namespace {

// Padded lattice with one zero ring; derivatives in index units from
// fourth-order central differences, treating the exterior as zero.
struct HermiteLattice {
  std::size_t rows, cols, stride;
  std::vector<double> f, fu, fv, fuv;

  explicit HermiteLattice(const PhaseDensity& d)
      : rows(d.grid.n_q),
        cols(d.grid.n_p),
        stride(d.grid.n_p + 2),
        f((rows + 2) * stride, 0.0),
        fu(f.size(), 0.0),
        fv(f.size(), 0.0),
        fuv(f.size(), 0.0) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) f[(i + 1) * stride + j + 1] = d.at(i, j);
    diff_rows(f, fu);
    diff_cols(f, fv);
    diff_rows(fv, fuv);
  }

  kernels::HermitePlanes planes() const { return {f.data(), fu.data(), fv.data(), fuv.data(), rows, cols, stride}; }

 private:
  // value at interior coordinates, zero outside
  static double tap(const std::vector<double>& a, std::ptrdiff_t i, std::ptrdiff_t j, std::size_t rows,
                    std::size_t cols, std::size_t stride) {
    if (i < 0 || j < 0 || i >= static_cast<std::ptrdiff_t>(rows) || j >= static_cast<std::ptrdiff_t>(cols))
      return 0.0;
    return a[static_cast<std::size_t>(i + 1) * stride + static_cast<std::size_t>(j + 1)];
  }

  void diff_rows(const std::vector<double>& src, std::vector<double>& dst) const {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        const auto ii = static_cast<std::ptrdiff_t>(i), jj = static_cast<std::ptrdiff_t>(j);
        dst[(i + 1) * stride + j + 1] =
            (8.0 * (tap(src, ii + 1, jj, rows, cols, stride) - tap(src, ii - 1, jj, rows, cols, stride)) -
             (tap(src, ii + 2, jj, rows, cols, stride) - tap(src, ii - 2, jj, rows, cols, stride))) /
            12.0;
      }
  }

  void diff_cols(const std::vector<double>& src, std::vector<double>& dst) const {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        const auto ii = static_cast<std::ptrdiff_t>(i), jj = static_cast<std::ptrdiff_t>(j);
        dst[(i + 1) * stride + j + 1] =
            (8.0 * (tap(src, ii, jj + 1, rows, cols, stride) - tap(src, ii, jj - 1, rows, cols, stride)) -
             (tap(src, ii, jj + 2, rows, cols, stride) - tap(src, ii, jj - 2, rows, cols, stride))) /
            12.0;
      }
  }
};

PhaseDensity backtrace_once(const PhaseDensity& f, double dt, const PhysParams& par) {
  const auto& g = f.grid;
  const HermiteLattice lattice(f);
  const auto planes = lattice.planes();
  PhaseDensity out = PhaseDensity::zeros(g, f.time + dt);
  std::vector<double> u(g.n_p), v(g.n_p);
  const double inv_dq = 1.0 / g.dq(), inv_dp = 1.0 / g.dp();
  for (std::size_t i = 0; i < g.n_q; ++i) {
    for (std::size_t j = 0; j < g.n_p; ++j) {
      const PhasePoint src = hamilton_flow({g.q(i), g.p(j)}, -dt, par);
      u[j] = (src.q - g.q_min) * inv_dq;
      v[j] = (src.p - g.p_min) * inv_dp;
    }
    kernels::hermite_bicubic(planes, u, v, std::span<double>(out.values).subspan(i * g.n_p, g.n_p));
  }
  return out;
}

}  // namespace

PhaseDensity liouville_propagate(const PhaseDensity& f, double t, const PhysParams& par, std::size_t substeps) {
  par.validate();
  f.validate();
  if (!std::isfinite(t)) throw InvalidArgument("propagation time must be finite");
  if (substeps == 0) throw InvalidArgument("substeps must be at least 1");
  if (t == 0.0) return f;

  const double dt = t / static_cast<double>(substeps);
  PhaseDensity cur = backtrace_once(f, dt, par);
  for (std::size_t s = 1; s < substeps; ++s) cur = backtrace_once(cur, dt, par);
  cur.time = f.time + t;

  double abs_mass = 0.0;
  for (double x : cur.values) abs_mass += std::abs(x);
  abs_mass *= f.grid.dq() * f.grid.dp();
  const double edge = frame_mass(cur, 2);
  if (edge > 1e-4 * abs_mass)
    throw BoundaryLeak("density reached the grid frame after backtrace (frame mass " + std::to_string(edge) +
                       ")");
  return cur;
}

cplx poisson_bracket(const PhaseFunctionNd& f, const PhaseFunctionNd& g, std::span<const double> z,
                     double rel_step) {
  if (z.size() % 2 != 0 || z.empty()) throw InvalidArgument("phase point must have even dimension");
  const std::size_t dof = z.size() / 2;
  std::vector<double> work(z.begin(), z.end());

  auto partial = [&](const PhaseFunctionNd& fn, std::size_t axis) {
    const double x0 = work[axis];
    const double h = rel_step * std::max(1.0, std::abs(x0));
    work[axis] = x0 + h;
    const cplx plus = fn(work);
    work[axis] = x0 - h;
    const cplx minus = fn(work);
    work[axis] = x0;
    return (plus - minus) / (2.0 * h);
  };

  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < dof; ++k) {
    const cplx fq = partial(f, k), fp = partial(f, dof + k);
    const cplx gq = partial(g, k), gp = partial(g, dof + k);
    acc += fq * gp - fp * gq;
  }
  return acc;
}

cplx poisson_bracket(const PhaseFunction& f, const PhaseFunction& g, PhasePoint pt, double rel_step) {
  const PhaseFunctionNd fn = [&f](std::span<const double> z) { return f({z[0], z[1]}); };
  const PhaseFunctionNd gn = [&g](std::span<const double> z) { return g({z[0], z[1]}); };
  const double z[2] = {pt.q, pt.p};
  return poisson_bracket(fn, gn, z, rel_step);
}

double expectation(const PhaseDensity& f, const std::function<double(PhasePoint)>& obs) {
  const auto& g = f.grid;
  std::vector<double> weighted(g.size());
  for (std::size_t i = 0; i < g.n_q; ++i)
    for (std::size_t j = 0; j < g.n_p; ++j) weighted[i * g.n_p + j] = obs({g.q(i), g.p(j)}) * f.at(i, j);
  return kernels::sum(weighted) * g.dq() * g.dp();
}

PhaseDensity coherent_density(const PhaseGrid& grid, PhasePoint center, const PhysParams& par) {
  par.validate();
  const double mw = par.m * par.omega;
  const double norm = 1.0 / (std::numbers::pi * par.hbar);
  return PhaseDensity::sample(grid, [&](PhasePoint z) {
    const double dq = z.q - center.q, dp = z.p - center.p;
    return norm * std::exp(-(mw * dq * dq + dp * dp / mw) / par.hbar);
  });
}

}  // namespace wmlab
