#include <cmath>

#include "kernels_impl.hpp"

namespace wmlab::kernels::detail {
namespace {

void cmul_scalar(cplx* x, const cplx* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double wr = w[i].real(), wi = w[i].imag();
    x[i] = {xr * wr - xi * wi, xr * wi + xi * wr};
  }
}

void conj_mul_scalar(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {ar * br + ai * bi, ar * bi - ai * br};
  }
}

void scale_scalar(cplx* x, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = {x[i].real() * s, x[i].imag() * s};
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double sum_sq_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double norm_sq_scalar(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return acc;
}

void hermite_bicubic_scalar(const HermitePlanes& pl, const double* u, const double* v, double* out,
                            std::size_t n) {
  const double row_hi = static_cast<double>(pl.n_rows) - 1.0;
  const double col_hi = static_cast<double>(pl.n_cols) - 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double fu0 = std::floor(u[k]);
    const double fv0 = std::floor(v[k]);
    if (!(fu0 >= -1.0 && fu0 <= row_hi && fv0 >= -1.0 && fv0 <= col_hi)) {
      out[k] = 0.0;
      continue;
    }
    const HermiteBasis bu = hermite_basis(u[k] - fu0);
    const HermiteBasis bv = hermite_basis(v[k] - fv0);
    // padded index of the lower-left corner
    const std::size_t base = static_cast<std::size_t>(fu0 + 1.0) * pl.stride +
                             static_cast<std::size_t>(fv0 + 1.0);
    const std::size_t c00 = base, c01 = base + 1, c10 = base + pl.stride, c11 = base + pl.stride + 1;

    const double val = bu.h00 * (bv.h00 * pl.f[c00] + bv.h01 * pl.f[c01]) +
                       bu.h01 * (bv.h00 * pl.f[c10] + bv.h01 * pl.f[c11]);
    const double du = bu.h10 * (bv.h00 * pl.fu[c00] + bv.h01 * pl.fu[c01]) +
                      bu.h11 * (bv.h00 * pl.fu[c10] + bv.h01 * pl.fu[c11]);
    const double dv = bu.h00 * (bv.h10 * pl.fv[c00] + bv.h11 * pl.fv[c01]) +
                      bu.h01 * (bv.h10 * pl.fv[c10] + bv.h11 * pl.fv[c11]);
    const double duv = bu.h10 * (bv.h10 * pl.fuv[c00] + bv.h11 * pl.fuv[c01]) +
                       bu.h11 * (bv.h10 * pl.fuv[c10] + bv.h11 * pl.fuv[c11]);
    out[k] = val + du + dv + duv;
  }
}

}  // namespace

const KernelTable scalar_table{
    Isa::scalar,  cmul_scalar,    conj_mul_scalar,       scale_scalar, sum_scalar,
    sum_sq_scalar, norm_sq_scalar, hermite_bicubic_scalar,
};

}  // namespace wmlab::kernels::detail
