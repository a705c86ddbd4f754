#pragma once
// Data-parallel inner loops shared by the transforms and propagators.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The variant is chosen once at startup from CPUID and can
// be overridden with WMLAB_KERNELS=scalar|avx2 or set_isa(). Reductions use a
// fixed accumulation order per variant, so results are reproducible run to
// run; the two variants agree to rounding, not bit-for-bit.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace wmlab::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

/// Value, first derivatives and mixed derivative of a field on a padded
/// node lattice. Derivatives are stored in index units (already multiplied
/// by the spacing). The lattice has one ring of zero padding around an
/// n_rows x n_cols interior, so `stride == n_cols + 2`.
struct HermitePlanes {
  const double* f = nullptr;
  const double* fu = nullptr;
  const double* fv = nullptr;
  const double* fuv = nullptr;
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::size_t stride = 0;
};

/// Table of kernel entry points for one instruction set.
struct KernelTable {
  Isa isa;
  void (*cmul)(cplx* x, const cplx* w, std::size_t n);
  void (*conj_mul)(cplx* out, const cplx* a, const cplx* b, std::size_t n);
  void (*scale)(cplx* x, double s, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  double (*sum_sq)(const double* x, std::size_t n);
  double (*norm_sq)(const cplx* x, std::size_t n);
  void (*hermite_bicubic)(const HermitePlanes& planes, const double* u, const double* v,
                          double* out, std::size_t n);
};

bool isa_available(Isa isa) noexcept;
Isa active_isa() noexcept;
std::string_view isa_name(Isa isa) noexcept;
/// Throws InvalidArgument when the requested variant is not available.
void set_isa(Isa isa);
const KernelTable& table(Isa isa);

// Dispatching wrappers over the active table.

/// x[i] *= w[i]
void cmul(std::span<cplx> x, std::span<const cplx> w);
/// out[i] = conj(a[i]) * b[i]
void conj_mul(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b);
void scale(std::span<cplx> x, double s);
double sum(std::span<const double> x);
double sum_sq(std::span<const double> x);
double norm_sq(std::span<const cplx> x);
/// Evaluates the bicubic Hermite interpolant at fractional lattice
/// coordinates (u along rows, v along columns; node (i,j) sits at (i,j)).
/// Points whose cell is not fully inside the padded lattice return 0.
void hermite_bicubic(const HermitePlanes& planes, std::span<const double> u,
                     std::span<const double> v, std::span<double> out);

}  // namespace wmlab::kernels
