#pragma once

#include "wmlab/kernels.hpp"

namespace wmlab::kernels::detail {

extern const KernelTable scalar_table;
#if defined(WMLAB_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif

// Cubic Hermite basis on [0,1]: value weights (h00, h01) and slope
// weights (h10, h11).
struct HermiteBasis {
  double h00, h01, h10, h11;
};

inline HermiteBasis hermite_basis(double t) noexcept {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return {2.0 * t3 - 3.0 * t2 + 1.0, -2.0 * t3 + 3.0 * t2, t3 - 2.0 * t2 + t, t3 - t2};
}

}  // namespace wmlab::kernels::detail
