// AVX2 + FMA variants. This translation unit is the only one built with
// -mavx2 -mfma; it must not define or instantiate inline functions shared
// with the rest of the library, so everything lives in an anonymous namespace
// and only intrinsics are used.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace wmlab::kernels::detail {
namespace {

void cmul_avx2(cplx* x, const cplx* w, std::size_t n) {
  double* xd = reinterpret_cast<double*>(x);
  const double* wd = reinterpret_cast<const double*>(w);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(xd + 2 * i);
    const __m256d b = _mm256_loadu_pd(wd + 2 * i);
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0xF);
    const __m256d a_sw = _mm256_permute_pd(a, 0x5);
    _mm256_storeu_pd(xd + 2 * i, _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im)));
  }
  if (i < n) scalar_table.cmul(x + i, w + i, n - i);
}

void conj_mul_avx2(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  double* od = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(ad + 2 * i);
    const __m256d vb = _mm256_loadu_pd(bd + 2 * i);
    const __m256d a_re = _mm256_movedup_pd(va);
    const __m256d a_im = _mm256_permute_pd(va, 0xF);
    const __m256d b_sw = _mm256_permute_pd(vb, 0x5);
    // lane 0: ar*br + ai*bi, lane 1: ar*bi - ai*br
    _mm256_storeu_pd(od + 2 * i, _mm256_fmsubadd_pd(a_re, vb, _mm256_mul_pd(a_im, b_sw)));
  }
  if (i < n) scalar_table.conj_mul(out + i, a + i, b + i, n - i);
}

void scale_avx2(cplx* x, double s, std::size_t n) {
  double* xd = reinterpret_cast<double*>(x);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) _mm256_storeu_pd(xd + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(xd + 2 * i), vs));
  if (i < n) scalar_table.scale(x + i, s, n - i);
}

double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) total += x[i];
  return total;
}

double sum_sq_avx2(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a = _mm256_loadu_pd(x + i);
    const __m256d b = _mm256_loadu_pd(x + i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) total += x[i] * x[i];
  return total;
}

double norm_sq_avx2(const cplx* x, std::size_t n) {
  return sum_sq_avx2(reinterpret_cast<const double*>(x), 2 * n);
}

void hermite_bicubic_avx2(const HermitePlanes& pl, const double* u, const double* v, double* out,
                          std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d three = _mm256_set1_pd(3.0);
  const __m256d lo = _mm256_set1_pd(-1.0);
  const __m256d row_hi = _mm256_set1_pd(static_cast<double>(pl.n_rows) - 1.0);
  const __m256d col_hi = _mm256_set1_pd(static_cast<double>(pl.n_cols) - 1.0);
  const __m256d stride_d = _mm256_set1_pd(static_cast<double>(pl.stride));
  const __m128i off01 = _mm_set1_epi32(1);
  const __m128i off10 = _mm_set1_epi32(static_cast<int>(pl.stride));
  const __m128i off11 = _mm_set1_epi32(static_cast<int>(pl.stride) + 1);

  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d vu = _mm256_loadu_pd(u + k);
    const __m256d vv = _mm256_loadu_pd(v + k);
    __m256d iu = _mm256_floor_pd(vu);
    __m256d iv = _mm256_floor_pd(vv);
    const __m256d inside =
        _mm256_and_pd(_mm256_and_pd(_mm256_cmp_pd(iu, lo, _CMP_GE_OQ), _mm256_cmp_pd(iu, row_hi, _CMP_LE_OQ)),
                      _mm256_and_pd(_mm256_cmp_pd(iv, lo, _CMP_GE_OQ), _mm256_cmp_pd(iv, col_hi, _CMP_LE_OQ)));
    // park rejected lanes on a valid cell so the gathers stay in bounds
    iu = _mm256_blendv_pd(lo, iu, inside);
    iv = _mm256_blendv_pd(lo, iv, inside);
    const __m256d t = _mm256_sub_pd(vu, iu);
    const __m256d s = _mm256_sub_pd(vv, iv);

    const __m256d t2 = _mm256_mul_pd(t, t), t3 = _mm256_mul_pd(t2, t);
    const __m256d s2 = _mm256_mul_pd(s, s), s3 = _mm256_mul_pd(s2, s);
    const __m256d u00 = _mm256_fmadd_pd(two, t3, _mm256_fnmadd_pd(three, t2, one));
    const __m256d u01 = _mm256_fmadd_pd(three, t2, _mm256_mul_pd(_mm256_set1_pd(-2.0), t3));
    const __m256d u10 = _mm256_add_pd(_mm256_fnmadd_pd(two, t2, t3), t);
    const __m256d u11 = _mm256_sub_pd(t3, t2);
    const __m256d v00 = _mm256_fmadd_pd(two, s3, _mm256_fnmadd_pd(three, s2, one));
    const __m256d v01 = _mm256_fmadd_pd(three, s2, _mm256_mul_pd(_mm256_set1_pd(-2.0), s3));
    const __m256d v10 = _mm256_add_pd(_mm256_fnmadd_pd(two, s2, s3), s);
    const __m256d v11 = _mm256_sub_pd(s3, s2);

    const __m256d base_d = _mm256_fmadd_pd(_mm256_add_pd(iu, one), stride_d, _mm256_add_pd(iv, one));
    const __m128i c00 = _mm256_cvtpd_epi32(base_d);
    const __m128i c01 = _mm_add_epi32(c00, off01);
    const __m128i c10 = _mm_add_epi32(c00, off10);
    const __m128i c11 = _mm_add_epi32(c00, off11);

    auto corner_mix = [&](const double* plane, __m256d wu0, __m256d wu1, __m256d wv0, __m256d wv1) {
      const __m256d g00 = _mm256_i32gather_pd(plane, c00, 8);
      const __m256d g01 = _mm256_i32gather_pd(plane, c01, 8);
      const __m256d g10 = _mm256_i32gather_pd(plane, c10, 8);
      const __m256d g11 = _mm256_i32gather_pd(plane, c11, 8);
      const __m256d row0 = _mm256_fmadd_pd(wv1, g01, _mm256_mul_pd(wv0, g00));
      const __m256d row1 = _mm256_fmadd_pd(wv1, g11, _mm256_mul_pd(wv0, g10));
      return _mm256_fmadd_pd(wu1, row1, _mm256_mul_pd(wu0, row0));
    };

    __m256d acc = corner_mix(pl.f, u00, u01, v00, v01);
    acc = _mm256_add_pd(acc, corner_mix(pl.fu, u10, u11, v00, v01));
    acc = _mm256_add_pd(acc, corner_mix(pl.fv, u00, u01, v10, v11));
    acc = _mm256_add_pd(acc, corner_mix(pl.fuv, u10, u11, v10, v11));
    _mm256_storeu_pd(out + k, _mm256_and_pd(acc, inside));
  }
  if (k < n) scalar_table.hermite_bicubic(pl, u + k, v + k, out + k, n - k);
}

}  // namespace

const KernelTable avx2_table{
    Isa::avx2,   cmul_avx2,    conj_mul_avx2,       scale_avx2, sum_avx2,
    sum_sq_avx2, norm_sq_avx2, hermite_bicubic_avx2,
};

}  // namespace wmlab::kernels::detail
