#include <doctest.h>

#include <random>
#include <vector>

#include "wmlab/errors.hpp"
#include "wmlab/kernels.hpp"

using namespace wmlab;
using kernels::cplx;
using kernels::Isa;

namespace {

std::vector<cplx> random_cplx(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

std::vector<double> random_real(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar table is always available") {
    CHECK(kernels::isa_available(Isa::scalar));
    CHECK(kernels::table(Isa::scalar).isa == Isa::scalar);
    CHECK(kernels::isa_name(Isa::scalar) == "scalar");
    CHECK(kernels::isa_name(Isa::avx2) == "avx2");
  }

  TEST_CASE("set_isa switches the dispatch table") {
    const Isa before = kernels::active_isa();
    kernels::set_isa(Isa::scalar);
    CHECK(kernels::active_isa() == Isa::scalar);
    if (kernels::isa_available(Isa::avx2)) {
      kernels::set_isa(Isa::avx2);
      CHECK(kernels::active_isa() == Isa::avx2);
    } else {
      CHECK_THROWS_AS(kernels::set_isa(Isa::avx2), InvalidArgument);
    }
    kernels::set_isa(before);
  }

  TEST_CASE("wrappers reject mismatched lengths") {
    std::vector<cplx> a(4), b(5);
    CHECK_THROWS_AS(kernels::cmul(a, b), InvalidArgument);
    std::vector<cplx> out(4);
    CHECK_THROWS_AS(kernels::conj_mul(out, a, b), InvalidArgument);
  }

  TEST_CASE("scalar kernels match their definitions") {
    std::mt19937_64 rng(1);
    const auto& t = kernels::table(Isa::scalar);
    for (std::size_t n : {0u, 1u, 3u, 8u, 17u}) {
      auto x = random_cplx(rng, n);
      const auto w = random_cplx(rng, n);
      auto y = x;
      t.cmul(y.data(), w.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y[i] - x[i] * w[i]) < 1e-15);
      std::vector<cplx> out(n);
      t.conj_mul(out.data(), x.data(), w.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(out[i] - std::conj(x[i]) * w[i]) < 1e-15);
      double ns = 0.0;
      for (const auto& v : x) ns += std::norm(v);
      CHECK(rel(t.norm_sq(x.data(), n), ns) < 1e-14);
      t.scale(x.data(), 2.0, n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(x[i] - 2.0 * y[i] / w[i]) < 1e-12);
    }
  }

  TEST_CASE("avx2 kernels agree with scalar to rounding") {
    if (!kernels::isa_available(Isa::avx2)) {
      MESSAGE("avx2 unavailable; equivalence test skipped");
      return;
    }
    const auto& s = kernels::table(Isa::scalar);
    const auto& a = kernels::table(Isa::avx2);
    std::mt19937_64 rng(2);
    for (std::size_t n = 0; n <= 67; ++n) {
      CAPTURE(n);
      const auto x = random_cplx(rng, n);
      const auto w = random_cplx(rng, n);
      auto xs = x, xa = x;
      s.cmul(xs.data(), w.data(), n);
      a.cmul(xa.data(), w.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(xs[i] - xa[i]) <= 1e-14 * std::max(1.0, std::abs(xs[i])));

      std::vector<cplx> os(n), oa(n);
      s.conj_mul(os.data(), x.data(), w.data(), n);
      a.conj_mul(oa.data(), x.data(), w.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(os[i] - oa[i]) <= 1e-14 * std::max(1.0, std::abs(os[i])));

      auto ss = x, sa = x;
      s.scale(ss.data(), -0.37, n);
      a.scale(sa.data(), -0.37, n);
      for (std::size_t i = 0; i < n; ++i) CHECK(ss[i] == sa[i]);

      const auto r = random_real(rng, n);
      CHECK(rel(s.sum(r.data(), n), a.sum(r.data(), n)) < 1e-13);
      CHECK(rel(s.sum_sq(r.data(), n), a.sum_sq(r.data(), n)) < 1e-13);
      CHECK(rel(s.norm_sq(x.data(), n), a.norm_sq(x.data(), n)) < 1e-13);
    }
  }

  TEST_CASE("avx2 bicubic interpolation agrees with scalar") {
    if (!kernels::isa_available(Isa::avx2)) return;
    std::mt19937_64 rng(3);
    const std::size_t nr = 9, nc = 13, stride = nc + 2;
    const std::size_t cells = (nr + 2) * stride;
    auto f = random_real(rng, cells), fu = random_real(rng, cells), fv = random_real(rng, cells),
         fuv = random_real(rng, cells);
    kernels::HermitePlanes pl{f.data(), fu.data(), fv.data(), fuv.data(), nr, nc, stride};
    std::uniform_real_distribution<double> uu(-2.0, static_cast<double>(nr) + 1.0);
    std::uniform_real_distribution<double> uv(-2.0, static_cast<double>(nc) + 1.0);
    for (std::size_t n : {1u, 4u, 7u, 64u, 1001u}) {
      std::vector<double> u(n), v(n), os(n), oa(n);
      for (std::size_t k = 0; k < n; ++k) {
        u[k] = uu(rng);
        v[k] = uv(rng);
      }
      kernels::table(Isa::scalar).hermite_bicubic(pl, u.data(), v.data(), os.data(), n);
      kernels::table(Isa::avx2).hermite_bicubic(pl, u.data(), v.data(), oa.data(), n);
      for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(os[k] - oa[k]) <= 1e-13 * std::max(1.0, std::abs(os[k])));
    }
  }

  TEST_CASE("bicubic interpolation reproduces node values and zero outside") {
    const std::size_t nr = 4, nc = 4, stride = nc + 2, cells = (nr + 2) * stride;
    std::vector<double> f(cells, 0.0), zero(cells, 0.0);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) f[(i + 1) * stride + j + 1] = static_cast<double>(10 * i + j);
    kernels::HermitePlanes pl{f.data(), zero.data(), zero.data(), zero.data(), nr, nc, stride};
    const std::vector<double> u{0.0, 2.0, 3.0, -5.0}, v{1.0, 3.0, 0.0, 0.0};
    std::vector<double> out(4);
    kernels::hermite_bicubic(pl, u, v, out);
    CHECK(out[0] == doctest::Approx(1.0));
    CHECK(out[1] == doctest::Approx(23.0));
    CHECK(out[2] == doctest::Approx(30.0));
    CHECK(out[3] == 0.0);
  }
}
