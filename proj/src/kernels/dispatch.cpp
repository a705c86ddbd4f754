#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"
#include "wmlab/errors.hpp"

namespace wmlab::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(WMLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() noexcept {
  const bool avx2 = cpu_has_avx2();
  if (const char* env = std::getenv("WMLAB_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && avx2) return Isa::avx2;
  }
  return avx2 ? Isa::avx2 : Isa::scalar;
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> current{&table(initial_isa())};
  return current;
}

const KernelTable& current() { return *active().load(std::memory_order_relaxed); }

void expect_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw InvalidArgument("kernel operand length mismatch");
}

}  // namespace

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
  }
  return false;
}

Isa active_isa() noexcept { return current().isa; }

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& table(Isa isa) {
#if defined(WMLAB_HAVE_AVX2)
  if (isa == Isa::avx2) {
    if (!cpu_has_avx2()) throw InvalidArgument("avx2 kernels not supported on this CPU");
    return detail::avx2_table;
  }
#else
  if (isa == Isa::avx2) throw InvalidArgument("avx2 kernels not compiled in");
#endif
  return detail::scalar_table;
}

void set_isa(Isa isa) { active().store(&table(isa), std::memory_order_relaxed); }

void cmul(std::span<cplx> x, std::span<const cplx> w) {
  expect_same_size(x.size(), w.size());
  current().cmul(x.data(), w.data(), x.size());
}

void conj_mul(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b) {
  expect_same_size(out.size(), a.size());
  expect_same_size(out.size(), b.size());
  current().conj_mul(out.data(), a.data(), b.data(), out.size());
}

void scale(std::span<cplx> x, double s) { current().scale(x.data(), s, x.size()); }

double sum(std::span<const double> x) { return current().sum(x.data(), x.size()); }

double sum_sq(std::span<const double> x) { return current().sum_sq(x.data(), x.size()); }

double norm_sq(std::span<const cplx> x) { return current().norm_sq(x.data(), x.size()); }

void hermite_bicubic(const HermitePlanes& planes, std::span<const double> u, std::span<const double> v,
                     std::span<double> out) {
  expect_same_size(u.size(), v.size());
  expect_same_size(u.size(), out.size());
  current().hermite_bicubic(planes, u.data(), v.data(), out.data(), out.size());
}

}  // namespace wmlab::kernels
