#include "rtmixed/kernels.hpp"

#include <cstdlib>
#include <fmt/format.h>

#include "rtmixed/error.hpp"

namespace rtmixed::kernels {

namespace {

struct Table {
  Isa isa;
  double (*dot)(std::span<const double>, std::span<const double>);
  void (*axpy)(double, std::span<const double>, std::span<double>);
  void (*spmv)(const CsrView&, std::span<const double>, std::span<double>);
};

constexpr Table kScalar{Isa::Scalar, scalar::dot, scalar::axpy, scalar::spmv};
#ifdef RTMIXED_HAVE_AVX2
constexpr Table kAvx2{Isa::Avx2, avx2::dot, avx2::axpy, avx2::spmv};
#else
constexpr Table kAvx2 = kScalar;
#endif

const Table* initial_table() {
  if (const char* env = std::getenv("RTMIXED_ISA")) {
    const std::string_view want(env);
    if (want == "scalar") return &kScalar;
    if (want == "avx2" && isa_available(Isa::Avx2)) return &kAvx2;
  }
  return isa_available(Isa::Avx2) ? &kAvx2 : &kScalar;
}

const Table*& active() {
  static const Table* table = initial_table();
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#ifdef RTMIXED_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return active()->isa; }

void set_isa(Isa isa) {
  if (!isa_available(isa))
    throw Error(fmt::format("instruction set {} is not available on this CPU", to_string(isa)));
  active() = isa == Isa::Avx2 ? &kAvx2 : &kScalar;
}

double dot(std::span<const double> x, std::span<const double> y) { return active()->dot(x, y); }

void axpy(double a, std::span<const double> x, std::span<double> y) { active()->axpy(a, x, y); }

void spmv(const CsrView& a, std::span<const double> x, std::span<double> y) {
  active()->spmv(a, x, y);
}

}  // namespace rtmixed::kernels
