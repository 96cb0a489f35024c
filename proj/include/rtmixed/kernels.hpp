#pragma once

#include <span>
#include <string_view>

// Vector kernels behind the Krylov solvers. Every kernel has a scalar
// reference version and an AVX2/FMA version; the dispatched entry points pick
// one at first use (AVX2 when the CPU supports it, overridable with the
// environment variable RTMIXED_ISA=scalar|avx2 or set_isa()).

namespace rtmixed::kernels {

/// Compressed sparse row view; column indices are int32.
struct CsrView {
  int rows = 0;
  std::span<const int> row_ptr;
  std::span<const int> cols;
  std::span<const double> values;
};

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();
/// Throws rtmixed::Error if the ISA is not available on this CPU.
void set_isa(Isa isa);

double dot(std::span<const double> x, std::span<const double> y);
/// y += a x
void axpy(double a, std::span<const double> x, std::span<double> y);
/// y = A x
void spmv(const CsrView& a, std::span<const double> x, std::span<double> y);

namespace scalar {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
void spmv(const CsrView& a, std::span<const double> x, std::span<double> y);
}  // namespace scalar

namespace avx2 {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
void spmv(const CsrView& a, std::span<const double> x, std::span<double> y);
}  // namespace avx2

}  // namespace rtmixed::kernels
