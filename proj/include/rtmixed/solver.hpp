#pragma once

#include <memory>
#include <string_view>

#include "rtmixed/assembly.hpp"

namespace rtmixed {

enum class SolverMethod { Direct, Iterative };

SolverMethod parse_solver_method(std::string_view name);

struct SolverConfig {
  SolverMethod method = SolverMethod::Direct;
  /// Bound on ||b - A x|| / ||b||, certified against the assembled matrices.
  double tolerance = 1e-10;
  int max_iterations = 20000;
};

struct MixedSolution {
  Vector sigma;  // RT0 edge fluxes
  Vector u;      // DG0 cell values
  double residual = 0.0;
  int iterations = 0;
};

/// Solves the saddle-point system. Direct: sparse LU of the full block
/// matrix. Iterative: MINRES with the block-diagonal preconditioner
/// diag(diag(M), B diag(M)^-1 B^T). Throws SolverError when the certified
/// residual exceeds cfg.tolerance.
MixedSolution solve_mixed(const MixedSystem& system, const SolverConfig& cfg = {});

struct SpdSolution {
  Vector x;
  double residual = 0.0;
  int iterations = 0;
};

/// Direct: sparse Cholesky. Iterative: Jacobi-preconditioned CG.
SpdSolution solve_spd(const SparseMatrix& a, const Vector& b, const SolverConfig& cfg = {});

inline SpdSolution solve_spd(const P1System& system, const SolverConfig& cfg = {}) {
  return solve_spd(system.stiffness, system.rhs, cfg);
}

/// Reusable solver for a fixed SPD matrix (factorized once when direct).
class SpdSolver {
 public:
  SpdSolver(SparseMatrix a, SolverConfig cfg);
  ~SpdSolver();
  SpdSolver(SpdSolver&&) noexcept;
  SpdSolver& operator=(SpdSolver&&) noexcept;

  SpdSolution solve(const Vector& b) const;
  const SparseMatrix& matrix() const { return a_; }

 private:
  struct Factor;
  SparseMatrix a_;
  SolverConfig cfg_;
  std::unique_ptr<Factor> factor_;
};

/// ||b - A x|| / ||b|| (0 when b = 0 and x = 0).
double relative_residual(const SparseMatrix& a, const Vector& x, const Vector& b);

/// Relative residual of the block system, computed from M and B directly.
double relative_residual(const MixedSystem& system, const Vector& sigma, const Vector& u);

}  // namespace rtmixed
