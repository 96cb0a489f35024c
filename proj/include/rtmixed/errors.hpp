#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "rtmixed/exact.hpp"
#include "rtmixed/mesh.hpp"
#include "rtmixed/solver.hpp"
#include "rtmixed/spaces.hpp"

namespace rtmixed {

/// ||u - u_h||_{L^2}. Cells with a vertex at the origin use the graded scheme,
/// all others `q.rule`.
double l2_error_u(std::span<const double> uh, const SingularHarmonic& sol, const Mesh& mesh,
                  const CellQuadrature& q);

/// Same with the defaults: degree-6 rule, graded scheme chosen from alpha.
double l2_error_u(std::span<const double> uh, const SingularHarmonic& sol, const Mesh& mesh);

/// Piecewise-constant gradient of a fine-mesh P1 solution driven by a coarse
/// level's regularized boundary data g^h.
struct SigmaReference {
  std::shared_ptr<const Mesh> fine;
  std::vector<Point2> gradient;  // per fine triangle
  double residual = 0.0;
};

/// Fine-mesh P1 solver reused across coarse levels: the stiffness matrix is
/// assembled and factorized once per (domain, fine level).
class SigmaReferenceSolver {
 public:
  SigmaReferenceSolver(Domain domain, int fine_n, const SolverConfig& cfg = {});

  const Mesh& fine_mesh() const { return *fine_; }

  /// Requires fine_n to be a multiple of the coarse level of `coarse_gh`.
  SigmaReference build(const BoundaryProjection& coarse_gh, int coarse_n) const;

 private:
  std::shared_ptr<const Mesh> fine_;
  std::vector<int> unknown_;  // interior unknown per vertex, -1 on the boundary
  SparseMatrix coupling_;     // rows: interior unknowns, cols: all vertices
  SpdSolver solver_;
};

SigmaReference build_sigma_reference(const BoundaryProjection& coarse_gh, int coarse_n,
                                     Domain domain, int fine_n, const SolverConfig& cfg = {});

/// ||sigma_h - sigma^h||_{L^2} on the reference mesh; sigma_h lives on
/// `coarse`, which must be nested in ref.fine (throws MeshError otherwise).
double l2_error_sigma(std::span<const double> sigma_h, const Mesh& coarse,
                      const SigmaReference& ref);

/// rate_i = log(e_{i-1} / e_i) / log 2; one entry shorter than the input.
/// Throws DomainError on non-positive errors.
std::vector<double> rates(std::span<const double> errors);

struct ConvergenceRow {
  int level = 0;
  double h = 0.0;
  double err_u = 0.0;
  std::optional<double> rate_u;
  std::optional<double> err_sigma;
  std::optional<double> rate_sigma;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;

  /// Fills the rate columns from consecutive errors.
  void compute_rates();
  /// CSV with header level,h,err_u,rate_u,err_sigma,rate_sigma; six decimals;
  /// undefined entries are left empty.
  void write_csv(std::ostream& os) const;
};

}  // namespace rtmixed
