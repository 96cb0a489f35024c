#pragma once

#include <Eigen/Sparse>
#include <iosfwd>
#include <span>
#include <vector>

#include "rtmixed/exact.hpp"
#include "rtmixed/mesh.hpp"
#include "rtmixed/quadrature.hpp"
#include "rtmixed/spaces.hpp"

namespace rtmixed {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

/// Coordinate-format accumulator; duplicate entries add up on compression.
class SparseTriplets {
 public:
  SparseTriplets(int rows, int cols) : rows_(rows), cols_(cols) {}

  void add(int row, int col, double value) { entries_.emplace_back(row, col, value); }
  void reserve(size_t n) { entries_.reserve(n); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  size_t size() const { return entries_.size(); }

  SparseMatrix compress() const;

 private:
  int rows_;
  int cols_;
  std::vector<Eigen::Triplet<double>> entries_;
};

/// Discrete saddle-point problem
///   [ M  B^T ] [sigma]   [ G]
///   [ B  0   ] [  u  ] = [-F]
/// with M_ij = (phi_i, phi_j), B_Kj = (div phi_j, 1_K), G_j = <g, phi_j . n>,
/// F_K = (f, 1_K).
struct MixedSystem {
  SparseMatrix mass;
  SparseMatrix divergence;
  Vector boundary_load;
  Vector source_load;

  int num_fluxes() const { return static_cast<int>(mass.rows()); }
  int num_cells() const { return static_cast<int>(divergence.rows()); }

  /// Full symmetric indefinite block matrix, sigma unknowns first.
  SparseMatrix block_matrix() const;
  Vector block_rhs() const;
};

MixedSystem assemble_mixed(const Mesh& mesh, const BoundaryData& g, const ScalarField& f);

/// Mixed system with f = 0 and no quadrature of the source.
MixedSystem assemble_mixed(const Mesh& mesh, const BoundaryData& g);

/// P1 Dirichlet problem reduced to interior vertices.
struct P1System {
  SparseMatrix stiffness;
  Vector rhs;
  /// Mesh vertex of each unknown.
  std::vector<int> interior_vertices;
  /// Dirichlet value at every mesh vertex (zero at interior vertices).
  std::vector<double> boundary_values;

  /// Nodal vector on all mesh vertices from the interior solution.
  std::vector<double> expand(const Vector& interior) const;
};

/// P1 stiffness over interior vertices with the boundary values lifted into the
/// load. `boundary_values` is indexed by mesh vertex; only boundary entries
/// are read. Pass an empty `f` for a zero source.
P1System assemble_p1_dirichlet(const Mesh& mesh, std::span<const double> boundary_values,
                               const ScalarField& f = {});

/// Same, with Dirichlet data taken from g^h on the same mesh.
P1System assemble_p1_dirichlet(const Mesh& mesh, const BoundaryProjection& gh,
                               const ScalarField& f = {});

/// Header "% rows cols nnz", then "row col value" lines, zero-based, one per
/// stored entry.
void write_coordinate(std::ostream& os, const SparseMatrix& a);

}  // namespace rtmixed
