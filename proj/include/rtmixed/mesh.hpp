#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "rtmixed/geometry.hpp"

namespace rtmixed {

/// Rectangle = (-1,1)x(0,1); LShape = (-1,1)^2 minus [0,1)x(-1,0].
/// Both have the origin on their boundary.
enum class Domain { Rectangle, LShape };

double domain_area(Domain d);
double domain_perimeter(Domain d);
std::string_view to_string(Domain d);
Domain parse_domain(std::string_view name);

inline constexpr int kBoundary = -1;

struct Edge {
  /// Vertex order fixes the global normal: normal = rotate(v1 - v0) clockwise.
  /// For boundary edges v0 -> v1 runs counterclockwise around the domain, so the
  /// global normal is the outward normal.
  std::array<int, 2> vertices;
  /// cells[0] sees the global normal as its outward normal; cells[1] is the
  /// neighbour or kBoundary.
  std::array<int, 2> cells;
  Point2 normal;
  double length;

  bool on_boundary() const { return cells[1] == kBoundary; }
};

/// Structured triangulation with cell side 1/n. Immutable after construction.
///
/// Each axis-aligned square is split along its bottom-left to top-right
/// diagonal into a lower triangle (BL, BR, TR) and an upper triangle
/// (BL, TR, TL). Local edge k of a triangle is opposite local vertex k.
class Mesh {
 public:
  Domain domain() const { return domain_; }
  int level() const { return level_; }
  /// Diameter of every cell, sqrt(2)/n.
  double h() const;

  std::span<const Point2> vertices() const { return vertices_; }
  std::span<const std::array<int, 3>> triangles() const { return triangles_; }
  std::span<const Edge> edges() const { return edges_; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_boundary_edges() const { return num_boundary_edges_; }

  Triangle triangle(int t) const;
  double area(int t) const;
  /// Global edge indices of a triangle, local edge k opposite local vertex k.
  const std::array<int, 3>& triangle_edges(int t) const { return triangle_edges_[t]; }
  /// +1 if the triangle's outward normal on local edge k equals the edge's
  /// global normal, -1 otherwise.
  const std::array<int8_t, 3>& edge_signs(int t) const { return edge_signs_[t]; }

  bool is_boundary_vertex(int v) const { return boundary_vertex_[v] != 0; }
  /// True if the origin is one of the triangle's vertices.
  bool touches_origin(int t) const;
  /// Local vertex index of the origin in triangle t, or -1.
  int origin_local_vertex(int t) const;
  /// Index of the vertex at the origin.
  int origin_vertex() const { return origin_vertex_; }

  /// Grid square (i, j) and whether the triangle is the lower half.
  struct CellKey {
    int i;
    int j;
    bool lower;
  };
  const CellKey& cell_key(int t) const { return cell_keys_[t]; }

 private:
  friend Mesh generate_structured(Domain domain, int n);

  Domain domain_ = Domain::Rectangle;
  int level_ = 0;
  std::vector<Point2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<std::array<int8_t, 3>> edge_signs_;
  std::vector<Edge> edges_;
  std::vector<CellKey> cell_keys_;
  std::vector<uint8_t> boundary_vertex_;
  int num_boundary_edges_ = 0;
  int origin_vertex_ = -1;
};

/// Uniform structured mesh with cell side 1/n (n >= 1). Vertices are ordered
/// lexicographically by (y, x).
Mesh generate_structured(Domain domain, int n);

struct RefinedMesh {
  Mesh mesh;
  /// parent[t] is the coarse triangle containing fine triangle t.
  std::vector<int> parent;
};

/// Level-2n mesh of the same domain together with its parent map.
RefinedMesh refine_uniform(const Mesh& mesh);

/// Parent map between nested structured meshes. Throws MeshError if the fine
/// level is not a multiple of the coarse level or the domains differ.
std::vector<int> parent_map(const Mesh& coarse, const Mesh& fine);

/// Boundary edges in counterclockwise order; consecutive edges share a vertex.
/// Throws MeshError if the boundary is not a single closed loop.
std::vector<int> boundary_loop(const Mesh& mesh);

/// Plain-text dump: "v x y", "t i j k", "b i j" lines.
void write_mesh(std::ostream& os, const Mesh& mesh);

}  // namespace rtmixed
