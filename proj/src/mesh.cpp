#include "rtmixed/mesh.hpp"

#include <cmath>
#include <fmt/format.h>
#include <ostream>
#include <unordered_map>

#include "rtmixed/error.hpp"

namespace rtmixed {

namespace {

struct GridExtent {
  int nx;
  int ny;
  int y_offset;  // y = (j - y_offset) / n
};

GridExtent grid_extent(Domain d, int n) {
  switch (d) {
    case Domain::Rectangle:
      return {2 * n, n, 0};
    case Domain::LShape:
      return {2 * n, 2 * n, n};
  }
  throw DomainError("unknown domain");
}

bool cell_kept(Domain d, int n, int i, int j) {
  // The removed L-shape quadrant is x > 0, y < 0 in cell-centroid terms.
  return d != Domain::LShape || !(i >= n && j < n);
}

}  // namespace

double domain_area(Domain d) { return d == Domain::Rectangle ? 2.0 : 3.0; }

double domain_perimeter(Domain d) { return d == Domain::Rectangle ? 6.0 : 8.0; }

std::string_view to_string(Domain d) {
  return d == Domain::Rectangle ? "rect" : "lshape";
}

Domain parse_domain(std::string_view name) {
  if (name == "rect" || name == "rectangle") return Domain::Rectangle;
  if (name == "lshape" || name == "L" || name == "l-shape") return Domain::LShape;
  throw DomainError(fmt::format("unknown domain '{}'", name));
}

double Mesh::h() const { return std::sqrt(2.0) / level_; }

Triangle Mesh::triangle(int t) const {
  const auto& v = triangles_[t];
  return {vertices_[v[0]], vertices_[v[1]], vertices_[v[2]]};
}

double Mesh::area(int t) const { return signed_area(triangle(t)); }

int Mesh::origin_local_vertex(int t) const {
  const auto& v = triangles_[t];
  for (int k = 0; k < 3; ++k)
    if (v[k] == origin_vertex_) return k;
  return -1;
}

bool Mesh::touches_origin(int t) const { return origin_local_vertex(t) >= 0; }

Mesh generate_structured(Domain domain, int n) {
  if (n < 1) throw MeshError(fmt::format("mesh level must be >= 1, got {}", n));
  const auto [nx, ny, y_offset] = grid_extent(domain, n);
  const double inv_n = 1.0 / n;

  Mesh mesh;
  mesh.domain_ = domain;
  mesh.level_ = n;

  // Vertex (i, j) exists if any adjacent cell is kept.
  const auto has_cell = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < nx && j < ny && cell_kept(domain, n, i, j);
  };
  std::vector<int> grid_vertex(static_cast<size_t>(nx + 1) * (ny + 1), -1);
  const auto gv = [&](int i, int j) -> int& {
    return grid_vertex[static_cast<size_t>(j) * (nx + 1) + i];
  };
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      if (has_cell(i, j) || has_cell(i - 1, j) || has_cell(i, j - 1) || has_cell(i - 1, j - 1)) {
        gv(i, j) = static_cast<int>(mesh.vertices_.size());
        // Integer numerators keep grid coordinates (and the origin) exact.
        mesh.vertices_.push_back({(i - n) * inv_n, (j - y_offset) * inv_n});
        if (i == n && j == y_offset) mesh.origin_vertex_ = gv(i, j);
      }
    }
  }

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!cell_kept(domain, n, i, j)) continue;
      const int bl = gv(i, j), br = gv(i + 1, j), tr = gv(i + 1, j + 1), tl = gv(i, j + 1);
      mesh.triangles_.push_back({bl, br, tr});
      mesh.cell_keys_.push_back({i, j, true});
      mesh.triangles_.push_back({bl, tr, tl});
      mesh.cell_keys_.push_back({i, j, false});
    }
  }

  const auto nt = mesh.triangles_.size();
  mesh.triangle_edges_.resize(nt);
  mesh.edge_signs_.resize(nt);
  std::unordered_map<uint64_t, int> edge_index;
  edge_index.reserve(nt * 2);
  const auto nv = static_cast<uint64_t>(mesh.vertices_.size());
  for (size_t t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles_[t];
    for (int k = 0; k < 3; ++k) {
      const int a = tri[(k + 1) % 3];
      const int b = tri[(k + 2) % 3];
      const uint64_t key = std::min(a, b) * nv + std::max(a, b);
      auto [it, inserted] = edge_index.try_emplace(key, static_cast<int>(mesh.edges_.size()));
      if (inserted) {
        const Point2 d = mesh.vertices_[b] - mesh.vertices_[a];
        const double len = norm(d);
        mesh.edges_.push_back({{a, b}, {static_cast<int>(t), kBoundary}, {d.y / len, -d.x / len}, len});
        mesh.edge_signs_[t][k] = 1;
      } else {
        Edge& e = mesh.edges_[it->second];
        if (e.cells[1] != kBoundary)
          throw MeshError(fmt::format("edge {} shared by more than two triangles", it->second));
        e.cells[1] = static_cast<int>(t);
        mesh.edge_signs_[t][k] = -1;
      }
      mesh.triangle_edges_[t][k] = it->second;
    }
  }

  mesh.boundary_vertex_.assign(mesh.vertices_.size(), 0);
  for (const Edge& e : mesh.edges_) {
    if (!e.on_boundary()) continue;
    ++mesh.num_boundary_edges_;
    mesh.boundary_vertex_[e.vertices[0]] = 1;
    mesh.boundary_vertex_[e.vertices[1]] = 1;
  }
  return mesh;
}

std::vector<int> parent_map(const Mesh& coarse, const Mesh& fine) {
  if (coarse.domain() != fine.domain())
    throw MeshError("parent_map: meshes cover different domains");
  if (fine.level() % coarse.level() != 0)
    throw MeshError(fmt::format("parent_map: level {} is not nested in level {}", fine.level(),
                                coarse.level()));
  const int ratio = fine.level() / coarse.level();
  const auto [nx, ny, y_offset] = grid_extent(coarse.domain(), coarse.level());
  (void)y_offset;

  // Coarse triangle lookup by (square, lower).
  std::vector<int> lookup(static_cast<size_t>(nx) * ny * 2, -1);
  for (int t = 0; t < coarse.num_triangles(); ++t) {
    const auto& key = coarse.cell_key(t);
    lookup[(static_cast<size_t>(key.j) * nx + key.i) * 2 + (key.lower ? 0 : 1)] = t;
  }

  std::vector<int> parent(fine.num_triangles());
  for (int t = 0; t < fine.num_triangles(); ++t) {
    const auto& key = fine.cell_key(t);
    const int ci = key.i / ratio, cj = key.j / ratio;
    // Centroid offset inside the coarse square in units of fine-cell thirds.
    const int cx = 3 * (key.i % ratio) + (key.lower ? 2 : 1);
    const int cy = 3 * (key.j % ratio) + (key.lower ? 1 : 2);
    const bool lower = cx > cy;
    const int p = lookup[(static_cast<size_t>(cj) * nx + ci) * 2 + (lower ? 0 : 1)];
    if (p < 0) throw MeshError(fmt::format("parent_map: fine triangle {} has no parent", t));
    parent[t] = p;
  }
  return parent;
}

RefinedMesh refine_uniform(const Mesh& mesh) {
  RefinedMesh out{generate_structured(mesh.domain(), 2 * mesh.level()), {}};
  out.parent = parent_map(mesh, out.mesh);
  return out;
}

std::vector<int> boundary_loop(const Mesh& mesh) {
  std::unordered_map<int, int> edge_from;  // start vertex -> boundary edge
  int first = -1;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    if (!edge.on_boundary()) continue;
    if (!edge_from.emplace(edge.vertices[0], e).second)
      throw MeshError(fmt::format("boundary vertex {} starts two boundary edges", edge.vertices[0]));
    if (first < 0 || edge.vertices[0] < mesh.edges()[first].vertices[0]) first = e;
  }
  if (first < 0) throw MeshError("mesh has no boundary edges");

  std::vector<int> loop;
  loop.reserve(edge_from.size());
  int e = first;
  do {
    loop.push_back(e);
    auto it = edge_from.find(mesh.edges()[e].vertices[1]);
    if (it == edge_from.end()) throw MeshError("boundary is not closed");
    e = it->second;
    if (loop.size() > edge_from.size()) throw MeshError("boundary loop does not close");
  } while (e != first);
  if (loop.size() != edge_from.size())
    throw MeshError(fmt::format("boundary splits into several loops ({} of {} edges reached)",
                                loop.size(), edge_from.size()));
  return loop;
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
  os << fmt::format("# {} n={} vertices={} triangles={} boundary_edges={}\n",
                    to_string(mesh.domain()), mesh.level(), mesh.num_vertices(),
                    mesh.num_triangles(), mesh.num_boundary_edges());
  for (const Point2& p : mesh.vertices()) os << fmt::format("v {:.17g} {:.17g}\n", p.x, p.y);
  for (const auto& t : mesh.triangles()) os << fmt::format("t {} {} {}\n", t[0], t[1], t[2]);
  for (int e : boundary_loop(mesh)) {
    const auto& v = mesh.edges()[e].vertices;
    os << fmt::format("b {} {}\n", v[0], v[1]);
  }
}

}  // namespace rtmixed
