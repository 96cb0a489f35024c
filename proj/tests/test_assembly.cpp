#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "rtmixed/assembly.hpp"
#include "rtmixed/error.hpp"
#include "rtmixed/solver.hpp"

using namespace rtmixed;

namespace {

const BoundaryData kZero = BoundaryData::smooth([](Point2) { return 0.0; });

// RT0 mass matrix from the second moments of the triangle:
//   int_K (x - a).(x - b) = |K| (c - a).(c - b) + |K| / 12 sum_k |p_k - c|^2.
Eigen::MatrixXd mass_oracle(const Mesh& m) {
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(m.num_edges(), m.num_edges());
  for (int t = 0; t < m.num_triangles(); ++t) {
    const Triangle p = m.triangle(t);
    const Point2 c = centroid(p);
    const double area = signed_area(p);
    double spread = 0.0;
    for (const Point2& v : p) spread += dot(v - c, v - c);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double moment = area * (dot(c - p[i], c - p[j]) + spread / 12.0);
        const double s = m.edge_signs(t)[i] * m.edge_signs(t)[j];
        mass(m.triangle_edges(t)[i], m.triangle_edges(t)[j]) += s * moment / (4.0 * area * area);
      }
    }
  }
  return mass;
}

}  // namespace

TEST_CASE("RT0 mass matrix matches the closed-form oracle and is SPD") {
  for (Domain d : {Domain::Rectangle, Domain::LShape}) {
    for (int n : {1, 2, 3}) {
      const Mesh m = generate_structured(d, n);
      const MixedSystem sys = assemble_mixed(m, kZero);
      const Eigen::MatrixXd mass = Eigen::MatrixXd(sys.mass);
      CHECK((mass - mass_oracle(m)).cwiseAbs().maxCoeff() < 1e-13);
      CHECK((mass - mass.transpose()).cwiseAbs().maxCoeff() == 0.0);
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(mass);
      CHECK(eig.eigenvalues().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("Rayleigh quotients of the mass matrix are positive on larger meshes") {
  const Mesh m = generate_structured(Domain::LShape, 16);
  const MixedSystem sys = assemble_mixed(m, kZero);
  std::mt19937 rng(3);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 20; ++trial) {
    Vector x(sys.num_fluxes());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = dist(rng);
    CHECK(x.dot(sys.mass * x) > 0.0);
  }
}

TEST_CASE("divergence matrix: unit-flux columns and the divergence theorem") {
  for (Domain d : {Domain::Rectangle, Domain::LShape}) {
    const Mesh m = generate_structured(d, 4);
    const MixedSystem sys = assemble_mixed(m, kZero);
    const Eigen::MatrixXd b = Eigen::MatrixXd(sys.divergence);
    REQUIRE(b.rows() == m.num_triangles());
    REQUIRE(b.cols() == m.num_edges());
    for (int e = 0; e < m.num_edges(); ++e) {
      const Edge& edge = m.edges()[e];
      int nonzeros = 0;
      for (int t = 0; t < m.num_triangles(); ++t) {
        if (b(t, e) != 0.0) {
          ++nonzeros;
          CHECK(std::abs(b(t, e)) == 1.0);
        }
      }
      CHECK(nonzeros == (edge.on_boundary() ? 1 : 2));
      CHECK(b.col(e).sum() == (edge.on_boundary() ? 1.0 : 0.0));
    }
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector c(m.num_edges());
    double boundary_flux = 0.0;
    for (int e = 0; e < m.num_edges(); ++e) {
      c[e] = dist(rng);
      if (m.edges()[e].on_boundary()) boundary_flux += c[e];
    }
    CHECK((sys.divergence * c).sum() == doctest::Approx(boundary_flux).epsilon(1e-12));
  }
}

TEST_CASE("loads: boundary edge means of g and cell integrals of f") {
  const Mesh m = generate_structured(Domain::Rectangle, 4);
  const BoundaryData g = BoundaryData::smooth([](Point2 x) { return 1.0 + 2.0 * x.x + x.y; });
  const MixedSystem sys = assemble_mixed(m, g, [](Point2 x) { return x.x * x.y; });
  for (int e = 0; e < m.num_edges(); ++e) {
    const Edge& edge = m.edges()[e];
    if (edge.on_boundary()) {
      const Point2 mid = 0.5 * (m.vertices()[edge.vertices[0]] + m.vertices()[edge.vertices[1]]);
      CHECK(sys.boundary_load[e] == doctest::Approx(g.g(mid)).epsilon(1e-13));
    } else {
      CHECK(sys.boundary_load[e] == 0.0);
    }
  }
  for (int t = 0; t < m.num_triangles(); ++t) {
    // Degree-2 integrand: exact with the three-point rule.
    const Triangle tri = m.triangle(t);
    const double oracle = integrate_triangle([](Point2 x) { return x.x * x.y; }, tri, triangle_rule(2));
    CHECK(sys.source_load[t] == doctest::Approx(oracle).epsilon(1e-13));
  }
}

TEST_CASE("block matrix layout and symmetry") {
  const Mesh m = generate_structured(Domain::LShape, 2);
  const MixedSystem sys = assemble_mixed(m, kZero);
  const Eigen::MatrixXd a = Eigen::MatrixXd(sys.block_matrix());
  const int nf = sys.num_fluxes(), nc = sys.num_cells();
  REQUIRE(a.rows() == nf + nc);
  CHECK((a - a.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.bottomRightCorner(nc, nc).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.bottomLeftCorner(nc, nf) - Eigen::MatrixXd(sys.divergence)).cwiseAbs().maxCoeff() == 0.0);
  // Nonsingular: RT0 x DG0 satisfies the inf-sup condition.
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  CHECK(lu.rank() == nf + nc);
}

TEST_CASE("P1 Dirichlet system reproduces linear functions") {
  for (Domain d : {Domain::Rectangle, Domain::LShape}) {
    const Mesh m = generate_structured(d, 8);
    const auto lin = [](Point2 x) { return 0.3 - x.x + 4.0 * x.y; };
    std::vector<double> bv(m.num_vertices(), 0.0);
    for (int v = 0; v < m.num_vertices(); ++v)
      if (m.is_boundary_vertex(v)) bv[v] = lin(m.vertices()[v]);
    const P1System sys = assemble_p1_dirichlet(m, bv);
    const Eigen::MatrixXd k = Eigen::MatrixXd(sys.stiffness);
    CHECK((k - k.transpose()).cwiseAbs().maxCoeff() < 1e-15);
    const std::vector<double> nodal = sys.expand(solve_spd(sys).x);
    for (int v = 0; v < m.num_vertices(); ++v)
      CHECK(nodal[v] == doctest::Approx(lin(m.vertices()[v])).epsilon(1e-10));
  }
  const Mesh m = generate_structured(Domain::Rectangle, 2);
  CHECK_THROWS_AS(assemble_p1_dirichlet(m, std::vector<double>(3, 0.0)), DomainError);
}

TEST_CASE("coordinate dump lists every stored entry") {
  const Mesh m = generate_structured(Domain::Rectangle, 1);
  const SparseMatrix a = assemble_mixed(m, kZero).block_matrix();
  std::ostringstream os;
  write_coordinate(os, a);
  std::istringstream is(os.str());
  std::string marker;
  long rows = 0, cols = 0, nnz = 0;
  is >> marker >> rows >> cols >> nnz;
  CHECK(marker == "%");
  CHECK(rows == a.rows());
  CHECK(cols == a.cols());
  CHECK(nnz == a.nonZeros());
  Eigen::MatrixXd back = Eigen::MatrixXd::Zero(rows, cols);
  int r = 0, c = 0, count = 0;
  double v = 0.0;
  while (is >> r >> c >> v) {
    back(r, c) = v;
    ++count;
  }
  CHECK(count == nnz);
  CHECK((back - Eigen::MatrixXd(a)).cwiseAbs().maxCoeff() == 0.0);
}
