#include "rtmixed/solver.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>
#include <fmt/format.h>

#include "rtmixed/error.hpp"
#include "rtmixed/kernels.hpp"

namespace rtmixed {

namespace {

using RowMajorMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

class Csr {
 public:
  explicit Csr(const SparseMatrix& a) : m_(a) { m_.makeCompressed(); }

  void apply(const Vector& x, Vector& y) const {
    kernels::CsrView view{static_cast<int>(m_.rows()),
                          {m_.outerIndexPtr(), static_cast<size_t>(m_.rows()) + 1},
                          {m_.innerIndexPtr(), static_cast<size_t>(m_.nonZeros())},
                          {m_.valuePtr(), static_cast<size_t>(m_.nonZeros())}};
    kernels::spmv(view, span(x), span(y));
  }

  static std::span<const double> span(const Vector& v) { return {v.data(), static_cast<size_t>(v.size())}; }
  static std::span<double> span(Vector& v) { return {v.data(), static_cast<size_t>(v.size())}; }

 private:
  RowMajorMatrix m_;
};

double kdot(const Vector& a, const Vector& b) { return kernels::dot(Csr::span(a), Csr::span(b)); }
void kaxpy(double s, const Vector& x, Vector& y) { kernels::axpy(s, Csr::span(x), Csr::span(y)); }

// Preconditioned MINRES for symmetric A and SPD preconditioner P; `precond`
// computes z = P^-1 r. Iterates until the certified true residual meets tol.
template <class Precond>
std::pair<Vector, int> minres(const Csr& a, const Vector& b, const Precond& precond,
                              double tol, int max_iter, double& residual) {
  const Eigen::Index n = b.size();
  const double bnorm = b.norm();
  Vector x = Vector::Zero(n);
  Vector v_old = Vector::Zero(n), v = b, v_new(n);
  Vector w_old = Vector::Zero(n), w = Vector::Zero(n), w_new(n);
  Vector z = precond(v), az(n), r(n);
  double gamma_old = 1.0;
  double gamma = std::sqrt(kdot(z, v));
  const double gamma0 = gamma;
  double eta = gamma;
  double s_old = 0.0, s = 0.0, c_old = 1.0, c = 1.0;
  double target = tol;

  for (int it = 1; it <= max_iter; ++it) {
    z /= gamma;
    a.apply(z, az);
    const double delta = kdot(az, z);
    v_new = az;
    kaxpy(-delta / gamma, v, v_new);
    kaxpy(-gamma / gamma_old, v_old, v_new);
    Vector z_new = precond(v_new);
    const double gamma_new = std::sqrt(std::max(kdot(z_new, v_new), 0.0));

    const double a0 = c * delta - c_old * s * gamma;
    const double a1 = std::hypot(a0, gamma_new);
    const double a2 = s * delta + c_old * c * gamma;
    const double a3 = s_old * gamma;
    const double c_new = a0 / a1, s_new = gamma_new / a1;

    w_new = z;
    kaxpy(-a3, w_old, w_new);
    kaxpy(-a2, w, w_new);
    w_new /= a1;
    kaxpy(c_new * eta, w_new, x);
    eta = -s_new * eta;

    std::swap(v_old, v);
    std::swap(v, v_new);
    std::swap(w_old, w);
    std::swap(w, w_new);
    z = std::move(z_new);
    gamma_old = gamma;
    gamma = gamma_new;
    c_old = c;
    c = c_new;
    s_old = s;
    s = s_new;

    if (std::abs(eta) <= target * gamma0 || gamma == 0.0) {
      a.apply(x, r);
      residual = (b - r).norm() / bnorm;
      if (residual <= tol) return {std::move(x), it};
      if (gamma == 0.0) break;
      target *= 0.1;
    }
  }
  a.apply(x, r);
  residual = (b - r).norm() / bnorm;
  throw SolverError(fmt::format("MINRES stopped after {} iterations at relative residual {:.3e}",
                                max_iter, residual),
                    residual);
}

SpdSolution pcg(const Csr& a, const Vector& diag, const Vector& b, double tol, int max_iter) {
  const double bnorm = b.norm();
  Vector x = Vector::Zero(b.size());
  Vector r = b, z = r.cwiseQuotient(diag), p = z, ap(b.size());
  double rz = kdot(r, z);
  double target = tol;
  for (int it = 1; it <= max_iter; ++it) {
    a.apply(p, ap);
    const double step = rz / kdot(p, ap);
    kaxpy(step, p, x);
    kaxpy(-step, ap, r);
    if (r.norm() <= target * bnorm) {
      a.apply(x, ap);
      const double res = (b - ap).norm() / bnorm;
      if (res <= tol) return {std::move(x), res, it};
      target *= 0.1;
    }
    z = r.cwiseQuotient(diag);
    const double rz_new = kdot(r, z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  a.apply(x, ap);
  const double res = (b - ap).norm() / bnorm;
  throw SolverError(
      fmt::format("CG stopped after {} iterations at relative residual {:.3e}", max_iter, res), res);
}

void certify(double residual, double tol, std::string_view what) {
  if (!(residual <= tol))
    throw SolverError(fmt::format("{}: relative residual {:.3e} exceeds tolerance {:.1e}", what,
                                  residual, tol),
                      residual);
}

}  // namespace

SolverMethod parse_solver_method(std::string_view name) {
  if (name == "direct") return SolverMethod::Direct;
  if (name == "iterative") return SolverMethod::Iterative;
  throw Error(fmt::format("unknown solver '{}' (expected direct or iterative)", name));
}

double relative_residual(const SparseMatrix& a, const Vector& x, const Vector& b) {
  const double bnorm = b.norm();
  const double rnorm = (b - a * x).norm();
  if (bnorm == 0.0) return rnorm;
  return rnorm / bnorm;
}

double relative_residual(const MixedSystem& system, const Vector& sigma, const Vector& u) {
  const Vector r1 = system.boundary_load - system.mass * sigma - system.divergence.transpose() * u;
  const Vector r2 = -system.source_load - system.divergence * sigma;
  const double bnorm =
      std::sqrt(system.boundary_load.squaredNorm() + system.source_load.squaredNorm());
  const double rnorm = std::sqrt(r1.squaredNorm() + r2.squaredNorm());
  return bnorm == 0.0 ? rnorm : rnorm / bnorm;
}

MixedSolution solve_mixed(const MixedSystem& system, const SolverConfig& cfg) {
  if (!(cfg.tolerance > 0.0)) throw Error("solver tolerance must be positive");
  const int nf = system.num_fluxes();
  const int nc = system.num_cells();
  const Vector rhs = system.block_rhs();
  MixedSolution sol;
  if (rhs.norm() == 0.0) {
    sol.sigma = Vector::Zero(nf);
    sol.u = Vector::Zero(nc);
    return sol;
  }

  Vector x;
  if (cfg.method == SolverMethod::Direct) {
    SparseMatrix block = system.block_matrix();
    block.makeCompressed();
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu(block);
    if (lu.info() != Eigen::Success)
      throw SolverError("sparse LU factorization of the saddle-point matrix failed", 1.0);
    x = lu.solve(rhs);
    sol.iterations = 1;
  } else {
    const Vector mass_diag = system.mass.diagonal();
    const SparseMatrix& b = system.divergence;
    const SparseMatrix schur = b * mass_diag.cwiseInverse().asDiagonal() * b.transpose();
    Eigen::SimplicialLLT<SparseMatrix> schur_factor(schur);
    if (schur_factor.info() != Eigen::Success)
      throw SolverError("Schur complement preconditioner is not positive definite", 1.0);
    const auto precond = [&](const Vector& r) {
      Vector z(r.size());
      z.head(nf) = r.head(nf).cwiseQuotient(mass_diag);
      z.tail(nc) = schur_factor.solve(r.tail(nc));
      return z;
    };
    double residual = 0.0;
    auto [xs, iters] = minres(Csr(system.block_matrix()), rhs, precond, cfg.tolerance,
                              cfg.max_iterations, residual);
    x = std::move(xs);
    sol.iterations = iters;
  }
  sol.sigma = x.head(nf);
  sol.u = x.tail(nc);
  sol.residual = relative_residual(system, sol.sigma, sol.u);
  certify(sol.residual, cfg.tolerance, "mixed solve");
  return sol;
}

struct SpdSolver::Factor {
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> llt;
};

SpdSolver::SpdSolver(SparseMatrix a, SolverConfig cfg) : a_(std::move(a)), cfg_(cfg) {
  if (!(cfg_.tolerance > 0.0)) throw Error("solver tolerance must be positive");
  a_.makeCompressed();
  if (cfg_.method == SolverMethod::Direct) {
    factor_ = std::make_unique<Factor>();
    factor_->llt.compute(a_);
    if (factor_->llt.info() != Eigen::Success)
      throw SolverError("sparse Cholesky factorization failed (matrix not SPD?)", 1.0);
  }
}

SpdSolver::~SpdSolver() = default;
SpdSolver::SpdSolver(SpdSolver&&) noexcept = default;
SpdSolver& SpdSolver::operator=(SpdSolver&&) noexcept = default;

SpdSolution SpdSolver::solve(const Vector& b) const {
  if (b.norm() == 0.0) return {Vector::Zero(b.size()), 0.0, 0};
  SpdSolution sol;
  if (factor_) {
    sol.x = factor_->llt.solve(b);
    sol.iterations = 1;
  } else {
    sol = pcg(Csr(a_), a_.diagonal(), b, cfg_.tolerance, cfg_.max_iterations);
  }
  sol.residual = relative_residual(a_, sol.x, b);
  certify(sol.residual, cfg_.tolerance, "SPD solve");
  return sol;
}

SpdSolution solve_spd(const SparseMatrix& a, const Vector& b, const SolverConfig& cfg) {
  if (b.norm() == 0.0) return {Vector::Zero(b.size()), 0.0, 0};
  return SpdSolver(a, cfg).solve(b);
}

}  // namespace rtmixed
