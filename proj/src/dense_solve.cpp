#include "amglab/dense_solve.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <cmath>

#include "amglab/rng.hpp"

namespace amglab {

namespace {

Eigen::SparseMatrix<double> to_eigen(const SparseMatrix& a) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(a.nnz());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = a.row_offsets()[i]; k < a.row_offsets()[i + 1]; ++k)
      trips.emplace_back(i, a.col_indices()[k], a.values()[k]);
  Eigen::SparseMatrix<double> m(a.rows(), a.cols());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

}  // namespace

struct SpdSolver::Impl {
  Index n = 0;
  // exactly one of the two is active
  std::unique_ptr<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>> sparse;
  std::unique_ptr<Eigen::LLT<DenseMatrix>> dense;
};

SpdSolver::SpdSolver(const SparseMatrix& a) : impl_(std::make_unique<Impl>()) {
  if (a.rows() != a.cols()) throw DimensionError("SpdSolver: matrix not square");
  impl_->n = a.rows();
  impl_->sparse =
      std::make_unique<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>>();
  impl_->sparse->compute(to_eigen(a));
  if (impl_->sparse->info() != Eigen::Success)
    throw NotSpdError("SpdSolver: sparse Cholesky failed (matrix not SPD)");
}

SpdSolver::SpdSolver(const DenseMatrix& a) : impl_(std::make_unique<Impl>()) {
  if (a.rows() != a.cols()) throw DimensionError("SpdSolver: matrix not square");
  impl_->n = static_cast<Index>(a.rows());
  impl_->dense = std::make_unique<Eigen::LLT<DenseMatrix>>(a);
  if (impl_->dense->info() != Eigen::Success)
    throw NotSpdError("SpdSolver: dense Cholesky failed (matrix not SPD)");
}

SpdSolver::~SpdSolver() = default;
SpdSolver::SpdSolver(SpdSolver&&) noexcept = default;
SpdSolver& SpdSolver::operator=(SpdSolver&&) noexcept = default;

Index SpdSolver::size() const { return impl_->n; }

Vector SpdSolver::solve(const Vector& b) const {
  if (static_cast<Index>(b.size()) != impl_->n)
    throw DimensionError("SpdSolver::solve: dimension mismatch");
  return impl_->sparse ? Vector(impl_->sparse->solve(b))
                       : Vector(impl_->dense->solve(b));
}

DenseMatrix SpdSolver::solve_dense(const DenseMatrix& b) const {
  if (static_cast<Index>(b.rows()) != impl_->n)
    throw DimensionError("SpdSolver::solve_dense: dimension mismatch");
  return impl_->sparse ? DenseMatrix(impl_->sparse->solve(b))
                       : DenseMatrix(impl_->dense->solve(b));
}

LuSolver::LuSolver(const DenseMatrix& a, double rcond_floor)
    : n_(a.rows()) {
  if (a.rows() != a.cols()) throw DimensionError("LuSolver: matrix not square");
  auto lu = std::make_shared<Eigen::PartialPivLU<DenseMatrix>>(a);
  decomp_ = lu;
  const Vector diag = lu->matrixLU().diagonal().cwiseAbs();
  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  log_abs_det_ = 0.0;
  for (Eigen::Index i = 0; i < n_; ++i) {
    dmax = std::max(dmax, diag[i]);
    dmin = std::min(dmin, diag[i]);
    log_abs_det_ += std::log(std::max(diag[i], 1e-300));
  }
  rcond_ = (dmax > 0) ? dmin / dmax : 0.0;
  if (!(rcond_ > rcond_floor))
    throw SingularError("LuSolver: matrix singular to tolerance",
                        rcond_ > 0 ? 1.0 / rcond_ : std::numeric_limits<double>::infinity());
}

Vector LuSolver::solve(const Vector& b) const {
  auto lu = std::static_pointer_cast<Eigen::PartialPivLU<DenseMatrix>>(decomp_);
  return lu->solve(b);
}

DenseMatrix LuSolver::solve_dense(const DenseMatrix& b) const {
  auto lu = std::static_pointer_cast<Eigen::PartialPivLU<DenseMatrix>>(decomp_);
  return lu->solve(b);
}

Vector solve_spd(const SparseMatrix& a, const Vector& b) {
  return SpdSolver(a).solve(b);
}

Vector solve_spd(const DenseMatrix& a, const Vector& b) {
  return SpdSolver(a).solve(b);
}

EigenPairs gen_eig_sym_dense(const DenseMatrix& a, const DenseMatrix& b) {
  Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> solver(a, b,
                                                               Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success)
    throw NotSpdError("gen_eig_sym_dense: reduction failed (B not SPD?)");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

// B-orthonormalize columns of x in place (modified Gram-Schmidt, two passes).
void b_orthonormalize(DenseMatrix& x, const LinOp& apply_b) {
  const Eigen::Index m = x.cols();
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = 0; j < m; ++j) {
      Vector bxj = apply_b(x.col(j));
      for (Eigen::Index i = 0; i < j; ++i) {
        const double proj = x.col(i).dot(bxj);
        x.col(j) -= proj * x.col(i);
        if (i + 1 == j || pass == 1) bxj = apply_b(x.col(j));
      }
      bxj = apply_b(x.col(j));
      const double nrm = std::sqrt(std::max(x.col(j).dot(bxj), 0.0));
      if (nrm > 0) x.col(j) /= nrm;
    }
  }
}

EigenPairs gen_eig_iterative(const SparseMatrix& a, const LinOp& apply_b,
                             const LinOp& apply_binv, const GenEigOptions& opts) {
  const Index n = a.rows();
  const Index k = std::min<Index>(opts.k, n);
  const Index block = std::min<Index>(n, k + std::max<Index>(4, k / 4));

  const double norm_a = a.inf_norm();
  SpdSolver a_solver(a);  // SPD system matrix assumed for the iterative path

  Rng rng(opts.seed);
  DenseMatrix x(n, block);
  for (Index j = 0; j < block; ++j)
    for (Index i = 0; i < n; ++i) x(i, j) = rng.uniform(-1.0, 1.0);
  b_orthonormalize(x, apply_b);

  Vector ritz = Vector::Zero(block);
  double worst_residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_iter; ++it) {
    // inverse iteration step on the pencil: y = A^{-1} B x
    DenseMatrix y(n, block);
    for (Index j = 0; j < block; ++j) y.col(j) = a_solver.solve(apply_b(x.col(j)));
    b_orthonormalize(y, apply_b);

    // Rayleigh-Ritz in the B-orthonormal basis
    DenseMatrix ay(n, block), by(n, block);
    for (Index j = 0; j < block; ++j) {
      ay.col(j) = a * y.col(j);
      by.col(j) = apply_b(y.col(j));
    }
    DenseMatrix ar = y.transpose() * ay;
    ar = 0.5 * (ar + ar.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<DenseMatrix> small(ar);
    x = y * small.eigenvectors();
    ritz = small.eigenvalues();

    worst_residual = 0.0;
    for (Index j = 0; j < k; ++j) {
      const Vector r = a * x.col(j) - ritz[j] * apply_b(x.col(j));
      worst_residual = std::max(
          worst_residual, r.norm() / (norm_a * std::max(x.col(j).norm(), 1e-300)));
    }
    if (worst_residual <= opts.tol) break;
  }
  if (worst_residual > opts.tol)
    throw ConvergenceError("gen_eig_sym: block inverse iteration stalled at residual " +
                           std::to_string(worst_residual));

  (void)apply_binv;
  EigenPairs out;
  out.values = ritz.head(k);
  out.vectors = x.leftCols(k);
  return out;
}

}  // namespace

EigenPairs gen_eig_sym(const SparseMatrix& a, const LinOp& apply_b,
                       const LinOp& apply_binv, const GenEigOptions& opts) {
  if (a.rows() != a.cols()) throw DimensionError("gen_eig_sym: matrix not square");
  const Index n = a.rows();
  const Index k = opts.mode == EigMode::full ? n : opts.k;
  if (k > n) throw DimensionError("gen_eig_sym: k exceeds dimension");

  if (n <= opts.dense_threshold) {
    DenseMatrix b(n, n);
    Vector e = Vector::Zero(n);
    for (Index j = 0; j < n; ++j) {
      e[j] = 1.0;
      b.col(j) = apply_b(e);
      e[j] = 0.0;
    }
    b = 0.5 * (b + b.transpose()).eval();
    EigenPairs full = gen_eig_sym_dense(a.to_dense(), b);
    if (opts.mode == EigMode::full) return full;
    return {full.values.head(k), full.vectors.leftCols(k)};
  }
  if (opts.mode == EigMode::full)
    throw DimensionError("gen_eig_sym: full mode above the dense threshold");
  GenEigOptions o = opts;
  o.k = k;
  return gen_eig_iterative(a, apply_b, apply_binv, o);
}

}  // namespace amglab
