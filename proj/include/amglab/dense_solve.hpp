#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "amglab/sparse.hpp"
#include "amglab/types.hpp"

namespace amglab {

using LinOp = std::function<Vector(const Vector&)>;

/// Cached Cholesky factorization of an SPD matrix (sparse or dense input).
/// Throws NotSpdError when a non-positive pivot is met.
class SpdSolver {
 public:
  explicit SpdSolver(const SparseMatrix& a);
  explicit SpdSolver(const DenseMatrix& a);
  ~SpdSolver();
  SpdSolver(SpdSolver&&) noexcept;
  SpdSolver& operator=(SpdSolver&&) noexcept;

  Index size() const;
  Vector solve(const Vector& b) const;
  DenseMatrix solve_dense(const DenseMatrix& b) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// LU with partial pivoting for matrices without an asserted symmetry.
/// Reports SingularError (with a condition estimate) for singular-to-tolerance
/// input.
class LuSolver {
 public:
  explicit LuSolver(const DenseMatrix& a, double rcond_floor = 1e-14);
  Vector solve(const Vector& b) const;
  DenseMatrix solve_dense(const DenseMatrix& b) const;
  double rcond() const { return rcond_; }
  double log_abs_det() const { return log_abs_det_; }

 private:
  Eigen::Index n_;
  DenseMatrix lu_;
  std::shared_ptr<void> decomp_;
  double rcond_ = 0.0;
  double log_abs_det_ = 0.0;
};

Vector solve_spd(const SparseMatrix& a, const Vector& b);
Vector solve_spd(const DenseMatrix& a, const Vector& b);

struct EigenPairs {
  Vector values;        // ascending
  DenseMatrix vectors;  // columns, B-orthonormal
};

enum class EigMode { smallest, full };

struct GenEigOptions {
  Index k = 0;  // ignored in full mode
  EigMode mode = EigMode::full;
  Index dense_threshold = 4096;
  double tol = 1e-10;
  int max_iter = 500;
  std::uint64_t seed = 1;
};

/// Generalized symmetric eigenproblem A x = lambda B x with B SPD. Below the
/// dense threshold B is assembled by probing apply_b on unit vectors and the
/// pair is reduced through a Cholesky factorization of B; above it a block
/// inverse iteration with B-inner-product orthogonalization is used, which
/// needs apply_binv.
EigenPairs gen_eig_sym(const SparseMatrix& a, const LinOp& apply_b,
                       const LinOp& apply_binv, const GenEigOptions& opts);

/// Dense pair convenience (always direct).
EigenPairs gen_eig_sym_dense(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace amglab
