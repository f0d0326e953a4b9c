#pragma once

#include <memory>
#include <optional>

#include "amglab/dense_solve.hpp"
#include "amglab/grid.hpp"
#include "amglab/sparse.hpp"

namespace amglab {

enum class SmootherKind {
  gs_forward,
  gs_backward,
  gs_symmetric,
  block_gs_redblack,
  f_relaxation,
  hb,
};

enum class FfMode { exact, gs };

struct SmootherSpec {
  SmootherSpec() = default;
  explicit SmootherSpec(SmootherKind k) : kind(k) {}

  SmootherKind kind = SmootherKind::gs_forward;
  Index block_size = 0;                   // block_gs_redblack
  bool reverse_order = false;             // block_gs_redblack: black first
  std::optional<Splitting> split;         // f_relaxation / hb
  double tau = 0.0;                       // hb; <= 0 selects 2*||S_A||_1
  FfMode ff_mode = FfMode::exact;         // f_relaxation / hb inner solver
};

/// Spec whose M is the transpose of the given one (forward <-> backward,
/// block sweep order reversed). For a cycle that pre-smooths with M and
/// post-smooths with M^T, the convergence identity pairs A with the
/// symmetrized smoother of the transposed spec.
SmootherSpec transposed(const SmootherSpec& spec);

SmootherKind smoother_kind_from_string(const std::string& s);
std::string to_string(SmootherKind k);

/// A smoother M for a fixed matrix A, exposed through its actions. The
/// symmetrized smoother Mt = M (M + M^T - A)^{-1} M^T is available both as
/// an inverse action (three-term formula) and as a forward action through
/// the cached factorization of the middle term. Instances are immutable
/// after construction and safe to share across threads.
class Smoother {
 public:
  Smoother(const SparseMatrix& a, const SmootherSpec& spec);

  const SparseMatrix& matrix() const { return a_; }
  const SmootherSpec& spec() const { return spec_; }
  Index size() const { return a_.rows(); }
  double hb_tau() const { return tau_; }

  Vector apply_minv(const Vector& r) const;
  Vector apply_minv_t(const Vector& r) const;

  /// Mt^{-1} r = M^{-1} r + M^{-T} (r - A M^{-1} r).
  Vector apply_msymm_inv(const Vector& r) const;
  /// Mt v, via two M applications and a solve with M + M^T - A.
  Vector apply_msymm(const Vector& v) const;

  /// Error propagation e <- (I - M^{-1} A) e, nu sweeps.
  Vector presmooth(const Vector& e, int nu = 1) const;
  /// Error propagation e <- (I - M^{-T} A) e, nu sweeps.
  Vector postsmooth(const Vector& e, int nu = 1) const;

  /// Sparse symmetrized smoother, available for the point GS kinds.
  SparseMatrix msymm_sparse() const;
  /// Dense symmetrized smoother by probing unit vectors.
  DenseMatrix msymm_dense() const;

 private:
  Vector apply_m(const Vector& v) const;
  Vector apply_mt(const Vector& v) const;
  Vector middle_solve(const Vector& v) const;
  SparseMatrix msymm_gs_sparse() const;

  SparseMatrix a_;
  SmootherSpec spec_;
  Vector diag_;
  std::shared_ptr<SpdSolver> middle_solver_;  // gs_symmetric middle factor

  // block_gs_redblack
  BlockPartition part_;
  std::vector<DenseMatrix> block_chol_;   // per-block Cholesky factors (L)
  std::vector<Index> block_order_;        // processing order (maybe reversed)
  std::vector<Index> block_pos_;          // block id -> position in order

  // f_relaxation / hb
  SparseMatrix a_ff_;
  std::unique_ptr<SpdSolver> ff_exact_;

  // hb (dense, permuted F-first)
  double tau_ = 0.0;
  DenseMatrix hb_m_;
  std::unique_ptr<SpdSolver> hb_middle_;
  std::unique_ptr<SpdSolver> hb_mff_chol_;
  DenseMatrix hb_mff_lower_;  // gs mode

  friend class TwoGridOperator;
};

}  // namespace amglab
