#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "amglab/dense_solve.hpp"
#include "amglab/grid.hpp"
#include "amglab/smoother.hpp"
#include "amglab/sparse.hpp"

namespace amglab {

enum class InterpKind {
  optimal,
  classical_optimal,
  ideal,
  generalized_ideal,
  least_squares,
};

std::string to_string(InterpKind k);

/// n x nc interpolation operator, dense or sparse, with provenance and the
/// associated splitting for classical forms (C block equal to identity).
class InterpMatrix {
 public:
  static InterpMatrix from_dense(DenseMatrix p, InterpKind kind,
                                 std::optional<Splitting> split = {});
  static InterpMatrix from_sparse(SparseMatrix p, InterpKind kind,
                                  std::optional<Splitting> split = {});

  Index n() const;
  Index nc() const;
  bool is_dense() const { return std::holds_alternative<DenseMatrix>(data_); }
  InterpKind kind() const { return kind_; }
  const std::optional<Splitting>& split() const { return split_; }

  Vector apply(const Vector& coarse) const;
  Vector apply_t(const Vector& fine) const;
  DenseMatrix to_dense() const;
  const SparseMatrix& sparse_data() const { return std::get<SparseMatrix>(data_); }
  const DenseMatrix& dense_data() const { return std::get<DenseMatrix>(data_); }

  /// Galerkin coarse matrix P^T A P (sparse result for sparse storage).
  SparseMatrix coarse_matrix(const SparseMatrix& a) const;

 private:
  std::variant<DenseMatrix, SparseMatrix> data_;
  InterpKind kind_ = InterpKind::optimal;
  std::optional<Splitting> split_;
};

struct OptimalInterp {
  InterpMatrix p;      // columns: nc smallest Mt-orthonormal eigenvectors
  double lambda_next;  // lambda_{nc+1}, +inf when nc == n
  EigenPairs pairs;    // all computed pairs (full spectrum on the dense path)
};

/// Interpolation achieving the minimal two-grid rate for the given smoother:
/// eigenvectors of A x = lambda Mt x for the nc smallest eigenvalues.
OptimalInterp optimal_interp(const SparseMatrix& a, const Smoother& smoother,
                             Index nc, GenEigOptions opts = {});

/// Post-scaling into the classical [W; I] form, W = P_f P_c^{-1}. Throws
/// SingularError when the C block of P is singular to tolerance.
InterpMatrix classical_scale(const InterpMatrix& p_opt, const Splitting& split);

/// Classical ideal interpolation [W*; I], W* = -A_ff^{-1} A_fc.
InterpMatrix ideal_interp(const SparseMatrix& a, const Splitting& split);

/// Generalized ideal interpolation (I - Pi_A(S)) Z for a complement basis S
/// and any full-rank Z.
InterpMatrix generalized_ideal(const SparseMatrix& a, const DenseMatrix& s,
                               const DenseMatrix& z);

/// Row-wise weighted least squares fit of the test vectors over the given
/// interpolatory sets. Rank-deficient local systems are regularized with a
/// ridge of 1e-12 times the Gram trace.
InterpMatrix ls_interp(const std::vector<Vector>& test_vectors,
                       const Vector& weights, const CoarsePattern& pattern,
                       const Splitting& split);

}  // namespace amglab
