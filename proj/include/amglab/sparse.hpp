#pragma once

#include <span>
#include <vector>

#include "amglab/types.hpp"

namespace amglab {

struct Triplet {
  Index row;
  Index col;
  double value;
};

/// CSR sparse matrix. Column indices are sorted and unique within each row.
/// Values are immutable after construction except through the named editing
/// helpers, which preserve the invariants.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(Index rows, Index cols)
      : n_rows_(rows), n_cols_(cols), row_offsets_(rows + 1, 0) {}

  static SparseMatrix identity(Index n);
  static SparseMatrix diagonal(const Vector& d);
  /// Duplicate entries are summed (in input order).
  static SparseMatrix from_triplets(Index rows, Index cols,
                                    std::span<const Triplet> entries);
  static SparseMatrix from_dense(const DenseMatrix& m, double drop_tol = 0.0);

  Index rows() const { return n_rows_; }
  Index cols() const { return n_cols_; }
  Index nnz() const { return static_cast<Index>(col_indices_.size()); }

  const std::vector<Index>& row_offsets() const { return row_offsets_; }
  const std::vector<Index>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }

  double coeff(Index i, Index j) const;

  /// y = A x with per-row left-to-right accumulation.
  Vector operator*(const Vector& x) const;
  /// y = A^T x, deterministic scatter in row order.
  Vector transpose_times(const Vector& x) const;

  SparseMatrix transpose() const;
  /// A(rows, cols) with local re-indexing following the order of the given
  /// index lists.
  SparseMatrix submatrix(std::span<const Index> rows,
                         std::span<const Index> cols) const;
  DenseMatrix to_dense() const;
  DenseMatrix times_dense(const DenseMatrix& x) const;

  Vector diagonal_vector() const;
  /// Strict triangle plus full diagonal.
  SparseMatrix lower_triangle() const;
  SparseMatrix upper_triangle() const;

  SparseMatrix scaled(double s) const;
  bool is_symmetric(double tol = 0.0) const;
  /// (A + A^T)/2 with exact pairing, so the result compares bitwise
  /// symmetric.
  SparseMatrix symmetrized() const;

  double one_norm() const;  // max column abs sum
  double inf_norm() const;  // max row abs sum

  friend SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b,
                          double alpha, double beta);

 private:
  Index n_rows_ = 0;
  Index n_cols_ = 0;
  std::vector<Index> row_offsets_;
  std::vector<Index> col_indices_;
  std::vector<double> values_;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b,
                 double alpha = 1.0, double beta = 1.0);

/// Galerkin triple product P^T A P, exact (no dropping) and symmetrized.
SparseMatrix galerkin(const SparseMatrix& p, const SparseMatrix& a);
DenseMatrix galerkin(const DenseMatrix& p, const SparseMatrix& a);

}  // namespace amglab
