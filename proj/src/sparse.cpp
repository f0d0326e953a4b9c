#include "amglab/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace amglab {

namespace {

void check(bool ok, const char* what) {
  if (!ok) throw DimensionError(what);
}

}  // namespace

SparseMatrix SparseMatrix::identity(Index n) {
  SparseMatrix m(n, n);
  m.col_indices_.resize(n);
  m.values_.assign(n, 1.0);
  for (Index i = 0; i < n; ++i) {
    m.row_offsets_[i] = i;
    m.col_indices_[i] = i;
  }
  m.row_offsets_[n] = n;
  return m;
}

SparseMatrix SparseMatrix::diagonal(const Vector& d) {
  const Index n = static_cast<Index>(d.size());
  SparseMatrix m = identity(n);
  for (Index i = 0; i < n; ++i) m.values_[i] = d[i];
  return m;
}

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols,
                                         std::span<const Triplet> entries) {
  SparseMatrix m(rows, cols);
  std::vector<Index> count(rows, 0);
  for (const auto& t : entries) {
    check(t.row >= 0 && t.row < rows && t.col >= 0 && t.col < cols,
          "from_triplets: entry out of range");
    ++count[t.row];
  }
  std::vector<Index> start(rows + 1, 0);
  for (Index i = 0; i < rows; ++i) start[i + 1] = start[i] + count[i];

  std::vector<Index> cursor(start.begin(), start.end() - 1);
  std::vector<Index> cols_tmp(entries.size());
  std::vector<double> vals_tmp(entries.size());
  for (const auto& t : entries) {
    const Index at = cursor[t.row]++;
    cols_tmp[at] = t.col;
    vals_tmp[at] = t.value;
  }

  m.row_offsets_.assign(rows + 1, 0);
  for (Index i = 0; i < rows; ++i) {
    const Index lo = start[i], hi = start[i + 1];
    std::vector<Index> order(hi - lo);
    for (Index k = 0; k < hi - lo; ++k) order[k] = lo + k;
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return cols_tmp[a] < cols_tmp[b]; });
    Index prev = -1;
    for (Index idx : order) {
      if (cols_tmp[idx] == prev) {
        m.values_.back() += vals_tmp[idx];
      } else {
        m.col_indices_.push_back(cols_tmp[idx]);
        m.values_.push_back(vals_tmp[idx]);
        prev = cols_tmp[idx];
      }
    }
    m.row_offsets_[i + 1] = static_cast<Index>(m.col_indices_.size());
  }
  return m;
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& d, double drop_tol) {
  SparseMatrix m(static_cast<Index>(d.rows()), static_cast<Index>(d.cols()));
  for (Index i = 0; i < m.n_rows_; ++i) {
    for (Index j = 0; j < m.n_cols_; ++j) {
      const double v = d(i, j);
      if (std::abs(v) > drop_tol || (drop_tol == 0.0 && v != 0.0)) {
        m.col_indices_.push_back(j);
        m.values_.push_back(v);
      }
    }
    m.row_offsets_[i + 1] = static_cast<Index>(m.col_indices_.size());
  }
  return m;
}

double SparseMatrix::coeff(Index i, Index j) const {
  check(i >= 0 && i < n_rows_ && j >= 0 && j < n_cols_, "coeff: out of range");
  const auto begin = col_indices_.begin() + row_offsets_[i];
  const auto end = col_indices_.begin() + row_offsets_[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return values_[it - col_indices_.begin()];
}

Vector SparseMatrix::operator*(const Vector& x) const {
  check(static_cast<Index>(x.size()) == n_cols_, "spmv: dimension mismatch");
  Vector y(n_rows_);
  for (Index i = 0; i < n_rows_; ++i) {
    double acc = 0.0;
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      acc += values_[k] * x[col_indices_[k]];
    y[i] = acc;
  }
  return y;
}

Vector SparseMatrix::transpose_times(const Vector& x) const {
  check(static_cast<Index>(x.size()) == n_rows_, "spmv^T: dimension mismatch");
  Vector y = Vector::Zero(n_cols_);
  for (Index i = 0; i < n_rows_; ++i)
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      y[col_indices_[k]] += values_[k] * x[i];
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(n_cols_, n_rows_);
  std::vector<Index> count(n_cols_, 0);
  for (Index c : col_indices_) ++count[c];
  for (Index j = 0; j < n_cols_; ++j) t.row_offsets_[j + 1] = t.row_offsets_[j] + count[j];
  t.col_indices_.resize(col_indices_.size());
  t.values_.resize(values_.size());
  std::vector<Index> cursor(t.row_offsets_.begin(), t.row_offsets_.end() - 1);
  for (Index i = 0; i < n_rows_; ++i) {
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const Index at = cursor[col_indices_[k]]++;
      t.col_indices_[at] = i;  // rows visited in order -> sorted
      t.values_[at] = values_[k];
    }
  }
  return t;
}

SparseMatrix SparseMatrix::submatrix(std::span<const Index> rows,
                                     std::span<const Index> cols) const {
  std::vector<Index> col_map(n_cols_, -1);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    check(cols[j] >= 0 && cols[j] < n_cols_, "submatrix: column out of range");
    check(col_map[cols[j]] < 0, "submatrix: duplicate column index");
    col_map[cols[j]] = static_cast<Index>(j);
  }
  SparseMatrix s(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  std::vector<std::pair<Index, double>> row_buf;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Index i = rows[r];
    check(i >= 0 && i < n_rows_, "submatrix: row out of range");
    row_buf.clear();
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const Index jc = col_map[col_indices_[k]];
      if (jc >= 0) row_buf.emplace_back(jc, values_[k]);
    }
    std::sort(row_buf.begin(), row_buf.end());
    for (const auto& [j, v] : row_buf) {
      s.col_indices_.push_back(j);
      s.values_.push_back(v);
    }
    s.row_offsets_[r + 1] = static_cast<Index>(s.col_indices_.size());
  }
  return s;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d = DenseMatrix::Zero(n_rows_, n_cols_);
  for (Index i = 0; i < n_rows_; ++i)
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      d(i, col_indices_[k]) = values_[k];
  return d;
}

DenseMatrix SparseMatrix::times_dense(const DenseMatrix& x) const {
  check(static_cast<Index>(x.rows()) == n_cols_, "times_dense: dimension mismatch");
  DenseMatrix y = DenseMatrix::Zero(n_rows_, x.cols());
  for (Index i = 0; i < n_rows_; ++i)
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      y.row(i) += values_[k] * x.row(col_indices_[k]);
  return y;
}

Vector SparseMatrix::diagonal_vector() const {
  Vector d = Vector::Zero(std::min(n_rows_, n_cols_));
  for (Index i = 0; i < static_cast<Index>(d.size()); ++i) d[i] = coeff(i, i);
  return d;
}

SparseMatrix SparseMatrix::lower_triangle() const {
  SparseMatrix l(n_rows_, n_cols_);
  for (Index i = 0; i < n_rows_; ++i) {
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      if (col_indices_[k] <= i) {
        l.col_indices_.push_back(col_indices_[k]);
        l.values_.push_back(values_[k]);
      }
    }
    l.row_offsets_[i + 1] = static_cast<Index>(l.col_indices_.size());
  }
  return l;
}

SparseMatrix SparseMatrix::upper_triangle() const {
  SparseMatrix u(n_rows_, n_cols_);
  for (Index i = 0; i < n_rows_; ++i) {
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      if (col_indices_[k] >= i) {
        u.col_indices_.push_back(col_indices_[k]);
        u.values_.push_back(values_[k]);
      }
    }
    u.row_offsets_[i + 1] = static_cast<Index>(u.col_indices_.size());
  }
  return u;
}

SparseMatrix SparseMatrix::scaled(double s) const {
  SparseMatrix m = *this;
  for (double& v : m.values_) v *= s;
  return m;
}

bool SparseMatrix::is_symmetric(double tol) const {
  if (n_rows_ != n_cols_) return false;
  const SparseMatrix t = transpose();
  if (t.row_offsets_ != row_offsets_ || t.col_indices_ != col_indices_) {
    // patterns differ; fall back to coefficient comparison
    for (Index i = 0; i < n_rows_; ++i)
      for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
        if (std::abs(values_[k] - coeff(col_indices_[k], i)) > tol) return false;
    return true;
  }
  for (std::size_t k = 0; k < values_.size(); ++k)
    if (std::abs(values_[k] - t.values_[k]) > tol) return false;
  return true;
}

SparseMatrix SparseMatrix::symmetrized() const {
  check(n_rows_ == n_cols_, "symmetrized: matrix not square");
  const SparseMatrix t = transpose();
  return add(*this, t, 0.5, 0.5);
}

double SparseMatrix::one_norm() const {
  std::vector<double> colsum(n_cols_, 0.0);
  for (Index i = 0; i < n_rows_; ++i)
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      colsum[col_indices_[k]] += std::abs(values_[k]);
  double m = 0.0;
  for (double c : colsum) m = std::max(m, c);
  return m;
}

double SparseMatrix::inf_norm() const {
  double m = 0.0;
  for (Index i = 0; i < n_rows_; ++i) {
    double s = 0.0;
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      s += std::abs(values_[k]);
    m = std::max(m, s);
  }
  return m;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  check(a.n_cols_ == b.n_rows_, "multiply: dimension mismatch");
  SparseMatrix c(a.n_rows_, b.n_cols_);
  std::vector<double> acc(b.n_cols_, 0.0);
  std::vector<Index> marker(b.n_cols_, -1);
  std::vector<Index> touched;
  for (Index i = 0; i < a.n_rows_; ++i) {
    touched.clear();
    for (Index ka = a.row_offsets_[i]; ka < a.row_offsets_[i + 1]; ++ka) {
      const Index j = a.col_indices_[ka];
      const double av = a.values_[ka];
      for (Index kb = b.row_offsets_[j]; kb < b.row_offsets_[j + 1]; ++kb) {
        const Index col = b.col_indices_[kb];
        if (marker[col] != i) {
          marker[col] = i;
          acc[col] = 0.0;
          touched.push_back(col);
        }
        acc[col] += av * b.values_[kb];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (Index col : touched) {
      c.col_indices_.push_back(col);
      c.values_.push_back(acc[col]);
    }
    c.row_offsets_[i + 1] = static_cast<Index>(c.col_indices_.size());
  }
  return c;
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha,
                 double beta) {
  check(a.n_rows_ == b.n_rows_ && a.n_cols_ == b.n_cols_, "add: dimension mismatch");
  SparseMatrix c(a.n_rows_, a.n_cols_);
  for (Index i = 0; i < a.n_rows_; ++i) {
    Index ka = a.row_offsets_[i], kb = b.row_offsets_[i];
    const Index ea = a.row_offsets_[i + 1], eb = b.row_offsets_[i + 1];
    while (ka < ea || kb < eb) {
      Index col;
      double v;
      if (kb == eb || (ka < ea && a.col_indices_[ka] < b.col_indices_[kb])) {
        col = a.col_indices_[ka];
        v = alpha * a.values_[ka++];
      } else if (ka == ea || b.col_indices_[kb] < a.col_indices_[ka]) {
        col = b.col_indices_[kb];
        v = beta * b.values_[kb++];
      } else {
        col = a.col_indices_[ka];
        v = alpha * a.values_[ka++] + beta * b.values_[kb++];
      }
      c.col_indices_.push_back(col);
      c.values_.push_back(v);
    }
    c.row_offsets_[i + 1] = static_cast<Index>(c.col_indices_.size());
  }
  return c;
}

SparseMatrix galerkin(const SparseMatrix& p, const SparseMatrix& a) {
  check(a.rows() == a.cols() && a.cols() == p.rows(), "galerkin: dimension mismatch");
  const SparseMatrix ap = multiply(a, p);
  const SparseMatrix coarse = multiply(p.transpose(), ap);
  return coarse.symmetrized();
}

DenseMatrix galerkin(const DenseMatrix& p, const SparseMatrix& a) {
  check(a.rows() == a.cols() && a.cols() == static_cast<Index>(p.rows()),
        "galerkin: dimension mismatch");
  const DenseMatrix ap = a.times_dense(p);
  DenseMatrix coarse = p.transpose() * ap;
  coarse = 0.5 * (coarse + coarse.transpose()).eval();
  return coarse;
}

}  // namespace amglab
