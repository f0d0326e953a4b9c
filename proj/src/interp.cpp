#include "amglab/interp.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>

namespace amglab {

std::string to_string(InterpKind k) {
  switch (k) {
    case InterpKind::optimal: return "optimal";
    case InterpKind::classical_optimal: return "classical-optimal";
    case InterpKind::ideal: return "ideal";
    case InterpKind::generalized_ideal: return "generalized-ideal";
    case InterpKind::least_squares: return "least-squares";
  }
  return "?";
}

InterpMatrix InterpMatrix::from_dense(DenseMatrix p, InterpKind kind,
                                      std::optional<Splitting> split) {
  InterpMatrix m;
  m.data_ = std::move(p);
  m.kind_ = kind;
  m.split_ = std::move(split);
  return m;
}

InterpMatrix InterpMatrix::from_sparse(SparseMatrix p, InterpKind kind,
                                       std::optional<Splitting> split) {
  InterpMatrix m;
  m.data_ = std::move(p);
  m.kind_ = kind;
  m.split_ = std::move(split);
  return m;
}

Index InterpMatrix::n() const {
  return is_dense() ? static_cast<Index>(dense_data().rows()) : sparse_data().rows();
}

Index InterpMatrix::nc() const {
  return is_dense() ? static_cast<Index>(dense_data().cols()) : sparse_data().cols();
}

Vector InterpMatrix::apply(const Vector& coarse) const {
  return is_dense() ? Vector(dense_data() * coarse) : sparse_data() * coarse;
}

Vector InterpMatrix::apply_t(const Vector& fine) const {
  return is_dense() ? Vector(dense_data().transpose() * fine)
                    : sparse_data().transpose_times(fine);
}

DenseMatrix InterpMatrix::to_dense() const {
  return is_dense() ? dense_data() : sparse_data().to_dense();
}

SparseMatrix InterpMatrix::coarse_matrix(const SparseMatrix& a) const {
  if (is_dense()) return SparseMatrix::from_dense(galerkin(dense_data(), a));
  return galerkin(sparse_data(), a);
}

OptimalInterp optimal_interp(const SparseMatrix& a, const Smoother& smoother,
                             Index nc, GenEigOptions opts) {
  const Index n = a.rows();
  if (nc > n) throw DimensionError("optimal_interp: nc exceeds n");
  opts.k = std::min<Index>(nc + 1, n);
  if (n > opts.dense_threshold) opts.mode = EigMode::smallest;
  const EigenPairs pairs = gen_eig_sym(
      a, [&](const Vector& v) { return smoother.apply_msymm(v); },
      [&](const Vector& v) { return smoother.apply_msymm_inv(v); }, opts);

  OptimalInterp out{
      InterpMatrix::from_dense(pairs.vectors.leftCols(nc), InterpKind::optimal),
      nc < n ? pairs.values[nc] : std::numeric_limits<double>::infinity(),
      pairs};
  return out;
}

InterpMatrix classical_scale(const InterpMatrix& p_opt, const Splitting& split) {
  const DenseMatrix p = p_opt.to_dense();
  const Index nc = static_cast<Index>(p.cols());
  if (split.nc() != nc)
    throw DimensionError("classical_scale: splitting size mismatch");

  DenseMatrix pc(nc, nc);
  for (Index j = 0; j < nc; ++j) pc.row(j) = p.row(split.C[j]);

  // already in classical form: C block equal to identity
  if ((pc - DenseMatrix::Identity(nc, nc)).cwiseAbs().maxCoeff() == 0.0) {
    return InterpMatrix::from_dense(p, p_opt.kind() == InterpKind::optimal
                                           ? InterpKind::classical_optimal
                                           : p_opt.kind(),
                                    split);
  }

  DenseMatrix scaled;
  try {
    LuSolver lu(pc.transpose());
    scaled = lu.solve_dense(p.transpose()).transpose();
  } catch (const SingularError& e) {
    throw SingularError("classical_scale: P_c singular to tolerance", e.cond_estimate);
  }
  for (Index j = 0; j < nc; ++j) {
    scaled.row(split.C[j]).setZero();
    scaled(split.C[j], j) = 1.0;
  }
  return InterpMatrix::from_dense(std::move(scaled), InterpKind::classical_optimal,
                                  split);
}

InterpMatrix ideal_interp(const SparseMatrix& a, const Splitting& split) {
  const SparseMatrix aff = a.submatrix(split.F, split.F);
  const SparseMatrix afc = a.submatrix(split.F, split.C);
  SpdSolver aff_solver(aff);

  const Index nf = split.nf(), nc = split.nc();
  DenseMatrix p = DenseMatrix::Zero(split.n, nc);
  Vector rhs(nf);
  for (Index j = 0; j < nc; ++j) {
    rhs.setZero();
    for (Index i = 0; i < nf; ++i) rhs[i] = afc.coeff(i, j);
    const Vector w = aff_solver.solve(rhs);
    for (Index i = 0; i < nf; ++i) p(split.F[i], j) = -w[i];
    p(split.C[j], j) = 1.0;
  }
  return InterpMatrix::from_dense(std::move(p), InterpKind::ideal, split);
}

InterpMatrix generalized_ideal(const SparseMatrix& a, const DenseMatrix& s,
                               const DenseMatrix& z) {
  if (s.rows() != z.rows() || static_cast<Index>(s.rows()) != a.rows())
    throw DimensionError("generalized_ideal: dimension mismatch");
  const DenseMatrix as = a.times_dense(s);
  DenseMatrix sas = s.transpose() * as;
  sas = 0.5 * (sas + sas.transpose()).eval();
  Eigen::LLT<DenseMatrix> llt(sas);
  if (llt.info() != Eigen::Success)
    throw NotSpdError("generalized_ideal: S^T A S not SPD (S rank deficient?)");
  const DenseMatrix saz = as.transpose() * z;  // S^T A Z
  DenseMatrix p = z - s * llt.solve(saz);
  return InterpMatrix::from_dense(std::move(p), InterpKind::generalized_ideal);
}

InterpMatrix ls_interp(const std::vector<Vector>& test_vectors,
                       const Vector& weights, const CoarsePattern& pattern,
                       const Splitting& split) {
  const Index n = split.n;
  const Index nv = static_cast<Index>(test_vectors.size());
  if (static_cast<Index>(weights.size()) != nv)
    throw DimensionError("ls_interp: one weight per test vector required");
  bool any_positive = false;
  for (Index kk = 0; kk < nv; ++kk) any_positive |= weights[kk] > 0.0;
  if (!any_positive) throw DimensionError("ls_interp: no positive weight");

  std::vector<Triplet> entries;
  for (Index p = 0; p < n; ++p) {
    if (split.is_coarse(p)) {
      entries.push_back({p, split.coarse_of[p], 1.0});
      continue;
    }
    const auto& set = pattern.rows[p];
    if (set.empty())
      throw DimensionError("ls_interp: empty interpolatory set for row " +
                           std::to_string(p));
    const Index m = static_cast<Index>(set.size());
    DenseMatrix gram = DenseMatrix::Zero(m, m);
    Vector rhs = Vector::Zero(m);
    Vector local(m);
    for (Index kk = 0; kk < nv; ++kk) {
      const Vector& v = test_vectors[kk];
      for (Index s = 0; s < m; ++s) local[s] = v[split.C[set[s]]];
      gram.noalias() += weights[kk] * (local * local.transpose());
      rhs.noalias() += (weights[kk] * v[p]) * local;
    }
    Eigen::LLT<DenseMatrix> llt(gram);
    if (llt.info() != Eigen::Success) {
      const double ridge = 1e-12 * gram.trace();
      gram.diagonal().array() += ridge;
      llt.compute(gram);
      if (llt.info() != Eigen::Success) {
        continue;  // all test vectors vanish on C_i: leave the row empty
      }
    }
    const Vector row = llt.solve(rhs);
    for (Index s = 0; s < m; ++s)
      if (row[s] != 0.0) entries.push_back({p, set[s], row[s]});
  }
  return InterpMatrix::from_sparse(
      SparseMatrix::from_triplets(n, split.nc(), entries),
      InterpKind::least_squares, split);
}

}  // namespace amglab
