#include "amglab/smoother.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

namespace amglab {

namespace {

void check_diag(const Vector& d) {
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (d[i] == 0.0) throw NotSpdError("smoother: zero diagonal entry");
}

// y = (D + L) x, strictly lower plus diagonal taken from a
Vector mv_lower(const SparseMatrix& a, const Vector& x) {
  Vector y = Vector::Zero(a.rows());
  const auto& off = a.row_offsets();
  const auto& col = a.col_indices();
  const auto& val = a.values();
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = off[i]; k < off[i + 1] && col[k] <= i; ++k)
      y[i] += val[k] * x[col[k]];
  return y;
}

Vector mv_lower_t(const SparseMatrix& a, const Vector& x) {
  Vector y = Vector::Zero(a.rows());
  const auto& off = a.row_offsets();
  const auto& col = a.col_indices();
  const auto& val = a.values();
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = off[i]; k < off[i + 1] && col[k] <= i; ++k)
      y[col[k]] += val[k] * x[i];
  return y;
}

Vector mv_upper(const SparseMatrix& a, const Vector& x) {
  Vector y = Vector::Zero(a.rows());
  const auto& off = a.row_offsets();
  const auto& col = a.col_indices();
  const auto& val = a.values();
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = off[i + 1] - 1; k >= off[i] && col[k] >= i; --k)
      y[i] += val[k] * x[col[k]];
  return y;
}

Vector mv_upper_t(const SparseMatrix& a, const Vector& x) {
  Vector y = Vector::Zero(a.rows());
  const auto& off = a.row_offsets();
  const auto& col = a.col_indices();
  const auto& val = a.values();
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = off[i + 1] - 1; k >= off[i] && col[k] >= i; --k)
      y[col[k]] += val[k] * x[i];
  return y;
}

// solve (D + L) y = r
Vector solve_lower(const SparseMatrix& a, const Vector& d, const Vector& r) {
  Vector y(r.size());
  const auto& off = a.row_offsets();
  const auto& col = a.col_indices();
  const auto& val = a.values();
  for (Index i = 0; i < a.rows(); ++i) {
    double acc = r[i];
    for (Index k = off[i]; k < off[i + 1] && col[k] < i; ++k)
      acc -= val[k] * y[col[k]];
    y[i] = acc / d[i];
  }
  return y;
}

// solve (D + L)^T y = r
Vector solve_lower_t(const SparseMatrix& a, const Vector& d, const Vector& r) {
  Vector y = r;
  const auto& off = a.row_offsets();
  const auto& col = a.col_indices();
  const auto& val = a.values();
  for (Index i = a.rows() - 1; i >= 0; --i) {
    y[i] /= d[i];
    for (Index k = off[i]; k < off[i + 1] && col[k] < i; ++k)
      y[col[k]] -= val[k] * y[i];
  }
  return y;
}

// solve (D + U) y = r
Vector solve_upper(const SparseMatrix& a, const Vector& d, const Vector& r) {
  Vector y(r.size());
  const auto& off = a.row_offsets();
  const auto& col = a.col_indices();
  const auto& val = a.values();
  for (Index i = a.rows() - 1; i >= 0; --i) {
    double acc = r[i];
    for (Index k = off[i + 1] - 1; k >= off[i] && col[k] > i; --k)
      acc -= val[k] * y[col[k]];
    y[i] = acc / d[i];
  }
  return y;
}

// solve (D + U)^T y = r
Vector solve_upper_t(const SparseMatrix& a, const Vector& d, const Vector& r) {
  Vector y = r;
  const auto& off = a.row_offsets();
  const auto& col = a.col_indices();
  const auto& val = a.values();
  for (Index i = 0; i < a.rows(); ++i) {
    y[i] /= d[i];
    for (Index k = off[i + 1] - 1; k >= off[i] && col[k] > i; --k)
      y[col[k]] -= val[k] * y[i];
  }
  return y;
}

DenseMatrix permuted_dense(const SparseMatrix& a, const Splitting& s) {
  const DenseMatrix d = a.to_dense();
  DenseMatrix p(s.n, s.n);
  for (Index q1 = 0; q1 < s.n; ++q1)
    for (Index q2 = 0; q2 < s.n; ++q2) p(q1, q2) = d(s.perm[q1], s.perm[q2]);
  return p;
}

}  // namespace

SmootherKind smoother_kind_from_string(const std::string& s) {
  if (s == "gs_forward") return SmootherKind::gs_forward;
  if (s == "gs_backward") return SmootherKind::gs_backward;
  if (s == "gs_symmetric") return SmootherKind::gs_symmetric;
  if (s == "block_gs_redblack") return SmootherKind::block_gs_redblack;
  if (s == "f_relaxation") return SmootherKind::f_relaxation;
  if (s == "hb") return SmootherKind::hb;
  throw DimensionError("unknown smoother kind: " + s);
}

std::string to_string(SmootherKind k) {
  switch (k) {
    case SmootherKind::gs_forward: return "gs_forward";
    case SmootherKind::gs_backward: return "gs_backward";
    case SmootherKind::gs_symmetric: return "gs_symmetric";
    case SmootherKind::block_gs_redblack: return "block_gs_redblack";
    case SmootherKind::f_relaxation: return "f_relaxation";
    case SmootherKind::hb: return "hb";
  }
  return "?";
}

SmootherSpec transposed(const SmootherSpec& spec) {
  SmootherSpec t = spec;
  switch (spec.kind) {
    case SmootherKind::gs_forward: t.kind = SmootherKind::gs_backward; break;
    case SmootherKind::gs_backward: t.kind = SmootherKind::gs_forward; break;
    case SmootherKind::block_gs_redblack: t.reverse_order = !spec.reverse_order; break;
    default: break;  // symmetric kinds are their own transpose
  }
  return t;
}

Smoother::Smoother(const SparseMatrix& a, const SmootherSpec& spec)
    : a_(a), spec_(spec), diag_(a.diagonal_vector()) {
  check_diag(diag_);

  switch (spec_.kind) {
    case SmootherKind::gs_forward:
    case SmootherKind::gs_backward:
      break;

    case SmootherKind::gs_symmetric:
      // middle term 2M - A, factorized up front so applications stay const
      middle_solver_ =
          std::make_shared<SpdSolver>(add(msymm_gs_sparse(), a_, 2.0, -1.0));
      break;

    case SmootherKind::block_gs_redblack: {
      const Index n = a_.rows();
      const Index N = static_cast<Index>(std::lround(std::sqrt(double(n))));
      if (N * N != n)
        throw DimensionError("block smoother needs a square grid matrix");
      part_ = block_partition(Grid(N), spec_.block_size);
      block_order_ = part_.order;
      if (spec_.reverse_order)
        std::reverse(block_order_.begin(), block_order_.end());
      block_pos_.assign(part_.blocks.size(), 0);
      for (Index p = 0; p < static_cast<Index>(block_order_.size()); ++p)
        block_pos_[block_order_[p]] = p;
      block_chol_.reserve(part_.blocks.size());
      for (const auto& cells : part_.blocks) {
        const SparseMatrix blk = a_.submatrix(cells, cells);
        Eigen::LLT<DenseMatrix> llt(blk.to_dense());
        if (llt.info() != Eigen::Success)
          throw NotSpdError("block smoother: diagonal block not SPD");
        block_chol_.push_back(llt.matrixL());
      }
      break;
    }

    case SmootherKind::f_relaxation: {
      if (!spec_.split) throw DimensionError("f_relaxation needs a splitting");
      const auto& s = *spec_.split;
      a_ff_ = a_.submatrix(s.F, s.F);
      if (spec_.ff_mode == FfMode::exact)
        ff_exact_ = std::make_unique<SpdSolver>(a_ff_);
      break;
    }

    case SmootherKind::hb: {
      if (!spec_.split) throw DimensionError("hb smoother needs a splitting");
      const auto& s = *spec_.split;
      const Index nf = s.nf(), nc = s.nc();
      const DenseMatrix app = permuted_dense(a_, s);
      const DenseMatrix aff = app.topLeftCorner(nf, nf);
      const DenseMatrix afc = app.topRightCorner(nf, nc);
      const DenseMatrix acf = app.bottomLeftCorner(nc, nf);

      hb_mff_chol_ = std::make_unique<SpdSolver>(aff);
      DenseMatrix mff;
      if (spec_.ff_mode == FfMode::exact) {
        mff = aff;
      } else {
        hb_mff_lower_ = aff.triangularView<Eigen::Lower>();
        mff = hb_mff_lower_;
      }

      const DenseMatrix aff_inv_afc = hb_mff_chol_->solve_dense(afc);
      const DenseMatrix schur = app.bottomRightCorner(nc, nc) - acf * aff_inv_afc;
      tau_ = spec_.tau > 0 ? spec_.tau : 2.0 * schur.cwiseAbs().colwise().sum().maxCoeff();

      auto build_m = [&](double tau) {
        DenseMatrix m(s.n, s.n);
        DenseMatrix mff_inv_afc =
            spec_.ff_mode == FfMode::exact
                ? aff_inv_afc
                : DenseMatrix(hb_mff_lower_.triangularView<Eigen::Lower>().solve(afc));
        m.topLeftCorner(nf, nf) = mff;
        m.topRightCorner(nf, nc) = afc;
        m.bottomLeftCorner(nc, nf) = acf;
        m.bottomRightCorner(nc, nc) =
            tau * DenseMatrix::Identity(nc, nc) + acf * mff_inv_afc;
        return m;
      };
      auto spd_middle = [&](double tau) -> std::unique_ptr<SpdSolver> {
        const DenseMatrix m = build_m(tau);
        const DenseMatrix mid = m + m.transpose() - app;
        try {
          return std::make_unique<SpdSolver>(mid);
        } catch (const NotSpdError&) {
          return nullptr;
        }
      };

      hb_middle_ = spd_middle(tau_);
      if (!hb_middle_) {
        // report the minimal admissible tau found by bisection
        double lo = tau_, hi = std::max(1.0, 2.0 * tau_);
        while (!spd_middle(hi)) hi *= 2.0;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (spd_middle(mid)) hi = mid; else lo = mid;
        }
        throw NotSpdError("hb smoother: M + M^T - A not SPD for tau=" +
                          std::to_string(tau_) + "; minimal admissible tau ~ " +
                          std::to_string(hi));
      }
      hb_m_ = build_m(tau_);
      break;
    }
  }
}

Vector Smoother::apply_minv(const Vector& r) const {
  if (static_cast<Index>(r.size()) != a_.rows())
    throw DimensionError("apply_minv: dimension mismatch");
  switch (spec_.kind) {
    case SmootherKind::gs_forward:
      return solve_lower(a_, diag_, r);
    case SmootherKind::gs_backward:
      return solve_upper(a_, diag_, r);
    case SmootherKind::gs_symmetric: {
      // ((D+L) D^{-1} (D+U))^{-1} r
      Vector y = solve_lower(a_, diag_, r);
      y.array() *= diag_.array();
      return solve_upper(a_, diag_, y);
    }
    case SmootherKind::block_gs_redblack: {
      Vector x = Vector::Zero(r.size());
      for (Index blk : block_order_) {
        const auto& cells = part_.blocks[blk];
        Vector rhs(cells.size());
        for (std::size_t t = 0; t < cells.size(); ++t) {
          const Index i = cells[t];
          double acc = r[i];
          const auto& off = a_.row_offsets();
          for (Index k = off[i]; k < off[i + 1]; ++k)
            acc -= a_.values()[k] * x[a_.col_indices()[k]];
          rhs[t] = acc;
        }
        const auto& l = block_chol_[blk];
        l.triangularView<Eigen::Lower>().solveInPlace(rhs);
        l.triangularView<Eigen::Lower>().transpose().solveInPlace(rhs);
        for (std::size_t t = 0; t < cells.size(); ++t) x[cells[t]] = rhs[t];
      }
      return x;
    }
    case SmootherKind::f_relaxation: {
      const auto& s = *spec_.split;
      const Vector rf = s.restrict_f(r);
      const Vector yf = spec_.ff_mode == FfMode::exact
                            ? ff_exact_->solve(rf)
                            : solve_lower(a_ff_, a_ff_.diagonal_vector(), rf);
      Vector y = Vector::Zero(s.n);
      for (Index t = 0; t < s.nf(); ++t) y[s.F[t]] = yf[t];
      return y;
    }
    case SmootherKind::hb: {
      const auto& s = *spec_.split;
      const Index nf = s.nf(), nc = s.nc();
      const Vector rp = s.permute(r);
      auto mff_solve = [&](const Vector& v) {
        return spec_.ff_mode == FfMode::exact
                   ? hb_mff_chol_->solve(v)
                   : Vector(hb_mff_lower_.triangularView<Eigen::Lower>().solve(v));
      };
      const Vector yf = mff_solve(rp.head(nf));
      const Vector yc = (rp.tail(nc) - hb_m_.bottomLeftCorner(nc, nf) * yf) / tau_;
      Vector xp(s.n);
      xp.tail(nc) = yc;
      xp.head(nf) = yf - mff_solve(hb_m_.topRightCorner(nf, nc) * yc);
      return s.unpermute(xp);
    }
  }
  throw std::logic_error("unreachable");
}

Vector Smoother::apply_minv_t(const Vector& r) const {
  if (static_cast<Index>(r.size()) != a_.rows())
    throw DimensionError("apply_minv_t: dimension mismatch");
  switch (spec_.kind) {
    case SmootherKind::gs_forward:
      return solve_lower_t(a_, diag_, r);
    case SmootherKind::gs_backward:
      return solve_upper_t(a_, diag_, r);
    case SmootherKind::gs_symmetric:
      return apply_minv(r);  // symmetric M
    case SmootherKind::block_gs_redblack: {
      Vector x = Vector::Zero(r.size());
      for (auto it = block_order_.rbegin(); it != block_order_.rend(); ++it) {
        const Index blk = *it;
        const auto& cells = part_.blocks[blk];
        Vector rhs(cells.size());
        for (std::size_t t = 0; t < cells.size(); ++t) {
          const Index i = cells[t];
          double acc = r[i];
          const auto& off = a_.row_offsets();
          for (Index k = off[i]; k < off[i + 1]; ++k)
            acc -= a_.values()[k] * x[a_.col_indices()[k]];
          rhs[t] = acc;
        }
        const auto& l = block_chol_[blk];
        l.triangularView<Eigen::Lower>().solveInPlace(rhs);
        l.triangularView<Eigen::Lower>().transpose().solveInPlace(rhs);
        for (std::size_t t = 0; t < cells.size(); ++t) x[cells[t]] = rhs[t];
      }
      return x;
    }
    case SmootherKind::f_relaxation: {
      const auto& s = *spec_.split;
      const Vector rf = s.restrict_f(r);
      const Vector yf = spec_.ff_mode == FfMode::exact
                            ? ff_exact_->solve(rf)
                            : solve_lower_t(a_ff_, a_ff_.diagonal_vector(), rf);
      Vector y = Vector::Zero(s.n);
      for (Index t = 0; t < s.nf(); ++t) y[s.F[t]] = yf[t];
      return y;
    }
    case SmootherKind::hb: {
      const auto& s = *spec_.split;
      const Index nf = s.nf(), nc = s.nc();
      const Vector rp = s.permute(r);
      auto mff_solve_t = [&](const Vector& v) {
        return spec_.ff_mode == FfMode::exact
                   ? hb_mff_chol_->solve(v)
                   : Vector(hb_mff_lower_.triangularView<Eigen::Lower>()
                                .transpose()
                                .solve(v));
      };
      const Vector yc =
          rp.tail(nc) - hb_m_.bottomLeftCorner(nc, nf) * mff_solve_t(rp.head(nf));
      Vector xp(s.n);
      xp.tail(nc) = yc / tau_;
      xp.head(nf) =
          mff_solve_t(Vector(rp.head(nf) - hb_m_.topRightCorner(nf, nc) * xp.tail(nc)));
      return s.unpermute(xp);
    }
  }
  throw std::logic_error("unreachable");
}

Vector Smoother::apply_m(const Vector& v) const {
  switch (spec_.kind) {
    case SmootherKind::gs_forward:
      return mv_lower(a_, v);
    case SmootherKind::gs_backward:
      return mv_upper(a_, v);
    case SmootherKind::gs_symmetric: {
      Vector y = mv_upper(a_, v);
      y.array() /= diag_.array();
      return mv_lower(a_, y);
    }
    case SmootherKind::block_gs_redblack: {
      // keep A entries inside a block or pointing to an earlier block
      Vector y = Vector::Zero(v.size());
      const auto& off = a_.row_offsets();
      for (Index i = 0; i < a_.rows(); ++i) {
        const Index pi = block_pos_[part_.block_of[i]];
        for (Index k = off[i]; k < off[i + 1]; ++k) {
          const Index j = a_.col_indices()[k];
          if (block_pos_[part_.block_of[j]] <= pi) y[i] += a_.values()[k] * v[j];
        }
      }
      return y;
    }
    case SmootherKind::hb: {
      const auto& s = *spec_.split;
      return s.unpermute(Vector(hb_m_ * s.permute(v)));
    }
    case SmootherKind::f_relaxation:
      throw DimensionError("f_relaxation has no global M action");
  }
  throw std::logic_error("unreachable");
}

Vector Smoother::apply_mt(const Vector& v) const {
  switch (spec_.kind) {
    case SmootherKind::gs_forward:
      return mv_lower_t(a_, v);
    case SmootherKind::gs_backward:
      return mv_upper_t(a_, v);
    case SmootherKind::gs_symmetric:
      return apply_m(v);
    case SmootherKind::block_gs_redblack: {
      Vector y = Vector::Zero(v.size());
      const auto& off = a_.row_offsets();
      for (Index i = 0; i < a_.rows(); ++i) {
        const Index pi = block_pos_[part_.block_of[i]];
        for (Index k = off[i]; k < off[i + 1]; ++k) {
          const Index j = a_.col_indices()[k];
          if (block_pos_[part_.block_of[j]] <= pi) y[j] += a_.values()[k] * v[i];
        }
      }
      return y;
    }
    case SmootherKind::hb: {
      const auto& s = *spec_.split;
      return s.unpermute(Vector(hb_m_.transpose() * s.permute(v)));
    }
    case SmootherKind::f_relaxation:
      throw DimensionError("f_relaxation has no global M action");
  }
  throw std::logic_error("unreachable");
}

Vector Smoother::middle_solve(const Vector& v) const {
  switch (spec_.kind) {
    case SmootherKind::gs_forward:
    case SmootherKind::gs_backward:
      // M + M^T - A = D
      return v.cwiseQuotient(diag_);
    case SmootherKind::gs_symmetric:
      return middle_solver_->solve(v);
    case SmootherKind::block_gs_redblack: {
      // M + M^T - A = block diagonal of A
      Vector y(v.size());
      for (Index blk = 0; blk < static_cast<Index>(part_.blocks.size()); ++blk) {
        const auto& cells = part_.blocks[blk];
        Vector rhs(cells.size());
        for (std::size_t t = 0; t < cells.size(); ++t) rhs[t] = v[cells[t]];
        const auto& l = block_chol_[blk];
        l.triangularView<Eigen::Lower>().solveInPlace(rhs);
        l.triangularView<Eigen::Lower>().transpose().solveInPlace(rhs);
        for (std::size_t t = 0; t < cells.size(); ++t) y[cells[t]] = rhs[t];
      }
      return y;
    }
    case SmootherKind::hb: {
      const auto& s = *spec_.split;
      return s.unpermute(hb_middle_->solve(s.permute(v)));
    }
    case SmootherKind::f_relaxation:
      throw DimensionError("f_relaxation has no symmetrized form");
  }
  throw std::logic_error("unreachable");
}

Vector Smoother::apply_msymm_inv(const Vector& r) const {
  const Vector y = apply_minv(r);
  return y + apply_minv_t(Vector(r - a_ * y));
}

Vector Smoother::apply_msymm(const Vector& v) const {
  return apply_m(middle_solve(apply_mt(v)));
}

Vector Smoother::presmooth(const Vector& e, int nu) const {
  Vector x = e;
  for (int s = 0; s < nu; ++s) x -= apply_minv(a_ * x);
  return x;
}

Vector Smoother::postsmooth(const Vector& e, int nu) const {
  Vector x = e;
  for (int s = 0; s < nu; ++s) x -= apply_minv_t(a_ * x);
  return x;
}

SparseMatrix Smoother::msymm_gs_sparse() const {
  // (D+L) D^{-1} (D+L)^T for forward, (D+U) D^{-1} (D+U)^T for backward
  const SparseMatrix tri = spec_.kind == SmootherKind::gs_backward
                               ? a_.upper_triangle()
                               : a_.lower_triangle();
  SparseMatrix scaled = tri.transpose();
  {
    // rows of tri^T scaled by 1/diag
    std::vector<Triplet> entries;
    entries.reserve(scaled.nnz());
    for (Index i = 0; i < scaled.rows(); ++i)
      for (Index k = scaled.row_offsets()[i]; k < scaled.row_offsets()[i + 1]; ++k)
        entries.push_back({i, scaled.col_indices()[k],
                           scaled.values()[k] / diag_[i]});
    scaled = SparseMatrix::from_triplets(scaled.rows(), scaled.cols(), entries);
  }
  return multiply(tri, scaled);
}

SparseMatrix Smoother::msymm_sparse() const {
  switch (spec_.kind) {
    case SmootherKind::gs_forward:
    case SmootherKind::gs_backward:
      return msymm_gs_sparse();
    default:
      // Mt has no sparse closed form for the remaining kinds
      throw DimensionError("msymm_sparse: only forward/backward GS are supported");
  }
}

DenseMatrix Smoother::msymm_dense() const {
  const Index n = a_.rows();
  DenseMatrix m(n, n);
  Vector e = Vector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    m.col(j) = apply_msymm(e);
    e[j] = 0.0;
  }
  return 0.5 * (m + m.transpose()).eval();
}

}  // namespace amglab
