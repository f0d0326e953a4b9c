#include "amglab/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "amglab/rng.hpp"

namespace amglab {

namespace {

Vector random_vector(Index n, Rng& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
  return v;
}

double a_norm(const SparseMatrix& a, const Vector& v) {
  return std::sqrt(std::max(v.dot(a * v), 0.0));
}

}  // namespace

TwoGridOperator::TwoGridOperator(const SparseMatrix& a, InterpMatrix p,
                                 std::shared_ptr<const Smoother> pre,
                                 std::shared_ptr<const Smoother> post,
                                 int nu_pre, int nu_post)
    : a_(a),
      p_(std::move(p)),
      pre_(std::move(pre)),
      post_(std::move(post)),
      nu_pre_(nu_pre),
      nu_post_(nu_post) {
  if (p_.n() != a_.rows()) throw DimensionError("two-grid: P does not match A");
  if (p_.is_dense())
    coarse_solver_ = std::make_unique<SpdSolver>(galerkin(p_.dense_data(), a_));
  else
    coarse_solver_ = std::make_unique<SpdSolver>(galerkin(p_.sparse_data(), a_));
}

Vector TwoGridOperator::coarse_correct(const Vector& v) const {
  const Vector residual = p_.apply_t(a_ * v);
  return v - p_.apply(coarse_solver_->solve(residual));
}

Vector TwoGridOperator::apply(const Vector& v) const {
  Vector e = v;
  if (pre_ && nu_pre_ > 0) e = pre_->presmooth(e, nu_pre_);
  e = coarse_correct(e);
  if (post_ && nu_post_ > 0) e = post_->postsmooth(e, nu_post_);
  return e;
}

TwoGridOperator symmetric_cycle(const SparseMatrix& a, InterpMatrix p) {
  auto fwd = std::make_shared<Smoother>(a, SmootherSpec{SmootherKind::gs_forward});
  auto bwd = std::make_shared<Smoother>(a, SmootherSpec{SmootherKind::gs_backward});
  return TwoGridOperator(a, std::move(p), fwd, bwd);
}

RateReport rate_A_norm(const TwoGridOperator& op, double tol, int max_iter,
                       std::uint64_t seed) {
  RateReport report;
  report.method = "power_Anorm";
  report.seed = seed;

  const SparseMatrix& a = op.a();
  Rng rng = Rng(seed).split(0x72617465u);
  Vector v = random_vector(a.rows(), rng);
  {
    const double nrm = a_norm(a, v);
    if (nrm > 0) v /= nrm;
  }

  double estimate = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    const Vector w = op.apply(v);
    const Vector aw = a * w;
    const double rayleigh = std::max(v.dot(aw), 0.0);
    const double wnorm = std::sqrt(std::max(w.dot(aw), 0.0));
    report.history.push_back(rayleigh);
    report.iterations = it;
    if (wnorm == 0.0) {
      report.estimate = 0.0;
      return report;
    }
    const bool settled = it > 1 && std::abs(rayleigh - estimate) <=
                                       tol * std::max(rayleigh, 1e-30);
    estimate = rayleigh;
    v = w / wnorm;
    if (settled) {
      report.estimate = std::min(estimate, 1.5);
      return report;
    }
  }
  report.estimate = std::min(estimate, 1.5);
  report.converged = false;
  return report;
}

std::pair<double, double> kappa_sharp(const SparseMatrix& a,
                                      const Smoother& smoother, Index nc,
                                      GenEigOptions opts) {
  if (nc >= a.rows())
    throw DimensionError("kappa_sharp: nc must be below the dimension");
  opts.k = nc + 1;
  if (a.rows() > opts.dense_threshold) opts.mode = EigMode::smallest;
  const EigenPairs pairs = gen_eig_sym(
      a, [&](const Vector& v) { return smoother.apply_msymm(v); },
      [&](const Vector& v) { return smoother.apply_msymm_inv(v); }, opts);
  const double lambda = pairs.values[nc];
  const double bound = std::clamp(1.0 - lambda, 0.0, 1.0);
  return {lambda, bound};
}

double mu_closed_form(const SparseMatrix& a, const LinOp& apply_x,
                      const DenseMatrix& s) {
  const Index m = static_cast<Index>(s.cols());
  DenseMatrix sas = s.transpose() * a.times_dense(s);
  sas = 0.5 * (sas + sas.transpose()).eval();
  DenseMatrix xs(s.rows(), m);
  for (Index j = 0; j < m; ++j) xs.col(j) = apply_x(s.col(j));
  DenseMatrix sxs = s.transpose() * xs;
  sxs = 0.5 * (sxs + sxs.transpose()).eval();
  const EigenPairs pairs = gen_eig_sym_dense(sas, sxs);
  const double lambda_min = pairs.values[0];
  if (!(lambda_min > 0))
    throw NotSpdError("mu_closed_form: pencil has nonpositive smallest eigenvalue");
  return 1.0 / lambda_min;
}

RateReport cr_frelax_rate(const SparseMatrix& a, const Splitting& split,
                          const SmootherSpec& spec, int n_iters,
                          std::uint64_t seed) {
  RateReport report;
  report.method = "iteration_history";
  report.seed = seed;

  const SparseMatrix a_s = a.submatrix(split.F, split.F);
  const Smoother smoother(a_s, spec);

  Rng rng = Rng(seed).split(0x63726672u);
  Vector v = random_vector(a_s.rows(), rng);
  while (v.norm() == 0.0) v = random_vector(a_s.rows(), rng);

  double prev = a_norm(a_s, v);
  for (int it = 0; it < n_iters; ++it) {
    v -= smoother.apply_minv(a_s * v);
    const double cur = a_norm(a_s, v);
    report.history.push_back(prev > 0 ? cur / prev : 0.0);
    prev = cur;
    ++report.iterations;
    if (cur == 0.0) break;
  }
  report.estimate = report.history.empty() ? 0.0 : report.history.back();
  return report;
}

RateReport cr_sharp_estimate(const SparseMatrix& a, const Splitting& split,
                             int l_inner, int n_iters, std::uint64_t seed) {
  RateReport report;
  report.method = "iteration_history";
  report.seed = seed;

  const SparseMatrix aff = a.submatrix(split.F, split.F);
  const SparseMatrix afc = a.submatrix(split.F, split.C);
  const Vector dff = aff.diagonal_vector();
  const Smoother fwd(a, SmootherSpec{SmootherKind::gs_forward});
  const Smoother bwd(a, SmootherSpec{SmootherKind::gs_backward});

  // fixed number of diagonally preconditioned CG steps from a zero guess
  auto pcg = [&](const Vector& b) {
    Vector x = Vector::Zero(b.size());
    Vector r = b;
    Vector z = r.cwiseQuotient(dff);
    Vector p = z;
    double rz = r.dot(z);
    for (int it = 0; it < l_inner; ++it) {
      if (rz == 0.0) break;
      const Vector ap = aff * p;
      const double pap = p.dot(ap);
      if (pap <= 0.0) break;
      const double alpha = rz / pap;
      x += alpha * p;
      r -= alpha * ap;
      z = r.cwiseQuotient(dff);
      const double rz_next = r.dot(z);
      p = z + (rz_next / rz) * p;
      rz = rz_next;
    }
    return x;
  };

  Rng rng = Rng(seed).split(0x63727368u);
  Vector e = random_vector(a.rows(), rng);
  double prev = a_norm(a, e);
  for (int it = 0; it < n_iters; ++it) {
    e = fwd.presmooth(e);
    // I - Pi_A(P_ideal) in block form: e_F += A_ff^{-1} A_fc e_C, e_C = 0
    Vector ec(split.nc());
    for (Index j = 0; j < split.nc(); ++j) ec[j] = e[split.C[j]];
    const Vector update = pcg(afc * ec);
    for (Index i = 0; i < split.nf(); ++i) e[split.F[i]] += update[i];
    for (Index j = 0; j < split.nc(); ++j) e[split.C[j]] = 0.0;
    e = bwd.postsmooth(e);

    const double cur = a_norm(a, e);
    report.history.push_back(prev > 0 ? cur / prev : 0.0);
    prev = cur;
    ++report.iterations;
    if (cur == 0.0) break;
  }
  report.estimate = report.history.empty() ? 0.0 : report.history.back();
  return report;
}

double condition_bound(const SparseMatrix& a, const Splitting& split,
                       const SmootherSpec& spec, double delta) {
  if (!(delta >= 0.0 && delta < 1.0))
    throw DimensionError("condition_bound: delta must lie in [0, 1)");
  const SparseMatrix a_s = a.submatrix(split.F, split.F);
  const Smoother smoother(a_s, spec);

  // probe M^{-1} densely; kappa(M) equals kappa(M^{-1})
  const Index nf = a_s.rows();
  DenseMatrix m(nf, nf);
  Vector e = Vector::Zero(nf);
  for (Index j = 0; j < nf; ++j) {
    e[j] = 1.0;
    m.col(j) = smoother.apply_minv(e);
    e[j] = 0.0;
  }
  Eigen::JacobiSVD<DenseMatrix> svd(m);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (!(smin > 0)) throw SingularError("condition_bound: M_ff singular", 0.0);
  const double kappa_m = smax / smin;
  return kappa_m * (1.0 + delta) / (1.0 - delta);
}

double stability_beta(const SparseMatrix& a, const DenseMatrix& p,
                      const DenseMatrix& r) {
  const DenseMatrix rp = r * p;
  if ((rp - DenseMatrix::Identity(rp.rows(), rp.cols())).cwiseAbs().maxCoeff() >
      1e-8)
    throw DimensionError("stability_beta: R P != I");
  const DenseMatrix pr = p * r;
  DenseMatrix g = pr.transpose() * a.times_dense(pr);
  g = 0.5 * (g + g.transpose()).eval();
  const EigenPairs pairs = gen_eig_sym_dense(g, a.to_dense());
  return pairs.values[pairs.values.size() - 1];
}

SpectraReport spectra_report(const SparseMatrix& a, const Smoother& smoother,
                             double fraction, Index dense_threshold) {
  if (a.rows() > dense_threshold)
    throw DimensionError("spectra_report: size above the dense threshold");
  SpectraReport out;
  out.fraction = fraction;

  Eigen::SelfAdjointEigenSolver<DenseMatrix> plain(a.to_dense());
  out.lambda_max_a = plain.eigenvalues().maxCoeff();
  out.a_scaled = plain.eigenvalues() / out.lambda_max_a;

  GenEigOptions opts;
  opts.mode = EigMode::full;
  opts.dense_threshold = dense_threshold;
  const EigenPairs pairs = gen_eig_sym(
      a, [&](const Vector& v) { return smoother.apply_msymm(v); },
      [&](const Vector& v) { return smoother.apply_msymm_inv(v); }, opts);
  out.pencil = pairs.values;
  return out;
}

Vector f_relax_step(const SparseMatrix& a, const Splitting& split,
                    const SmootherSpec& spec, const Vector& v_f) {
  const SparseMatrix aff = a.submatrix(split.F, split.F);
  const Smoother smoother(aff, spec);
  return v_f - smoother.apply_minv(aff * v_f);
}

}  // namespace amglab
