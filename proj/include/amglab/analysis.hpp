#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "amglab/interp.hpp"
#include "amglab/smoother.hpp"

namespace amglab {

/// Matrix-free two-grid error propagator post * (I - Pi_A(P)) * pre with an
/// exact (cached) coarse solve. Either smoother may be absent.
class TwoGridOperator {
 public:
  TwoGridOperator(const SparseMatrix& a, InterpMatrix p,
                  std::shared_ptr<const Smoother> pre,
                  std::shared_ptr<const Smoother> post, int nu_pre = 1,
                  int nu_post = 1);

  const SparseMatrix& a() const { return a_; }
  const InterpMatrix& p() const { return p_; }

  Vector apply(const Vector& v) const;
  /// (I - Pi_A(P)) v
  Vector coarse_correct(const Vector& v) const;

 private:
  SparseMatrix a_;
  InterpMatrix p_;
  std::shared_ptr<const Smoother> pre_, post_;
  int nu_pre_, nu_post_;
  std::unique_ptr<SpdSolver> coarse_solver_;
};

/// Symmetric two-grid cycle used for the rate tables: forward GS
/// pre-smoothing, backward GS post-smoothing.
TwoGridOperator symmetric_cycle(const SparseMatrix& a, InterpMatrix p);

struct RateReport {
  double estimate = 0.0;
  std::string method;
  int iterations = 0;
  std::vector<double> history;
  bool converged = true;
  std::uint64_t seed = 0;
};

/// Spectral radius of the (A-self-adjoint, positive) symmetric-cycle error
/// propagator by power iteration with A-inner-product Rayleigh quotients.
RateReport rate_A_norm(const TwoGridOperator& op, double tol = 1e-4,
                       int max_iter = 2000, std::uint64_t seed = 1);

/// lambda_{nc+1} of the pencil (A, Mt) and the induced two-grid bound
/// 1 - lambda_{nc+1}, clamped to [0, 1].
std::pair<double, double> kappa_sharp(const SparseMatrix& a,
                                      const Smoother& smoother, Index nc,
                                      GenEigOptions opts = {});

/// Closed-form weak approximation measure
/// mu_X = 1 / lambda_min((S^T X S)^{-1} (S^T A S)).
double mu_closed_form(const SparseMatrix& a, const LinOp& apply_x,
                      const DenseMatrix& s);

/// F-relaxation compatible relaxation rate: n_iters steps of
/// (I - M_S^{-1} A_S) from a random F-vector, last-step A_S-norm reduction.
RateReport cr_frelax_rate(const SparseMatrix& a, const Splitting& split,
                          const SmootherSpec& spec, int n_iters = 5,
                          std::uint64_t seed = 1);

/// Two-grid rate estimate for ideal interpolation without forming it: the
/// coarse correction is applied through its F/C block identity with
/// A_ff^{-1} replaced by l_inner diagonally preconditioned CG steps.
RateReport cr_sharp_estimate(const SparseMatrix& a, const Splitting& split,
                             int l_inner = 2, int n_iters = 5,
                             std::uint64_t seed = 1);

/// kappa(M_ff) (1 + delta) / (1 - delta), a bound on kappa(A_ff) when the
/// compatible relaxation rate is at most delta.
double condition_bound(const SparseMatrix& a, const Splitting& split,
                       const SmootherSpec& spec, double delta);

/// Largest generalized eigenvalue of ((PR)^T A (PR), A); equals 1 when PR is
/// the A-orthogonal projection onto range(P).
double stability_beta(const SparseMatrix& a, const DenseMatrix& p,
                      const DenseMatrix& r);

struct SpectraReport {
  Vector a_scaled;       // eigenvalues of A divided by lambda_max(A), ascending
  Vector pencil;         // generalized eigenvalues of (A, Mt), ascending
  double lambda_max_a = 0.0;
  double fraction = 1.0;  // lower fraction intended for plotting
};

SpectraReport spectra_report(const SparseMatrix& a, const Smoother& smoother,
                             double fraction = 0.75,
                             Index dense_threshold = 4096);

/// One compatible-relaxation step on the F variables:
/// v' = (I - M_ff^{-1} A_ff) v for the smoother built on A_ff.
Vector f_relax_step(const SparseMatrix& a, const Splitting& split,
                    const SmootherSpec& spec, const Vector& v_f);

}  // namespace amglab
