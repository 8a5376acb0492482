#include "esp/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace esp {

double aligned_entrywise_error(const OrthonormalFrame& u_tilde,
                               const OrthonormalFrame& u_true) {
  const ProcrustesResult pr = procrustes_align(u_tilde, u_true);
  return two_to_inf_norm(u_tilde.mat() - pr.aligned);
}

double frobenius_subspace_error(const OrthonormalFrame& u_tilde,
                                const OrthonormalFrame& u_true) {
  const ProcrustesResult pr = procrustes_align(u_tilde, u_true);
  return (u_tilde.mat() - pr.aligned).norm();
}

BoundBreakdown theorem_bounds(const SparseCovarianceModel& model, int n) {
  if (n < 2) {
    throw InvalidInputError("theorem_bounds: n >= 2 required");
  }
  const double lambda1 = model.spike_eigenvalues[0];
  const double lambda_k = model.spike_eigenvalues[model.k - 1];
  const double lambda_k1 = model.bulk_level;
  const double gap = lambda_k - lambda_k1;
  if (!(gap > 0.0)) {
    throw DegenerateGapError("theorem_bounds: lambda_k == lambda_{k+1}");
  }
  const double kappa = model.kappa;
  const double u2i = two_to_inf_norm(model.u.mat());
  const double sigma_max = model.sigma.max_abs();
  const double nd = static_cast<double>(n);
  const double log_p = std::log(static_cast<double>(model.p));
  const double slp_n = model.s * log_p / nd;
  const double sqrt_lp_n = std::sqrt(log_p / nd);
  const double sqrt_klp_n = std::sqrt(model.k * log_p / nd);
  const double sqrt_slp_n = std::sqrt(slp_n);

  BoundBreakdown b{};
  b.e1 = (kappa * lambda1 / gap) * slp_n * u2i + kappa * model.k * sqrt_lp_n * u2i;
  b.e2 = (lambda1 * lambda1 / (gap * gap)) * slp_n * u2i;
  b.e3 = sqrt_slp_n * (kappa * std::sqrt(lambda1) / gap) *
         std::min(std::sqrt(sigma_max), std::sqrt(lambda1) * u2i);
  b.e4 = (lambda_k1 / lambda_k) * kappa * kappa * sqrt_klp_n +
         (lambda_k1 / lambda_k) * kappa * kappa * kappa * slp_n;
  b.e5 = (kappa * lambda1 / gap) * slp_n + kappa * sqrt_klp_n;
  b.thm1_total = b.e1 + b.e2 + b.e3 + b.e4 + b.e5;
  b.cor_bound = kappa * kappa * sqrt_klp_n + kappa * kappa * kappa * slp_n;
  b.cor_bound_simplified = sqrt_klp_n + slp_n;
  return b;
}

double submatrix_concentration_stat(const SymmetricMatrix& sigma_hat,
                                    const SparseCovarianceModel& model) {
  const SymmetricMatrix diff(sigma_hat.submatrix(model.support).mat() -
                             model.sigma.submatrix(model.support).mat());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(diff.mat());
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

EigengapStats eigengap_stats(const SubspaceEstimate& estimate,
                             const SparseCovarianceModel& model) {
  const double lambda_k = model.spike_eigenvalues[model.k - 1];
  const double lambda_k1 = model.bulk_level;
  const double gap8 = (lambda_k - lambda_k1) / 8.0;
  const double lt_k = estimate.lambda_tilde[estimate.lambda_tilde.size() - 1];
  const double lt_k1 = estimate.lambda_tilde_kplus1;

  EigengapStats st{};
  st.gap_pop_minus_emp = lambda_k - lt_k1;
  st.gap_emp_minus_pop = lt_k - lambda_k1;
  st.lambda_tilde_k = lt_k;
  st.pop_minus_emp_ok = st.gap_pop_minus_emp >= gap8;
  st.emp_minus_pop_ok = st.gap_emp_minus_pop >= gap8;
  st.level_ok = lt_k >= lambda_k / 4.0;
  return st;
}

}  // namespace esp
