#pragma once

#include "esp/pipeline.hpp"

namespace esp {

// max row norm of U_tilde - U_true W*, with W* the Frobenius-optimal
// rotation of U_true toward U_tilde.
double aligned_entrywise_error(const OrthonormalFrame& u_tilde,
                               const OrthonormalFrame& u_true);

// ||U_tilde - U_true W*||_F with the same W*.
double frobenius_subspace_error(const OrthonormalFrame& u_tilde,
                                const OrthonormalFrame& u_true);

// The five error terms of the general entrywise bound plus the aggregate
// rates, evaluated with absolute constants set to 1 and natural logs.
struct BoundBreakdown {
  double e1;
  double e2;
  double e3;
  double e4;
  double e5;
  double thm1_total;            // e1 + e2 + e3 + e4 + e5
  double cor_bound;             // kappa^2 sqrt(k log p / n) + kappa^3 s log p / n
  double cor_bound_simplified;  // sqrt(k log p / n) + s log p / n
};

BoundBreakdown theorem_bounds(const SparseCovarianceModel& model, int n);

// Spectral norm of (sigma_hat - Sigma) restricted to the true support.
double submatrix_concentration_stat(const SymmetricMatrix& sigma_hat,
                                    const SparseCovarianceModel& model);

// Empirical eigengap comparisons between the population spectrum and the
// leading eigenvalues of the selected submatrix.
struct EigengapStats {
  double gap_pop_minus_emp;   // lambda_k - lambda_tilde_{k+1}
  double gap_emp_minus_pop;   // lambda_tilde_k - lambda_{k+1}
  double lambda_tilde_k;
  bool pop_minus_emp_ok;      // lambda_k - lambda_tilde_{k+1} >= (lambda_k - lambda_{k+1}) / 8
  bool emp_minus_pop_ok;      // lambda_tilde_k - lambda_{k+1} >= (lambda_k - lambda_{k+1}) / 8
  bool level_ok;              // lambda_tilde_k >= lambda_k / 4

  bool all_ok() const { return pop_minus_emp_ok && emp_minus_pop_ok && level_ok; }
};

EigengapStats eigengap_stats(const SubspaceEstimate& estimate,
                             const SparseCovarianceModel& model);

}  // namespace esp
