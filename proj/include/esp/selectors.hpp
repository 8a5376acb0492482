#pragma once

#include <string>
#include <vector>

#include "esp/model.hpp"

namespace esp {

struct SupportDiagnostics {
  int iterations{0};
  double primal_residual{0.0};
  double dual_residual{0.0};
  double threshold{0.0};     // rho for fps, diagonal cutoff for diag
  bool used_fallback{false};
};

// An estimated support set with provenance.
struct SupportEstimate {
  std::vector<int> indices;  // strictly increasing, within [0, p), non-empty
  std::string method;
  SupportDiagnostics diagnostics;
};

// The idealized sparsistent selector: returns the true support, ignores data.
SupportEstimate oracle_select(const SparseCovarianceModel& model);

// Indices of the s_target largest diagonal entries of sigma_hat, ties broken
// toward the lower index.
SupportEstimate diagonal_threshold_select(const SymmetricMatrix& sigma_hat, int s_target);

struct AdmmOptions {
  double step_size{1.0};
  int max_iter{2000};
  double tol_abs{1e-6};
  double tol_rel{1e-5};
  double support_eps{1e-8};
};

struct FantopeSolution {
  SymmetricMatrix h;  // Fantope-feasible iterate
  SymmetricMatrix z;  // sparse iterate (exact zeros)
  double primal_residual;
  double dual_residual;
  int iterations;
  bool converged;
};

struct FpsResult {
  SupportEstimate support;
  FantopeSolution solution;
};

// Fantope projection and selection: maximizes <sigma_hat, H> - rho ||H||_1
// over the Fantope by scaled ADMM. The support is read off the diagonal of
// the sparse iterate Z; an empty support falls back to diagonal
// thresholding with s_target = k so the pipeline always has a support.
// Hitting max_iter reports converged = false rather than throwing.
FpsResult fps_select(const SymmetricMatrix& sigma_hat, int k, double rho,
                     const AdmmOptions& opts = {});

// Default penalty rule: scale * sqrt(log(p)/n) * max diagonal of sigma_hat.
double default_fps_rho(const SymmetricMatrix& sigma_hat, int n, double scale = 2.0);

}  // namespace esp
