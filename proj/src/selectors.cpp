#include "esp/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace esp {

SupportEstimate oracle_select(const SparseCovarianceModel& model) {
  return SupportEstimate{model.support, "oracle", {}};
}

SupportEstimate diagonal_threshold_select(const SymmetricMatrix& sigma_hat, int s_target) {
  const int p = sigma_hat.dim();
  if (s_target < 1 || s_target > p) {
    throw InvalidInputError("diagonal_threshold_select: s_target out of range");
  }
  std::vector<int> order(static_cast<size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return sigma_hat(a, a) > sigma_hat(b, b);
  });
  std::vector<int> picked(order.begin(), order.begin() + s_target);
  std::sort(picked.begin(), picked.end());
  SupportDiagnostics diag;
  diag.threshold = sigma_hat(order[static_cast<size_t>(s_target - 1)],
                             order[static_cast<size_t>(s_target - 1)]);
  return SupportEstimate{std::move(picked), "diag", diag};
}

FpsResult fps_select(const SymmetricMatrix& sigma_hat, int k, double rho,
                     const AdmmOptions& opts) {
  const int p = sigma_hat.dim();
  if (k < 1 || k > p) {
    throw InvalidInputError("fps_select: need 1 <= k <= p");
  }
  if (!(opts.step_size > 0.0)) {
    throw InvalidInputError("fps_select: step_size must be positive");
  }
  if (!(rho >= 0.0)) {
    throw InvalidInputError("fps_select: rho must be nonnegative");
  }

  const double sigma_step = opts.step_size;
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(p, p);
  Eigen::MatrixXd dual = Eigen::MatrixXd::Zero(p, p);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p, p);

  double primal = 0.0;
  double dual_res = 0.0;
  bool converged = false;
  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    h = fantope_project(SymmetricMatrix(z - dual + sigma_hat.mat() / sigma_step), k).mat();
    const Eigen::MatrixXd z_prev = z;
    z = soft_threshold(SymmetricMatrix(h + dual), rho / sigma_step).mat();
    dual += h - z;

    primal = (h - z).norm();
    dual_res = sigma_step * (z - z_prev).norm();
    const double scale = opts.tol_abs * p + opts.tol_rel * std::max(h.norm(), z.norm());
    if (primal <= scale && dual_res <= scale) {
      converged = true;
      ++iter;
      break;
    }
  }

  std::vector<int> support;
  for (int i = 0; i < p; ++i) {
    if (z(i, i) > opts.support_eps) {
      support.push_back(i);
    }
  }

  SupportDiagnostics diag;
  diag.iterations = iter;
  diag.primal_residual = primal;
  diag.dual_residual = dual_res;
  diag.threshold = rho;

  FantopeSolution solution{SymmetricMatrix(std::move(h)), SymmetricMatrix(std::move(z)),
                           primal, dual_res, iter, converged};

  if (support.empty()) {
    // Soft-thresholding wiped the entire diagonal; keep the pipeline total.
    SupportEstimate fallback = diagonal_threshold_select(sigma_hat, k);
    diag.used_fallback = true;
    return FpsResult{SupportEstimate{std::move(fallback.indices), "fps", diag},
                     std::move(solution)};
  }
  return FpsResult{SupportEstimate{std::move(support), "fps", diag}, std::move(solution)};
}

double default_fps_rho(const SymmetricMatrix& sigma_hat, int n, double scale) {
  if (n < 1) {
    throw InvalidInputError("default_fps_rho: n >= 1 required");
  }
  const double max_diag = sigma_hat.mat().diagonal().maxCoeff();
  return scale * std::sqrt(std::log(static_cast<double>(sigma_hat.dim())) /
                           static_cast<double>(n)) *
         max_diag;
}

}  // namespace esp
