#include "esp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace esp {

namespace {

// s x k orthonormal matrix whose rows all have norm exactly sqrt(k/s):
// the constant column plus cosine/sine pairs at integer frequencies. A
// pair contributes 2/s to every squared row norm and the constant 1/s, so
// taking the constant column only when k is odd keeps rows exactly flat.
Eigen::MatrixXd flat_support_frame(int s, int k) {
  Eigen::MatrixXd u(s, k);
  int col = 0;
  if (k % 2 == 1) {
    u.col(col++).setConstant(1.0 / std::sqrt(static_cast<double>(s)));
  }
  const double scale = std::sqrt(2.0 / static_cast<double>(s));
  for (int freq = 1; col < k; ++freq) {
    if (2 * freq >= s) {
      throw InvalidInputError("flat profile: k too large for support size");
    }
    for (int t = 0; t < s; ++t) {
      const double angle = 2.0 * std::numbers::pi * freq * t / static_cast<double>(s);
      u(t, col) = scale * std::cos(angle);
      u(t, col + 1) = scale * std::sin(angle);
    }
    col += 2;
  }
  return u;
}

}  // namespace

SparseCovarianceModel build_spiked_sparse_model(int p, int s, int k,
                                                const std::vector<double>& spike_eigenvalues,
                                                double bulk_level,
                                                CoherenceProfile profile,
                                                std::uint64_t seed) {
  if (!(k >= 1 && k < s && s <= p)) {
    throw InvalidInputError("build_spiked_sparse_model: need 1 <= k < s <= p");
  }
  if (static_cast<int>(spike_eigenvalues.size()) != k) {
    throw InvalidInputError("build_spiked_sparse_model: spike list must have k entries");
  }
  for (int i = 1; i < k; ++i) {
    if (spike_eigenvalues[static_cast<size_t>(i)] > spike_eigenvalues[static_cast<size_t>(i - 1)]) {
      throw InvalidInputError("build_spiked_sparse_model: spikes must be descending");
    }
  }
  if (!(bulk_level >= 0.0) || !(spike_eigenvalues.back() > bulk_level)) {
    throw InvalidInputError("build_spiked_sparse_model: need min spike > bulk_level >= 0");
  }

  Eigen::MatrixXd u_support;
  if (profile == CoherenceProfile::kFlat) {
    u_support = flat_support_frame(s, k);
  } else {
    Rng rng(seed);
    u_support = random_orthonormal_frame(s, k, rng).mat();
  }

  Eigen::MatrixXd u_full = Eigen::MatrixXd::Zero(p, k);
  u_full.topRows(s) = u_support;

  Eigen::VectorXd spikes = Eigen::Map<const Eigen::VectorXd>(
      spike_eigenvalues.data(), static_cast<Eigen::Index>(spike_eigenvalues.size()));
  Eigen::MatrixXd sigma = u_full * spikes.asDiagonal() * u_full.transpose() +
                          bulk_level * (Eigen::MatrixXd::Identity(p, p) -
                                        u_full * u_full.transpose());

  std::vector<int> support(static_cast<size_t>(s));
  std::iota(support.begin(), support.end(), 0);

  SymmetricMatrix sigma_sym{std::move(sigma)};
  SymmetricMatrix root = matrix_sqrt(sigma_sym);
  return SparseCovarianceModel{
      p,
      s,
      k,
      std::move(support),
      OrthonormalFrame(std::move(u_full)),
      Spectrum(spike_eigenvalues),
      bulk_level,
      std::move(sigma_sym),
      std::move(root),
      spike_eigenvalues.front() / spike_eigenvalues.back()};
}

SparseCovarianceModel permute_model(const SparseCovarianceModel& model, std::uint64_t seed) {
  const int p = model.p;
  std::vector<int> perm(static_cast<size_t>(p));
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  // Fisher-Yates with the project generator, independent of std::shuffle.
  for (int i = p - 1; i > 0; --i) {
    const int j = rng.uniform_int(0, i);
    std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
  }

  // perm[old] = new coordinate.
  Eigen::MatrixXd u_new = Eigen::MatrixXd::Zero(p, model.k);
  Eigen::MatrixXd sigma_new(p, p);
  Eigen::MatrixXd root_new(p, p);
  for (int i = 0; i < p; ++i) {
    u_new.row(perm[static_cast<size_t>(i)]) = model.u.mat().row(i);
    for (int j = 0; j < p; ++j) {
      sigma_new(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]) = model.sigma(i, j);
      root_new(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]) = model.sqrt_sigma(i, j);
    }
  }
  std::vector<int> support_new;
  support_new.reserve(model.support.size());
  for (int idx : model.support) {
    support_new.push_back(perm[static_cast<size_t>(idx)]);
  }
  std::sort(support_new.begin(), support_new.end());

  return SparseCovarianceModel{model.p,
                               model.s,
                               model.k,
                               std::move(support_new),
                               OrthonormalFrame(std::move(u_new)),
                               model.spike_eigenvalues,
                               model.bulk_level,
                               SymmetricMatrix(std::move(sigma_new)),
                               SymmetricMatrix(std::move(root_new)),
                               model.kappa};
}

AssumptionReport check_assumptions(const SparseCovarianceModel& model, int n,
                                   double C, double eps, double c_inc) {
  if (n < 1) {
    throw InvalidInputError("check_assumptions: n >= 1 required");
  }
  if (!(C > 0.0) || !(eps > 0.0 && eps < 1.0) || !(c_inc > 0.0)) {
    throw InvalidInputError("check_assumptions: bad constants");
  }
  const double lambda1 = model.spike_eigenvalues[0];
  const double lambda_k = model.spike_eigenvalues[model.k - 1];
  const double lambda_k1 = model.bulk_level;
  const double log_p = std::log(static_cast<double>(model.p));
  const double nd = static_cast<double>(n);

  AssumptionReport report{};
  report.dims_margin = model.s * log_p / nd;
  report.dims_ok = report.dims_margin < 1.0;
  report.sparsistency_checkable = false;

  const double lhs = C * lambda1 * (std::sqrt(model.s / nd) + std::sqrt(log_p / nd)) +
                     lambda_k1 / 8.0;
  report.eigengap_slack = lambda_k / 8.0 - lhs;
  report.eigengap_ok = lhs <= lambda_k / 8.0;

  report.ratio_ok = 2.0 * lambda_k1 < (1.0 - eps) * lambda_k;

  const double flat_level = std::sqrt(static_cast<double>(model.k) / model.s);
  report.incoherence_ratio = two_to_inf_norm(model.u.mat()) / flat_level;
  report.incoherence_ok = report.incoherence_ratio <= c_inc;

  report.k_vs_sqrt_s_ok = static_cast<double>(model.k) <= std::sqrt(static_cast<double>(model.s));
  return report;
}

}  // namespace esp
