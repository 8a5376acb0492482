#pragma once

#include <cstdint>
#include <vector>

#include "esp/linalg.hpp"

namespace esp {

enum class CoherenceProfile { kFlat, kRandom };

// Ground-truth covariance with a sparse k-dimensional leading subspace:
// Sigma = U diag(spikes) U' + bulk_level (I - U U'), rows of U outside the
// support identically zero.
struct SparseCovarianceModel {
  int p;
  int s;
  int k;
  std::vector<int> support;     // ordered index set, |support| = s
  OrthonormalFrame u;           // p x k
  Spectrum spike_eigenvalues;   // length k, descending
  double bulk_level;            // lambda_{k+1} of Sigma
  SymmetricMatrix sigma;
  SymmetricMatrix sqrt_sigma;   // cached Sigma^{1/2} for sampling
  double kappa;                 // spikes[0] / spikes[k-1]
};

struct AssumptionReport {
  bool dims_ok;
  double dims_margin;            // s log(p) / n
  bool sparsistency_checkable;   // always false: property of the selector, not the model
  bool eigengap_ok;
  double eigengap_slack;         // lambda_k/8 - C lambda_1 (sqrt(s/n)+sqrt(log p/n)) - lambda_{k+1}/8
  bool ratio_ok;                 // 2 lambda_{k+1} < (1 - eps) lambda_k
  bool incoherence_ok;
  double incoherence_ratio;      // ||U||_{2->inf} / sqrt(k/s)
  bool k_vs_sqrt_s_ok;
};

// Build a model with support {0..s-1}. The flat profile uses trigonometric
// columns with exactly equal row norms sqrt(k/s); the random profile draws a
// seeded Haar frame on the support.
SparseCovarianceModel build_spiked_sparse_model(int p, int s, int k,
                                                const std::vector<double>& spike_eigenvalues,
                                                double bulk_level,
                                                CoherenceProfile profile,
                                                std::uint64_t seed);

// Apply a seeded coordinate permutation: Sigma -> P Sigma P', U -> P U,
// support remapped and re-sorted. Spectrum, kappa and all subspace
// geometry are unchanged.
SparseCovarianceModel permute_model(const SparseCovarianceModel& model, std::uint64_t seed);

// Evaluate the model assumptions as predicates at sample size n.
// C scales the eigengap condition, eps the eigenvalue-ratio condition,
// c_inc the incoherence constant.
AssumptionReport check_assumptions(const SparseCovarianceModel& model, int n,
                                   double C = 1.0, double eps = 1.0 / 32.0,
                                   double c_inc = 3.0);

}  // namespace esp
