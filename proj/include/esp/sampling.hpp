#pragma once

#include <cstdint>

#include "esp/model.hpp"

namespace esp {

// Coordinate law for the latent design Y: each kind has mean zero and unit
// variance per coordinate.
enum class DesignKind { kGaussian, kRademacher, kUniform };

struct DataMatrix {
  int n;
  int p;
  Eigen::MatrixXd entries;  // n x p, row i is one observation
  std::uint64_t seed;
};

// n x p matrix of i.i.d. draws from the given kind, filled row-major so the
// stream is reproducible for a fixed seed.
DataMatrix sample_design_noise(int n, int p, DesignKind kind, std::uint64_t seed);

// Observations X = Y Sigma^{1/2} (each row X_i' = Y_i' Sigma^{1/2}).
DataMatrix sample_data(const SparseCovarianceModel& model, int n, DesignKind kind,
                       std::uint64_t seed);

// Method-of-moments estimator (1/n) X'X.
SymmetricMatrix empirical_covariance(const DataMatrix& x);

}  // namespace esp
