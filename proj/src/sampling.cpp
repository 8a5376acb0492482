#include "esp/sampling.hpp"

namespace esp {

DataMatrix sample_design_noise(int n, int p, DesignKind kind, std::uint64_t seed) {
  if (n < 1 || p < 1) {
    throw InvalidInputError("sample_design_noise: need n >= 1, p >= 1");
  }
  Rng rng(seed);
  Eigen::MatrixXd y(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) {
      switch (kind) {
        case DesignKind::kGaussian:
          y(i, j) = rng.gaussian();
          break;
        case DesignKind::kRademacher:
          y(i, j) = rng.rademacher();
          break;
        case DesignKind::kUniform:
          y(i, j) = rng.uniform_unit_variance();
          break;
      }
    }
  }
  return DataMatrix{n, p, std::move(y), seed};
}

DataMatrix sample_data(const SparseCovarianceModel& model, int n, DesignKind kind,
                       std::uint64_t seed) {
  DataMatrix y = sample_design_noise(n, model.p, kind, seed);
  return DataMatrix{n, model.p, y.entries * model.sqrt_sigma.mat(), seed};
}

SymmetricMatrix empirical_covariance(const DataMatrix& x) {
  if (x.n < 1) {
    throw InvalidInputError("empirical_covariance: need n >= 1");
  }
  Eigen::MatrixXd cov = (x.entries.transpose() * x.entries) / static_cast<double>(x.n);
  return SymmetricMatrix(std::move(cov));
}

}  // namespace esp
