#include "esp/pipeline.hpp"

#include <algorithm>

namespace esp {

SubspaceEstimate estimate_sparse_subspace(const SymmetricMatrix& sigma_hat,
                                          const SupportEstimate& support, int k) {
  const int p = sigma_hat.dim();
  const int m = static_cast<int>(support.indices.size());
  if (k < 1 || k > m) {
    throw InvalidInputError("estimate_sparse_subspace: need 1 <= k <= |support|");
  }
  if (!std::is_sorted(support.indices.begin(), support.indices.end()) ||
      std::adjacent_find(support.indices.begin(), support.indices.end()) !=
          support.indices.end()) {
    throw InvalidInputError("estimate_sparse_subspace: support must be strictly increasing");
  }
  if (support.indices.front() < 0 || support.indices.back() >= p) {
    throw InvalidInputError("estimate_sparse_subspace: support index out of range");
  }

  const EigenDecomposition ed = sym_eigen(sigma_hat.submatrix(support.indices));

  Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(p, k);
  for (int r = 0; r < m; ++r) {
    padded.row(support.indices[static_cast<size_t>(r)]) =
        ed.eigenvectors.mat().row(r).head(k);
  }

  std::vector<double> top(ed.eigenvalues.values().begin(),
                          ed.eigenvalues.values().begin() + k);
  const double next = (m > k) ? ed.eigenvalues[k] : 0.0;
  return SubspaceEstimate{OrthonormalFrame(std::move(padded)), support,
                          Spectrum(std::move(top)), next};
}

}  // namespace esp
