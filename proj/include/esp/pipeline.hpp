#pragma once

#include "esp/selectors.hpp"

namespace esp {

// Output of the debiased estimator: leading k eigenvectors of the selected
// principal submatrix, zero-padded back to p rows.
struct SubspaceEstimate {
  OrthonormalFrame u_tilde;      // p x k, rows outside the support bitwise zero
  SupportEstimate support;
  Spectrum lambda_tilde;         // leading k eigenvalues of sigma_hat restricted to the support
  double lambda_tilde_kplus1;    // next eigenvalue (0 when |support| == k)
};

// Eigendecompose sigma_hat on the selected support, keep the top-k
// eigenvector columns, and scatter the rows back to their positions.
SubspaceEstimate estimate_sparse_subspace(const SymmetricMatrix& sigma_hat,
                                          const SupportEstimate& support, int k);

}  // namespace esp
