#pragma once

#include <Eigen/Dense>
#include <vector>

#include "esp/errors.hpp"
#include "esp/rng.hpp"

namespace esp {

// Dense real symmetric matrix. Construction symmetrizes by averaging the
// input with its transpose and rejects non-finite entries.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(Eigen::MatrixXd entries);

  static SymmetricMatrix Identity(int dim);
  static SymmetricMatrix FromDiagonal(const Eigen::VectorXd& diag);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  // Maximum entry norm.
  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }

  // Principal submatrix on the given (sorted) index set.
  SymmetricMatrix submatrix(const std::vector<int>& indices) const;

 private:
  Eigen::MatrixXd m_;
};

// Matrix with orthonormal columns (cols <= rows). Construction checks
// ||F'F - I||_max <= 1e-8.
class OrthonormalFrame {
 public:
  explicit OrthonormalFrame(Eigen::MatrixXd entries);

  int rows() const { return static_cast<int>(f_.rows()); }
  int cols() const { return static_cast<int>(f_.cols()); }
  const Eigen::MatrixXd& mat() const { return f_; }

 private:
  Eigen::MatrixXd f_;
};

// Real eigenvalues sorted in descending order.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

struct EigenDecomposition {
  Spectrum eigenvalues;         // descending
  OrthonormalFrame eigenvectors;  // full square, column i pairs with eigenvalue i
};

// Full symmetric eigendecomposition, eigenvalues descending. Sign
// convention: in each eigenvector column the first entry of largest
// magnitude is made positive.
EigenDecomposition sym_eigen(const SymmetricMatrix& m);

// Symmetric PSD square root. Eigenvalues in [-psd_tol, 0) are clamped to
// zero; anything below -psd_tol raises NotPsdError.
SymmetricMatrix matrix_sqrt(const SymmetricMatrix& m, double psd_tol = 1e-10);

struct ProcrustesResult {
  Eigen::MatrixXd rotation;  // k x k orthogonal W*
  Eigen::MatrixXd aligned;   // B * W*
};

// Orthogonal matrix W* minimizing ||A - B W||_F, from the SVD of B'A.
ProcrustesResult procrustes_align(const OrthonormalFrame& a, const OrthonormalFrame& b);

// Maximum Euclidean row norm.
double two_to_inf_norm(const Eigen::MatrixXd& m);

// Spectral norm from the singular values of the full decomposition.
double spectral_norm(const Eigen::MatrixXd& m);

// Largest principal-angle sine between the column spans: max_i
// sqrt(1 - sigma_i^2) over singular values of A'B. Lies in [0, 1].
double sin_theta_spectral(const OrthonormalFrame& a, const OrthonormalFrame& b);

// Spectral norm of the projector difference ||AA' - BB'||.
double projection_distance_spectral(const OrthonormalFrame& a, const OrthonormalFrame& b);

// Euclidean projection onto {H : 0 <= H <= I, Tr H = k}. Eigenvalues are
// water-filled: gamma_i = clamp(lambda_i - theta, 0, 1) with theta found by
// bisection so that sum gamma_i = k.
SymmetricMatrix fantope_project(const SymmetricMatrix& a, int k);

// Entrywise sign(m) * max(|m| - rho, 0).
SymmetricMatrix soft_threshold(const SymmetricMatrix& m, double rho);

// Haar-distributed orthonormal frame from QR of a Gaussian ensemble, with
// R-diagonal sign fixing for determinism.
OrthonormalFrame random_orthonormal_frame(int rows, int cols, Rng& rng);

}  // namespace esp
