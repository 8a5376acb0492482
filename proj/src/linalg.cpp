#include "esp/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

namespace esp {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* who) {
  if (!m.allFinite()) {
    throw InvalidInputError(std::string(who) + ": non-finite entries");
  }
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(Eigen::MatrixXd entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    throw InvalidInputError("SymmetricMatrix: input must be square and non-empty");
  }
  require_finite(entries, "SymmetricMatrix");
  m_ = 0.5 * (entries + entries.transpose()).eval();
}

SymmetricMatrix SymmetricMatrix::Identity(int dim) {
  return SymmetricMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

SymmetricMatrix SymmetricMatrix::FromDiagonal(const Eigen::VectorXd& diag) {
  return SymmetricMatrix(Eigen::MatrixXd(diag.asDiagonal()));
}

SymmetricMatrix SymmetricMatrix::submatrix(const std::vector<int>& indices) const {
  const int m = static_cast<int>(indices.size());
  if (m < 1) {
    throw InvalidInputError("SymmetricMatrix::submatrix: empty index set");
  }
  Eigen::MatrixXd out(m, m);
  for (int i = 0; i < m; ++i) {
    const int ii = indices[static_cast<size_t>(i)];
    if (ii < 0 || ii >= dim()) {
      throw InvalidInputError("SymmetricMatrix::submatrix: index out of range");
    }
    for (int j = 0; j < m; ++j) {
      out(i, j) = m_(ii, indices[static_cast<size_t>(j)]);
    }
  }
  return SymmetricMatrix(std::move(out));
}

OrthonormalFrame::OrthonormalFrame(Eigen::MatrixXd entries) {
  if (entries.rows() < 1 || entries.cols() < 1 || entries.cols() > entries.rows()) {
    throw InvalidInputError("OrthonormalFrame: need 1 <= cols <= rows");
  }
  require_finite(entries, "OrthonormalFrame");
  const Eigen::MatrixXd gram = entries.transpose() * entries;
  const double defect =
      (gram - Eigen::MatrixXd::Identity(entries.cols(), entries.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-8) {
    throw InvalidInputError("OrthonormalFrame: columns not orthonormal (defect " +
                            std::to_string(defect) + ")");
  }
  f_ = std::move(entries);
}

Spectrum::Spectrum(std::vector<double> values) {
  if (values.empty()) {
    throw InvalidInputError("Spectrum: empty");
  }
  for (size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw InvalidInputError("Spectrum: non-finite eigenvalue");
    }
    if (i > 0 && values[i] > values[i - 1]) {
      throw InvalidInputError("Spectrum: values not sorted descending");
    }
  }
  values_ = std::move(values);
}

EigenDecomposition sym_eigen(const SymmetricMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.mat());
  if (solver.info() != Eigen::Success) {
    throw InternalError("sym_eigen: eigensolver failed to converge");
  }
  const int n = m.dim();
  // Eigen returns ascending order; flip to descending.
  Eigen::VectorXd vals = solver.eigenvalues().reverse();
  Eigen::MatrixXd vecs = solver.eigenvectors().rowwise().reverse();

  // Sign convention: first entry of largest magnitude in each column positive.
  for (int j = 0; j < n; ++j) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      const double a = std::abs(vecs(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (vecs(arg, j) < 0.0) {
      vecs.col(j) = -vecs.col(j);
    }
  }

  return EigenDecomposition{
      Spectrum(std::vector<double>(vals.data(), vals.data() + n)),
      OrthonormalFrame(std::move(vecs))};
}

SymmetricMatrix matrix_sqrt(const SymmetricMatrix& m, double psd_tol) {
  const EigenDecomposition ed = sym_eigen(m);
  const int n = m.dim();
  Eigen::VectorXd roots(n);
  for (int i = 0; i < n; ++i) {
    const double lam = ed.eigenvalues[i];
    if (lam < -psd_tol) {
      throw NotPsdError("matrix_sqrt: eigenvalue " + std::to_string(lam) +
                        " below -psd_tol");
    }
    roots[i] = lam > 0.0 ? std::sqrt(lam) : 0.0;
  }
  const Eigen::MatrixXd& v = ed.eigenvectors.mat();
  return SymmetricMatrix(v * roots.asDiagonal() * v.transpose());
}

ProcrustesResult procrustes_align(const OrthonormalFrame& a, const OrthonormalFrame& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInputError("procrustes_align: shape mismatch");
  }
  const Eigen::MatrixXd bta = b.mat().transpose() * a.mat();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(bta, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd w = svd.matrixU() * svd.matrixV().transpose();
  Eigen::MatrixXd aligned = b.mat() * w;
  return ProcrustesResult{std::move(w), std::move(aligned)};
}

double two_to_inf_norm(const Eigen::MatrixXd& m) {
  require_finite(m, "two_to_inf_norm");
  return m.rowwise().norm().maxCoeff();
}

double spectral_norm(const Eigen::MatrixXd& m) {
  require_finite(m, "spectral_norm");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

double sin_theta_spectral(const OrthonormalFrame& a, const OrthonormalFrame& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInputError("sin_theta_spectral: shape mismatch");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.mat().transpose() * b.mat());
  double worst = 0.0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    const double c = std::min(1.0, svd.singularValues()(i));
    worst = std::max(worst, std::sqrt(std::max(0.0, 1.0 - c * c)));
  }
  return worst;
}

double projection_distance_spectral(const OrthonormalFrame& a, const OrthonormalFrame& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInputError("projection_distance_spectral: shape mismatch");
  }
  const Eigen::MatrixXd diff =
      a.mat() * a.mat().transpose() - b.mat() * b.mat().transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(diff);
  if (solver.info() != Eigen::Success) {
    throw InternalError("projection_distance_spectral: eigensolver failed");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

SymmetricMatrix fantope_project(const SymmetricMatrix& a, int k) {
  const int n = a.dim();
  if (k < 1 || k > n) {
    throw InvalidInputError("fantope_project: need 1 <= k <= dim");
  }
  const EigenDecomposition ed = sym_eigen(a);

  const auto filled = [&](double theta) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      total += std::clamp(ed.eigenvalues[i] - theta, 0.0, 1.0);
    }
    return total;
  };

  // filled(theta) decreases from n at lambda_min - 1 to 0 at lambda_max, so
  // the level-k crossing is bracketed; the small pad keeps the bracket valid
  // under round-off when k == n.
  double lo = ed.eigenvalues[n - 1] - 1.0 - 1e-9;
  double hi = ed.eigenvalues[0];
  if (filled(lo) < static_cast<double>(k) || filled(hi) > static_cast<double>(k)) {
    throw InternalError("fantope_project: bisection bracket lost");
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (filled(mid) >= static_cast<double>(k)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double theta = 0.5 * (lo + hi);

  Eigen::VectorXd gamma(n);
  for (int i = 0; i < n; ++i) {
    gamma[i] = std::clamp(ed.eigenvalues[i] - theta, 0.0, 1.0);
  }
  const Eigen::MatrixXd& v = ed.eigenvectors.mat();
  return SymmetricMatrix(v * gamma.asDiagonal() * v.transpose());
}

SymmetricMatrix soft_threshold(const SymmetricMatrix& m, double rho) {
  if (!(rho >= 0.0)) {
    throw InvalidInputError("soft_threshold: rho must be nonnegative");
  }
  Eigen::MatrixXd out = m.mat().unaryExpr([rho](double x) {
    const double mag = std::abs(x) - rho;
    return mag > 0.0 ? (x > 0.0 ? mag : -mag) : 0.0;
  });
  return SymmetricMatrix(std::move(out));
}

OrthonormalFrame random_orthonormal_frame(int rows, int cols, Rng& rng) {
  if (cols < 1 || cols > rows) {
    throw InvalidInputError("random_orthonormal_frame: need 1 <= cols <= rows");
  }
  Eigen::MatrixXd g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      g(i, j) = rng.gaussian();
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    if (r(j, j) < 0.0) {
      q.col(j) = -q.col(j);
    }
  }
  return OrthonormalFrame(std::move(q));
}

}  // namespace esp
