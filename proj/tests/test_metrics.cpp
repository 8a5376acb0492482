#include <doctest.h>

#include <cmath>

#include "esp/metrics.hpp"

using namespace esp;

namespace {

OrthonormalFrame column(std::initializer_list<double> values) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(values.size()), 1);
  int i = 0;
  for (double v : values) {
    m(i++, 0) = v;
  }
  return OrthonormalFrame(m);
}

}  // namespace

TEST_CASE("aligned entrywise error absorbs sign and rotation") {
  Rng rng(71);
  const OrthonormalFrame u = random_orthonormal_frame(8, 2, rng);
  CHECK(aligned_entrywise_error(u, u) <= 1e-12);

  const OrthonormalFrame v = random_orthonormal_frame(9, 1, rng);
  const OrthonormalFrame flipped(Eigen::MatrixXd(-v.mat()));
  CHECK(aligned_entrywise_error(v, flipped) <= 1e-12);

  // rotation invariance: U_true Q leaves the metric unchanged
  const OrthonormalFrame a = random_orthonormal_frame(10, 3, rng);
  const OrthonormalFrame b = random_orthonormal_frame(10, 3, rng);
  const OrthonormalFrame q = random_orthonormal_frame(3, 3, rng);
  const OrthonormalFrame b_rotated(Eigen::MatrixXd(b.mat() * q.mat()));
  CHECK(std::abs(aligned_entrywise_error(a, b) - aligned_entrywise_error(a, b_rotated)) <=
        1e-9);
}

TEST_CASE("aligned entrywise error plane-geometry value") {
  const double c30 = std::sqrt(3.0) / 2.0;
  const OrthonormalFrame e1 = column({1.0, 0.0});
  const OrthonormalFrame tilted = column({c30, 0.5});
  // W* picks +1; the difference vector is (1 - cos30, -sin30). Row norms of
  // the 2x1 difference are |1 - cos30| and sin30, so the max-row-norm metric
  // is sin30 = 0.5 while the Frobenius error is the full Euclidean length
  // 2 sin(15 deg).
  CHECK(aligned_entrywise_error(e1, tilted) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(frobenius_subspace_error(e1, tilted) ==
        doctest::Approx(0.51763809020504148).epsilon(1e-12));
}

TEST_CASE("frobenius subspace error and domination") {
  const OrthonormalFrame e1 = column({1.0, 0.0});
  const OrthonormalFrame e2 = column({0.0, 1.0});
  CHECK(frobenius_subspace_error(e1, e1) <= 1e-12);
  CHECK(frobenius_subspace_error(e1, e2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  Rng rng(72);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = rng.uniform_int(1, 4);
    const int p = rng.uniform_int(k + 1, 20);
    const OrthonormalFrame a = random_orthonormal_frame(p, k, rng);
    const OrthonormalFrame b = random_orthonormal_frame(p, k, rng);
    REQUIRE(aligned_entrywise_error(a, b) <= frobenius_subspace_error(a, b) + 1e-12);
  }
}

TEST_CASE("theorem bounds match independent arithmetic at kappa = 1") {
  // kappa = 1, k = 2, p = 100, s = 10, n = 1000:
  // sqrt(2 log(100) / 1000) + 10 log(100) / 1000 = 0.14202222010364254
  const SparseCovarianceModel model = build_spiked_sparse_model(
      100, 10, 2, {3.0, 3.0}, 1.0, CoherenceProfile::kFlat, 1);
  const BoundBreakdown b = theorem_bounds(model, 1000);
  CHECK(b.cor_bound_simplified == doctest::Approx(0.14202222010364254).epsilon(1e-12));
  CHECK(b.cor_bound == doctest::Approx(b.cor_bound_simplified).epsilon(1e-12));
  CHECK(b.thm1_total ==
        doctest::Approx(b.e1 + b.e2 + b.e3 + b.e4 + b.e5).epsilon(1e-15));
  CHECK(b.e1 >= 0.0);
  CHECK(b.e2 >= 0.0);
  CHECK(b.e3 >= 0.0);
  CHECK(b.e4 >= 0.0);
  CHECK(b.e5 >= 0.0);
}

TEST_CASE("quadrupling n halves the root terms and quarters the linear terms") {
  const SparseCovarianceModel model = build_spiked_sparse_model(
      100, 10, 2, {3.0, 3.0}, 1.0, CoherenceProfile::kFlat, 1);
  const int n = 1000;
  const BoundBreakdown b1 = theorem_bounds(model, n);
  const BoundBreakdown b4 = theorem_bounds(model, 4 * n);
  const double log_p = std::log(100.0);
  const double root_part = std::sqrt(2.0 * log_p / n);
  const double linear_part = 10.0 * log_p / n;
  CHECK(b1.cor_bound_simplified == doctest::Approx(root_part + linear_part).epsilon(1e-14));
  CHECK(b4.cor_bound_simplified ==
        doctest::Approx(0.5 * root_part + 0.25 * linear_part).epsilon(1e-14));
}

TEST_CASE("zero bulk removes the complement-leakage term") {
  const SparseCovarianceModel model = build_spiked_sparse_model(
      30, 6, 2, {3.0, 2.0}, 0.0, CoherenceProfile::kFlat, 1);
  const BoundBreakdown b = theorem_bounds(model, 500);
  CHECK(b.e4 == 0.0);
}

TEST_CASE("theorem bound terms follow their definitions") {
  const SparseCovarianceModel model = build_spiked_sparse_model(
      200, 20, 2, {10.0, 8.0}, 1.0, CoherenceProfile::kFlat, 1);
  const int n = 4000;
  const BoundBreakdown b = theorem_bounds(model, n);

  const double lambda1 = 10.0;
  const double lambda_k = 8.0;
  const double lambda_k1 = 1.0;
  const double gap = lambda_k - lambda_k1;
  const double kappa = lambda1 / lambda_k;
  const double u2i = std::sqrt(2.0 / 20.0);
  const double sigma_max = model.sigma.max_abs();
  const double lp = std::log(200.0);
  const double slp_n = 20.0 * lp / n;
  CHECK(b.e1 == doctest::Approx((kappa * lambda1 / gap) * slp_n * u2i +
                                kappa * 2.0 * std::sqrt(lp / n) * u2i)
                    .epsilon(1e-12));
  CHECK(b.e2 == doctest::Approx((lambda1 * lambda1 / (gap * gap)) * slp_n * u2i).epsilon(1e-12));
  CHECK(b.e3 == doctest::Approx(std::sqrt(slp_n) * (kappa * std::sqrt(lambda1) / gap) *
                                std::min(std::sqrt(sigma_max), std::sqrt(lambda1) * u2i))
                    .epsilon(1e-12));
  CHECK(b.e4 == doctest::Approx((lambda_k1 / lambda_k) * kappa * kappa *
                                    std::sqrt(2.0 * lp / n) +
                                (lambda_k1 / lambda_k) * kappa * kappa * kappa * slp_n)
                    .epsilon(1e-12));
  CHECK(b.e5 == doctest::Approx((kappa * lambda1 / gap) * slp_n +
                                kappa * std::sqrt(2.0 * lp / n))
                    .epsilon(1e-12));
}

TEST_CASE("theorem bounds reject degenerate inputs") {
  const SparseCovarianceModel model = build_spiked_sparse_model(
      10, 4, 1, {3.0}, 1.0, CoherenceProfile::kFlat, 1);
  CHECK_THROWS_AS(theorem_bounds(model, 1), InvalidInputError);

  SparseCovarianceModel degenerate = model;
  degenerate.bulk_level = 3.0;  // gap collapses
  CHECK_THROWS_AS(theorem_bounds(degenerate, 100), DegenerateGapError);
}

TEST_CASE("submatrix concentration statistic") {
  const SparseCovarianceModel model = build_spiked_sparse_model(
      8, 3, 1, {5.0}, 1.0, CoherenceProfile::kFlat, 1);
  CHECK(submatrix_concentration_stat(model.sigma, model) <= 1e-12);

  // rank-one bump on a support coordinate has spectral norm epsilon
  Eigen::MatrixXd bumped = model.sigma.mat();
  bumped(0, 0) += 0.37;
  CHECK(submatrix_concentration_stat(SymmetricMatrix(bumped), model) ==
        doctest::Approx(0.37).epsilon(1e-12));

  // bump off the support is invisible to the statistic
  Eigen::MatrixXd off = model.sigma.mat();
  off(7, 7) += 1.3;
  CHECK(submatrix_concentration_stat(SymmetricMatrix(off), model) <= 1e-12);
}

TEST_CASE("eigengap statistics on exact and constructed inputs") {
  const SparseCovarianceModel model = build_spiked_sparse_model(
      8, 3, 1, {8.0}, 1.0, CoherenceProfile::kFlat, 1);
  const SubspaceEstimate exact =
      estimate_sparse_subspace(model.sigma, oracle_select(model), 1);
  const EigengapStats st = eigengap_stats(exact, model);
  CHECK(st.all_ok());
  CHECK(st.lambda_tilde_k == doctest::Approx(8.0).epsilon(1e-10));
  CHECK(st.gap_pop_minus_emp == doctest::Approx(7.0).epsilon(1e-9));
  CHECK(st.gap_emp_minus_pop == doctest::Approx(7.0).epsilon(1e-9));

  // lambda_tilde_k = lambda_k / 8 trips the level inequality
  SubspaceEstimate weak = exact;
  weak.lambda_tilde = Spectrum({1.0});
  weak.lambda_tilde_kplus1 = 0.5;
  const EigengapStats bad = eigengap_stats(weak, model);
  CHECK_FALSE(bad.level_ok);
  CHECK(bad.pop_minus_emp_ok);      // 8 - 0.5 >= 7/8
  CHECK_FALSE(bad.emp_minus_pop_ok);  // 1 - 1 = 0 < 7/8
}
