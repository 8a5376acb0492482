// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "esp/experiments.hpp"
#include "esp/verify.hpp"

using namespace esp;

namespace {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream out;
  out.precision(precision);
  out << v;
  return out.str();
}

ExperimentConfig rate_sweep_config() {
  ExperimentConfig config;
  config.p = 200;
  config.s = 20;
  config.k = 2;
  config.spikes = {10.0, 8.0};
  config.bulk = 1.0;
  config.coherence_profile = CoherenceProfile::kFlat;
  config.dist = DesignKind::kGaussian;
  config.selector = SelectorKind::kOracle;
  config.n_grid = {1000, 2000, 4000, 8000, 16000};
  config.trials_per_cell = 50;
  config.master_seed = 20250808;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  int workers = 1;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--workers") == 0) {
      workers = std::atoi(argv[i + 1]);
    }
  }
  if (workers < 1) {
    workers = 1;
  }

  std::vector<CriterionResult> results;
  const auto report = [&](int id, const std::string& name, bool pass,
                          const std::string& detail) {
    results.push_back({id, name, pass, detail});
    std::cout << (pass ? "PASS" : "FAIL") << "  C" << id << "  " << name << ": " << detail
              << std::endl;
  };

  const ExperimentConfig base = rate_sweep_config();
  const double lambda1 = base.spikes[0];
  const double gap = base.spikes[1] - base.bulk;  // lambda_k - lambda_{k+1}
  const double log_p = std::log(static_cast<double>(base.p));

  // ---- shared sweep for criteria 1, 2, 3, 5, 10 ----
  const auto sweep_start = std::chrono::steady_clock::now();
  const SweepResult sweep = run_sweep(base, workers);
  const double sweep_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - sweep_start).count();

  // Criterion 1: entrywise error decays like n^{-1/2} over the grid.
  {
    const bool slope_ok = sweep.fit_n_defined && sweep.fit_n.slope >= -0.65 &&
                          sweep.fit_n.slope <= -0.35;
    const bool time_ok = workers > 1 || sweep_seconds < 600.0;
    report(1, "entrywise rate in n", slope_ok && time_ok,
           "slope=" + fmt(sweep.fit_n.slope) + " in [-0.65,-0.35], sweep took " +
               fmt(sweep_seconds, 3) + "s with workers=" + std::to_string(workers) +
               " (single-threaded target <600s)");
  }

  // Criterion 2: the entrywise error beats the Frobenius error.
  {
    double worst_ratio = 0.0;
    for (const CellAggregate& cell : sweep.cells) {
      worst_ratio = std::max(worst_ratio, cell.err_2inf.mean / cell.err_frob.mean);
    }
    int violations = 0;
    for (const TrialRecord& rec : sweep.records) {
      if (!(rec.err_2inf <= rec.err_frob)) {
        ++violations;
      }
    }
    report(2, "entrywise beats Frobenius", worst_ratio <= 0.6 && violations == 0,
           "max cell ratio=" + fmt(worst_ratio) + " <= 0.6, per-trial violations=" +
               std::to_string(violations) + "/" + std::to_string(sweep.records.size()));
  }

  // Criterion 3: submatrix concentration rate and design robustness at n=4000.
  {
    std::vector<std::pair<double, double>> pts;
    for (const CellAggregate& cell : sweep.cells) {
      pts.emplace_back(std::log(static_cast<double>(cell.n)),
                       std::log(cell.submatrix_concentration.mean));
    }
    const RateFit fit = fit_rate(pts);
    const bool slope_ok = fit.slope >= -0.6 && fit.slope <= -0.4;

    ExperimentConfig cross = base;
    cross.n_grid = {4000};
    double means[3];
    means[0] = 0.0;
    for (const CellAggregate& cell : sweep.cells) {
      if (cell.n == 4000) {
        means[0] = cell.submatrix_concentration.mean;
      }
    }
    cross.dist = DesignKind::kRademacher;
    means[1] = run_sweep(cross, workers).cells.front().submatrix_concentration.mean;
    cross.dist = DesignKind::kUniform;
    means[2] = run_sweep(cross, workers).cells.front().submatrix_concentration.mean;
    const double hi_mean = std::max({means[0], means[1], means[2]});
    const double lo_mean = std::min({means[0], means[1], means[2]});
    const bool cross_ok = hi_mean / lo_mean <= 2.0;
    report(3, "submatrix concentration rate", slope_ok && cross_ok,
           "slope=" + fmt(fit.slope) + " in [-0.6,-0.4]; design means at n=4000 " +
               "(gaussian=" + fmt(means[0]) + ", rademacher=" + fmt(means[1]) +
               ", uniform=" + fmt(means[2]) + "), spread factor=" + fmt(hi_mean / lo_mean) +
               " <= 2");
  }

  // Criterion 4: eigengap inequalities hold in at least 99% of 500 trials at n=8000.
  {
    ExperimentConfig gap_config = base;
    gap_config.n_grid = {8000};
    gap_config.trials_per_cell = 500;
    const SweepResult gap_sweep = run_sweep(gap_config, workers);
    const double freq = gap_sweep.cells.front().lemma2_rate;
    report(4, "eigengap lemma frequency", freq >= 0.99,
           "all-three frequency=" + fmt(freq, 5) + " over 500 trials at n=8000 (>= 0.99)");
  }

  // Criterion 5: projector distance stays within a constant of its rate.
  {
    double max_ratio = 0.0;
    for (const CellAggregate& cell : sweep.cells) {
      const double nd = static_cast<double>(cell.n);
      const double envelope =
          (lambda1 / gap) * (std::sqrt(base.s / nd) + std::sqrt(log_p / nd));
      max_ratio = std::max(max_ratio, cell.err_proj_spectral.mean / envelope);
    }
    report(5, "spectral proximity boundedness", max_ratio <= 10.0,
           "max cell ratio=" + fmt(max_ratio) + " <= 10");
  }

  // Criterion 6: sin-theta norm equivalences on 1000 random frame pairs.
  {
    Rng rng(2468);
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const int k = rng.uniform_int(1, 5);
      const int p = rng.uniform_int(std::max(k + 1, 2 * k), 50);
      const OrthonormalFrame a = random_orthonormal_frame(p, k, rng);
      const OrthonormalFrame b = random_orthonormal_frame(p, k, rng);
      const double st = sin_theta_spectral(a, b);
      const double rot = spectral_norm(a.mat() - procrustes_align(a, b).aligned);
      const double proj = projection_distance_spectral(a, b);
      const bool ok = st <= rot + 1e-9 && rot <= std::sqrt(2.0) * st + 1e-9 &&
                      st <= proj + 1e-9 && proj <= 2.0 * st + 1e-9;
      if (!ok) {
        ++violations;
      }
    }
    report(6, "sin-theta equivalences", violations == 0,
           std::to_string(violations) + " violations over 1000 pairs");
  }

  // Criterion 7: Fantope projection feasibility, idempotence, nearest point.
  {
    Rng rng(1357);
    int violations = 0;
    for (int trial = 0; trial < 500; ++trial) {
      const int dim = rng.uniform_int(2, 12);
      const int k = rng.uniform_int(1, std::min(4, dim));
      Eigen::MatrixXd g(dim, dim);
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          g(i, j) = 2.0 * rng.gaussian();
        }
      }
      const SymmetricMatrix a(g);
      const SymmetricMatrix h = fantope_project(a, k);
      bool ok = std::abs(h.mat().trace() - k) <= 1e-8;
      const EigenDecomposition ed = sym_eigen(h);
      ok = ok && ed.eigenvalues[0] <= 1.0 + 1e-9 && ed.eigenvalues[dim - 1] >= -1e-9;
      ok = ok && (fantope_project(h, k).mat() - h.mat()).cwiseAbs().maxCoeff() <= 1e-7;
      if (!ok) {
        ++violations;
      }
    }
    // nearest-point check on 3x3, k=1 instances against random Fantope members
    int nearest_violations = 0;
    for (int instance = 0; instance < 10; ++instance) {
      Eigen::MatrixXd g(3, 3);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          g(i, j) = 1.5 * rng.gaussian();
        }
      }
      const SymmetricMatrix a(g);
      const double best = (a.mat() - fantope_project(a, 1).mat()).norm();
      for (int member = 0; member < 10000; ++member) {
        Eigen::Vector3d gamma;
        double total = 0.0;
        for (int i = 0; i < 3; ++i) {
          gamma[i] = -std::log(1.0 - rng.uniform01());
          total += gamma[i];
        }
        gamma /= total;
        const OrthonormalFrame v = random_orthonormal_frame(3, 3, rng);
        const Eigen::MatrixXd h = v.mat() * gamma.asDiagonal() * v.mat().transpose();
        if (!(best <= (a.mat() - h).norm() + 1e-9)) {
          ++nearest_violations;
        }
      }
    }
    report(7, "fantope projection correctness", violations == 0 && nearest_violations == 0,
           std::to_string(violations) + " feasibility violations over 500 matrices, " +
               std::to_string(nearest_violations) + " nearest-point violations over 100000 members");
  }

  // Criterion 8: FPS sparsistency at strong signal.
  {
    const SparseCovarianceModel model =
        build_spiked_sparse_model(50, 5, 1, {20.0}, 1.0, CoherenceProfile::kFlat, 1);
    const int n = 2000;
    const int trials = 100;
    int correct = 0;
    std::vector<int> sym_diffs;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t seed = trial_seed(424242, n, model.s, t);
      const SymmetricMatrix sigma_hat =
          empirical_covariance(sample_data(model, n, DesignKind::kGaussian, seed));
      const FpsResult fps = fps_select(sigma_hat, 1, default_fps_rho(sigma_hat, n));
      if (fps.support.indices == model.support) {
        ++correct;
      } else {
        std::vector<int> diff;
        std::set_symmetric_difference(fps.support.indices.begin(), fps.support.indices.end(),
                                      model.support.begin(), model.support.end(),
                                      std::back_inserter(diff));
        sym_diffs.push_back(static_cast<int>(diff.size()));
      }
    }
    const double freq = static_cast<double>(correct) / trials;
    std::string failure_note;
    if (!sym_diffs.empty()) {
      failure_note = "; |J sym-diff| on failures:";
      for (int d : sym_diffs) {
        failure_note += " " + std::to_string(d);
      }
    }
    report(8, "fps sparsistency at strong signal", freq >= 0.9,
           "exact recovery " + std::to_string(correct) + "/" + std::to_string(trials) +
               " (>= 90%)" + failure_note);
  }

  // Criterion 9: Procrustes alignment beats random rotations.
  {
    Rng rng(9753);
    int violations = 0;
    for (int pair = 0; pair < 200; ++pair) {
      const int k = rng.uniform_int(1, 5);
      const int p = rng.uniform_int(std::max(k + 1, 2 * k), 50);
      const OrthonormalFrame a = random_orthonormal_frame(p, k, rng);
      const OrthonormalFrame b = random_orthonormal_frame(p, k, rng);
      const double best = (a.mat() - procrustes_align(a, b).aligned).norm();
      for (int w_trial = 0; w_trial < 200; ++w_trial) {
        const OrthonormalFrame w = random_orthonormal_frame(k, k, rng);
        if (!(best <= (a.mat() - b.mat() * w.mat()).norm() + 1e-9)) {
          ++violations;
        }
      }
    }
    report(9, "procrustes optimality", violations == 0,
           std::to_string(violations) + " violations over 200 pairs x 200 rotations");
  }

  // Criterion 10: rerunning the sweep reproduces the result CSV byte for byte.
  {
    const SweepResult rerun = run_sweep(base, workers);
    const bool identical = records_to_csv(sweep.records, /*include_elapsed=*/false) ==
                           records_to_csv(rerun.records, /*include_elapsed=*/false);
    report(10, "determinism", identical,
           identical ? "rerun CSV byte-identical (elapsed_ms excluded)"
                     : "rerun CSV differs");
  }

  int passed = 0;
  for (const CriterionResult& r : results) {
    passed += r.pass ? 1 : 0;
  }
  std::cout << passed << "/" << results.size() << " acceptance criteria passed" << std::endl;
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}
