#include "esp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace esp {

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

// lambda_1 (sqrt(s/n) + sqrt(log p / n)), the concentration rate.
double concentration_rate(const SparseCovarianceModel& model, int n) {
  const double nd = static_cast<double>(n);
  return model.spike_eigenvalues[0] *
         (std::sqrt(model.s / nd) + std::sqrt(std::log(static_cast<double>(model.p)) / nd));
}

}  // namespace

ExperimentConfig default_lemma_config() {
  ExperimentConfig config;
  config.p = 80;
  config.s = 10;
  config.k = 2;
  config.spikes = {8.0, 6.0};
  config.bulk = 1.0;
  config.coherence_profile = CoherenceProfile::kFlat;
  config.dist = DesignKind::kGaussian;
  config.selector = SelectorKind::kOracle;
  config.n_grid = {500, 1000, 2000, 4000};
  config.trials_per_cell = 40;
  config.master_seed = 20240901;
  return config;
}

std::vector<LemmaSuiteResult> run_lemma_suites(const ExperimentConfig& input,
                                               const LemmaSuiteOptions& opts, int workers) {
  // The suites work on a single support size; collapse any s_grid first.
  ExperimentConfig config = input;
  if (!config.s_grid.empty()) {
    config.s = config.s_grid.front();
    config.s_grid.clear();
  }
  validate_config(config);
  std::vector<LemmaSuiteResult> results;

  const SparseCovarianceModel model = build_model_for(config, config.s);
  const double lambda_k = model.spike_eigenvalues[model.k - 1];
  const double gap = lambda_k - model.bulk_level;

  const SweepResult sweep = run_sweep(config, workers);

  // Suite 1: principal submatrix concentration. The spectral error of
  // sigma_hat on the true support should decay like n^{-1/2} and stay
  // within a constant of the rate.
  {
    std::vector<std::pair<double, double>> pts;
    double max_ratio = 0.0;
    for (const CellAggregate& cell : sweep.cells) {
      if (cell.s != config.s || !std::isfinite(cell.submatrix_concentration.mean)) {
        continue;
      }
      pts.emplace_back(std::log(static_cast<double>(cell.n)),
                       std::log(cell.submatrix_concentration.mean));
      max_ratio = std::max(max_ratio, cell.submatrix_concentration.mean /
                                          concentration_rate(model, cell.n));
    }
    bool pass = false;
    std::string detail;
    if (pts.size() < 2) {
      detail = "needs an n_grid with at least 2 points";
    } else {
      const RateFit fit = fit_rate(pts);
      pass = fit.slope >= opts.concentration_slope_lo &&
             fit.slope <= opts.concentration_slope_hi &&
             max_ratio <= opts.concentration_max_ratio;
      detail = "slope=" + fmt(fit.slope) + " in [" + fmt(opts.concentration_slope_lo) + "," +
               fmt(opts.concentration_slope_hi) + "], max_ratio=" + fmt(max_ratio) +
               " <= " + fmt(opts.concentration_max_ratio);
    }
    results.push_back({"submatrix-concentration", pass, detail});
  }

  // Suite 2: eigengap inequalities at the largest n.
  {
    ExperimentConfig cell_config = config;
    cell_config.n_grid = {config.n_grid.back()};
    cell_config.s_grid.clear();
    cell_config.trials_per_cell = opts.eigengap_trials;
    const SweepResult cell_sweep = run_sweep(cell_config, workers);
    const CellAggregate& cell = cell_sweep.cells.front();
    const double freq = cell.lemma2_rate;
    const bool pass = std::isfinite(freq) && freq >= opts.eigengap_min_freq;
    std::string detail = "all-three frequency " + fmt(freq) + " over " +
                         std::to_string(cell.trials - cell.failed) + " trials at n=" +
                         std::to_string(cell.n) + (pass ? " >= " : " < ") +
                         fmt(opts.eigengap_min_freq);
    if (!pass && gap < 1e-3 * lambda_k) {
      detail += " (population eigengap nearly degenerate: gap=" + fmt(gap) + ")";
    }
    results.push_back({"eigengap", pass, detail});
  }

  // Suite 3: spectral proximity of the projectors against the
  // (lambda_1 / gap) * rate envelope.
  {
    double max_ratio = 0.0;
    int used = 0;
    for (const CellAggregate& cell : sweep.cells) {
      if (cell.s != config.s || !std::isfinite(cell.err_proj_spectral.mean)) {
        continue;
      }
      // (lambda_1 / gap) (sqrt(s/n) + sqrt(log p / n))
      const double envelope = concentration_rate(model, cell.n) / gap;
      max_ratio = std::max(max_ratio, cell.err_proj_spectral.mean / envelope);
      ++used;
    }
    const bool pass = used > 0 && max_ratio <= opts.dk_max_ratio;
    results.push_back({"spectral-proximity", pass,
                       "max mean-distance/rate ratio " + fmt(max_ratio) +
                           (pass ? " <= " : " > ") + fmt(opts.dk_max_ratio)});
  }

  // Suite 4: sin-theta equivalences on random frame pairs; these are exact
  // norm inequalities, checked to a small float cushion.
  {
    Rng rng(opts.sintheta_seed);
    int violations = 0;
    for (int trial = 0; trial < opts.sintheta_pairs; ++trial) {
      const int cols = rng.uniform_int(1, opts.sintheta_max_cols);
      const int rows = rng.uniform_int(std::max(2 * cols, cols + 1), opts.sintheta_max_rows);
      const OrthonormalFrame a = random_orthonormal_frame(rows, cols, rng);
      const OrthonormalFrame b = random_orthonormal_frame(rows, cols, rng);
      const double st = sin_theta_spectral(a, b);
      const ProcrustesResult pr = procrustes_align(a, b);
      const double rot_dist = spectral_norm(a.mat() - pr.aligned);
      const double proj_dist = projection_distance_spectral(a, b);
      const double tol = opts.sintheta_tol;
      if (!(st <= rot_dist + tol && rot_dist <= std::sqrt(2.0) * st + tol)) {
        ++violations;
      } else if (!(st <= proj_dist + tol && proj_dist <= 2.0 * st + tol)) {
        ++violations;
      }
    }
    results.push_back({"sin-theta", violations == 0,
                       std::to_string(violations) + " violations over " +
                           std::to_string(opts.sintheta_pairs) + " frame pairs"});
  }

  return results;
}

}  // namespace esp
