#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "esp/metrics.hpp"
#include "esp/sampling.hpp"

namespace esp {

enum class SelectorKind { kOracle, kDiag, kFps };

struct FpsOptions {
  double rho_scale{2.0};  // rho = rho_scale * sqrt(log p / n) * max diag(sigma_hat)
  AdmmOptions admm{};
};

// Full description of a Monte Carlo experiment. Mirrored one-to-one by the
// key=value config format (see parse_config_text).
struct ExperimentConfig {
  // model
  int p{50};
  int s{5};
  int k{1};
  std::vector<double> spikes{10.0};
  double bulk{1.0};
  CoherenceProfile coherence_profile{CoherenceProfile::kFlat};
  bool permute_support{false};
  // data
  DesignKind dist{DesignKind::kGaussian};
  bool noiseless{false};  // debug mode: sigma_hat := Sigma
  // selector
  SelectorKind selector{SelectorKind::kOracle};
  int diag_s_target{0};  // 0 means "use s"
  FpsOptions fps{};
  // sweep
  std::vector<int> n_grid{1000};
  std::vector<int> s_grid{};  // empty means "just s"
  int trials_per_cell{1};
  std::uint64_t master_seed{1};
  // output
  std::string out_dir{"out"};
  std::string records_name{"records.csv"};
  std::string summary_name{"summary.txt"};
  std::string rate_points_name{"rate_points.csv"};
};

// Throws ConfigError on bad grids, counts, or model parameters.
void validate_config(const ExperimentConfig& config);

// Parse `key = value` lines ('#' comments, blank lines allowed). Unknown
// keys are rejected by name.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Apply one "key=value" override on top of a parsed config.
void apply_override(ExperimentConfig& config, const std::string& key_value);

std::string selector_name(SelectorKind kind);

// One Monte Carlo trial. Failed trials carry NaN errors and are excluded
// from aggregates but counted.
struct TrialRecord {
  long trial_id;
  std::uint64_t seed;
  int n;
  int p;
  int s;
  int k;
  std::string selector;
  int support_correct;  // 0/1
  int support_size;
  double err_2inf;
  double err_frob;
  double err_proj_spectral;
  double submatrix_concentration;
  double cor_bound;
  double thm1_total;
  int lemma2_all_ok;  // 0/1
  double elapsed_ms;
  bool failed{false};
};

struct DistStats {
  double mean;
  double median;
  double q10;
  double q90;
};

struct CellAggregate {
  int n;
  int s;
  int trials;
  int failed;
  DistStats err_2inf;
  DistStats err_frob;
  DistStats err_proj_spectral;
  DistStats submatrix_concentration;
  double support_recovery_rate;  // over all trials in the cell
  double lemma2_rate;            // over non-failed trials
  double mean_cor_bound;
  double mean_thm1_total;
};

struct RateFit {
  double slope;
  double intercept;
  double r_squared;
};

struct SweepResult {
  std::vector<TrialRecord> records;  // ordered by (s, n, trial_index)
  std::vector<CellAggregate> cells;
  bool fit_n_defined{false};
  RateFit fit_n{};
  bool fit_s_defined{false};
  RateFit fit_s{};
};

// Seed derivation: depends only on (master, n, s, trial_index), so a trial
// reproduces identically regardless of grid shape or execution order.
std::uint64_t trial_seed(std::uint64_t master, int n, int s, int trial_index);
std::uint64_t model_seed(std::uint64_t master);

// The fixed model truth for support size s under this config.
SparseCovarianceModel build_model_for(const ExperimentConfig& config, int s);

TrialRecord run_trial(const ExperimentConfig& config, const SparseCovarianceModel& model,
                      int n, int trial_index);

// All cells x trials, optionally multithreaded; record set is identical to
// sequential execution.
SweepResult run_sweep(const ExperimentConfig& config, int workers = 1);

// Ordinary least squares on the given points (caller passes logs).
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

// Aggregation used by run_sweep, exposed so results can be recomputed from
// persisted records.
std::vector<CellAggregate> compute_aggregates(const std::vector<TrialRecord>& records);

// 17-significant-digit float formatting used everywhere in artifacts.
std::string format_double17(double value);

std::string records_to_csv(const std::vector<TrialRecord>& records,
                           bool include_elapsed = true);
std::vector<TrialRecord> parse_records_csv(const std::string& text);

std::string summary_to_text(const ExperimentConfig& config, const SweepResult& result);
std::string rate_points_csv(const SweepResult& result);

// Write records + summary (and rate_points when requested) under
// config.out_dir, creating the directory if needed.
void write_sweep_outputs(const ExperimentConfig& config, const SweepResult& result,
                         bool with_rate_points = false);

}  // namespace esp
