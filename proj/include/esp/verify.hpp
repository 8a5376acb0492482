#pragma once

#include "esp/experiments.hpp"

namespace esp {

struct LemmaSuiteResult {
  std::string name;
  bool pass;
  std::string detail;
};

struct LemmaSuiteOptions {
  // submatrix concentration: slope window and bound ratio cap
  double concentration_slope_lo{-0.6};
  double concentration_slope_hi{-0.4};
  double concentration_max_ratio{10.0};
  // eigengap inequalities: trial count at the largest n and required frequency
  int eigengap_trials{200};
  double eigengap_min_freq{0.99};
  // spectral proximity ratio cap
  double dk_max_ratio{10.0};
  // sin-theta equivalences
  int sintheta_pairs{1000};
  int sintheta_max_rows{50};
  int sintheta_max_cols{5};
  double sintheta_tol{1e-9};
  std::uint64_t sintheta_seed{7};
};

// The four empirical suites behind `verify-lemmas`: principal submatrix
// concentration, existence of an eigengap, spectral proximity, and the
// sin-theta norm equivalences.
std::vector<LemmaSuiteResult> run_lemma_suites(const ExperimentConfig& config,
                                               const LemmaSuiteOptions& opts = {},
                                               int workers = 1);

// Small oracle-selector sweep used when no config is given.
ExperimentConfig default_lemma_config();

}  // namespace esp
