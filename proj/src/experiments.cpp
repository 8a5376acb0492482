#include "esp/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace esp {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) {
      throw std::invalid_argument("trailing");
    }
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad integer '" + value + "'");
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) {
      throw std::invalid_argument("trailing");
    }
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad real '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) {
      throw std::invalid_argument("trailing");
    }
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad unsigned integer '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") {
    return true;
  }
  if (value == "false" || value == "0") {
    return false;
  }
  throw ConfigError("config key '" + key + "': bad boolean '" + value + "'");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  for (const std::string& item : split(value, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) {
      out.push_back(parse_int(key, t));
    }
  }
  if (out.empty()) {
    throw ConfigError("config key '" + key + "': empty list");
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const std::string& item : split(value, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) {
      out.push_back(parse_real(key, t));
    }
  }
  if (out.empty()) {
    throw ConfigError("config key '" + key + "': empty list");
  }
  return out;
}

void set_key(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "p") {
    c.p = parse_int(key, value);
  } else if (key == "s") {
    c.s = parse_int(key, value);
  } else if (key == "k") {
    c.k = parse_int(key, value);
  } else if (key == "spikes") {
    c.spikes = parse_real_list(key, value);
  } else if (key == "bulk") {
    c.bulk = parse_real(key, value);
  } else if (key == "coherence_profile") {
    if (value == "flat") {
      c.coherence_profile = CoherenceProfile::kFlat;
    } else if (value == "random") {
      c.coherence_profile = CoherenceProfile::kRandom;
    } else {
      throw ConfigError("config key 'coherence_profile': expected flat|random, got '" + value + "'");
    }
  } else if (key == "permute_support") {
    c.permute_support = parse_bool(key, value);
  } else if (key == "dist") {
    if (value == "gaussian") {
      c.dist = DesignKind::kGaussian;
    } else if (value == "rademacher") {
      c.dist = DesignKind::kRademacher;
    } else if (value == "uniform") {
      c.dist = DesignKind::kUniform;
    } else {
      throw ConfigError("config key 'dist': expected gaussian|rademacher|uniform, got '" + value + "'");
    }
  } else if (key == "noiseless") {
    c.noiseless = parse_bool(key, value);
  } else if (key == "selector") {
    if (value == "oracle") {
      c.selector = SelectorKind::kOracle;
    } else if (value == "diag") {
      c.selector = SelectorKind::kDiag;
    } else if (value == "fps") {
      c.selector = SelectorKind::kFps;
    } else {
      throw ConfigError("config key 'selector': expected oracle|diag|fps, got '" + value + "'");
    }
  } else if (key == "diag_s_target") {
    c.diag_s_target = parse_int(key, value);
  } else if (key == "fps_rho_scale") {
    c.fps.rho_scale = parse_real(key, value);
  } else if (key == "admm_step_size") {
    c.fps.admm.step_size = parse_real(key, value);
  } else if (key == "admm_max_iter") {
    c.fps.admm.max_iter = parse_int(key, value);
  } else if (key == "admm_tol_abs") {
    c.fps.admm.tol_abs = parse_real(key, value);
  } else if (key == "admm_tol_rel") {
    c.fps.admm.tol_rel = parse_real(key, value);
  } else if (key == "admm_support_eps") {
    c.fps.admm.support_eps = parse_real(key, value);
  } else if (key == "n_grid") {
    c.n_grid = parse_int_list(key, value);
  } else if (key == "n") {
    // convenience: single-cell override
    c.n_grid = {parse_int(key, value)};
  } else if (key == "s_grid") {
    c.s_grid = parse_int_list(key, value);
  } else if (key == "trials_per_cell") {
    c.trials_per_cell = parse_int(key, value);
  } else if (key == "master_seed") {
    c.master_seed = parse_u64(key, value);
  } else if (key == "out_dir") {
    c.out_dir = value;
  } else if (key == "records_name") {
    c.records_name = value;
  } else if (key == "summary_name") {
    c.summary_name = value;
  } else if (key == "rate_points_name") {
    c.rate_points_name = value;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const size_t idx = static_cast<size_t>(pos);
  const double frac = pos - static_cast<double>(idx);
  if (idx + 1 < sorted.size()) {
    return sorted[idx] * (1.0 - frac) + sorted[idx + 1] * frac;
  }
  return sorted[idx];
}

DistStats stats_of(std::vector<double> values) {
  DistStats st{};
  if (values.empty()) {
    st.mean = st.median = st.q10 = st.q90 = std::numeric_limits<double>::quiet_NaN();
    return st;
  }
  double total = 0.0;
  for (double v : values) {
    total += v;
  }
  st.mean = total / static_cast<double>(values.size());
  std::sort(values.begin(), values.end());
  st.median = quantile_sorted(values, 0.5);
  st.q10 = quantile_sorted(values, 0.1);
  st.q90 = quantile_sorted(values, 0.9);
  return st;
}

}  // namespace

void validate_config(const ExperimentConfig& config) {
  if (config.trials_per_cell < 1) {
    throw ConfigError("trials_per_cell must be >= 1");
  }
  if (config.n_grid.empty()) {
    throw ConfigError("n_grid must be non-empty");
  }
  for (size_t i = 0; i < config.n_grid.size(); ++i) {
    if (config.n_grid[i] < 1) {
      throw ConfigError("n_grid entries must be >= 1");
    }
    if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1]) {
      throw ConfigError("n_grid must be strictly increasing");
    }
  }
  for (size_t i = 1; i < config.s_grid.size(); ++i) {
    if (config.s_grid[i] <= config.s_grid[i - 1]) {
      throw ConfigError("s_grid must be strictly increasing");
    }
  }
  const std::vector<int> s_values = config.s_grid.empty() ? std::vector<int>{config.s} : config.s_grid;
  for (int s : s_values) {
    if (!(config.k >= 1 && config.k < s && s <= config.p)) {
      throw ConfigError("model dims: need 1 <= k < s <= p");
    }
  }
  if (static_cast<int>(config.spikes.size()) != config.k) {
    throw ConfigError("spikes must list exactly k values");
  }
  if (config.diag_s_target < 0 || config.diag_s_target > config.p) {
    throw ConfigError("diag_s_target out of range");
  }
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    }
    set_key(config, key, value);
  }
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void apply_override(ExperimentConfig& config, const std::string& key_value) {
  const auto eq = key_value.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override '" + key_value + "': expected KEY=VALUE");
  }
  set_key(config, trim(key_value.substr(0, eq)), trim(key_value.substr(eq + 1)));
}

std::string selector_name(SelectorKind kind) {
  switch (kind) {
    case SelectorKind::kOracle:
      return "oracle";
    case SelectorKind::kDiag:
      return "diag";
    case SelectorKind::kFps:
      return "fps";
  }
  return "?";
}

std::uint64_t trial_seed(std::uint64_t master, int n, int s, int trial_index) {
  std::uint64_t h = master;
  h = mix_seed(h, static_cast<std::uint64_t>(n));
  h = mix_seed(h, static_cast<std::uint64_t>(s));
  h = mix_seed(h, static_cast<std::uint64_t>(trial_index));
  return h;
}

std::uint64_t model_seed(std::uint64_t master) {
  return mix_seed(master, 0x6D6F64656CULL);  // "model"
}

SparseCovarianceModel build_model_for(const ExperimentConfig& config, int s) {
  SparseCovarianceModel model = build_spiked_sparse_model(
      config.p, s, config.k, config.spikes, config.bulk, config.coherence_profile,
      model_seed(config.master_seed));
  if (config.permute_support) {
    model = permute_model(model, mix_seed(config.master_seed, 0x7065726DULL));  // "perm"
  }
  return model;
}

TrialRecord run_trial(const ExperimentConfig& config, const SparseCovarianceModel& model,
                      int n, int trial_index) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = trial_seed(config.master_seed, n, model.s, trial_index);

  TrialRecord rec{};
  rec.trial_id = -1;  // assigned by the sweep
  rec.seed = seed;
  rec.n = n;
  rec.p = model.p;
  rec.s = model.s;
  rec.k = model.k;
  rec.selector = selector_name(config.selector);

  SymmetricMatrix sigma_hat = config.noiseless
                                  ? model.sigma
                                  : empirical_covariance(
                                        sample_data(model, n, config.dist, seed));

  SupportEstimate support{{}, "", {}};
  switch (config.selector) {
    case SelectorKind::kOracle:
      support = oracle_select(model);
      break;
    case SelectorKind::kDiag:
      support = diagonal_threshold_select(
          sigma_hat, config.diag_s_target > 0 ? config.diag_s_target : model.s);
      break;
    case SelectorKind::kFps: {
      const double rho = default_fps_rho(sigma_hat, n, config.fps.rho_scale);
      support = fps_select(sigma_hat, model.k, rho, config.fps.admm).support;
      break;
    }
  }

  rec.support_size = static_cast<int>(support.indices.size());
  rec.support_correct = support.indices == model.support ? 1 : 0;

  const BoundBreakdown bounds = theorem_bounds(model, n);
  rec.cor_bound = bounds.cor_bound;
  rec.thm1_total = bounds.thm1_total;

  if (static_cast<int>(support.indices.size()) < model.k) {
    // Selector came back too small even after fallback; surface as failed.
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rec.err_2inf = rec.err_frob = rec.err_proj_spectral = rec.submatrix_concentration = nan;
    rec.lemma2_all_ok = 0;
    rec.failed = true;
  } else {
    const SubspaceEstimate estimate = estimate_sparse_subspace(sigma_hat, support, model.k);
    rec.err_2inf = aligned_entrywise_error(estimate.u_tilde, model.u);
    rec.err_frob = frobenius_subspace_error(estimate.u_tilde, model.u);
    rec.err_proj_spectral = projection_distance_spectral(estimate.u_tilde, model.u);
    rec.submatrix_concentration = submatrix_concentration_stat(sigma_hat, model);
    rec.lemma2_all_ok = eigengap_stats(estimate, model).all_ok() ? 1 : 0;
    rec.failed = false;
  }

  const auto stop = std::chrono::steady_clock::now();
  rec.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return rec;
}

SweepResult run_sweep(const ExperimentConfig& config, int workers) {
  validate_config(config);
  if (workers < 1) {
    workers = 1;
  }

  const std::vector<int> s_values =
      config.s_grid.empty() ? std::vector<int>{config.s} : config.s_grid;

  std::vector<SparseCovarianceModel> models;
  models.reserve(s_values.size());
  for (int s : s_values) {
    models.push_back(build_model_for(config, s));
  }

  const int trials = config.trials_per_cell;
  const size_t cell_count = s_values.size() * config.n_grid.size();
  const size_t task_count = cell_count * static_cast<size_t>(trials);

  SweepResult result;
  result.records.resize(task_count);

  const auto run_task = [&](size_t task) {
    const size_t cell = task / static_cast<size_t>(trials);
    const int trial_index = static_cast<int>(task % static_cast<size_t>(trials));
    const size_t s_idx = cell / config.n_grid.size();
    const size_t n_idx = cell % config.n_grid.size();
    TrialRecord rec =
        run_trial(config, models[s_idx], config.n_grid[n_idx], trial_index);
    rec.trial_id = static_cast<long>(task);
    result.records[task] = std::move(rec);
  };

  if (workers == 1 || task_count <= 1) {
    for (size_t task = 0; task < task_count; ++task) {
      run_task(task);
    }
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const int thread_count = std::min<size_t>(workers, task_count);
    pool.reserve(static_cast<size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) {
      pool.emplace_back([&]() {
        for (size_t task = next.fetch_add(1); task < task_count; task = next.fetch_add(1)) {
          run_task(task);
        }
      });
    }
    for (std::thread& th : pool) {
      th.join();
    }
  }

  result.cells = compute_aggregates(result.records);

  // Rate fits: n-slope at the first s, s-slope at the first n.
  std::vector<std::pair<double, double>> pts_n;
  std::vector<std::pair<double, double>> pts_s;
  for (const CellAggregate& cell : result.cells) {
    if (cell.s == s_values.front() && std::isfinite(cell.err_2inf.mean) &&
        cell.err_2inf.mean > 0.0) {
      pts_n.emplace_back(std::log(static_cast<double>(cell.n)), std::log(cell.err_2inf.mean));
    }
    if (cell.n == config.n_grid.front() && std::isfinite(cell.err_2inf.mean) &&
        cell.err_2inf.mean > 0.0) {
      pts_s.emplace_back(std::log(static_cast<double>(cell.s)), std::log(cell.err_2inf.mean));
    }
  }
  if (pts_n.size() >= 2) {
    result.fit_n = fit_rate(pts_n);
    result.fit_n_defined = true;
  }
  if (pts_s.size() >= 2) {
    result.fit_s = fit_rate(pts_s);
    result.fit_s_defined = true;
  }
  return result;
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) {
    throw UndefinedFitError("fit_rate: need at least 2 points");
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& [x, y] : points) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<double>(points.size());
  mean_y /= static_cast<double>(points.size());
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
    syy += (y - mean_y) * (y - mean_y);
  }
  if (sxx <= 0.0) {
    throw UndefinedFitError("fit_rate: degenerate abscissae");
  }
  RateFit fit{};
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  if (syy <= 0.0) {
    fit.r_squared = 1.0;  // all residuals zero under the horizontal fit
  } else {
    double ss_res = 0.0;
    for (const auto& [x, y] : points) {
      const double r = y - (fit.intercept + fit.slope * x);
      ss_res += r * r;
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

std::vector<CellAggregate> compute_aggregates(const std::vector<TrialRecord>& records) {
  std::map<std::pair<int, int>, std::vector<const TrialRecord*>> groups;  // (s, n) -> records
  for (const TrialRecord& rec : records) {
    groups[{rec.s, rec.n}].push_back(&rec);
  }
  std::vector<CellAggregate> cells;
  cells.reserve(groups.size());
  for (const auto& [key, recs] : groups) {
    CellAggregate cell{};
    cell.s = key.first;
    cell.n = key.second;
    cell.trials = static_cast<int>(recs.size());
    std::vector<double> e2inf, efrob, eproj, econc;
    double correct = 0.0;
    double lemma_ok = 0.0;
    double cor_total = 0.0;
    double thm_total = 0.0;
    int ok_count = 0;
    for (const TrialRecord* rec : recs) {
      correct += rec->support_correct;
      cor_total += rec->cor_bound;
      thm_total += rec->thm1_total;
      if (rec->failed || std::isnan(rec->err_2inf)) {
        ++cell.failed;
        continue;
      }
      ++ok_count;
      e2inf.push_back(rec->err_2inf);
      efrob.push_back(rec->err_frob);
      eproj.push_back(rec->err_proj_spectral);
      econc.push_back(rec->submatrix_concentration);
      lemma_ok += rec->lemma2_all_ok;
    }
    cell.err_2inf = stats_of(std::move(e2inf));
    cell.err_frob = stats_of(std::move(efrob));
    cell.err_proj_spectral = stats_of(std::move(eproj));
    cell.submatrix_concentration = stats_of(std::move(econc));
    cell.support_recovery_rate = correct / static_cast<double>(cell.trials);
    cell.lemma2_rate = ok_count > 0 ? lemma_ok / static_cast<double>(ok_count)
                                    : std::numeric_limits<double>::quiet_NaN();
    cell.mean_cor_bound = cor_total / static_cast<double>(cell.trials);
    cell.mean_thm1_total = thm_total / static_cast<double>(cell.trials);
    cells.push_back(std::move(cell));
  }
  // (s, n) ascending; the map already iterates in that order.
  return cells;
}

std::string format_double17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string records_to_csv(const std::vector<TrialRecord>& records, bool include_elapsed) {
  std::ostringstream out;
  out << "trial_id,seed,n,p,s,k,selector,support_correct,support_size,err_2inf,err_frob,"
         "err_proj_spectral,submatrix_concentration,cor_bound,thm1_total,lemma2_all_ok";
  if (include_elapsed) {
    out << ",elapsed_ms";
  }
  out << "\n";
  for (const TrialRecord& r : records) {
    out << r.trial_id << ',' << r.seed << ',' << r.n << ',' << r.p << ',' << r.s << ','
        << r.k << ',' << r.selector << ',' << r.support_correct << ',' << r.support_size
        << ',' << format_double17(r.err_2inf) << ',' << format_double17(r.err_frob) << ','
        << format_double17(r.err_proj_spectral) << ','
        << format_double17(r.submatrix_concentration) << ',' << format_double17(r.cor_bound)
        << ',' << format_double17(r.thm1_total) << ',' << r.lemma2_all_ok;
    if (include_elapsed) {
      out << ',' << format_double17(r.elapsed_ms);
    }
    out << "\n";
  }
  return out.str();
}

std::vector<TrialRecord> parse_records_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw InvalidInputError("parse_records_csv: empty input");
  }
  const std::string expected =
      "trial_id,seed,n,p,s,k,selector,support_correct,support_size,err_2inf,err_frob,"
      "err_proj_spectral,submatrix_concentration,cor_bound,thm1_total,lemma2_all_ok,elapsed_ms";
  if (trim(line) != expected) {
    throw InvalidInputError("parse_records_csv: unexpected header");
  }
  std::vector<TrialRecord> records;
  while (std::getline(in, line)) {
    if (trim(line).empty()) {
      continue;
    }
    const std::vector<std::string> f = split(trim(line), ',');
    if (f.size() != 17) {
      throw InvalidInputError("parse_records_csv: bad field count");
    }
    TrialRecord r{};
    r.trial_id = std::stol(f[0]);
    r.seed = std::stoull(f[1]);
    r.n = std::stoi(f[2]);
    r.p = std::stoi(f[3]);
    r.s = std::stoi(f[4]);
    r.k = std::stoi(f[5]);
    r.selector = f[6];
    r.support_correct = std::stoi(f[7]);
    r.support_size = std::stoi(f[8]);
    r.err_2inf = std::stod(f[9]);
    r.err_frob = std::stod(f[10]);
    r.err_proj_spectral = std::stod(f[11]);
    r.submatrix_concentration = std::stod(f[12]);
    r.cor_bound = std::stod(f[13]);
    r.thm1_total = std::stod(f[14]);
    r.lemma2_all_ok = std::stoi(f[15]);
    r.elapsed_ms = std::stod(f[16]);
    r.failed = std::isnan(r.err_2inf);
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

void emit_stats(std::ostringstream& out, const char* name, const DistStats& st) {
  out << "    " << name << ":\n";
  out << "      mean: " << format_double17(st.mean) << "\n";
  out << "      median: " << format_double17(st.median) << "\n";
  out << "      q10: " << format_double17(st.q10) << "\n";
  out << "      q90: " << format_double17(st.q90) << "\n";
}

void emit_fit(std::ostringstream& out, const char* name, bool defined, const RateFit& fit) {
  out << "  " << name << ":\n";
  out << "    defined: " << (defined ? "true" : "false") << "\n";
  if (defined) {
    out << "    slope: " << format_double17(fit.slope) << "\n";
    out << "    intercept: " << format_double17(fit.intercept) << "\n";
    out << "    r_squared: " << format_double17(fit.r_squared) << "\n";
  }
}

}  // namespace

std::string summary_to_text(const ExperimentConfig& config, const SweepResult& result) {
  std::ostringstream out;
  out << "config:\n";
  out << "  p: " << config.p << "\n";
  out << "  s: " << config.s << "\n";
  out << "  k: " << config.k << "\n";
  out << "  spikes:";
  for (double v : config.spikes) {
    out << ' ' << format_double17(v);
  }
  out << "\n";
  out << "  bulk: " << format_double17(config.bulk) << "\n";
  out << "  coherence_profile: "
      << (config.coherence_profile == CoherenceProfile::kFlat ? "flat" : "random") << "\n";
  out << "  permute_support: " << (config.permute_support ? "true" : "false") << "\n";
  out << "  dist: "
      << (config.dist == DesignKind::kGaussian
              ? "gaussian"
              : (config.dist == DesignKind::kRademacher ? "rademacher" : "uniform"))
      << "\n";
  out << "  noiseless: " << (config.noiseless ? "true" : "false") << "\n";
  out << "  selector: " << selector_name(config.selector) << "\n";
  out << "  n_grid:";
  for (int n : config.n_grid) {
    out << ' ' << n;
  }
  out << "\n";
  if (!config.s_grid.empty()) {
    out << "  s_grid:";
    for (int s : config.s_grid) {
      out << ' ' << s;
    }
    out << "\n";
  }
  out << "  trials_per_cell: " << config.trials_per_cell << "\n";
  out << "  master_seed: " << config.master_seed << "\n";

  out << "cells:\n";
  for (size_t i = 0; i < result.cells.size(); ++i) {
    const CellAggregate& cell = result.cells[i];
    out << "  cell_" << i << ":\n";
    out << "    n: " << cell.n << "\n";
    out << "    s: " << cell.s << "\n";
    out << "    trials: " << cell.trials << "\n";
    out << "    failed: " << cell.failed << "\n";
    emit_stats(out, "err_2inf", cell.err_2inf);
    emit_stats(out, "err_frob", cell.err_frob);
    emit_stats(out, "err_proj_spectral", cell.err_proj_spectral);
    emit_stats(out, "submatrix_concentration", cell.submatrix_concentration);
    out << "    support_recovery_rate: " << format_double17(cell.support_recovery_rate) << "\n";
    out << "    lemma2_rate: " << format_double17(cell.lemma2_rate) << "\n";
    out << "    mean_cor_bound: " << format_double17(cell.mean_cor_bound) << "\n";
    out << "    mean_thm1_total: " << format_double17(cell.mean_thm1_total) << "\n";
  }
  out << "rate_fits:\n";
  emit_fit(out, "err_2inf_vs_n", result.fit_n_defined, result.fit_n);
  emit_fit(out, "err_2inf_vs_s", result.fit_s_defined, result.fit_s);
  return out.str();
}

std::string rate_points_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "log_n,log_mean_err_2inf\n";
  for (const CellAggregate& cell : result.cells) {
    if (std::isfinite(cell.err_2inf.mean) && cell.err_2inf.mean > 0.0) {
      out << format_double17(std::log(static_cast<double>(cell.n))) << ','
          << format_double17(std::log(cell.err_2inf.mean)) << "\n";
    }
  }
  return out.str();
}

void write_sweep_outputs(const ExperimentConfig& config, const SweepResult& result,
                         bool with_rate_points) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory '" + config.out_dir +
                      "': " + ec.message());
  }
  const auto write_file = [&](const std::string& name, const std::string& content) {
    const fs::path path = fs::path(config.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw ConfigError("cannot open '" + path.string() + "' for writing");
    }
    out << content;
    if (!out) {
      throw ConfigError("write failed for '" + path.string() + "'");
    }
  };
  write_file(config.records_name, records_to_csv(result.records));
  write_file(config.summary_name, summary_to_text(config, result));
  if (with_rate_points) {
    write_file(config.rate_points_name, rate_points_csv(result));
  }
}

}  // namespace esp
