#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "esp/experiments.hpp"
#include "esp/verify.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  int workers = 0;  // 0 = unset
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs* args, bool config_required) {
  auto* opt = cmd->add_option("--config", args->config_path, "config file (key = value lines)");
  if (config_required) {
    opt->required();
  }
  cmd->add_option("--set", args->overrides, "override KEY=VALUE (repeatable, applied in order)");
  cmd->add_option("--out", args->out_dir, "output directory (overrides out_dir)");
  cmd->add_option("--workers", args->workers, "worker thread count (default: ESP_WORKERS or 1)");
  cmd->add_option("--seed", args->seed, "master seed override");
}

int resolve_workers(int requested) {
  if (requested > 0) {
    return requested;
  }
  if (const char* env = std::getenv("ESP_WORKERS")) {
    const std::string value(env);
    try {
      size_t pos = 0;
      const int w = std::stoi(value, &pos);
      if (pos != value.size() || w < 1) {
        throw std::invalid_argument("range");
      }
      return w;
    } catch (const std::exception&) {
      throw esp::ConfigError("ESP_WORKERS: bad worker count '" + value + "'");
    }
  }
  return 1;
}

esp::ExperimentConfig build_config(const CommonArgs& args, bool use_lemma_default) {
  esp::ExperimentConfig config;
  if (!args.config_path.empty()) {
    config = esp::load_config_file(args.config_path);
  } else if (use_lemma_default) {
    config = esp::default_lemma_config();
  }
  for (const std::string& kv : args.overrides) {
    esp::apply_override(config, kv);
  }
  if (args.seed) {
    config.master_seed = *args.seed;
  }
  if (!args.out_dir.empty()) {
    config.out_dir = args.out_dir;
  }
  return config;
}

int cmd_simulate(const CommonArgs& args) {
  esp::ExperimentConfig config = build_config(args, false);
  // single cell: first n of the grid, scalar s
  config.n_grid = {config.n_grid.front()};
  config.s_grid.clear();
  esp::validate_config(config);
  const int workers = resolve_workers(args.workers);
  const esp::SweepResult result = esp::run_sweep(config, workers);
  esp::write_sweep_outputs(config, result);
  std::cout << "simulate: wrote " << result.records.size() << " trial records to "
            << config.out_dir << "/" << config.records_name << "\n";
  return 0;
}

int cmd_rate_sweep(const CommonArgs& args) {
  esp::ExperimentConfig config = build_config(args, false);
  esp::validate_config(config);
  const int workers = resolve_workers(args.workers);
  const esp::SweepResult result = esp::run_sweep(config, workers);
  esp::write_sweep_outputs(config, result, /*with_rate_points=*/true);
  std::cout << "rate-sweep: " << result.records.size() << " trial records, "
            << result.cells.size() << " cells\n";
  if (result.fit_n_defined) {
    std::cout << "slope_n: " << esp::format_double17(result.fit_n.slope)
              << " (r_squared " << esp::format_double17(result.fit_n.r_squared) << ")\n";
  } else {
    std::cout << "slope_n: undefined (need >= 2 n values)\n";
  }
  return 0;
}

int cmd_verify_lemmas(const CommonArgs& args) {
  esp::ExperimentConfig config = build_config(args, true);
  esp::validate_config(config);
  const int workers = resolve_workers(args.workers);
  const std::vector<esp::LemmaSuiteResult> suites = esp::run_lemma_suites(config, {}, workers);
  bool all_pass = true;
  for (const esp::LemmaSuiteResult& suite : suites) {
    std::cout << (suite.pass ? "PASS" : "FAIL") << "  " << suite.name << "  "
              << suite.detail << "\n";
    all_pass = all_pass && suite.pass;
  }
  return all_pass ? 0 : 1;
}

Eigen::MatrixXd read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw esp::ConfigError("cannot open matrix file '" + path + "'");
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row_in(line);
    std::vector<double> row;
    double v;
    while (row_in >> v) {
      row.push_back(v);
    }
    if (!row_in.eof()) {
      throw esp::ConfigError("matrix file '" + path + "': non-numeric token");
    }
    if (!row.empty()) {
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) {
    throw esp::ConfigError("matrix file '" + path + "': empty");
  }
  const size_t cols = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != cols) {
      throw esp::ConfigError("matrix file '" + path + "': ragged rows");
    }
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

int cmd_fantope_project(const std::string& matrix_path, int k) {
  const Eigen::MatrixXd raw = read_matrix_file(matrix_path);
  if (raw.rows() != raw.cols()) {
    throw esp::ConfigError("matrix must be square, got " + std::to_string(raw.rows()) + "x" +
                           std::to_string(raw.cols()));
  }
  const double asym = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8) {
    throw esp::ConfigError("matrix asymmetric beyond 1e-8 (defect " + std::to_string(asym) + ")");
  }
  const esp::SymmetricMatrix projected =
      esp::fantope_project(esp::SymmetricMatrix(raw), k);
  const esp::EigenDecomposition ed = esp::sym_eigen(projected);
  std::cout << "projection:\n";
  for (int i = 0; i < projected.dim(); ++i) {
    for (int j = 0; j < projected.dim(); ++j) {
      std::cout << (j ? " " : "") << esp::format_double17(projected(i, j));
    }
    std::cout << "\n";
  }
  std::cout << "trace: " << esp::format_double17(projected.mat().trace()) << "\n";
  std::cout << "eigenvalue_min: "
            << esp::format_double17(ed.eigenvalues[projected.dim() - 1]) << "\n";
  std::cout << "eigenvalue_max: " << esp::format_double17(ed.eigenvalues[0]) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse PCA with support selection: simulation and verification harness"};
  app.require_subcommand(1);

  CommonArgs simulate_args;
  CLI::App* simulate = app.add_subcommand("simulate", "run one Monte Carlo cell");
  add_common(simulate, &simulate_args, /*config_required=*/true);

  CommonArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("rate-sweep", "run the full grid and fit error rates");
  add_common(sweep, &sweep_args, /*config_required=*/true);

  CommonArgs lemma_args;
  CLI::App* lemmas = app.add_subcommand("verify-lemmas", "run the empirical lemma suites");
  add_common(lemmas, &lemma_args, /*config_required=*/false);

  std::string matrix_path;
  int fantope_k = 1;
  CLI::App* fantope = app.add_subcommand("fantope-project", "project a symmetric matrix onto the Fantope");
  fantope->add_option("matrix", matrix_path, "whitespace-delimited square matrix file")->required();
  fantope->add_option("k", fantope_k, "trace of the target Fantope")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed()) {
      return cmd_simulate(simulate_args);
    }
    if (sweep->parsed()) {
      return cmd_rate_sweep(sweep_args);
    }
    if (lemmas->parsed()) {
      return cmd_verify_lemmas(lemma_args);
    }
    if (fantope->parsed()) {
      return cmd_fantope_project(matrix_path, fantope_k);
    }
  } catch (const esp::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const esp::InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
