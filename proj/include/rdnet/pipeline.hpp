#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdnet/synth.hpp"

namespace rdnet {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNumericalError = 2;

struct RunConfig {
  // Inputs
  std::string alliances_path;
  std::string firms_path;
  std::string patents_path;
  std::string panel_path;    // input for `fit`
  std::string suffix_path;   // normalization token list (optional)
  std::string alias_path;    // explicit merge file (optional)
  std::string out_dir = "out";

  // Study grid
  int year_min = 1984;
  int year_max = 2009;
  int window_width = 3;
  int stride = 1;
  int presample = 5;

  // Weighted degree parameters
  double alpha = 1.0;
  double beta = 1.0;
  bool core_on_cumulative = false;

  // Estimation
  std::vector<int> models = {1, 2, 3, 4, 5};
  std::string cluster_column = "CORE";
  std::vector<std::string> zero_covariates = {"log_pat_pre"};
  std::vector<std::string> standardize_columns = {
      "log_pat_pre", "CORE",        "DEGREE", "BETWEENNESS_NORM",
      "LOCAL_CLUSTERING", "LOCAL_REACH", "EFF"};
  double max_error_fraction = 0.01;

  std::uint64_t seed = 1;
  int threads = 0;  // 0 = library default

  SynthConfig synth;

  static RunConfig from_json_file(const std::string& path);
  std::string to_json() const;
};

// Subcommands. Each validates its inputs, writes its outputs plus the
// effective config.json into out_dir, and returns an exit code.
int cmd_build(const RunConfig& config);
int cmd_panel(const RunConfig& config);
int cmd_fit(const RunConfig& config);
int cmd_synth(const RunConfig& config);

}  // namespace rdnet
