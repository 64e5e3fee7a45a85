#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "rdnet/pipeline.hpp"

using rdnet::RunConfig;

namespace {

// Flags shared by the pipeline stages; values layer on top of --config.
void add_common_options(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON config file (flags override)");
  cmd->add_option("--out", cfg.out_dir, "output directory");
  cmd->add_option("--year-min", cfg.year_min, "first study year");
  cmd->add_option("--year-max", cfg.year_max, "last study year");
  cmd->add_option("--window", cfg.window_width, "window width in years");
  cmd->add_option("--stride", cfg.stride, "window stride in years");
  cmd->add_option("--presample", cfg.presample, "presample depth in years");
  cmd->add_option("--alpha", cfg.alpha, "weighted-degree alpha");
  cmd->add_option("--beta", cfg.beta, "weighted-degree beta");
  cmd->add_option("--seed", cfg.seed, "seed for all randomness");
  cmd->add_option("--threads", cfg.threads, "worker threads (0 = default)");
}

void add_input_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--alliances", cfg.alliances_path, "alliances.csv");
  cmd->add_option("--firms", cfg.firms_path, "firms.csv");
  cmd->add_option("--patents", cfg.patents_path, "patents.csv");
  cmd->add_option("--suffixes", cfg.suffix_path,
                  "legal-suffix token list (one per line)");
  cmd->add_option("--aliases", cfg.alias_path,
                  "alias CSV: variant_name,canonical_name");
  cmd->add_option("--max-error-fraction", cfg.max_error_fraction,
                  "abort when the reject fraction exceeds this");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rdnet: builds weighted collaboration networks from alliance event "
      "streams, measures firm embeddedness via weighted k-core coreness, "
      "and links it to patent output with zero-inflated negative binomial "
      "panel regressions"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;

  auto* build = app.add_subcommand(
      "build", "network snapshots, coreness series, centrality exports");
  add_common_options(build, cfg, config_path);
  add_input_options(build, cfg);
  build->add_flag("--core-on-cumulative", cfg.core_on_cumulative,
                  "coreness from the cumulative instead of window network");

  auto* panel = app.add_subcommand(
      "panel", "regression panel with standardized columns");
  add_common_options(panel, cfg, config_path);
  add_input_options(panel, cfg);
  panel->add_flag("--core-on-cumulative", cfg.core_on_cumulative,
                  "coreness from the cumulative instead of window network");
  panel->add_option("--standardize", cfg.standardize_columns,
                    "columns to z-score");

  auto* fit = app.add_subcommand(
      "fit", "ZINB model ladder with clustered SEs and Vuong comparisons");
  add_common_options(fit, cfg, config_path);
  fit->add_option("--panel", cfg.panel_path, "panel.csv from the panel stage");
  fit->add_option("--models", cfg.models, "model presets to fit (1-5)");
  fit->add_option("--cluster", cfg.cluster_column,
                  "cluster column for robust SEs");

  auto* synth = app.add_subcommand(
      "synth", "synthetic alliance/patent files with a planted core effect");
  add_common_options(synth, cfg, config_path);
  synth->add_option("--firms-n", cfg.synth.n_firms, "number of firms");
  synth->add_option("--synth-year-min", cfg.synth.year_min, "first year");
  synth->add_option("--synth-year-max", cfg.synth.year_max, "last year");
  synth->add_option("--alliances-per-year", cfg.synth.alliances_per_year,
                    "events per year");
  synth->add_option("--effect-core", cfg.synth.effect_core,
                    "planted coreness effect on the log patent rate");

  // Two passes: the first discovers --config, the second lets explicit
  // flags override the file values.
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? rdnet::kExitOk : rdnet::kExitInputError;
  }
  if (!config_path.empty()) {
    try {
      cfg = RunConfig::from_json_file(config_path);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return rdnet::kExitInputError;
    }
    for (auto* cmd : {build, panel, fit, synth}) cmd->clear();
    app.clear();
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      return app.exit(e) == 0 ? rdnet::kExitOk : rdnet::kExitInputError;
    }
  }
  cfg.synth.seed = cfg.seed;

  if (build->parsed()) return rdnet::cmd_build(cfg);
  if (panel->parsed()) return rdnet::cmd_panel(cfg);
  if (fit->parsed()) return rdnet::cmd_fit(cfg);
  if (synth->parsed()) return rdnet::cmd_synth(cfg);
  return rdnet::kExitInputError;
}
