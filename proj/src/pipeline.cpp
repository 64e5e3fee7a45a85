#include "rdnet/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <omp.h>
#include <sstream>

#include <json.hpp>

#include "rdnet/centrality.hpp"
#include "rdnet/csv.hpp"
#include "rdnet/graph.hpp"
#include "rdnet/ingest.hpp"
#include "rdnet/kcore.hpp"
#include "rdnet/panel.hpp"
#include "rdnet/zinb.hpp"

namespace rdnet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void apply_threads(const RunConfig& cfg) {
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
}

IngestConfig ingest_config(const RunConfig& cfg) {
  IngestConfig ic;
  ic.norm = NormalizationConfig::load(cfg.suffix_path, cfg.alias_path);
  ic.year_min = cfg.year_min;
  ic.year_max = cfg.year_max;
  ic.max_error_fraction = cfg.max_error_fraction;
  return ic;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out.is_open())
    throw IngestError("cannot write output: " + path.string());
  out << content;
}

void write_effective_config(const RunConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  write_file(fs::path(cfg.out_dir) / "config.json", cfg.to_json() + "\n");
}

void write_ingest_report(const IngestResult& data, const fs::path& path) {
  std::ostringstream out;
  out << "rows_read," << data.report.rows_read << '\n'
      << "events_kept," << data.report.events_kept << '\n'
      << "patent_rows_kept," << data.report.patent_rows_kept << '\n'
      << "names_merged," << data.report.names_merged << '\n'
      << "rows_rejected," << data.report.rejects.size() << '\n';
  for (const auto& r : data.report.rejects)
    out << "reject," << r.file << ':' << r.line << ',' << r.reason << '\n';
  write_file(path, out.str());
}

PanelConfig panel_config(const RunConfig& cfg) {
  PanelConfig pc;
  pc.year_min = cfg.year_min;
  pc.year_max = cfg.year_max;
  pc.window_width = cfg.window_width;
  pc.stride = cfg.stride;
  pc.presample = cfg.presample;
  pc.alpha = cfg.alpha;
  pc.beta = cfg.beta;
  pc.core_on_cumulative = cfg.core_on_cumulative;
  return pc;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const IngestError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) throw IngestError("cannot open config: " + path);
  json j = json::parse(in);
  RunConfig cfg;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j[key].get<std::decay_t<decltype(field)>>();
  };
  get("alliances", cfg.alliances_path);
  get("firms", cfg.firms_path);
  get("patents", cfg.patents_path);
  get("panel", cfg.panel_path);
  get("suffixes", cfg.suffix_path);
  get("aliases", cfg.alias_path);
  get("out_dir", cfg.out_dir);
  get("year_min", cfg.year_min);
  get("year_max", cfg.year_max);
  get("window_width", cfg.window_width);
  get("stride", cfg.stride);
  get("presample", cfg.presample);
  get("alpha", cfg.alpha);
  get("beta", cfg.beta);
  get("core_on_cumulative", cfg.core_on_cumulative);
  get("models", cfg.models);
  get("cluster_column", cfg.cluster_column);
  get("zero_covariates", cfg.zero_covariates);
  get("standardize_columns", cfg.standardize_columns);
  get("max_error_fraction", cfg.max_error_fraction);
  get("seed", cfg.seed);
  get("threads", cfg.threads);
  if (j.contains("synth")) {
    const json& s = j["synth"];
    auto sget = [&](const char* key, auto& field) {
      if (s.contains(key)) field = s[key].get<std::decay_t<decltype(field)>>();
    };
    sget("n_firms", cfg.synth.n_firms);
    sget("year_min", cfg.synth.year_min);
    sget("year_max", cfg.synth.year_max);
    sget("alliances_per_year", cfg.synth.alliances_per_year);
    sget("consortium_prob", cfg.synth.consortium_prob);
    sget("max_consortium", cfg.synth.max_consortium);
    sget("core_fraction", cfg.synth.core_fraction);
    sget("core_event_prob", cfg.synth.core_event_prob);
    sget("window_width", cfg.synth.window_width);
    sget("rate_intercept", cfg.synth.rate_intercept);
    sget("effect_core", cfg.synth.effect_core);
    sget("effect_logpat", cfg.synth.effect_logpat);
    sget("zero_intercept", cfg.synth.zero_intercept);
    sget("zero_logpat", cfg.synth.zero_logpat);
    sget("theta", cfg.synth.theta);
  }
  return cfg;
}

std::string RunConfig::to_json() const {
  json j;
  j["alliances"] = alliances_path;
  j["firms"] = firms_path;
  j["patents"] = patents_path;
  j["panel"] = panel_path;
  j["suffixes"] = suffix_path;
  j["aliases"] = alias_path;
  j["out_dir"] = out_dir;
  j["year_min"] = year_min;
  j["year_max"] = year_max;
  j["window_width"] = window_width;
  j["stride"] = stride;
  j["presample"] = presample;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["core_on_cumulative"] = core_on_cumulative;
  j["models"] = models;
  j["cluster_column"] = cluster_column;
  j["zero_covariates"] = zero_covariates;
  j["standardize_columns"] = standardize_columns;
  j["max_error_fraction"] = max_error_fraction;
  j["seed"] = seed;
  j["threads"] = threads;
  j["synth"] = {{"n_firms", synth.n_firms},
                {"year_min", synth.year_min},
                {"year_max", synth.year_max},
                {"alliances_per_year", synth.alliances_per_year},
                {"consortium_prob", synth.consortium_prob},
                {"max_consortium", synth.max_consortium},
                {"core_fraction", synth.core_fraction},
                {"core_event_prob", synth.core_event_prob},
                {"window_width", synth.window_width},
                {"rate_intercept", synth.rate_intercept},
                {"effect_core", synth.effect_core},
                {"effect_logpat", synth.effect_logpat},
                {"zero_intercept", synth.zero_intercept},
                {"zero_logpat", synth.zero_logpat},
                {"theta", synth.theta}};
  return j.dump(2);
}

int cmd_build(const RunConfig& cfg) {
  return guarded([&]() -> int {
    apply_threads(cfg);
    IngestResult data = load_events(cfg.alliances_path, cfg.firms_path,
                                    cfg.patents_path, ingest_config(cfg));
    if (data.events.empty()) {
      std::cerr << "no events: alliance stream is empty after ingest\n";
      return kExitInputError;
    }
    write_effective_config(cfg);
    const fs::path out(cfg.out_dir);
    write_ingest_report(data, out / "ingest_report.csv");

    const int registry = data.firms.size();
    const WeightedDegreeParams wd{cfg.alpha, cfg.beta};

    // Per-year coreness trajectories on the growing cumulative network.
    {
      std::ofstream traj(out / "coreness_cumulative.csv");
      traj << "firm,year,k_s,coreness,relative_coreness\n";
      for (int t = cfg.year_min; t <= cfg.year_max; ++t) {
        GraphSnapshot g = cumulative_snapshot(data.events, t, registry);
        if (g.n == 0) continue;
        ShellAssignment shells = kcore_decompose(g, KcoreMode::Weighted, wd);
        const int c_max = shells.max_coreness();
        for (int v = 0; v < g.n; ++v) {
          const int c = shells.coreness(v);
          traj << data.firms.names[g.canonical_ids[v]] << ',' << t << ','
               << shells.k_s[v] << ',' << c << ','
               << csv::format_double(relative_coreness(c, c_max)) << '\n';
        }
        if (t == cfg.year_max) {
          std::ofstream hist(out / "coreness_histogram.csv");
          hist << "coreness,count\n";
          auto h = coreness_distribution(shells);
          for (std::size_t c = 0; c < h.size(); ++c)
            hist << c << ',' << h[c] << '\n';
          export_graph(g, data.firms, (out / "edges_final.csv").string(),
                       (out / "nodes_final.csv").string());
        }
      }
    }

    // Window networks: coreness and the control centralities.
    {
      std::ofstream wcore(out / "coreness_window.csv");
      wcore << "firm,year,k_s,coreness,relative_coreness\n";
      std::ofstream cent(out / "centrality_window.csv");
      cent << "firm,year,degree,betweenness_norm,local_clustering,"
              "local_reach,local_efficiency\n";
      for (int t = cfg.year_min; t <= cfg.year_max; t += cfg.stride) {
        GraphSnapshot g =
            window_snapshot(data.events, t, cfg.window_width, registry);
        if (g.n == 0) continue;
        ShellAssignment shells = kcore_decompose(g, KcoreMode::Weighted, wd);
        const int c_max = shells.max_coreness();
        CentralityVectors cv = compute_all(g);
        for (int v = 0; v < g.n; ++v) {
          const std::string& name = data.firms.names[g.canonical_ids[v]];
          const int c = shells.coreness(v);
          wcore << name << ',' << t << ',' << shells.k_s[v] << ',' << c << ','
                << csv::format_double(relative_coreness(c, c_max)) << '\n';
          cent << name << ',' << t << ',' << cv.degree[v] << ','
               << csv::format_double(cv.betweenness_norm[v]) << ','
               << csv::format_double(cv.local_clustering[v]) << ','
               << csv::format_double(cv.local_reach[v]) << ','
               << csv::format_double(cv.local_efficiency[v]) << '\n';
        }
      }
    }
    return kExitOk;
  });
}

int cmd_panel(const RunConfig& cfg) {
  return guarded([&]() -> int {
    apply_threads(cfg);
    IngestResult data = load_events(cfg.alliances_path, cfg.firms_path,
                                    cfg.patents_path, ingest_config(cfg));
    if (data.events.empty()) {
      std::cerr << "no events: alliance stream is empty after ingest\n";
      return kExitInputError;
    }
    write_effective_config(cfg);
    const fs::path out(cfg.out_dir);

    write_ingest_report(data, out / "ingest_report.csv");
    Panel panel = build_panel(data, panel_config(cfg));
    StandardizationReport report =
        standardize(panel, cfg.standardize_columns);
    write_panel_csv(panel, (out / "panel.csv").string());
    write_standardization_report(report,
                                 (out / "standardization.csv").string());

    std::ostringstream summary;
    summary << "n_rows," << panel.summary.n_rows << '\n'
            << "zero_fraction,"
            << csv::format_double(panel.summary.zero_fraction) << '\n'
            << "mean_P_next," << csv::format_double(panel.summary.mean_p_next)
            << '\n'
            << "sd_P_next," << csv::format_double(panel.summary.sd_p_next)
            << '\n'
            << "firms_with_patents_only,"
            << panel.summary.firms_with_patents_only << '\n';
    write_file(out / "panel_summary.csv", summary.str());
    return kExitOk;
  });
}

int cmd_fit(const RunConfig& cfg) {
  return guarded([&]() -> int {
    apply_threads(cfg);
    Panel panel = read_panel_csv(cfg.panel_path);
    write_effective_config(cfg);
    const fs::path out(cfg.out_dir);

    std::map<int, ZinbFit> fits;
    int failures = 0;
    for (int m : cfg.models) {
      ModelSpec spec = ModelSpec::preset(m);
      spec.zero_covariates = cfg.zero_covariates;
      try {
        ZinbFit fit = zinb_fit(panel, spec, cfg.cluster_column);
        write_file(out / ("fit_model" + std::to_string(m) + ".txt"),
                   format_fit_report(fit));
        write_file(out / ("fit_model" + std::to_string(m) + ".json"),
                   fit_to_json(fit) + "\n");
        fits.emplace(m, std::move(fit));
      } catch (const NumericalError& e) {
        ++failures;
        write_file(out / ("fit_model" + std::to_string(m) + ".txt"),
                   spec.name + ": estimation failed: " + e.what() + "\n");
        std::cerr << spec.name << " failed: " << e.what() << '\n';
      }
    }

    // The three standard comparisons, when the involved fits exist.
    std::vector<VuongResult> vuong;
    auto compare = [&](int a, int b) {
      if (!fits.count(a) || !fits.count(b)) return;
      const ZinbFit& fa = fits.at(a);
      const ZinbFit& fb = fits.at(b);
      ModelSpec spec_a = ModelSpec::preset(a);
      ModelSpec spec_b = ModelSpec::preset(b);
      spec_a.zero_covariates = cfg.zero_covariates;
      spec_b.zero_covariates = cfg.zero_covariates;
      DesignMatrices da = build_design(panel, spec_a, cfg.cluster_column);
      DesignMatrices db = build_design(panel, spec_b, cfg.cluster_column);
      auto lla = zinb_loglik_perobs(fa.beta, fa.gamma, fa.log_theta,
                                    da.x_count, da.x_zero, da.y);
      auto llb = zinb_loglik_perobs(fb.beta, fb.gamma, fb.log_theta,
                                    db.x_count, db.x_zero, db.y);
      try {
        vuong.push_back(vuong_test(lla, llb, fa.n_params(), fb.n_params(),
                                   fa.model_name, fb.model_name));
      } catch (const NumericalError& e) {
        std::cerr << "Vuong " << fa.model_name << " vs " << fb.model_name
                  << ": " << e.what() << '\n';
      }
    };
    compare(3, 2);
    compare(4, 2);
    compare(3, 4);
    if (!vuong.empty()) {
      write_file(out / "vuong.txt", format_vuong_report(vuong));
      write_file(out / "vuong.json", vuong_to_json(vuong) + "\n");
    }

    if (!fits.empty()) return kExitOk;
    return failures > 0 ? kExitNumericalError : kExitInputError;
  });
}

int cmd_synth(const RunConfig& cfg) {
  return guarded([&]() -> int {
    SynthConfig sc = cfg.synth;
    sc.seed = cfg.seed;
    write_synth_dataset(sc, cfg.out_dir);
    write_effective_config(cfg);
    return kExitOk;
  });
}

}  // namespace rdnet
