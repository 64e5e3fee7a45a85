#include "rdnet/panel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "rdnet/centrality.hpp"
#include "rdnet/csv.hpp"
#include "rdnet/graph.hpp"
#include "rdnet/kcore.hpp"

namespace rdnet {

double& Panel::field(PanelRow& r, const std::string& column) {
  if (column == "log_pat_pre") return r.log_pat_pre;
  if (column == "CORE") return r.core;
  if (column == "DEGREE") return r.degree;
  if (column == "BETWEENNESS_NORM") return r.betweenness_norm;
  if (column == "LOCAL_CLUSTERING") return r.local_clustering;
  if (column == "LOCAL_REACH") return r.local_reach;
  if (column == "EFF") return r.eff;
  throw std::invalid_argument("unknown panel column: " + column);
}

double Panel::value(const PanelRow& r, const std::string& column) {
  return field(const_cast<PanelRow&>(r), column);
}

Panel build_panel(const IngestResult& data, const PanelConfig& config) {
  Panel panel;
  const int registry = data.firms.size();
  std::set<int> firms_ever_in_window;

  for (int t = config.year_min; t <= config.year_max; t += config.stride) {
    GraphSnapshot win = window_snapshot(data.events, t, config.window_width,
                                        registry);
    if (win.n == 0) continue;

    ShellAssignment shells;
    std::vector<int> core_of_window(win.n);
    if (config.core_on_cumulative) {
      GraphSnapshot cum = cumulative_snapshot(data.events, t, registry);
      ShellAssignment cum_shells =
          kcore_decompose(cum, KcoreMode::Weighted,
                          {config.alpha, config.beta});
      for (int v = 0; v < win.n; ++v) {
        auto it = cum.dense_of.find(win.canonical_ids[v]);
        core_of_window[v] =
            it == cum.dense_of.end() ? 0 : cum_shells.coreness(it->second);
      }
    } else {
      shells = kcore_decompose(win, KcoreMode::Weighted,
                               {config.alpha, config.beta});
      for (int v = 0; v < win.n; ++v) core_of_window[v] = shells.coreness(v);
    }

    CentralityVectors cent = compute_all(win);

    for (int v = 0; v < win.n; ++v) {
      const int firm = win.canonical_ids[v];
      firms_ever_in_window.insert(firm);
      PanelRow row;
      row.firm = firm;
      row.firm_name = data.firms.names[firm];
      row.t = t;
      row.year = t;
      row.p_next = data.patent_count(firm, t + 1);
      row.log_pat_pre = std::log1p(static_cast<double>(
          data.patents_in(firm, t - config.presample, t)));
      row.core = static_cast<double>(core_of_window[v]);
      row.degree = static_cast<double>(cent.degree[v]);
      row.betweenness_norm = cent.betweenness_norm[v];
      row.local_clustering = cent.local_clustering[v];
      row.local_reach = cent.local_reach[v];
      row.eff = cent.local_efficiency[v];
      row.sector = data.firms.sectors[firm];
      panel.rows.push_back(std::move(row));
    }
  }

  // Coverage: firms that filed patents but never entered a window network.
  std::set<int> patenting;
  for (const auto& p : data.patents)
    if (p.count > 0) patenting.insert(p.firm);
  std::size_t uncovered = 0;
  for (int f : patenting)
    if (!firms_ever_in_window.count(f)) ++uncovered;

  PanelSummary& s = panel.summary;
  s.n_rows = panel.rows.size();
  s.firms_with_patents_only = uncovered;
  if (!panel.rows.empty()) {
    double sum = 0.0, zeros = 0.0;
    for (const auto& r : panel.rows) {
      sum += static_cast<double>(r.p_next);
      if (r.p_next == 0) zeros += 1.0;
    }
    s.mean_p_next = sum / static_cast<double>(s.n_rows);
    s.zero_fraction = zeros / static_cast<double>(s.n_rows);
    double ss = 0.0;
    for (const auto& r : panel.rows) {
      double d = static_cast<double>(r.p_next) - s.mean_p_next;
      ss += d * d;
    }
    s.sd_p_next = s.n_rows > 1
                      ? std::sqrt(ss / static_cast<double>(s.n_rows - 1))
                      : 0.0;
  }
  return panel;
}

StandardizationReport standardize(Panel& panel,
                                  const std::vector<std::string>& columns) {
  StandardizationReport report;
  const double n = static_cast<double>(panel.rows.size());
  if (panel.rows.size() < 2)
    throw std::invalid_argument("standardize needs at least 2 rows");
  for (const auto& col : columns) {
    double mean = 0.0;
    for (auto& r : panel.rows) mean += Panel::value(r, col);
    mean /= n;
    double ss = 0.0;
    for (auto& r : panel.rows) {
      double d = Panel::value(r, col) - mean;
      ss += d * d;
    }
    double sd = std::sqrt(ss / (n - 1.0));
    if (sd == 0.0 || !std::isfinite(sd)) throw ZeroVarianceError(col);
    for (auto& r : panel.rows) {
      double& x = Panel::field(r, col);
      x = (x - mean) / sd;
    }
    report.columns.push_back(col);
    report.mean.push_back(mean);
    report.sd.push_back(sd);
  }
  return report;
}

void write_panel_csv(const Panel& panel, const std::string& path) {
  std::ofstream out(path);
  if (!out.is_open()) throw IngestError("cannot write panel: " + path);
  out << "firm,t,P_next,log_pat_pre,CORE,DEGREE,BETWEENNESS_NORM,"
         "LOCAL_CLUSTERING,LOCAL_REACH,EFF,sector,year\n";
  for (const auto& r : panel.rows) {
    out << r.firm_name << ',' << r.t << ',' << r.p_next << ','
        << csv::format_double(r.log_pat_pre) << ','
        << csv::format_double(r.core) << ',' << csv::format_double(r.degree)
        << ',' << csv::format_double(r.betweenness_norm) << ','
        << csv::format_double(r.local_clustering) << ','
        << csv::format_double(r.local_reach) << ','
        << csv::format_double(r.eff) << ',' << r.sector << ',' << r.year
        << '\n';
  }
}

Panel read_panel_csv(const std::string& path) {
  csv::Reader reader(path);
  if (!reader.is_open()) throw IngestError("cannot open panel: " + path);
  if (reader.header().size() != 12)
    throw IngestError("panel header must have 12 columns: " + path);
  Panel panel;
  std::vector<std::string> f;
  while (reader.next(f)) {
    if (f.size() != 12)
      throw IngestError("bad panel row at line " +
                        std::to_string(reader.line_number()));
    PanelRow r;
    r.firm = -1;
    r.firm_name = f[0];
    r.t = std::stoi(f[1]);
    r.p_next = std::stoll(f[2]);
    r.log_pat_pre = std::stod(f[3]);
    r.core = std::stod(f[4]);
    r.degree = std::stod(f[5]);
    r.betweenness_norm = std::stod(f[6]);
    r.local_clustering = std::stod(f[7]);
    r.local_reach = std::stod(f[8]);
    r.eff = std::stod(f[9]);
    r.sector = f[10];
    r.year = std::stoi(f[11]);
    panel.rows.push_back(std::move(r));
  }
  panel.summary.n_rows = panel.rows.size();
  if (!panel.rows.empty()) {
    double sum = 0.0, zeros = 0.0;
    for (const auto& r : panel.rows) {
      sum += static_cast<double>(r.p_next);
      if (r.p_next == 0) zeros += 1.0;
    }
    panel.summary.mean_p_next = sum / panel.rows.size();
    panel.summary.zero_fraction = zeros / panel.rows.size();
  }
  return panel;
}

void write_standardization_report(const StandardizationReport& report,
                                  const std::string& path) {
  std::ofstream out(path);
  if (!out.is_open())
    throw IngestError("cannot write standardization report: " + path);
  out << "column,mean,sd\n";
  for (std::size_t i = 0; i < report.columns.size(); ++i)
    out << report.columns[i] << ',' << csv::format_double(report.mean[i])
        << ',' << csv::format_double(report.sd[i]) << '\n';
}

}  // namespace rdnet
