#pragma once

#include <string>
#include <vector>

#include "rdnet/ingest.hpp"

namespace rdnet {

// One (firm, window-end year) observation. A row exists only when the firm
// has at least one alliance in the window.
struct PanelRow {
  int firm = 0;            // canonical id; -1 when loaded from CSV
  std::string firm_name;
  int t = 0;
  long long p_next = 0;       // patents in (t, t+1]
  double log_pat_pre = 0.0;   // log(1 + patents in [t-presample, t])
  double core = 0.0;          // coreness on the window network
  double degree = 0.0;
  double betweenness_norm = 0.0;
  double local_clustering = 0.0;
  double local_reach = 0.0;
  double eff = 0.0;
  std::string sector;
  int year = 0;  // categorical copy of t for the year dummies
};

struct PanelSummary {
  std::size_t n_rows = 0;
  double zero_fraction = 0.0;  // share of rows with p_next == 0
  double mean_p_next = 0.0;
  double sd_p_next = 0.0;
  std::size_t firms_with_patents_only = 0;  // patents but never in a window
};

struct Panel {
  std::vector<PanelRow> rows;
  PanelSummary summary;

  static double value(const PanelRow& r, const std::string& column);
  static double& field(PanelRow& r, const std::string& column);
};

struct PanelConfig {
  int year_min = 1984;
  int year_max = 2009;
  int window_width = 3;
  int stride = 1;        // rolling by default
  int presample = 5;     // [t - presample, t], closed interval
  double alpha = 1.0;    // Eq-style weighted degree parameters
  double beta = 1.0;
  bool core_on_cumulative = false;  // sensitivity switch for the CORE column
};

// Joins window-network measures with patents over the window grid.
// Independent/control variables use data at or before t only; the
// dependent count is taken at t+1.
Panel build_panel(const IngestResult& data, const PanelConfig& config);

struct StandardizationReport {
  std::vector<std::string> columns;
  std::vector<double> mean;
  std::vector<double> sd;
};

struct ZeroVarianceError : std::runtime_error {
  std::string column;
  explicit ZeroVarianceError(const std::string& col)
      : std::runtime_error("zero variance in column: " + col), column(col) {}
};

// Z-scores the named numeric columns in place (sample sd, n-1). Categorical
// columns and the dependent count are never touched.
StandardizationReport standardize(Panel& panel,
                                  const std::vector<std::string>& columns);

// Stable column order:
// firm,t,P_next,log_pat_pre,CORE,DEGREE,BETWEENNESS_NORM,LOCAL_CLUSTERING,
// LOCAL_REACH,EFF,sector,year
void write_panel_csv(const Panel& panel, const std::string& path);
Panel read_panel_csv(const std::string& path);

void write_standardization_report(const StandardizationReport& report,
                                  const std::string& path);

}  // namespace rdnet
