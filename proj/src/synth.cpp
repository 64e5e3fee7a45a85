#include "rdnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <vector>

#include "rdnet/graph.hpp"
#include "rdnet/ingest.hpp"
#include "rdnet/kcore.hpp"
#include "rdnet/rng.hpp"

namespace rdnet {

namespace {

// SIC codes cycling through the mapped sectors plus unmapped ones.
constexpr int kSicPool[] = {2834, 2821, 2911, 3571, 3651, 3661,
                            3674, 3711, 3721, 3827, 3841, 7372,
                            4813, 2834, 3674, 3571};

std::string firm_name(int id) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "FIRM%04d", id);
  return buf;
}

// Weighted sample without replacement: weight 1 + degree, boosted for core
// firms so repeated alliances concentrate there.
int sample_firm(rng::Engine& eng, const std::vector<double>& weight,
                const std::set<int>& exclude) {
  double total = 0.0;
  for (std::size_t i = 0; i < weight.size(); ++i)
    if (!exclude.count(static_cast<int>(i))) total += weight[i];
  double u = rng::uniform01(eng) * total;
  for (std::size_t i = 0; i < weight.size(); ++i) {
    if (exclude.count(static_cast<int>(i))) continue;
    u -= weight[i];
    if (u <= 0.0) return static_cast<int>(i);
  }
  for (int i = static_cast<int>(weight.size()) - 1; i >= 0; --i)
    if (!exclude.count(i)) return i;
  return 0;
}

}  // namespace

void write_synth_dataset(const SynthConfig& cfg, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  rng::Engine eng(cfg.seed);

  const int n = cfg.n_firms;
  const int n_core = std::max(2, static_cast<int>(std::ceil(
                                     cfg.core_fraction * n)));

  // Alliance stream with preferential attachment and a boosted core.
  std::vector<AllianceEvent> events;
  std::vector<double> pa_weight(n, 1.0);
  std::vector<double> core_weight(n, 0.0);
  for (int i = 0; i < n_core; ++i) core_weight[i] = 1.0;

  long long next_id = 1;
  for (int year = cfg.year_min; year <= cfg.year_max; ++year) {
    for (int e = 0; e < cfg.alliances_per_year; ++e) {
      int size = 2;
      if (rng::bernoulli(eng, cfg.consortium_prob))
        size = 3 + static_cast<int>(rng::uniform01(eng) *
                                    (cfg.max_consortium - 2));
      const bool core_event = rng::bernoulli(eng, cfg.core_event_prob);
      const std::vector<double>& w = core_event ? core_weight : pa_weight;

      AllianceEvent ev;
      ev.alliance_id = next_id++;
      ev.year = year;
      std::set<int> chosen;
      for (int s = 0; s < size; ++s) chosen.insert(sample_firm(eng, w, chosen));
      if (chosen.size() < 2) continue;
      ev.participants.assign(chosen.begin(), chosen.end());
      for (int f : ev.participants) pa_weight[f] += 1.0;
      events.push_back(std::move(ev));
    }
  }

  // Patents: for every firm active in the window ending at t, one draw for
  // year t+1 from the planted coreness-dependent process.
  std::map<std::pair<int, int>, long long> patents;  // (firm, year) -> count
  auto presample_of = [&](int firm, int t) {
    long long acc = 0;
    for (int y = t - cfg.presample; y <= t; ++y) {
      auto it = patents.find({firm, y});
      if (it != patents.end()) acc += it->second;
    }
    return acc;
  };

  for (int t = cfg.year_min; t <= cfg.year_max; ++t) {
    GraphSnapshot win = window_snapshot(events, t, cfg.window_width, n);
    if (win.n == 0) continue;
    ShellAssignment shells =
        kcore_decompose(win, KcoreMode::Weighted, {cfg.alpha, cfg.beta});
    for (int v = 0; v < win.n; ++v) {
      const int firm = win.canonical_ids[v];
      const double log_pre =
          std::log1p(static_cast<double>(presample_of(firm, t)));
      const double logit =
          cfg.zero_intercept + cfg.zero_logpat * log_pre;
      const double pi = 1.0 / (1.0 + std::exp(-logit));
      long long draw = 0;
      if (!rng::bernoulli(eng, pi)) {
        const double mu =
            std::exp(cfg.rate_intercept +
                     cfg.effect_core * static_cast<double>(shells.coreness(v)) +
                     cfg.effect_logpat * log_pre);
        draw = rng::neg_binomial(eng, mu, cfg.theta);
      }
      if (draw > 0) patents[{firm, t + 1}] += draw;
    }
  }

  namespace fs = std::filesystem;
  {
    std::ofstream out(fs::path(out_dir) / "firms.csv");
    out << "firm_name,sic_code\n";
    for (int i = 0; i < n; ++i)
      out << firm_name(i) << ','
          << kSicPool[i % (sizeof(kSicPool) / sizeof(kSicPool[0]))] << '\n';
  }
  {
    std::ofstream out(fs::path(out_dir) / "alliances.csv");
    out << "alliance_id,year,participants\n";
    for (const auto& ev : events) {
      out << ev.alliance_id << ',' << ev.year << ',';
      for (std::size_t i = 0; i < ev.participants.size(); ++i) {
        if (i) out << ';';
        out << firm_name(ev.participants[i]);
      }
      out << '\n';
    }
  }
  {
    std::ofstream out(fs::path(out_dir) / "patents.csv");
    out << "firm_name,year,patent_count\n";
    for (const auto& [key, count] : patents)
      out << firm_name(key.first) << ',' << key.second << ',' << count << '\n';
  }
}

}  // namespace rdnet
