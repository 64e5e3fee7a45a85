#pragma once

#include <cstdint>
#include <string>

namespace rdnet {

// Synthetic alliance/patent stream with a planted core-periphery structure
// and a configurable coreness effect on patent rates. Substitutes for the
// proprietary source data in tests and demos.
struct SynthConfig {
  int n_firms = 400;
  int year_min = 1990;
  int year_max = 2005;
  int alliances_per_year = 150;
  double consortium_prob = 0.10;  // otherwise two-party alliances
  int max_consortium = 5;
  double core_fraction = 0.08;    // firms seeded as the dense core
  double core_event_prob = 0.35;  // events drawn among core firms only
  int window_width = 3;           // used when drawing patents from coreness
  double alpha = 1.0;
  double beta = 1.0;

  // Patent process: log mu = rate_intercept + effect_core * C_i(t)
  //                          + effect_logpat * log(1 + presample patents);
  // structural-zero logit = zero_intercept + zero_logpat * log(1 + presample).
  double rate_intercept = 1.2;
  double effect_core = -0.1;
  double effect_logpat = 0.4;
  double zero_intercept = 0.3;
  double zero_logpat = -1.0;
  double theta = 1.5;
  int presample = 5;

  std::uint64_t seed = 1;
};

// Writes alliances.csv, firms.csv, patents.csv into out_dir.
void write_synth_dataset(const SynthConfig& config, const std::string& out_dir);

}  // namespace rdnet
