#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rdnet {

struct IngestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rules applied by normalize_firm_name. Suffix tokens are matched against
// whole trailing tokens of the already uppercased, punctuation-free name.
struct NormalizationConfig {
  std::vector<std::string> suffix_tokens;
  // normalized variant -> normalized canonical, for residual manual merges
  std::unordered_map<std::string, std::string> aliases;

  static NormalizationConfig defaults();
  // One suffix token per line; '#' starts a comment. Alias file is CSV with
  // header `variant_name,canonical_name`. Either path may be empty.
  static NormalizationConfig load(const std::string& suffix_path,
                                  const std::string& alias_path);
};

// Uppercases, strips punctuation, collapses whitespace, removes configured
// legal-suffix tokens from the tail, then applies the alias map. Returns an
// empty string when nothing survives; callers reject such records.
std::string normalize_firm_name(std::string_view raw,
                                const NormalizationConfig& rules);

// 4-digit SIC code -> sector label ("other" when unmapped or missing).
std::string sector_for_sic(int sic_code);

// All sector labels the mapping can produce, "other" last.
const std::vector<std::string>& sector_labels();

struct FirmTable {
  std::vector<std::string> names;  // canonical_id -> normalized name
  std::vector<int> sic_codes;     // -1 = missing
  std::vector<std::string> sectors;
  std::unordered_map<std::string, int> id_of;

  int size() const { return static_cast<int>(names.size()); }
  // Returns the id for a normalized name, inserting a new firm if unseen.
  int intern(const std::string& normalized_name, int sic_code = -1);
};

struct AllianceEvent {
  long long alliance_id = 0;
  int year = 0;
  std::vector<int> participants;  // canonical ids, sorted, unique, size >= 2
};

struct PatentRecord {
  int firm = 0;
  int year = 0;
  long long count = 0;  // aggregated: unique per (firm, year)
};

struct RejectedRow {
  std::string file;
  std::size_t line = 0;
  std::string reason;
};

struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t events_kept = 0;
  std::size_t patent_rows_kept = 0;
  std::size_t names_merged = 0;  // raw spellings collapsed onto an existing firm
  std::vector<RejectedRow> rejects;

  double error_fraction() const {
    return rows_read == 0 ? 0.0
                          : static_cast<double>(rejects.size()) / rows_read;
  }
};

struct IngestConfig {
  NormalizationConfig norm = NormalizationConfig::defaults();
  int year_min = 1984;
  int year_max = 2009;
  double max_error_fraction = 0.01;
};

struct IngestResult {
  FirmTable firms;
  std::vector<AllianceEvent> events;    // sorted by (year, alliance_id)
  std::vector<PatentRecord> patents;    // sorted by (firm, year)
  IngestReport report;

  long long patent_count(int firm, int year) const;
  long long patents_in(int firm, int year_lo, int year_hi) const;
  void index_patents();  // rebuilds the (firm, year) lookup from patents

 private:
  std::unordered_map<long long, long long> patent_lookup_;
};

// Parses the three input files, canonicalizes names, aggregates patents.
// Throws IngestError when a file is unreadable or the reject fraction
// exceeds config.max_error_fraction.
IngestResult load_events(const std::string& alliances_path,
                         const std::string& firms_path,
                         const std::string& patents_path,
                         const IngestConfig& config);

}  // namespace rdnet
