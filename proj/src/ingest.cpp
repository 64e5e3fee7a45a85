#include "rdnet/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

#include "rdnet/csv.hpp"

namespace rdnet {

namespace {

std::optional<long long> parse_int(const std::string& s) {
  long long v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  while (e > b && (e[-1] == ' ' || e[-1] == '\t')) --e;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || b == e) return std::nullopt;
  return v;
}

// Year fields may carry full dates ("1995-06-12"); the time resolution is
// one calendar year, so anything past a 4-digit prefix is truncated.
std::optional<long long> parse_year(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != ' ' && c != '\t') t.push_back(c);
  if (t.size() > 4 && (t[4] == '-' || t[4] == '/')) t.resize(4);
  return parse_int(t);
}

long long patent_key(int firm, int year) {
  return (static_cast<long long>(firm) << 20) | static_cast<long long>(year);
}

}  // namespace

NormalizationConfig NormalizationConfig::defaults() {
  NormalizationConfig cfg;
  cfg.suffix_tokens = {"INC",  "LTD", "CORP", "CO",  "LLC", "PLC",
                       "SA",   "AG",  "GMBH", "NV",  "BV",  "SPA",
                       "KK",   "OY",  "AB",   "SRL", "PTY", "LP"};
  return cfg;
}

NormalizationConfig NormalizationConfig::load(const std::string& suffix_path,
                                              const std::string& alias_path) {
  NormalizationConfig cfg;
  if (!suffix_path.empty()) {
    std::ifstream in(suffix_path);
    if (!in.is_open())
      throw IngestError("cannot open suffix file: " + suffix_path);
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::string tok;
      for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c)))
          tok.push_back(static_cast<char>(
              std::toupper(static_cast<unsigned char>(c))));
      if (!tok.empty()) cfg.suffix_tokens.push_back(tok);
    }
  } else {
    cfg = defaults();
  }
  if (!alias_path.empty()) {
    csv::Reader reader(alias_path);
    if (!reader.is_open())
      throw IngestError("cannot open alias file: " + alias_path);
    NormalizationConfig no_alias = cfg;  // aliases map normalized forms
    std::vector<std::string> f;
    while (reader.next(f)) {
      if (f.size() != 2) continue;
      std::string variant = normalize_firm_name(f[0], no_alias);
      std::string canonical = normalize_firm_name(f[1], no_alias);
      if (!variant.empty() && !canonical.empty() && variant != canonical)
        cfg.aliases[variant] = canonical;
    }
  }
  return cfg;
}

std::string normalize_firm_name(std::string_view raw,
                                const NormalizationConfig& rules) {
  // Uppercase, punctuation -> space, collapse runs of whitespace.
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : raw) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::toupper(c)));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));

  // Runs of single-letter tokens are dotted abbreviations ("S.A.",
  // "I.B.M."); rejoin them before suffix matching.
  std::vector<std::string> joined;
  for (std::size_t i = 0; i < tokens.size();) {
    if (tokens[i].size() == 1) {
      std::string run;
      while (i < tokens.size() && tokens[i].size() == 1) run += tokens[i++];
      joined.push_back(std::move(run));
    } else {
      joined.push_back(std::move(tokens[i++]));
    }
  }
  tokens = std::move(joined);

  // Strip configured legal suffixes from the tail, repeatedly ("X CO LTD").
  auto is_suffix = [&](const std::string& t) {
    return std::find(rules.suffix_tokens.begin(), rules.suffix_tokens.end(),
                     t) != rules.suffix_tokens.end();
  };
  while (!tokens.empty() && is_suffix(tokens.back())) tokens.pop_back();

  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  auto it = rules.aliases.find(out);
  if (it != rules.aliases.end()) return it->second;
  return out;
}

namespace {

struct SectorRange {
  int lo, hi;  // inclusive SIC range
  const char* label;
};

// 4-digit SIC prefix ranges for the sector dummies reported alongside the
// regression output; "electronic components" is the reference class.
constexpr SectorRange kSectorRanges[] = {
    {2830, 2836, "pharmaceuticals"},
    {2800, 2899, "chemicals"},
    {2900, 2999, "petroleum refining and products"},
    {3570, 3579, "computer and office equipment"},
    {3651, 3652, "household audiovisual equipment"},
    {3660, 3669, "telecommunications equipment"},
    {3670, 3679, "electronic components"},
    {3711, 3714, "automotive bodies and parts"},
    {3720, 3769, "aerospace equipment"},
    {3820, 3829, "measuring and controlling devices"},
    {3840, 3845, "medical equipment"},
};

}  // namespace

std::string sector_for_sic(int sic_code) {
  if (sic_code < 1000 || sic_code > 9999) return "other";
  for (const auto& r : kSectorRanges)
    if (sic_code >= r.lo && sic_code <= r.hi) return r.label;
  return "other";
}

const std::vector<std::string>& sector_labels() {
  static const std::vector<std::string> labels = [] {
    std::vector<std::string> v;
    for (const auto& r : kSectorRanges) v.emplace_back(r.label);
    std::sort(v.begin(), v.end());
    v.push_back("other");
    return v;
  }();
  return labels;
}

int FirmTable::intern(const std::string& normalized_name, int sic_code) {
  auto it = id_of.find(normalized_name);
  if (it != id_of.end()) {
    int id = it->second;
    if (sic_codes[id] < 0 && sic_code >= 0) {
      sic_codes[id] = sic_code;
      sectors[id] = sector_for_sic(sic_code);
    }
    return id;
  }
  int id = size();
  names.push_back(normalized_name);
  sic_codes.push_back(sic_code);
  sectors.push_back(sector_for_sic(sic_code));
  id_of.emplace(normalized_name, id);
  return id;
}

long long IngestResult::patent_count(int firm, int year) const {
  auto it = patent_lookup_.find(patent_key(firm, year));
  return it == patent_lookup_.end() ? 0 : it->second;
}

long long IngestResult::patents_in(int firm, int year_lo, int year_hi) const {
  long long total = 0;
  for (int y = year_lo; y <= year_hi; ++y) total += patent_count(firm, y);
  return total;
}

void IngestResult::index_patents() {
  patent_lookup_.clear();
  for (const auto& p : patents) patent_lookup_[patent_key(p.firm, p.year)] += p.count;
}

IngestResult load_events(const std::string& alliances_path,
                         const std::string& firms_path,
                         const std::string& patents_path,
                         const IngestConfig& config) {
  IngestResult result;
  IngestReport& report = result.report;

  auto reject = [&](const std::string& file, std::size_t line,
                    std::string reason) {
    report.rejects.push_back({file, line, std::move(reason)});
  };

  // Interns a raw spelling; counts a merge when a second distinct raw
  // spelling lands on an already known canonical name.
  std::unordered_map<std::string, std::set<std::string>> spellings;
  auto intern_name = [&](const std::string& raw, int sic) -> int {
    std::string norm = normalize_firm_name(raw, config.norm);
    if (norm.empty()) return -1;
    int id = result.firms.intern(norm, sic);
    auto& seen = spellings[norm];
    if (seen.insert(raw).second && seen.size() > 1) ++report.names_merged;
    return id;
  };

  // firms.csv: firm_name,sic_code
  {
    csv::Reader reader(firms_path);
    if (!reader.is_open())
      throw IngestError("cannot open firms file: " + firms_path);
    std::vector<std::string> f;
    while (reader.next(f)) {
      ++report.rows_read;
      if (f.size() != 2) {
        reject(firms_path, reader.line_number(), "expected 2 fields");
        continue;
      }
      int sic = -1;
      if (!f[1].empty()) {
        auto v = parse_int(f[1]);
        if (!v || *v < 0 || *v > 9999) {
          reject(firms_path, reader.line_number(), "bad SIC code: " + f[1]);
          continue;
        }
        sic = *v >= 1000 ? static_cast<int>(*v) : -1;  // <4 digits = missing
      }
      if (intern_name(f[0], sic) < 0)
        reject(firms_path, reader.line_number(),
               "name empty after normalization: \"" + f[0] + "\"");
    }
  }

  // alliances.csv: alliance_id,year,firm_name_1;firm_name_2;...
  {
    csv::Reader reader(alliances_path);
    if (!reader.is_open())
      throw IngestError("cannot open alliances file: " + alliances_path);
    std::vector<std::string> f;
    while (reader.next(f)) {
      ++report.rows_read;
      if (f.size() != 3) {
        reject(alliances_path, reader.line_number(), "expected 3 fields");
        continue;
      }
      auto id = parse_int(f[0]);
      auto year = parse_year(f[1]);
      if (!id || !year) {
        reject(alliances_path, reader.line_number(), "bad id or year");
        continue;
      }
      if (*year < config.year_min || *year > config.year_max) {
        reject(alliances_path, reader.line_number(),
               "year outside study range: " + f[1]);
        continue;
      }
      AllianceEvent ev;
      ev.alliance_id = *id;
      ev.year = static_cast<int>(*year);
      bool bad_name = false;
      std::string name;
      std::istringstream parts(f[2]);
      while (std::getline(parts, name, ';')) {
        int firm = intern_name(name, -1);
        if (firm < 0) {
          bad_name = true;
          break;
        }
        ev.participants.push_back(firm);
      }
      if (bad_name) {
        reject(alliances_path, reader.line_number(),
               "participant name empty after normalization");
        continue;
      }
      std::sort(ev.participants.begin(), ev.participants.end());
      ev.participants.erase(
          std::unique(ev.participants.begin(), ev.participants.end()),
          ev.participants.end());
      if (ev.participants.size() < 2) {
        reject(alliances_path, reader.line_number(), "participants < 2");
        continue;
      }
      result.events.push_back(std::move(ev));
      ++report.events_kept;
    }
  }

  // patents.csv: firm_name,year,patent_count
  {
    csv::Reader reader(patents_path);
    if (!reader.is_open())
      throw IngestError("cannot open patents file: " + patents_path);
    std::map<std::pair<int, int>, long long> agg;
    std::vector<std::string> f;
    while (reader.next(f)) {
      ++report.rows_read;
      if (f.size() != 3) {
        reject(patents_path, reader.line_number(), "expected 3 fields");
        continue;
      }
      auto year = parse_year(f[1]);
      auto count = parse_int(f[2]);
      if (!year || !count) {
        reject(patents_path, reader.line_number(), "bad year or count");
        continue;
      }
      if (*count < 0) {
        reject(patents_path, reader.line_number(), "negative patent count");
        continue;
      }
      int firm = intern_name(f[0], -1);
      if (firm < 0) {
        reject(patents_path, reader.line_number(),
               "name empty after normalization: \"" + f[0] + "\"");
        continue;
      }
      agg[{firm, static_cast<int>(*year)}] += *count;
      ++report.patent_rows_kept;
    }
    for (const auto& [key, count] : agg)
      result.patents.push_back({key.first, key.second, count});
  }

  std::sort(result.events.begin(), result.events.end(),
            [](const AllianceEvent& a, const AllianceEvent& b) {
              return std::tie(a.year, a.alliance_id) <
                     std::tie(b.year, b.alliance_id);
            });
  result.index_patents();

  if (report.error_fraction() > config.max_error_fraction) {
    throw IngestError("reject fraction " +
                      std::to_string(report.error_fraction()) +
                      " exceeds threshold " +
                      std::to_string(config.max_error_fraction) + " (" +
                      std::to_string(report.rejects.size()) + " rejects)");
  }
  return result;
}

}  // namespace rdnet
