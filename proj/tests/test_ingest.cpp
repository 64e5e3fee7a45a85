#include <doctest.h>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <random>

#include "rdnet/ingest.hpp"

using namespace rdnet;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("rdnet_ingest_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    fs::path p = path / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }
};

IngestConfig config_1990s() {
  IngestConfig cfg;
  cfg.year_min = 1990;
  cfg.year_max = 1999;
  return cfg;
}

}  // namespace

TEST_CASE("firm name normalization follows the rule list") {
  const auto rules = NormalizationConfig::defaults();
  CHECK(normalize_firm_name("Acme Pharma, Inc.", rules) == "ACME PHARMA");
  CHECK(normalize_firm_name("ACME PHARMA", rules) == "ACME PHARMA");
  CHECK(normalize_firm_name("  sun   microsystems ltd ", rules) ==
        "SUN MICROSYSTEMS");
  CHECK(normalize_firm_name("Nestle S.A.", rules) == "NESTLE");
  CHECK(normalize_firm_name("Telefonaktiebolaget Co. Ltd.", rules) ==
        "TELEFONAKTIEBOLAGET");
  // only-suffix names vanish and are rejected upstream
  CHECK(normalize_firm_name("Inc.", rules).empty());
}

TEST_CASE("normalization is idempotent and case-insensitive") {
  const auto rules = NormalizationConfig::defaults();
  std::mt19937_64 eng(42);
  const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 .,-&()";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(1, 40);
  for (int trial = 0; trial < 500; ++trial) {
    std::string raw;
    const int k = len(eng);
    for (int i = 0; i < k; ++i) raw.push_back(alphabet[pick(eng)]);
    const std::string once = normalize_firm_name(raw, rules);
    CHECK(normalize_firm_name(once, rules) == once);
    std::string lower = raw;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](char c) {
      return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    });
    CHECK(normalize_firm_name(lower, rules) == once);
  }
}

TEST_CASE("alias file merges residual spellings") {
  TempDir dir;
  const std::string alias =
      dir.file("alias.csv", "variant_name,canonical_name\n"
                            "Intl Business Machines,International Business "
                            "Machines\n");
  auto rules = NormalizationConfig::load("", alias);
  CHECK(normalize_firm_name("INTL BUSINESS MACHINES", rules) ==
        "INTERNATIONAL BUSINESS MACHINES");
  CHECK(normalize_firm_name("IBM", rules) == "IBM");  // unmapped spelling
  // dotted abbreviations rejoin before suffix stripping
  CHECK(normalize_firm_name("I.B.M. Corp.", rules) == "IBM");
}

TEST_CASE("sector mapping from SIC prefixes is deterministic") {
  CHECK(sector_for_sic(2834) == "pharmaceuticals");
  CHECK(sector_for_sic(2821) == "chemicals");
  CHECK(sector_for_sic(3571) == "computer and office equipment");
  CHECK(sector_for_sic(3674) == "electronic components");
  CHECK(sector_for_sic(3841) == "medical equipment");
  CHECK(sector_for_sic(7372) == "other");
  CHECK(sector_for_sic(-1) == "other");
}

TEST_CASE("load_events keeps well-formed rows") {
  TempDir dir;
  // full dates truncate to the calendar year
  const std::string alliances = dir.file("a.csv",
                                         "alliance_id,year,participants\n"
                                         "1,1995-03-17,Alpha Inc;Beta Ltd\n"
                                         "2,1996,Beta Ltd;Gamma\n"
                                         "3,1996,Alpha Inc;Gamma;Delta\n");
  const std::string firms = dir.file("f.csv",
                                     "firm_name,sic_code\n"
                                     "Alpha Inc,2834\n"
                                     "Beta Ltd,3571\n"
                                     "Gamma,3674\n"
                                     "Delta,\n");
  const std::string patents = dir.file("p.csv",
                                       "firm_name,year,patent_count\n"
                                       "Alpha Inc,1996,4\n"
                                       "Alpha Inc,1996,2\n"
                                       "Gamma,1997,1\n");
  IngestResult r = load_events(alliances, firms, patents, config_1990s());
  CHECK(r.events.size() == 3);
  CHECK(r.report.rejects.empty());
  CHECK(r.firms.size() == 4);
  // events sorted by year then alliance id
  CHECK(r.events[0].alliance_id == 1);
  CHECK(r.events[1].alliance_id == 2);
  CHECK(r.events[2].participants.size() == 3);
  // patents aggregated per (firm, year)
  const int alpha = r.firms.id_of.at("ALPHA");
  CHECK(r.patent_count(alpha, 1996) == 6);
  CHECK(r.patents_in(alpha, 1990, 1999) == 6);
}

TEST_CASE("one-participant alliances are rejected with a reason") {
  TempDir dir;
  const std::string alliances = dir.file("a.csv",
                                         "alliance_id,year,participants\n"
                                         "1,1995,Alpha;Beta\n"
                                         "2,1995,Solo Corp\n");
  const std::string firms = dir.file("f.csv", "firm_name,sic_code\n");
  const std::string patents = dir.file("p.csv", "firm_name,year,patent_count\n");
  IngestConfig cfg = config_1990s();
  cfg.max_error_fraction = 0.9;
  IngestResult r = load_events(alliances, firms, patents, cfg);
  CHECK(r.events.size() == 1);
  REQUIRE(r.report.rejects.size() == 1);
  CHECK(r.report.rejects[0].reason == "participants < 2");
}

TEST_CASE("spellings differing only by a legal suffix share a canonical id") {
  TempDir dir;
  const std::string alliances = dir.file("a.csv",
                                         "alliance_id,year,participants\n"
                                         "1,1995,Acme Pharma Inc;Beta\n"
                                         "2,1996,ACME PHARMA;Gamma\n");
  const std::string firms = dir.file("f.csv", "firm_name,sic_code\n");
  const std::string patents = dir.file("p.csv", "firm_name,year,patent_count\n");
  IngestResult r = load_events(alliances, firms, patents, config_1990s());
  CHECK(r.events[0].participants[0] == r.events[1].participants[0]);
  CHECK(r.report.names_merged >= 1);
  CHECK(r.firms.id_of.count("ACME PHARMA") == 1);
}

TEST_CASE("duplicate participants collapse before the size check") {
  TempDir dir;
  const std::string alliances = dir.file("a.csv",
                                         "alliance_id,year,participants\n"
                                         "1,1995,Acme Inc;ACME\n");
  const std::string firms = dir.file("f.csv", "firm_name,sic_code\n");
  const std::string patents = dir.file("p.csv", "firm_name,year,patent_count\n");
  IngestConfig cfg = config_1990s();
  cfg.max_error_fraction = 1.0;
  IngestResult r = load_events(alliances, firms, patents, cfg);
  CHECK(r.events.empty());
  REQUIRE(r.report.rejects.size() == 1);
  CHECK(r.report.rejects[0].reason == "participants < 2");
}

TEST_CASE("reject fraction above the threshold aborts ingest") {
  TempDir dir;
  std::string body = "alliance_id,year,participants\n";
  for (int i = 0; i < 10; ++i)
    body += std::to_string(i) + ",1995,A Firm;B Firm\n";
  body += "99,1880,A Firm;B Firm\n";  // year outside the study range
  const std::string alliances = dir.file("a.csv", body);
  const std::string firms = dir.file("f.csv", "firm_name,sic_code\n");
  const std::string patents = dir.file("p.csv", "firm_name,year,patent_count\n");
  IngestConfig cfg = config_1990s();
  cfg.max_error_fraction = 0.01;
  CHECK_THROWS_AS(load_events(alliances, firms, patents, cfg), IngestError);
  cfg.max_error_fraction = 0.5;
  IngestResult r = load_events(alliances, firms, patents, cfg);
  CHECK(r.events.size() == 10);
}

TEST_CASE("patent totals survive aggregation and ids are deterministic") {
  TempDir dir;
  std::mt19937_64 eng(7);
  std::uniform_int_distribution<int> firm(0, 9), year(1990, 1999), cnt(0, 20);
  std::string body = "firm_name,year,patent_count\n";
  long long total = 0;
  for (int i = 0; i < 200; ++i) {
    int c = cnt(eng);
    total += c;
    body += "F" + std::to_string(firm(eng)) + "," + std::to_string(year(eng)) +
            "," + std::to_string(c) + "\n";
  }
  const std::string alliances = dir.file("a.csv",
                                         "alliance_id,year,participants\n"
                                         "1,1995,F0;F1\n");
  const std::string firms = dir.file("f.csv", "firm_name,sic_code\n");
  const std::string patents = dir.file("p.csv", body);
  IngestResult a = load_events(alliances, firms, patents, config_1990s());
  long long seen = 0;
  for (const auto& p : a.patents) seen += p.count;
  CHECK(seen == total);

  IngestResult b = load_events(alliances, firms, patents, config_1990s());
  REQUIRE(a.firms.size() == b.firms.size());
  for (int i = 0; i < a.firms.size(); ++i)
    CHECK(a.firms.names[i] == b.firms.names[i]);
}
