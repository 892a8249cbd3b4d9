#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcert/certify.hpp"

namespace dcert {

struct Violation {
  json location;
  double margin = 0;
};

// Deterministic result of one verification campaign. `pass` means no
// violations; the worst margin and its location are always reported.
struct LemmaReport {
  std::string lemma_id;
  json grid_spec;
  std::uint64_t seed = 0;
  std::int64_t checks = 0;
  std::int64_t not_applicable = 0;
  double worst_margin = HUGE_VAL;
  json argmin;
  std::vector<Violation> violations;
  double wall_time_ms = 0;
  bool pass = true;
  json extra;  // campaign-specific payload (estimates, samples, ...)
  std::vector<json> rows;  // per-slice aggregates for CSV export

  void record(double margin, const json& location);
  void merge_worst(const LemmaReport& other);

  json to_json(bool with_timing = true) const;
  std::string to_csv() const;
};

struct CampaignConfig {
  std::uint64_t seed = 1;
  bool quick = false;
};

// Known campaign ids (canonical names); aliases are resolved by
// run_campaign. Throws UnknownLemma for anything else.
std::vector<std::string> campaign_ids();
bool is_known_campaign(const std::string& lemma_id);
LemmaReport run_campaign(const std::string& lemma_id,
                         const CampaignConfig& cfg);
// Every campaign in order; used by `verify all`.
std::vector<LemmaReport> run_all_campaigns(const CampaignConfig& cfg);

}  // namespace dcert
