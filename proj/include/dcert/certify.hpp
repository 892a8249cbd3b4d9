#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcert/coupling.hpp"
#include "dcert/gelfand.hpp"
#include "dcert/orthopoly.hpp"

#include "json.hpp"

namespace dcert {

using json = nlohmann::ordered_json;

enum class ConstFlag { PaperExplicit, EmpiricalDependent, DerivedFromProof };

const char* to_string(ConstFlag f);

struct LedgerEntry {
  std::string name;
  double value = 0;
  std::string formula;
  ConstFlag flag = ConstFlag::PaperExplicit;
};

// Every named constant of the decay chain, with provenance. Entries whose
// value depends on the empirical c_hat are flagged as such.
struct ConstantsLedger {
  double c_hat = 0;
  std::optional<HsConstantEstimate> c_hat_provenance;
  double c_tilde = 0;      // 2^{3/4} c_hat
  double C3 = 0;           // 4 sqrt 2
  double C4 = 0;           // max{c_tilde, 2 e^{1/4}}
  double C5 = 0;           // e^{1/8} (C3 + C4)
  double C5p = 0;          // (1 - e^{-1/16})^{-1} C5
  double C6 = 0;           // max{C5p, 2 e^{5/16}}
  double C1_sp2 = 0;       // max{C3+C6, C4+C6}
  double C2_sp2_beta = 0;  // 1/64 (exponent rate in beta)
  double C2_sp2_norm = 0;  // 1/(64 sqrt 2) (rate in ||alpha||_2)
  double C1_sl3 = 0;       // 120
  double C2_sl3 = 0;       // 1/12

  std::vector<LedgerEntry> entries() const;
  // Largest |recomputed - stored| over the formula entries (0 expected).
  double recompute_residual() const;
  json to_json() const;
};

ConstantsLedger build_ledger(double c_hat,
                             std::optional<HsConstantEstimate> provenance = {});
// Process-wide cached estimate at the given grid (campaigns and the CLI
// share one evaluation).
const HsConstantEstimate& shared_hs_estimate(int n_max = 200, int beta_max = 200,
                                             int theta_grid = 4096);

struct CertStep {
  std::string lemma_id;
  std::string formula;
  double value = 0;
  json witness;  // witness matrix + residual, or null
};

// Machine-checkable record of the decay-chain bound at one chamber point:
// "for every K-bi-invariant multiplier with norm <= norm_bound, the chain
// gives |phi(D(target)) - phi_infinity| <= final_bound".
struct DecayCertificate {
  std::string group;   // Sp2 | SL3
  double target1 = 0;  // beta | s
  double target2 = 0;  // gamma | t
  double norm_bound = 1;
  std::string branch;  // circle | hyperbola | sl3
  std::vector<CertStep> steps;
  double pre_bound = 0;    // sum of the step values
  double final_bound = 0;  // envelope form
  double envelope_constant = 0;
  double envelope_rate = 0;  // final = const * exp(-rate * decay_arg) * norm
  double decay_arg = 0;      // beta for Sp2, s+t for SL3
  // ||alpha||_2 form (Sp2): final <= C1 exp(-norm_rate ||alpha||_2) norm.
  double alpha_norm = 0;
  double norm_rate = 0;
  double norm_form_bound = 0;
  std::string phi_infty_note;
  json constants;

  json to_json() const;
};

DecayCertificate sp2_decay_bound(double beta, double gamma, double norm_bound,
                                 const ConstantsLedger& ledger);
DecayCertificate sl3_decay_bound(double s, double t, double norm_bound);

// One regime-gated inequality of the proof chains.
struct ChainCheck {
  std::string id;
  bool applicable = false;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;  // rhs - lhs when applicable
};

struct ChainReport {
  double beta = 0, gamma = 0;
  double s = 0, t = 0;
  std::vector<ChainCheck> checks;
  double worst_margin = HUGE_VAL;
  int applicable_count = 0;
  int skipped_count = 0;
};

ChainReport scalar_chain_check(double beta, double gamma);

struct SeriesSample {
  double t = 0;
  long n_max = 0;
  double worst_margin = 0;     // min over n of bound - partial sum
  double tightness_gap = 0;    // |1 - sum_{n_max}/bound|
  double closed_form_error = 0;
};

struct SeriesReport {
  std::vector<SeriesSample> samples;
  double worst_margin = HUGE_VAL;
  double worst_tightness_gap = 0;
};

// Sum_{j=0..n} e^{-(t+j)/16} <= (1-e^{-1/16})^{-1} e^{-t/16}, sampled t in
// [t_min, t_max] (5 <= t_min), n up to n_max.
SeriesReport limit_series_check(double t_min, double t_max, long n_max = 10000);

}  // namespace dcert
