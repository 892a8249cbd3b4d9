#include "dcert/certify.hpp"

#include <cmath>
#include <mutex>

namespace dcert {

namespace {

json matrix_to_json(const GroupMatrix& g) {
  json j;
  j["dim"] = g.dim;
  j["group_tag"] = to_string(g.tag);
  std::vector<double> entries(g.a.begin(), g.a.begin() + g.dim * g.dim);
  j["entries"] = entries;
  return j;
}

json witness_to_json(const Witness& w) {
  json j;
  j["kind"] = to_string(w.kind);
  if (w.kind == WitnessKind::Sl3) {
    j["params"] = {{"q", w.q}, {"theta", w.alpha}};
    j["target"] = {{"s", w.target1}, {"t", w.target2}};
  } else {
    json p = {{"alpha", w.alpha}, {"a1", w.a1}, {"b1", w.b1}};
    if (w.kind == WitnessKind::Circle) p["r1"] = w.r1;
    j["params"] = p;
    j["target"] = {{"beta", w.target1}, {"gamma", w.target2}};
  }
  j["matrix"] = matrix_to_json(w.matrix);
  j["membership_residual"] = w.membership_residual;
  return j;
}

}  // namespace

const char* to_string(ConstFlag f) {
  switch (f) {
    case ConstFlag::PaperExplicit: return "paper-explicit";
    case ConstFlag::EmpiricalDependent: return "empirical-dependent";
    case ConstFlag::DerivedFromProof: return "derived-from-proof";
  }
  return "?";
}

ConstantsLedger build_ledger(double c_hat,
                             std::optional<HsConstantEstimate> provenance) {
  if (!(c_hat > 0.0))
    throw Error(ErrorKind::DomainError, "c_hat must be positive");
  ConstantsLedger l;
  l.c_hat = c_hat;
  l.c_hat_provenance = provenance;
  l.c_tilde = std::pow(2.0, 0.75) * c_hat;
  l.C3 = 4.0 * std::sqrt(2.0);
  l.C4 = std::max(l.c_tilde, 2.0 * std::exp(0.25));
  l.C5 = std::exp(0.125) * (l.C3 + l.C4);
  l.C5p = l.C5 / (1.0 - std::exp(-1.0 / 16.0));
  l.C6 = std::max(l.C5p, 2.0 * std::exp(5.0 / 16.0));
  l.C1_sp2 = std::max(l.C3 + l.C6, l.C4 + l.C6);
  l.C2_sp2_beta = 1.0 / 64.0;
  l.C2_sp2_norm = 1.0 / (64.0 * std::sqrt(2.0));
  l.C1_sl3 = 120.0;
  l.C2_sl3 = 1.0 / 12.0;
  return l;
}

std::vector<LedgerEntry> ConstantsLedger::entries() const {
  return {
      {"c_hat", c_hat, "empirical grid maximum", ConstFlag::EmpiricalDependent},
      {"c_tilde", c_tilde, "2^(3/4) * c_hat", ConstFlag::EmpiricalDependent},
      {"C3", C3, "4*sqrt(2)", ConstFlag::PaperExplicit},
      {"C4", C4, "max{c_tilde, 2*exp(1/4)}", ConstFlag::EmpiricalDependent},
      {"C5", C5, "exp(1/8)*(C3+C4)", ConstFlag::EmpiricalDependent},
      {"C5p", C5p, "(1-exp(-1/16))^-1 * C5", ConstFlag::EmpiricalDependent},
      {"C6", C6, "max{C5p, 2*exp(5/16)}", ConstFlag::EmpiricalDependent},
      {"C1_sp2", C1_sp2, "max{C3+C6, C4+C6}", ConstFlag::EmpiricalDependent},
      {"C2_sp2_beta", C2_sp2_beta, "1/64", ConstFlag::PaperExplicit},
      {"C2_sp2_norm", C2_sp2_norm, "1/(64*sqrt(2))", ConstFlag::DerivedFromProof},
      {"C1_sl3", C1_sl3, "120", ConstFlag::PaperExplicit},
      {"C2_sl3", C2_sl3, "1/12", ConstFlag::PaperExplicit},
  };
}

double ConstantsLedger::recompute_residual() const {
  const ConstantsLedger fresh = build_ledger(c_hat);
  double worst = 0.0;
  const auto upd = [&](double a, double b) {
    worst = std::max(worst, std::fabs(a - b));
  };
  upd(fresh.c_tilde, c_tilde);
  upd(fresh.C3, C3);
  upd(fresh.C4, C4);
  upd(fresh.C5, C5);
  upd(fresh.C5p, C5p);
  upd(fresh.C6, C6);
  upd(fresh.C1_sp2, C1_sp2);
  upd(fresh.C2_sp2_beta, C2_sp2_beta);
  upd(fresh.C2_sp2_norm, C2_sp2_norm);
  upd(fresh.C1_sl3, C1_sl3);
  upd(fresh.C2_sl3, C2_sl3);
  return worst;
}

json ConstantsLedger::to_json() const {
  json j;
  for (const LedgerEntry& e : entries()) {
    json ej;
    ej["value"] = e.value;
    ej["formula"] = e.formula;
    ej["flag"] = to_string(e.flag);
    if (e.name == "c_hat" && c_hat_provenance) {
      const HsConstantEstimate& p = *c_hat_provenance;
      ej["provenance"] = {{"n_max", p.n_max},
                          {"beta_max", p.beta_max},
                          {"theta_grid_size", p.theta_grid_size},
                          {"argmax", {{"n", p.argmax_n},
                                      {"beta", p.argmax_beta},
                                      {"theta", p.argmax_theta}}}};
    }
    j[e.name] = ej;
  }
  return j;
}

const HsConstantEstimate& shared_hs_estimate(int n_max, int beta_max,
                                             int theta_grid) {
  static std::mutex mu;
  static std::vector<HsConstantEstimate> cache;
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& e : cache)
    if (e.n_max == n_max && e.beta_max == beta_max &&
        e.theta_grid_size == theta_grid)
      return e;
  cache.push_back(hs_constant_estimate(n_max, beta_max, theta_grid));
  return cache.back();
}

json DecayCertificate::to_json() const {
  json j;
  j["schema"] = "decay-certificate/1";
  j["artifact_version"] = kArtifactVersion;
  j["group"] = group;
  if (group == "Sp2")
    j["target"] = {{"beta", target1}, {"gamma", target2}};
  else
    j["target"] = {{"s", target1}, {"t", target2}};
  j["norm_bound"] = norm_bound;
  j["branch"] = branch;
  json steps_j = json::array();
  for (const CertStep& s : steps) {
    json sj;
    sj["lemma"] = s.lemma_id;
    sj["formula"] = s.formula;
    sj["value"] = s.value;
    sj["witness_ref"] = s.witness;
    steps_j.push_back(sj);
  }
  j["steps"] = steps_j;
  j["pre_bound"] = pre_bound;
  j["final_bound"] = final_bound;
  j["envelope"] = {{"constant", envelope_constant},
                   {"rate", envelope_rate},
                   {"decay_arg", decay_arg}};
  if (group == "Sp2")
    j["norm_form"] = {{"alpha_norm", alpha_norm},
                      {"rate", norm_rate},
                      {"bound", norm_form_bound}};
  j["phi_infty_note"] = phi_infty_note;
  j["constants"] = constants;
  return j;
}

DecayCertificate sp2_decay_bound(double beta, double gamma, double norm_bound,
                                 const ConstantsLedger& ledger) {
  if (!(beta >= gamma && gamma >= 0.0))
    throw Error(ErrorKind::OrderViolation, "need beta >= gamma >= 0");
  if (!(norm_bound > 0.0))
    throw Error(ErrorKind::DomainError, "norm bound must be positive");
  DecayCertificate cert;
  cert.group = "Sp2";
  cert.target1 = beta;
  cert.target2 = gamma;
  cert.norm_bound = norm_bound;

  const bool circle = beta >= 2.0 * gamma;
  cert.branch = circle ? "circle" : "hyperbola";
  const double branch_const = circle ? ledger.C3 : ledger.C4;

  // Attach the realizing witness when it exists and double precision can
  // actually verify its membership at the 1e-7 gate; the bound itself never
  // depends on the witness.
  json witness = nullptr;
  if (beta > 0.0) {
    try {
      const Witness w =
          circle ? circle_witness(beta, gamma) : hyperbola_witness(beta, gamma);
      if (w.membership_residual <= 1e-7) witness = witness_to_json(w);
    } catch (const Error&) {
      witness = nullptr;  // outside the witness regime; bound still valid
    }
  }

  CertStep step1;
  step1.lemma_id = circle ? "betagammacir" : "betagammahyp";
  step1.formula = circle ? "C3*exp(-beta/16)" : "C4*exp(-beta/16)";
  step1.value = branch_const * std::exp(-beta / 16.0) * norm_bound;
  step1.witness = witness;
  CertStep step2;
  step2.lemma_id = "limit";
  step2.formula = "C6*exp(-beta/64)";
  step2.value = ledger.C6 * std::exp(-beta / 64.0) * norm_bound;
  step2.witness = nullptr;
  cert.steps = {step1, step2};
  cert.pre_bound = step1.value + step2.value;
  cert.envelope_constant = branch_const + ledger.C6;
  cert.envelope_rate = ledger.C2_sp2_beta;
  cert.decay_arg = beta;
  cert.final_bound =
      cert.envelope_constant * std::exp(-beta / 64.0) * norm_bound;
  cert.alpha_norm = std::hypot(beta, gamma);
  cert.norm_rate = ledger.C2_sp2_norm;
  cert.norm_form_bound = ledger.C1_sp2 *
                         std::exp(-cert.norm_rate * cert.alpha_norm) *
                         norm_bound;
  cert.phi_infty_note =
      "phi_infinity is c_inf = lim_{t->inf} phi(D(2t,t)), which exists for "
      "every bi-invariant multiplier of norm <= norm_bound; the bound is on "
      "|phi(D(beta,gamma)) - c_inf|. Multiplier norms are assumed, never "
      "computed.";
  cert.constants = ledger.to_json();
  return cert;
}

DecayCertificate sl3_decay_bound(double s, double t, double norm_bound) {
  if (!(s >= 0.0 && t >= 0.0))
    throw Error(ErrorKind::DomainError, "need s, t >= 0");
  if (!(norm_bound > 0.0))
    throw Error(ErrorKind::DomainError, "norm bound must be positive");
  DecayCertificate cert;
  cert.group = "SL3";
  cert.target1 = s;
  cert.target2 = t;
  cert.norm_bound = norm_bound;
  cert.branch = "sl3";

  json witness = nullptr;
  if (s > 0.0 || t > 0.0) {
    // D(s,t) is realized by D(r,0) rot3(theta) D(r,0) with r = s/2 + t and
    // cos(theta) = sinh(s/2)/sinh(r).
    const double r = 0.5 * s + t;
    const double theta = std::acos(std::min(1.0, std::sinh(0.5 * s) / std::sinh(r)));
    try {
      const Witness w = sl3_witness(r, theta);
      if (w.membership_residual <= 1e-7) witness = witness_to_json(w);
    } catch (const Error&) {
      witness = nullptr;
    }
  }

  const double u = s + t;
  CertStep step1;
  step1.lemma_id = "sl3-diagonal-step";
  step1.formula = "8*exp(-(s+t)/6)";
  step1.value = 8.0 * std::exp(-u / 6.0) * norm_bound;
  step1.witness = witness;
  CertStep step2;
  step2.lemma_id = "sl3-diagonal-limit";
  step2.formula = "112*exp(-(s+t)/12)";
  step2.value = 112.0 * std::exp(-u / 12.0) * norm_bound;
  step2.witness = nullptr;
  cert.steps = {step1, step2};
  cert.pre_bound = step1.value + step2.value;
  cert.envelope_constant = 120.0;
  cert.envelope_rate = 1.0 / 12.0;
  cert.decay_arg = u;
  cert.final_bound = 120.0 * std::exp(-u / 12.0) * norm_bound;
  cert.phi_infty_note =
      "phi_infinity = lim_{u->inf} phi(D(u,u)); the two-term pre-bound is "
      "dominated by the simplified envelope (asserted).";
  cert.constants = {{"C1_sl3", {{"value", 120.0}, {"flag", "paper-explicit"}}},
                    {"C2_sl3", {{"value", 1.0 / 12.0}, {"flag", "paper-explicit"}}}};
  if (!(cert.pre_bound <= cert.final_bound * (1.0 + 1e-12)))
    throw Error(ErrorKind::DomainError,
                "pre-bound exceeds the simplified envelope");
  return cert;
}

ChainReport scalar_chain_check(double beta, double gamma) {
  if (!(beta >= gamma && gamma >= 0.0))
    throw Error(ErrorKind::OrderViolation, "need beta >= gamma >= 0");
  ChainReport rep;
  rep.beta = beta;
  rep.gamma = gamma;
  const CouplingSolution st = solve_st(beta, gamma);
  rep.s = st.s;
  rep.t = st.t;
  const double sb = std::sinh(beta);
  const double sg = std::sinh(gamma);

  const auto add = [&](const std::string& id, bool applicable, double lhs,
                       double rhs) {
    ChainCheck c;
    c.id = id;
    c.applicable = applicable;
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = applicable ? rhs - lhs : HUGE_VAL;
    if (applicable) {
      rep.worst_margin = std::min(rep.worst_margin, c.margin);
      ++rep.applicable_count;
    } else {
      ++rep.skipped_count;
    }
    rep.checks.push_back(std::move(c));
  };

  // circle chain, stated for beta >= gamma + 8
  {
    const bool in = beta >= gamma + 8.0;
    double r1 = 0.0, r2 = 0.0;
    if (in) {
      r1 = 2.0 * sb * sg / (sb * sb + sg * sg);
      r2 = sigma_of(st.s) / rho_of(st.s);
    }
    add("cir.r1_exp", in, r1, 2.0 * std::exp(gamma - beta));
    add("cir.r1_half", in, r1, 0.5);
    add("cir.r2_cosh", in, r2, 1.0 / std::cosh(st.s));
    add("cir.cosh_exp", in, 1.0 / std::cosh(st.s), 2.0 * std::exp(-st.s));
    add("cir.r2_beta", in, r2, 2.0 * std::exp(-beta / 4.0));
    add("cir.r_diff", in, std::fabs(r1 - r2),
        2.0 * std::exp((gamma - beta) / 4.0));
  }

  // hyperbola chain, stated for gamma >= 2
  {
    const bool in = gamma >= 2.0;
    double a1 = 0.0, a2 = 0.0, th1 = 0.0, th2 = 0.0;
    if (in) {
      const double sa2 = 2.0 * sb * sg;  // sinh^2 alpha
      const double s2a = 2.0 * std::sqrt(sa2) * std::sqrt(1.0 + sa2);
      a1 = (sb - sg) / s2a;
      a2 = (std::sinh(2.0 * st.t) - std::sinh(st.t)) / s2a;
      th1 = std::asin(std::sqrt(2.0) * a1);
      th2 = std::asin(std::sqrt(2.0) * a2);
    }
    add("hyp.a1_sinh", in, a1, 1.0 / (4.0 * sg));
    add("hyp.a1_eighth", in, a1, 0.125);
    add("hyp.a2_sinh", in, a2, 1.0 / (4.0 * std::sinh(std::max(st.t, 1e-300))));
    add("hyp.a2_quarter", in, a2, 0.25);
    add("hyp.theta_exp", in, std::fabs(th1 - th2), std::exp(-gamma / 2.0));
    add("hyp.t_half_gamma", in, gamma / 2.0, st.t);
  }

  // rho/sigma envelopes (stated for arguments >= 1)
  add("rhosigma.rho_lower", rep.s >= 1.0, std::exp(4.0 * rep.s) / 5.0,
      rho_of(rep.s));
  add("rhosigma.rho_upper", rep.s >= 1.0, rho_of(rep.s),
      std::exp(4.0 * rep.s) / 3.0);
  add("rhosigma.sigma_lower", rep.t >= 1.0, std::exp(3.0 * rep.t) / 3.0,
      sigma_of(rep.t));
  add("rhosigma.sigma_upper", rep.t >= 1.0, sigma_of(rep.t),
      std::exp(3.0 * rep.t) / 2.0);
  {
    const bool in = rep.t >= 1.0 && rep.s >= rep.t;
    add("rhosigma.sinhb_lower", in, std::exp(2.0 * rep.s) / std::sqrt(10.0), sb);
    add("rhosigma.sinhb_upper", in, sb, std::exp(2.0 * rep.s) / std::sqrt(3.0));
    add("rhosigma.sinhg_lower", in,
        std::exp(3.0 * rep.t - 2.0 * rep.s) / (2.0 * std::sqrt(3.0)), sg);
    add("rhosigma.sinhg_upper", in, sg,
        std::sqrt(5.0 / 8.0) * std::exp(3.0 * rep.t - 2.0 * rep.s));
  }
  {
    const bool in = rep.t >= 1.0 && rep.s >= rep.t && rep.s <= 1.5 * rep.t;
    ChamberSp2 c{beta, gamma};
    add("rhosigma.window_beta", in, std::fabs(c.beta - 2.0 * rep.s), 1.0);
    add("rhosigma.window_gamma", in,
        std::fabs(c.gamma + 2.0 * rep.s - 3.0 * rep.t), 1.0);
  }

  // comparest chain, stated for 2 <= t <= s <= 6t/5
  {
    const bool in = rep.t >= 2.0 && rep.s >= rep.t && rep.s <= 1.2 * rep.t;
    add("comparest.bg_lower", in, 4.0 * rep.s - 3.0 * rep.t - 2.0, beta - gamma);
    add("comparest.bg_chain", in, rep.s - 2.0, 4.0 * rep.s - 3.0 * rep.t - 2.0);
    add("comparest.g_lower", in, 3.0 * rep.t - 2.0 * rep.s - 1.0, gamma);
    add("comparest.g_chain", in, (rep.s - 2.0) / 2.0,
        3.0 * rep.t - 2.0 * rep.s - 1.0);
  }

  if (rep.applicable_count == 0) rep.worst_margin = HUGE_VAL;
  return rep;
}

SeriesReport limit_series_check(double t_min, double t_max, long n_max) {
  if (!(t_min >= 5.0 && t_max >= t_min))
    throw Error(ErrorKind::DomainError, "need 5 <= t_min <= t_max");
  SeriesReport rep;
  const double ratio = std::exp(-1.0 / 16.0);
  const double prefactor = 1.0 / (1.0 - ratio);
  const int samples = 8;
  for (int i = 0; i < samples; ++i) {
    const double t =
        (samples == 1) ? t_min : t_min + (t_max - t_min) * i / (samples - 1);
    const double bound = prefactor * std::exp(-t / 16.0);
    double sum = 0.0;
    double term = std::exp(-t / 16.0);
    double worst = HUGE_VAL;
    for (long n = 0; n <= n_max; ++n) {
      sum += term;
      term *= ratio;
      worst = std::min(worst, bound - sum);
    }
    SeriesSample s;
    s.t = t;
    s.n_max = n_max;
    s.worst_margin = worst;
    s.tightness_gap = std::fabs(1.0 - sum / bound);
    const double closed = std::exp(-t / 16.0) *
                          (1.0 - std::pow(ratio, static_cast<double>(n_max) + 1.0)) /
                          (1.0 - ratio);
    s.closed_form_error = std::fabs(sum - closed) / closed;
    rep.samples.push_back(s);
    rep.worst_margin = std::min(rep.worst_margin, worst);
    rep.worst_tightness_gap = std::max(rep.worst_tightness_gap, s.tightness_gap);
  }
  return rep;
}

}  // namespace dcert
