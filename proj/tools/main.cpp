// decaycert: chamber recovery, spherical evaluation, multiplier models,
// witness construction, decay certificates, and verification campaigns.
//
// Exit codes: 0 success / no violation, 1 verified violation, 2 usage or
// input error.

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "dcert/report.hpp"

using dcert::json;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 1;
  int threads = 0;
  bool quick = false;
  bool no_timestamp = false;
  std::string out_path;
  std::string format = "json";
  double tolerance = dcert::kMembershipTol;
};

std::string iso_timestamp() {
  char buf[32];
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(g.out_path);
  if (!f) throw dcert::Error(dcert::ErrorKind::ParseError,
                             "cannot open output file " + g.out_path);
  f << text << "\n";
}

void emit_json(const GlobalOpts& g, json j) {
  if (!g.no_timestamp) j["timestamp"] = iso_timestamp();
  emit(g, j.dump(2));
}

json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    throw dcert::Error(dcert::ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(f);
  } catch (const std::exception& e) {
    throw dcert::Error(dcert::ErrorKind::ParseError,
                       std::string("bad JSON in ") + path + ": " + e.what());
  }
}

dcert::GroupMatrix matrix_from_json(const json& j) {
  dcert::GroupMatrix g;
  g.dim = j.at("dim").get<int>();
  if (g.dim < 2 || g.dim > 4)
    throw dcert::Error(dcert::ErrorKind::ParseError, "dim must be 2..4");
  g.tag = dcert::group_tag_from_string(
      j.value("group_tag", std::string("generic")));
  const auto entries = j.at("entries").get<std::vector<double>>();
  if (static_cast<int>(entries.size()) != g.dim * g.dim)
    throw dcert::Error(dcert::ErrorKind::ParseError,
                       "entries must hold dim*dim row-major values");
  std::copy(entries.begin(), entries.end(), g.a.begin());
  return g;
}

json matrix_to_json(const dcert::GroupMatrix& g) {
  json j;
  j["dim"] = g.dim;
  j["group_tag"] = dcert::to_string(g.tag);
  j["entries"] = std::vector<double>(g.a.begin(), g.a.begin() + g.dim * g.dim);
  return j;
}

dcert::GroupMatrix parse_entries(const std::string& csv, int dim,
                                 dcert::GroupTag tag) {
  dcert::GroupMatrix g;
  g.dim = dim;
  g.tag = tag;
  size_t pos = 0;
  for (int i = 0; i < dim * dim; ++i) {
    if (pos >= csv.size())
      throw dcert::Error(dcert::ErrorKind::ParseError,
                         "expected " + std::to_string(dim * dim) + " entries");
    size_t used = 0;
    g.a[static_cast<size_t>(i)] = std::stod(csv.substr(pos), &used);
    pos += used;
    while (pos < csv.size() && (csv[pos] == ',' || csv[pos] == ' ')) ++pos;
  }
  return g;
}

json multiplier_to_json(const dcert::CompactMultiplier& m) {
  json j;
  j["schema"] = "compact-multiplier/1";
  j["pair_id"] = dcert::to_string(m.pair);
  json cs = json::array();
  for (const auto& [idx, c] : m.coefficients) {
    json cj;
    if (m.pair == dcert::PairId::U2_U1) {
      cj["p"] = idx.p;
      cj["q"] = idx.q;
    } else {
      cj["n"] = idx.n;
    }
    cj["re"] = c.real();
    cj["im"] = c.imag();
    cs.push_back(cj);
  }
  j["coefficients"] = cs;
  j["l1_norm"] = m.l1_norm;
  if (m.truncation_degree >= 0) j["truncation_degree"] = m.truncation_degree;
  return j;
}

dcert::CompactMultiplier multiplier_from_json(const json& j) {
  const dcert::PairId pair =
      dcert::pair_id_from_string(j.at("pair_id").get<std::string>());
  std::vector<std::pair<dcert::SphericalIndex, std::complex<double>>> coeffs;
  for (const json& cj : j.at("coefficients")) {
    dcert::SphericalIndex idx;
    idx.pair = pair;
    if (pair == dcert::PairId::U2_U1) {
      idx.p = cj.at("p").get<int>();
      idx.q = cj.at("q").get<int>();
    } else {
      idx.n = cj.at("n").get<int>();
    }
    coeffs.emplace_back(idx, std::complex<double>(cj.at("re").get<double>(),
                                                  cj.value("im", 0.0)));
  }
  return dcert::CompactMultiplier::make(pair, std::move(coeffs));
}

json certline_to_json(const dcert::CertLine& line, const char* coord) {
  json j;
  j["lhs"] = line.lhs;
  j["rhs"] = line.rhs;
  j["margin"] = line.margin;
  j["inputs"] = {{std::string(coord) + "1", line.in1},
                 {std::string(coord) + "2", line.in2}};
  return j;
}

// -------------------------------------------------------------- commands --

int cmd_kak(const GlobalOpts& g, const std::string& group,
            const std::string& file, const std::string& entries) {
  dcert::GroupMatrix m;
  const dcert::GroupTag tag = group == "sp2" ? dcert::GroupTag::Sp2
                                             : dcert::GroupTag::SL3;
  if (!file.empty()) {
    m = matrix_from_json(load_json_file(file));
    m.tag = tag;
  } else if (!entries.empty()) {
    m = parse_entries(entries, group == "sp2" ? 4 : 3, tag);
  } else {
    throw dcert::Error(dcert::ErrorKind::ParseError,
                       "provide --file or --entries");
  }
  json out;
  out["group"] = group;
  out["membership_residual"] = dcert::membership_residual(m);
  if (group == "sp2") {
    const dcert::HSInvariants inv = dcert::hs_invariants(m, g.tolerance);
    const dcert::ChamberSp2 c = dcert::sp2_chamber(m, g.tolerance);
    out["invariants"] = {{"c1", inv.c1}, {"c2", inv.c2}};
    out["chamber"] = {{"beta", c.beta}, {"gamma", c.gamma}};
  } else {
    const dcert::ChamberSl3 c = dcert::sl3_chamber(m, g.tolerance);
    out["chamber"] = {{"s", c.s}, {"t", c.t}};
  }
  emit_json(g, out);
  return 0;
}

int cmd_spherical(const GlobalOpts& g, const std::string& pair, int p, int q,
                  int n, double zre, double zim, std::optional<double> r,
                  const std::string& quad, const std::string& file) {
  json out;
  out["pair_id"] = pair;
  if (pair == "u2u1") {
    const std::complex<double> z{zre, zim};
    const std::complex<double> v = dcert::spherical_u2u1(p, q, z);
    out["p"] = p;
    out["q"] = q;
    out["z"] = {{"re", z.real()}, {"im", z.imag()}};
    out["value"] = {{"re", v.real()}, {"im", v.imag()}};
  } else if (pair == "su2so2") {
    double val;
    if (!quad.empty()) {
      const dcert::GroupMatrix qm = parse_entries(quad, 2, dcert::GroupTag::Generic);
      const dcert::U2Param u =
          dcert::U2Param::su2(qm.a[0], qm.a[1], qm.a[2], qm.a[3]);
      val = dcert::spherical_su2so2(n, u, g.tolerance);
      out["quad"] = {qm.a[0], qm.a[1], qm.a[2], qm.a[3]};
    } else if (r) {
      val = dcert::spherical_su2so2_coord(n, *r);
      out["r"] = *r;
    } else {
      throw dcert::Error(dcert::ErrorKind::ParseError, "provide --r or --quad");
    }
    out["n"] = n;
    out["value"] = val;
  } else {  // so3so2
    double val;
    if (!file.empty()) {
      dcert::GroupMatrix m = matrix_from_json(load_json_file(file));
      m.tag = dcert::GroupTag::SO3;
      val = dcert::spherical_so3so2(n, m, g.tolerance);
      out["g11"] = m.at(0, 0);
    } else if (r) {
      val = dcert::legendre(n, *r);
      out["r"] = *r;
    } else {
      throw dcert::Error(dcert::ErrorKind::ParseError, "provide --r or --file");
    }
    out["n"] = n;
    out["value"] = val;
  }
  emit_json(g, out);
  return 0;
}

std::complex<double> named_fn(const std::string& name, double x) {
  if (name == "runge") return 1.0 / (1.0 + 25.0 * x * x);
  if (name == "abs") return std::fabs(x);
  if (name == "cos") return std::cos(3.0 * x);
  throw dcert::Error(dcert::ErrorKind::ParseError, "unknown --fn " + name);
}

int cmd_multiplier_synth(const GlobalOpts& g, const std::string& pair_s,
                         const std::string& coeffs_file, bool random,
                         int degree, int terms, const std::string& fn,
                         bool normalize) {
  const dcert::PairId pair = dcert::pair_id_from_string(pair_s);
  dcert::CompactMultiplier m;
  if (!coeffs_file.empty()) {
    m = multiplier_from_json(load_json_file(coeffs_file));
  } else if (random) {
    dcert::Rng rng(g.seed);
    std::vector<std::pair<dcert::SphericalIndex, std::complex<double>>> cs;
    for (int k = 0; k < terms; ++k) {
      dcert::SphericalIndex idx;
      idx.pair = pair;
      if (pair == dcert::PairId::U2_U1) {
        idx.p = static_cast<int>(rng.uniform01() * (degree + 1));
        idx.q = static_cast<int>(rng.uniform01() * (degree + 1 - idx.p));
      } else {
        idx.n = static_cast<int>(rng.uniform01() * (degree + 1));
      }
      cs.emplace_back(idx, std::complex<double>(rng.gaussian(), rng.gaussian()));
    }
    m = dcert::CompactMultiplier::make(pair, std::move(cs));
  } else if (!fn.empty()) {
    if (pair == dcert::PairId::U2_U1) {
      m = dcert::expand_u2u1(
          [&](std::complex<double> z) { return named_fn(fn, std::abs(z)); },
          degree, degree + 8, 2 * degree + 9, g.seed);
    } else {
      m = dcert::expand_legendre([&](double x) { return named_fn(fn, x); },
                                 degree, degree + 32);
    }
  } else {
    throw dcert::Error(dcert::ErrorKind::ParseError,
                       "provide --coeffs, --random, or --fn");
  }
  if (normalize) m = m.normalized();
  json out = multiplier_to_json(m);
  out["seed"] = g.seed;
  emit_json(g, out);
  return 0;
}

int cmd_multiplier_eval(const GlobalOpts& g, const std::string& file,
                        double zre, double zim, std::optional<double> r) {
  const dcert::CompactMultiplier m = multiplier_from_json(load_json_file(file));
  std::complex<double> v;
  json out;
  if (m.pair == dcert::PairId::U2_U1) {
    v = dcert::eval_multiplier(m, std::complex<double>{zre, zim});
    out["z"] = {{"re", zre}, {"im", zim}};
  } else {
    if (!r) throw dcert::Error(dcert::ErrorKind::ParseError, "provide --r");
    v = dcert::eval_multiplier(m, *r);
    out["r"] = *r;
  }
  out["pair_id"] = dcert::to_string(m.pair);
  out["l1_norm"] = m.l1_norm;
  out["value"] = {{"re", v.real()}, {"im", v.imag()}};
  emit_json(g, out);
  return 0;
}

int cmd_multiplier_holder(const GlobalOpts& g, const std::string& file,
                          int grid, double c_hat_arg) {
  const dcert::CompactMultiplier m = multiplier_from_json(load_json_file(file));
  json out;
  out["pair_id"] = dcert::to_string(m.pair);
  out["l1_norm"] = m.l1_norm;
  out["grid"] = grid;
  double worst = HUGE_VAL;
  json worst_line;
  if (m.pair == dcert::PairId::U2_U1) {
    const double c_hat =
        c_hat_arg > 0.0 ? c_hat_arg
                        : dcert::shared_hs_estimate(g.quick ? 60 : 200,
                                                    g.quick ? 60 : 200,
                                                    g.quick ? 1024 : 4096)
                              .c_hat;
    const double c_tilde = std::pow(2.0, 0.75) * c_hat;
    out["c_tilde"] = c_tilde;
    for (int i = 0; i < grid; ++i)
      for (int j = i + 1; j < grid; ++j) {
        const double t1 = 2.0 * M_PI * i / grid;
        const double t2 = 2.0 * M_PI * j / grid;
        const dcert::CertLine line =
            dcert::holder_certify_u2u1(m, t1, t2, c_tilde);
        if (line.margin < worst) {
          worst = line.margin;
          worst_line = certline_to_json(line, "theta");
        }
      }
  } else {
    for (int i = 0; i < grid; ++i)
      for (int j = i + 1; j < grid; ++j) {
        const double r1 = -0.5 + static_cast<double>(i) / (grid - 1);
        const double r2 = -0.5 + static_cast<double>(j) / (grid - 1);
        const dcert::CertLine line = dcert::holder_certify_su2so2(m, r1, r2);
        if (line.margin < worst) {
          worst = line.margin;
          worst_line = certline_to_json(line, "r");
        }
      }
  }
  out["worst_margin"] = worst;
  out["worst_line"] = worst_line;
  out["pass"] = worst >= 0.0;
  emit_json(g, out);
  return worst >= 0.0 ? 0 : 1;
}

int cmd_witness(const GlobalOpts& g, const std::string& kind, double beta,
                double gamma, double r, double theta) {
  dcert::Witness w;
  if (kind == "circle")
    w = dcert::circle_witness(beta, gamma);
  else if (kind == "hyperbola")
    w = dcert::hyperbola_witness(beta, gamma);
  else
    w = dcert::sl3_witness(r, theta);
  json out;
  out["kind"] = dcert::to_string(w.kind);
  if (w.kind == dcert::WitnessKind::Sl3) {
    out["params"] = {{"q", w.q}, {"theta", w.alpha}};
    out["target"] = {{"s", w.target1}, {"t", w.target2}};
  } else {
    json params = {{"alpha", w.alpha}, {"a1", w.a1}, {"b1", w.b1}};
    if (w.kind == dcert::WitnessKind::Circle) params["r1"] = w.r1;
    out["params"] = params;
    out["target"] = {{"beta", w.target1}, {"gamma", w.target2}};
  }
  out["matrix"] = matrix_to_json(w.matrix);
  out["membership_residual"] = w.membership_residual;
  out["pass"] = w.membership_residual <= 1e-7;
  emit_json(g, out);
  return w.membership_residual <= 1e-7 ? 0 : 1;
}

int cmd_certify(const GlobalOpts& g, const std::string& group, double a,
                double b, double norm, double c_hat_arg) {
  dcert::DecayCertificate cert;
  if (group == "sp2") {
    dcert::ConstantsLedger ledger;
    if (c_hat_arg > 0.0) {
      ledger = dcert::build_ledger(c_hat_arg);
    } else {
      const dcert::HsConstantEstimate& est =
          dcert::shared_hs_estimate(g.quick ? 60 : 200, g.quick ? 60 : 200,
                                    g.quick ? 1024 : 4096);
      ledger = dcert::build_ledger(est.c_hat, est);
    }
    cert = dcert::sp2_decay_bound(a, b, norm, ledger);
  } else {
    cert = dcert::sl3_decay_bound(a, b, norm);
  }
  json out = cert.to_json();
  out["seed"] = g.seed;
  emit_json(g, out);
  return 0;
}

int cmd_constants(const GlobalOpts& g, double c_hat_arg, int n_max, int b_max,
                  int theta_grid) {
  dcert::ConstantsLedger ledger;
  if (c_hat_arg > 0.0) {
    ledger = dcert::build_ledger(c_hat_arg);
  } else {
    const dcert::HsConstantEstimate& est =
        dcert::shared_hs_estimate(n_max, b_max, theta_grid);
    ledger = dcert::build_ledger(est.c_hat, est);
  }
  json out;
  out["schema"] = "constants-ledger/1";
  out["artifact_version"] = dcert::kArtifactVersion;
  out["constants"] = ledger.to_json();
  out["recompute_residual"] = ledger.recompute_residual();
  emit_json(g, out);
  return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& lemma) {
  dcert::CampaignConfig cfg;
  cfg.seed = g.seed;
  cfg.quick = g.quick;
  if (!dcert::is_known_campaign(lemma))
    throw dcert::Error(dcert::ErrorKind::UnknownLemma,
                       "no campaign named '" + lemma + "'");
  bool all_pass = true;
  if (lemma == "all") {
    const std::vector<dcert::LemmaReport> reports =
        dcert::run_all_campaigns(cfg);
    json out = json::array();
    std::string csv;
    for (const dcert::LemmaReport& r : reports) {
      all_pass = all_pass && r.pass;
      out.push_back(r.to_json(!g.no_timestamp));
      csv += r.to_csv();
      std::fprintf(stderr, "[%s] %-20s worst_margin=%.3e checks=%lld (%.0f ms)\n",
                   r.pass ? "PASS" : "FAIL", r.lemma_id.c_str(), r.worst_margin,
                   static_cast<long long>(r.checks), r.wall_time_ms);
    }
    if (g.format == "csv") {
      emit(g, csv);
    } else {
      json wrapper;
      wrapper["schema"] = "campaign-suite/1";
      wrapper["seed"] = g.seed;
      wrapper["prng"] = dcert::kPrngId;
      wrapper["pass"] = all_pass;
      wrapper["reports"] = out;
      emit_json(g, wrapper);
    }
  } else {
    const dcert::LemmaReport r = dcert::run_campaign(lemma, cfg);
    all_pass = r.pass;
    std::fprintf(stderr, "[%s] %-20s worst_margin=%.3e checks=%lld (%.0f ms)\n",
                 r.pass ? "PASS" : "FAIL", r.lemma_id.c_str(), r.worst_margin,
                 static_cast<long long>(r.checks), r.wall_time_ms);
    if (g.format == "csv")
      emit(g, r.to_csv());
    else
      emit_json(g, r.to_json(!g.no_timestamp));
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOpts g;

  // Flag-overrides-file precedence: an optional JSON config provides
  // defaults, flags win.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        const json cfg = load_json_file(argv[i + 1]);
        g.seed = cfg.value("seed", g.seed);
        g.threads = cfg.value("threads", g.threads);
        g.quick = cfg.value("quick", g.quick);
        g.no_timestamp = cfg.value("no_timestamp", g.no_timestamp);
        g.format = cfg.value("format", g.format);
        g.out_path = cfg.value("out", g.out_path);
        g.tolerance = cfg.value("tolerance", g.tolerance);
      } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
      }
    }
  }

  CLI::App app{"numerical toolkit for polar-decomposition chamber recovery, "
               "compact-pair spherical functions, and exponential decay-bound "
               "certificates on Sp(2,R) and SL(3,R)"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override)");
  app.add_option("--seed", g.seed, "campaign seed");
  app.add_option("--threads", g.threads,
                 "parallelism degree (also DECAYCERT_THREADS)");
  app.add_flag("--quick", g.quick, "reduced grids");
  app.add_flag("--no-timestamp", g.no_timestamp,
               "omit timestamp and wall-time fields (byte-stable output)");
  app.add_option("--out", g.out_path, "write the report to a file");
  app.add_option("--format", g.format, "json|csv (csv for verify/holder)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tolerance", g.tolerance, "membership tolerance");

  // kak
  auto* kak = app.add_subcommand("kak", "recover the chamber part of g");
  std::string kak_group = "sp2", kak_file, kak_entries;
  kak->add_option("--group", kak_group)->check(CLI::IsMember({"sp2", "sl3"}));
  kak->add_option("--file", kak_file, "matrix JSON {dim, group_tag, entries}");
  kak->add_option("--entries", kak_entries, "row-major comma-separated");

  // spherical
  auto* sph = app.add_subcommand("spherical", "evaluate a spherical function");
  std::string sph_pair = "so3so2", sph_quad, sph_file;
  int sph_p = 0, sph_q = 0, sph_n = 0;
  double sph_zre = 0, sph_zim = 0;
  std::optional<double> sph_r;
  sph->add_option("--pair", sph_pair)
      ->check(CLI::IsMember({"u2u1", "su2so2", "so3so2"}));
  sph->add_option("--p", sph_p);
  sph->add_option("--q", sph_q);
  sph->add_option("--n", sph_n);
  sph->add_option("--z-re", sph_zre);
  sph->add_option("--z-im", sph_zim);
  sph->add_option("--r", sph_r, "double-coset coordinate");
  sph->add_option("--quad", sph_quad, "SU(2) quadruple a,b,c,d");
  sph->add_option("--file", sph_file, "SO(3) matrix JSON");

  // multiplier
  auto* mult = app.add_subcommand("multiplier", "multiplier models");
  mult->require_subcommand(1);
  auto* msynth = mult->add_subcommand("synth", "build a coefficient model");
  std::string ms_pair = "su2so2", ms_coeffs, ms_fn;
  bool ms_random = false, ms_normalize = false;
  int ms_degree = 10, ms_terms = 16;
  msynth->add_option("--pair", ms_pair)
      ->check(CLI::IsMember({"u2u1", "su2so2", "so3so2"}));
  msynth->add_option("--coeffs", ms_coeffs, "coefficient JSON file");
  msynth->add_flag("--random", ms_random, "random coefficients");
  msynth->add_option("--degree", ms_degree);
  msynth->add_option("--terms", ms_terms);
  msynth->add_option("--fn", ms_fn, "expand a named sample function");
  msynth->add_flag("--normalize", ms_normalize, "rescale to l1_norm = 1");
  auto* meval = mult->add_subcommand("eval", "evaluate a model");
  std::string me_file;
  double me_zre = 0, me_zim = 0;
  std::optional<double> me_r;
  meval->add_option("--multiplier", me_file)->required();
  meval->add_option("--z-re", me_zre);
  meval->add_option("--z-im", me_zim);
  meval->add_option("--r", me_r);
  auto* mhold = mult->add_subcommand("holder", "certify Hoelder continuity");
  std::string mh_file;
  int mh_grid = 256;
  double mh_chat = 0.0;
  mhold->add_option("--multiplier", mh_file)->required();
  mhold->add_option("--grid", mh_grid);
  mhold->add_option("--c-hat", mh_chat, "empirical constant (default: estimate)");

  // witness
  auto* wit = app.add_subcommand("witness", "construct a double-coset witness");
  wit->require_subcommand(1);
  auto* wc = wit->add_subcommand("circle");
  auto* wh = wit->add_subcommand("hyperbola");
  auto* ws = wit->add_subcommand("sl3");
  double w_beta = 0, w_gamma = 0, w_r = 0, w_theta = 0;
  wc->add_option("--beta", w_beta)->required();
  wc->add_option("--gamma", w_gamma)->required();
  wh->add_option("--beta", w_beta)->required();
  wh->add_option("--gamma", w_gamma)->required();
  ws->add_option("--r", w_r)->required();
  ws->add_option("--theta", w_theta)->required();

  // certify
  auto* cert = app.add_subcommand("certify", "build a decay certificate");
  cert->require_subcommand(1);
  auto* csp2 = cert->add_subcommand("sp2");
  auto* csl3 = cert->add_subcommand("sl3");
  double c_beta = 0, c_gamma = 0, c_s = 0, c_t = 0, c_norm = 0, c_chat = 0;
  csp2->add_option("--beta", c_beta)->required();
  csp2->add_option("--gamma", c_gamma)->required();
  csp2->add_option("--norm", c_norm)->required();
  csp2->add_option("--c-hat", c_chat);
  csl3->add_option("--s", c_s)->required();
  csl3->add_option("--t", c_t)->required();
  csl3->add_option("--norm", c_norm)->required();

  // verify
  auto* ver = app.add_subcommand("verify", "run a verification campaign");
  std::string lemma_id;
  ver->add_option("lemma", lemma_id, "campaign id or 'all'")->required();

  // constants
  auto* cons = app.add_subcommand("constants", "emit the constants ledger");
  double k_chat = 0.0;
  int k_nmax = 200, k_bmax = 200, k_theta = 4096;
  cons->add_option("--c-hat", k_chat, "use a pinned empirical constant");
  cons->add_option("--n-max", k_nmax);
  cons->add_option("--beta-max", k_bmax);
  cons->add_option("--theta-grid", k_theta);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (g.threads > 0) dcert::set_worker_count(g.threads);

  try {
    if (*kak) return cmd_kak(g, kak_group, kak_file, kak_entries);
    if (*sph)
      return cmd_spherical(g, sph_pair, sph_p, sph_q, sph_n, sph_zre, sph_zim,
                           sph_r, sph_quad, sph_file);
    if (*mult) {
      if (*msynth)
        return cmd_multiplier_synth(g, ms_pair, ms_coeffs, ms_random, ms_degree,
                                    ms_terms, ms_fn, ms_normalize);
      if (*meval) return cmd_multiplier_eval(g, me_file, me_zre, me_zim, me_r);
      if (*mhold) return cmd_multiplier_holder(g, mh_file, mh_grid, mh_chat);
    }
    if (*wit) {
      if (*wc) return cmd_witness(g, "circle", w_beta, w_gamma, 0, 0);
      if (*wh) return cmd_witness(g, "hyperbola", w_beta, w_gamma, 0, 0);
      if (*ws) return cmd_witness(g, "sl3", 0, 0, w_r, w_theta);
    }
    if (*cert) {
      if (*csp2) return cmd_certify(g, "sp2", c_beta, c_gamma, c_norm, c_chat);
      if (*csl3) return cmd_certify(g, "sl3", c_s, c_t, c_norm, 0.0);
    }
    if (*ver) return cmd_verify(g, lemma_id);
    if (*cons) return cmd_constants(g, k_chat, k_nmax, k_bmax, k_theta);
  } catch (const dcert::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
