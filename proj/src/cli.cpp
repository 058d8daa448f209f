#include "biqorb/cli.hpp"

#include "biqorb/local_iwahori.hpp"
#include "biqorb/lseries.hpp"
#include "biqorb/orbital.hpp"
#include "biqorb/spectra.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace biqorb {

namespace {

using Json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

Json spectral_to_json(const SpectralPoly& p) {
  Json j = Json::object();
  for (auto& [e, c] : p.coeff) j[std::to_string(e)] = to_string(c);
  return j;
}

}  // namespace

TowerConfig parse_tower_text(const std::string& text, const std::string& origin) {
  std::optional<int> q;
  std::optional<std::vector<long long>> roots;
  std::optional<std::string> sigma_f_raw, sigma_inf_raw, wprime_raw;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected `key = value`");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    try {
      if (key == "q") {
        q = std::stoi(val);
      } else if (key == "roots") {
        std::vector<long long> rs;
        for (auto& part : split(val, ','))
          if (!part.empty()) rs.push_back(std::stoll(part));
        roots = rs;
      } else if (key == "sigma_f") {
        sigma_f_raw = val;
      } else if (key == "sigma_inf") {
        sigma_inf_raw = val;
      } else if (key == "wprime") {
        wprime_raw = val;
      } else {
        throw ConfigError(where + ": unknown key `" + key + "`");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  if (!q) throw ConfigError(origin + ": missing key `q`");
  if (!roots || roots->size() != 3)
    throw ConfigError(origin + ": key `roots` must list the three cubic roots");
  if (!sigma_f_raw || !sigma_inf_raw)
    throw ConfigError(origin + ": keys `sigma_f` and `sigma_inf` are required");
  if (!wprime_raw) throw ConfigError(origin + ": missing key `wprime`");

  validate_prime_q(*q);
  Curve curve(*q, (*roots)[0], (*roots)[1], (*roots)[2]);
  auto parse_places = [&](const std::string& raw) {
    std::vector<Place> out;
    for (auto& part : split(raw, ','))
      if (!part.empty()) out.push_back(place_from_label(curve, part));
    return out;
  };
  std::vector<Place> sf = parse_places(*sigma_f_raw);
  std::vector<Place> si = parse_places(*sigma_inf_raw);
  std::map<Place, int> wl;
  for (auto& part : split(*wprime_raw, ',')) {
    if (part.empty()) continue;
    auto eq = part.rfind('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ": wprime entry needs `place=label`: " + part);
    Place x = place_from_label(curve, trim(part.substr(0, eq)));
    int lbl = std::stoi(trim(part.substr(eq + 1)));
    wl[x] = lbl;
  }
  return make_tower(curve, sf, si, wl);
}

TowerConfig load_tower_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tower file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tower_text(buf.str(), path);
}

namespace {

TowerConfig require_tower(const SessionConfig& cfg) {
  if (!cfg.tower_path) throw ConfigError("command `" + cfg.command + "` needs --config");
  return load_tower_file(*cfg.tower_path);
}

Json report_header(const SessionConfig& cfg) {
  Json j = Json::object();
  j["schema"] = 1;
  j["command"] = cfg.command;
  Json c = Json::object();
  if (cfg.tower_path) c["config"] = *cfg.tower_path;
  if (cfg.degree) c["degree"] = *cfg.degree;
  c["r"] = cfg.r;
  c["oracle"] = cfg.oracle;
  if (cfg.window) c["window"] = *cfg.window;
  if (cfg.divisor_spec) c["divisor"] = *cfg.divisor_spec;
  c["workers"] = cfg.workers;
  j["options"] = c;
  return j;
}

std::vector<Divisor> divisors_for_run(const TowerConfig& t, const SessionConfig& cfg) {
  std::vector<Divisor> ds;
  if (cfg.divisor_spec) {
    ds.push_back(divisor_from_string(t.curve, *cfg.divisor_spec));
    return ds;
  }
  int deg = cfg.degree.value_or(1);
  for (auto& d : effective_divisors(t.curve, deg)) {
    bool ok = true;
    for (auto& [pl, m] : d.mult)
      if (t.in_sigma(pl)) ok = false;
    if (ok) ds.push_back(d);
  }
  return ds;
}

}  // namespace

RunOutcome cmd_tower(const SessionConfig& cfg) {
  TowerConfig t = require_tower(cfg);
  RunOutcome out;
  out.report = report_header(cfg);
  SigmaReport rep = validate_sigma(t);
  out.report["q"] = t.curve.q;
  out.report["roots"] = {t.curve.e1.v, t.curve.e2.v, t.curve.e3.v};
  out.report["N"] = t.N;
  out.report["dprime3"] = cover_divisor_to_string(t.dprime3);
  Json level = Json::array();
  for (auto& e : rep.entries) {
    Json je = Json::object();
    je["place"] = place_label(e.x);
    je["part"] = e.in_sigma_f ? "sigma_f" : "sigma_inf";
    je["chi1"] = e.chi1;
    je["chi2"] = e.chi2;
    je["chi3"] = e.chi3;
    Json cands = Json::array();
    for (auto& w : e.wprime_candidates) cands.push_back(cover_place_label(w));
    je["wprime_candidates"] = cands;
    je["wprime"] = cover_place_label(t.wprime(e.x));
    out.report["level"] = level;  // placeholder keeps key order stable
    level.push_back(je);
  }
  out.report["level"] = level;
  int bound = cfg.degree.value_or(2);
  Json places = Json::array();
  DescentChar c1 = t.chi1(), c2 = t.chi2(), c3 = t.chi3();
  for (auto& x : places_up_to(t.curve, bound)) {
    Json jp = Json::object();
    jp["place"] = place_label(x);
    jp["degree"] = x.deg;
    jp["chi1"] = c1.value(x);
    jp["chi2"] = c2.value(x);
    jp["chi3"] = c3.value(x);
    jp["split_in_y3"] = c3.value(x) == 1;
    jp["in_sigma"] = t.in_sigma(x);
    places.push_back(jp);
  }
  out.report["places"] = places;
  return out;
}

RunOutcome cmd_orbital(const SessionConfig& cfg) {
  TowerConfig t = require_tower(cfg);
  RunOutcome out;
  out.report = report_header(cfg);
  out.report["N"] = t.N;
  std::vector<Divisor> ds = divisors_for_run(t, cfg);
  Json results = Json::array();
  for (auto& d : ds) {
    Json jd = Json::object();
    jd["D"] = divisor_to_string(d);
    jd["deg"] = d.degree();
    auto pts = enumerate_invariants(t, d);
    if (2 * d.degree() < t.N + 1)
      jd["note"] = "degree obstruction: 2 deg D < N + 1, invariant set empty";
    jd["invariant_count"] = pts.size();

    struct PerA {
      Json j;
      bool ok = true;
    };
    auto work = [&](const InvariantPoint& ip) {
      PerA r;
      r.j = Json::object();
      r.j["a"] = cover_to_string(ip.a);
      r.j["B"] = cover_divisor_to_string(ip.b);
      SpectralPoly jpoly = orbital_poly(t, d, ip);
      r.j["J"] = spectral_to_json(jpoly);
      Json jr = Json::object();
      for (int rr = 0; rr <= cfg.r; ++rr) {
        Rat sym = orbital_derivative(jpoly, t.N, rr);
        Rat direct = orbital_derivative_direct(t, d, ip, rr);
        if (!(sym == direct)) r.ok = false;
        jr[std::to_string(rr)] = to_string(sym);
      }
      r.j["J_r"] = jr;
      bool feq = functional_equation_holds(t, ip, jpoly);
      r.j["functional_equation"] = feq;
      if (!feq) r.ok = false;
      if (cfg.oracle) {
        LatticeCount lc = lattice_count(t, d, ip.a);
        bool match = lc.poly == jpoly;
        r.j["oracle_match"] = match;
        r.j["oracle_triples"] = lc.triples;
        if (!match) r.ok = false;
      }
      return r;
    };

    std::vector<PerA> per_a(pts.size());
    if (cfg.workers > 1 && pts.size() > 1) {
      std::vector<std::future<PerA>> futs;
      futs.reserve(pts.size());
      for (auto& ip : pts)
        futs.push_back(std::async(std::launch::async, work, std::cref(ip)));
      for (size_t i = 0; i < futs.size(); ++i) per_a[i] = futs[i].get();
    } else {
      for (size_t i = 0; i < pts.size(); ++i) per_a[i] = work(pts[i]);
    }

    Json ja = Json::array();
    SpectralPoly global = orbital_sum(t, d, pts);
    for (auto& r : per_a) {
      ja.push_back(r.j);
      if (!r.ok) out.properties_hold = false;
    }
    jd["invariants"] = ja;
    jd["J_global"] = spectral_to_json(global);
    Json jg = Json::object();
    for (int rr = 0; rr <= cfg.r; ++rr)
      jg[std::to_string(rr)] = to_string(orbital_derivative(global, t.N, rr));
    jd["J_r_global"] = jg;
    // the predicted intersection pairing for r modification legs
    jd["intersection_numbers"] = jg;
    results.push_back(jd);
  }
  out.report["results"] = results;
  return out;
}

RunOutcome cmd_local(const SessionConfig& cfg) {
  int q = 5;
  if (cfg.tower_path) q = load_tower_file(*cfg.tower_path).curve.q;
  RunOutcome out;
  out.report = report_header(cfg);
  out.report["q"] = q;
  std::vector<int> windows;
  if (cfg.window) windows.push_back(*cfg.window);
  else windows = {4, 8};
  Json runs = Json::array();
  for (int window : windows) {
    for (int k0 = -2; k0 <= 2; ++k0) {
      if (window < std::abs(k0) + 3) continue;
      Json jr = Json::object();
      jr["k0"] = k0;
      jr["window"] = window;
      auto dump = [](const std::vector<OrbitSolution>& sols) {
        Json a = Json::array();
        for (auto& s : sols) a.push_back({{"k", s.k}, {"l", s.l}});
        return a;
      };
      auto full = iwahori_orbit_search(q, k0, window, SearchMode::FullOnly);
      auto both = iwahori_orbit_search(q, k0, window, SearchMode::Both);
      jr["mode_full_solutions"] = dump(full);
      jr["mode_both_solutions"] = dump(both);
      bool ok_full = full.size() == 1 && full[0].k == k0 && full[0].l == 0;
      bool ok_both = both.empty();
      jr["full_matches_expected"] = ok_full;
      jr["vanishing"] = ok_both;
      if (!ok_full || !ok_both) out.properties_hold = false;
      runs.push_back(jr);
    }
  }
  out.report["runs"] = runs;
  return out;
}

RunOutcome cmd_spectra(const SessionConfig& cfg) {
  RunOutcome out;
  out.report = report_header(cfg);
  int dmax = cfg.degree.value_or(kMaxHyperoctahedral);
  if (dmax < 1 || dmax > kMaxHyperoctahedral)
    throw ConfigError("spectra rank must lie in [1, 5]");
  Json table = Json::array();
  for (int n = 1; n <= dmax; ++n) {
    RepModule m = build_module(n);
    auto comps = decompose(m);
    for (auto& ec : comps) {
      InducedCheck chk = verify_induced_iso(m, ec.d1, ec.d2);
      Json row = Json::object();
      row["n"] = n;
      row["d1"] = ec.d1;
      row["d2"] = ec.d2;
      row["eigenvalue"] = ec.eigenvalue;
      row["dim"] = ec.dim;
      row["gamma_stable"] = ec.gamma_stable;
      row["irreducible"] = ec.character_norm == Rat(1);
      row["induced_match"] = chk.eigenspace_matches_induced && chk.conjugate_subgroup_matches;
      row["swap_symmetry"] = chk.swap_symmetry;
      if (!ec.gamma_stable || !(ec.character_norm == Rat(1)) ||
          !chk.eigenspace_matches_induced || !chk.conjugate_subgroup_matches ||
          !chk.swap_symmetry)
        out.properties_hold = false;
      table.push_back(row);
    }
  }
  out.report["table"] = table;
  return out;
}

RunOutcome cmd_lseries(const SessionConfig& cfg) {
  TowerConfig t = require_tower(cfg);
  RunOutcome out;
  out.report = report_header(cfg);
  int bound = cfg.degree.value_or(4);
  Json sums = Json::array();
  for (int n = 0; n <= bound; ++n) {
    Json row = Json::object();
    row["n"] = n;
    row["trivial"] = to_string(char_sum(t, CharKind::Trivial, n));
    Rat s1 = char_sum(t, CharKind::Chi1, n);
    Rat s2 = char_sum(t, CharKind::Chi2, n);
    Rat s3 = char_sum(t, CharKind::Chi3, n);
    row["chi1"] = to_string(s1);
    row["chi2"] = to_string(s2);
    row["chi3"] = to_string(s3);
    bool ok = n == 0 || (s1 == Rat(0) && s2 == Rat(0) && s3 == Rat(0));
    row["vanishes"] = ok;
    if (!ok) out.properties_hold = false;
    sums.push_back(row);
  }
  out.report["character_sums"] = sums;

  auto euler = euler_factorization_check(t, std::min(bound, 3));
  Json et = Json::array();
  for (auto& e : euler.entries)
    et.push_back({{"place", place_label(e.x)}, {"pass", e.pass}});
  out.report["euler_factorization"] = et;
  if (!euler.all_pass) out.properties_hold = false;

  auto zeta = zeta_numerator(t.curve, bound);
  Json jz = Json::object();
  jz["trace"] = zeta.trace;
  Json pc = Json::array();
  for (auto& c : zeta.numerator.c) pc.push_back(to_string(c));
  jz["numerator"] = pc;
  jz["functional_equation"] = zeta.functional_equation;
  jz["divisor_counts_match"] = zeta.divisor_counts_match;
  Json counts = Json::array();
  for (size_t i = 0; i < zeta.counted.size(); ++i)
    counts.push_back({{"n", i},
                      {"counted", zeta.counted[i]},
                      {"predicted", to_string(zeta.predicted[i])}});
  jz["counts"] = counts;
  out.report["zeta"] = jz;
  if (!zeta.functional_equation || !zeta.divisor_counts_match) out.properties_hold = false;
  return out;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"exact orbital-integral computations for biquadratic covers of "
               "elliptic curves over small finite fields"};
  app.require_subcommand(1);

  SessionConfig cfg;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", cfg.tower_path, "tower configuration file");
    sub->add_option("--degree", cfg.degree, "degree bound / divisor degree");
    sub->add_option("--r", cfg.r, "highest derivative order")->check(CLI::NonNegativeNumber);
    sub->add_flag("--oracle", cfg.oracle, "run the lattice-count oracle cross-check");
    sub->add_option("--window", cfg.window, "valuation window for local searches");
    sub->add_option("--divisor", cfg.divisor_spec, "explicit divisor, e.g. {1:2:1:^1}");
    sub->add_option("--out", cfg.out_path, "write the JSON report to this path");
    sub->add_option("--workers", cfg.workers, "worker threads for per-invariant fanout")
        ->check(CLI::PositiveNumber);
  };
  for (const char* name : {"tower", "orbital", "local", "spectra", "lseries"})
    add_common(app.add_subcommand(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  auto started = std::chrono::steady_clock::now();
  try {
    RunOutcome out;
    if (cfg.command == "tower") out = cmd_tower(cfg);
    else if (cfg.command == "orbital") out = cmd_orbital(cfg);
    else if (cfg.command == "local") out = cmd_local(cfg);
    else if (cfg.command == "spectra") out = cmd_spectra(cfg);
    else out = cmd_lseries(cfg);

    out.report["properties_hold"] = out.properties_hold;
    std::string text = out.report.dump(2);
    text.push_back('\n');
    if (cfg.out_path) {
      std::ofstream of(*cfg.out_path, std::ios::binary);
      if (!of) throw ConfigError("cannot write report to " + *cfg.out_path);
      of << text;
    } else {
      std::cout << text;
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    // timing goes to stderr so reports stay byte-identical across reruns
    std::cerr << cfg.command << ": " << (out.properties_hold ? "ok" : "PROPERTY FAILED")
              << " (" << elapsed << " ms)\n";
    return out.properties_hold ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "property/internal failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace biqorb
