// Command-line front end. Data goes to stdout, logs to stderr.
//
// Exit codes: 0 success, 1 verdict failed (or lineq false), 2 input error,
// 3 internal invariant violation.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "lonesieve/serialize.hpp"
#include "lonesieve/sieve.hpp"

using namespace lonesieve;

namespace {

int verbosity = 0;

void log_info(const std::string& msg) {
  if (verbosity >= 0) std::cerr << "[lonesieve] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (verbosity >= 1) std::cerr << "[lonesieve] " << msg << "\n";
}

struct RunConfig {
  std::string curve, lonely, fields, cache, format = "json";
  std::vector<std::uint32_t> primes;
  std::uint32_t prime = 0;
  int workers = 1;
  int degree = 1;
  std::optional<std::uint32_t> pmax;
  bool timing = false;
  std::string a, b;
};

void emit(const Json& j, const std::string& text, const std::string& format) {
  if (format == "json") std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

std::string residues(const std::vector<int>& r) {
  std::string s = "{";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? ", " : "") + std::to_string(r[i]);
  return s + "}";
}

std::vector<std::uint32_t> checked_primes(std::vector<std::uint32_t> primes) {
  if (primes.empty()) fail(ErrorKind::InvalidInput, "--primes is empty");
  for (auto p : primes) {
    if (p % 2 == 0) fail(ErrorKind::EvenPrime, "odd primes required");
    if (!is_prime(p)) fail(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not prime");
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

struct FieldSpecs {
  QuadraticFieldSpec K;
  std::optional<CubicFieldSpec> B;
  std::optional<std::uint32_t> pmax;
};

FieldSpecs load_fields(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::InvalidInput, path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("d") || !j["d"].is_number_integer())
    fail(ErrorKind::InvalidInput, "at /d: expected an integer");
  FieldSpecs f{QuadraticFieldSpec::make(j["d"].get<std::int64_t>()), std::nullopt, std::nullopt};
  if (j.contains("cubic") && !j["cubic"].is_null()) {
    const Json& c = j["cubic"];
    if (!c.is_array() || c.size() != 4) fail(ErrorKind::InvalidInput, "at /cubic: expected 4 integer coefficients, constant term first");
    IntPoly g;
    for (std::size_t i = 0; i < 4; ++i) {
      if (!c[i].is_number_integer()) fail(ErrorKind::InvalidInput, "at /cubic/" + std::to_string(i) + ": expected an integer");
      g.push_back(c[i].get<std::int64_t>());
    }
    f.B = CubicFieldSpec::make(g);
    f.B->require_field();
  }
  if (j.contains("pmax")) {
    if (!j["pmax"].is_number_unsigned()) fail(ErrorKind::InvalidInput, "at /pmax: expected a positive integer");
    f.pmax = j["pmax"].get<std::uint32_t>();
  }
  return f;
}

std::optional<std::string> cache_dir(const RunConfig& cfg) {
  if (const char* env = std::getenv("LONESIEVE_CACHE"); env && *env) return std::string(env);
  if (!cfg.cache.empty()) return cfg.cache;
  return std::nullopt;
}

int cmd_sieve(const RunConfig& cfg) {
  auto primes = checked_primes(cfg.primes);
  if (cfg.workers < 1) fail(ErrorKind::InvalidInput, "--workers must be >= 1");
  MarkedCurveData D = load_curve(cfg.curve);
  LonelyCertificates lonely;
  if (!cfg.lonely.empty()) lonely = load_certificates(cfg.lonely);
  std::optional<ReportCache> cache;
  if (auto dir = cache_dir(cfg)) cache.emplace(*dir);

  std::vector<SieveReport> reports;
  Json rj = Json::array();
  std::ostringstream text;
  for (auto p : primes) {
    std::vector<std::string> certified = lonely.count(p) ? lonely.at(p) : std::vector<std::string>{};
    std::sort(certified.begin(), certified.end());
    certified.erase(std::unique(certified.begin(), certified.end()), certified.end());
    std::optional<SieveReport> rep;
    if (cache) {
      if (auto hit = cache->load(D.digest, p)) {
        try {
          Json c = Json::parse(*hit);
          if (c.at("curve_digest") == D.digest && c.at("certificates") == Json(certified)) {
            rep = SieveReport::from_json(c.at("report"));
            log_info("cache-hit p=" + std::to_string(p));
          }
        } catch (const std::exception& e) {
          log_info("ignoring unreadable cache entry for p=" + std::to_string(p));
        }
      }
    }
    if (!rep) {
      log_debug("computing W_" + std::to_string(p) + " with " + std::to_string(cfg.workers) + " worker(s)");
      rep = compute_Wp(D, p, lonely, cfg.workers);
      if (cache) {
        SieveReport stored = *rep;
        stored.ms_elapsed.reset();
        Json c{{"curve_digest", D.digest}, {"p", p}, {"certificates", certified}, {"report", stored.to_json()}};
        cache->store(D.digest, p, c.dump(2) + "\n");
      }
    }
    if (!cfg.timing) rep->ms_elapsed.reset();
    rj.push_back(rep->to_json());
    text << "p=" << p << "  |X2|=" << rep->sym2_size << "  |Hp|=" << rep->hp_size << "  |Sp|=" << rep->sp_size
         << "  Wp=" << residues(rep->Wp) << "  unmatched=" << rep->unmatched;
    if (rep->ms_elapsed) text << "  ms=" << *rep->ms_elapsed;
    text << "\n";
    reports.push_back(*rep);
  }
  Verdict v = intersect_and_verdict(reports);
  Json out{{"curve", D.label},
           {"curve_digest", D.digest},
           {"n", D.n},
           {"primes", primes},
           {"reports", rj},
           {"intersection", v.residues},
           {"verdict", v.resolved ? "resolved" : "failed"},
           {"assumption_rank_zero", D.assumption_rank_zero}};
  text << "intersection " << residues(v.residues) << ": " << (v.resolved ? "resolved" : "failed") << "\n";
  emit(out, text.str(), cfg.format);
  return v.resolved ? 0 : 1;
}

int cmd_analyze_splitting(const RunConfig& cfg) {
  FieldSpecs f = load_fields(cfg.fields);
  std::uint32_t pmax = cfg.pmax ? *cfg.pmax : f.pmax.value_or(200);
  auto rep = doom_range_report(f.K, f.B, pmax);
  std::optional<std::uint32_t> msp;
  if (f.K.class_number_one) msp = min_split_prime(f.K);
  Json rows = Json::array();
  std::ostringstream text;
  text << "p\tK\tB-profile\tdoomed\treason\n";
  for (auto& r : rep.rows) {
    Json row{{"p", r.p}, {"K", std::string(to_string(r.splitting_in_K))}, {"doomed", r.doomed}, {"reason", r.reason}};
    std::string prof = "-";
    if (f.B) {
      row["B_profile"] = r.profile_in_B;
      prof = residues(r.profile_in_B);
    }
    rows.push_back(row);
    text << r.p << "\t" << to_string(r.splitting_in_K) << "\t" << prof << "\t" << (r.doomed ? "yes" : "no") << "\t" << r.reason << "\n";
  }
  Json out{{"d", f.K.d},
           {"pmax", pmax},
           {"rows", rows},
           {"excluded", rep.excluded},
           {"class_number_one", f.K.class_number_one},
           {"min_split_prime", msp ? Json(*msp) : Json(nullptr)},
           {"smallest_non_doomed", rep.smallest_non_doomed ? Json(*rep.smallest_non_doomed) : Json(nullptr)}};
  if (f.B) {
    out["cubic"] = f.B->g;
    try {
      out["no_degree_six"] = no_degree_six_check(f.K, *f.B, pmax);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::IncompatibleFields) throw;
      out["no_degree_six"] = nullptr;
    }
  }
  text << "min split prime: " << (msp ? std::to_string(*msp) : "n/a (class number > 1)") << "\n";
  text << "smallest non-doomed prime <= " << pmax << ": "
       << (rep.smallest_non_doomed ? std::to_string(*rep.smallest_non_doomed) : "none") << "\n";
  emit(out, text.str(), cfg.format);
  return 0;
}

PlaneCurve curve_at(const MarkedCurveData& D, std::uint32_t p) {
  if (!is_prime(p)) fail(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not prime");
  return reduce_mod_p(D.F, p);
}

int cmd_lineq(const RunConfig& cfg) {
  MarkedCurveData D = load_curve(cfg.curve);
  PlaneCurve C = curve_at(D, cfg.prime);
  EffectiveDivisor A = parse_divisor(cfg.a, C), B = parse_divisor(cfg.b, C);
  auto r = lin_equiv(A, B, C);
  Json out{{"p", cfg.prime}, {"A", divisor_json(A)}, {"B", divisor_json(B)}, {"equivalent", r.equivalent}};
  std::string text = std::string(r.equivalent ? "true" : "false") + "\n";
  if (r.certificate) {
    if (!verify_certificate(*r.certificate, A, B, C)) fail(ErrorKind::BezoutMismatch, "certificate failed re-verification");
    out["certificate"] = certificate_json(*r.certificate);
    text += "m = " + std::to_string(r.certificate->m) + "\nF = " + r.certificate->F.to_string() + "\nG = " +
            r.certificate->G.to_string() + "\nR = " + r.certificate->R.to_string() + "\n";
  }
  emit(out, text, cfg.format);
  return r.equivalent ? 0 : 1;
}

int cmd_curve_validate(const RunConfig& cfg) {
  MarkedCurveData D = load_curve(cfg.curve);
  int d = D.F.degree;
  Json out{{"label", D.label},
           {"curve_digest", D.digest},
           {"degree", d},
           {"genus", (d - 1) * (d - 2) / 2},
           {"torsion_order", D.n ? Json(D.n) : Json(nullptr)},
           {"known_divisors", D.known.size()},
           {"fixed_points", D.fixed_points.size()},
           {"assumption_rank_zero", D.assumption_rank_zero}};
  std::ostringstream text;
  text << "curve " << D.label << " digest " << D.digest << "\ndegree " << d << ", genus " << (d - 1) * (d - 2) / 2 << "\n";
  if (D.involution) {
    auto v = validate_involution(*D.involution, D.F);
    out["involution"] = {{"lambda", to_string(v.lambda)}, {"mu", to_string(v.mu)}, {"trivial", v.trivial}};
    text << "involution: lambda = " << to_string(v.lambda) << ", mu = " << to_string(v.mu) << (v.trivial ? " (trivial involution)" : "") << "\n";
  } else {
    out["involution"] = nullptr;
  }
  Json red = Json::array();
  for (auto p : cfg.primes) {
    Json r{{"p", p}};
    try {
      PlaneCurve C = curve_at(D, p);
      r["good_reduction"] = true;
      r["points"] = C.enumerate_points(1).size();
      text << "p=" << p << ": good reduction, " << C.enumerate_points(1).size() << " points\n";
    } catch (const Error& e) {
      if (e.is_internal()) throw;
      r["good_reduction"] = false;
      r["reason"] = e.what();
      text << "p=" << p << ": " << e.what() << "\n";
    }
    red.push_back(r);
  }
  out["reductions"] = red;
  emit(out, text.str(), cfg.format);
  return 0;
}

int cmd_points(const RunConfig& cfg) {
  MarkedCurveData D = load_curve(cfg.curve);
  PlaneCurve C = curve_at(D, cfg.prime);
  if (cfg.degree < 1 || cfg.degree > kMaxPublicExtensionDegree) fail(ErrorKind::InvalidInput, "--degree must be between 1 and 6");
  auto pts = C.enumerate_points(cfg.degree);
  Json arr = Json::array();
  std::ostringstream text;
  for (auto& P : pts) {
    arr.push_back(point_json(P));
    text << to_string(P) << "\n";
  }
  emit({{"p", cfg.prime}, {"k", cfg.degree}, {"count", pts.size()}, {"points", arr}}, text.str(), cfg.format);
  return 0;
}

int cmd_sym2(const RunConfig& cfg) {
  MarkedCurveData D = load_curve(cfg.curve);
  PlaneCurve C = curve_at(D, cfg.prime);
  auto s2 = sym2_enumerate(C);
  Json arr = Json::array();
  std::ostringstream text;
  for (auto& Q : s2) {
    arr.push_back(divisor_json(Q));
    text << Q.to_string() << "\n";
  }
  emit({{"p", cfg.prime},
        {"size", s2.size()},
        {"points_over_p", C.enumerate_points(1).size()},
        {"points_over_p2", C.enumerate_points(2).size()},
        {"divisors", arr}},
       text.str(), cfg.format);
  return 0;
}

int cmd_fixed_points(const RunConfig& cfg) {
  MarkedCurveData D = load_curve(cfg.curve);
  require_odd_prime(cfg.prime);
  std::optional<QuadraticFieldSpec> K;
  std::optional<CubicFieldSpec> B;
  if (!cfg.fields.empty()) {
    FieldSpecs f = load_fields(cfg.fields);
    K = f.K;
    B = f.B;
  }
  auto r = doom_check(D, cfg.prime, K, B);
  std::ostringstream text;
  text << "fixed points mod " << cfg.prime << ":";
  for (auto& P : r.fixed.points) text << " " << to_string(P);
  text << "\nextra fixed point: " << (r.fixed.extra_fixed_point ? "yes" : "no") << "\n";
  for (auto& c : r.coincidences) text << c.first << " vs " << c.second << ": " << (c.coincide ? "same reduction" : "distinct") << "\n";
  if (r.splitting) text << "doomed: " << (r.splitting->doomed ? "yes" : "no") << " (" << r.splitting->reason << ")\n";
  text << "non-loneliness condition: external\n";
  emit(r.to_json(), text.str(), cfg.format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Involution sieve for degree-2 points on smooth plane curves"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  int quiet = 0;
  app.add_flag("-v,--verbose", verbosity, "More logging on stderr");
  app.add_flag("-q,--quiet", quiet, "No logging on stderr");

  auto format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto curve = [&](CLI::App* sub) { sub->add_option("--curve", cfg.curve, "Curve spec JSON")->required()->check(CLI::ExistingFile); };

  auto* sieve = app.add_subcommand("sieve", "Compute W_p per prime and intersect");
  curve(sieve);
  sieve->add_option("--primes", cfg.primes, "Comma-separated odd primes")->required()->delimiter(',');
  sieve->add_option("--lonely", cfg.lonely, "Loneliness certificates JSON")->check(CLI::ExistingFile);
  sieve->add_option("--workers", cfg.workers, "Worker threads");
  sieve->add_option("--cache", cfg.cache, "Report cache directory (LONESIEVE_CACHE overrides)");
  sieve->add_flag("--timing", cfg.timing, "Include ms_elapsed in reports");
  format(sieve);

  auto* split = app.add_subcommand("analyze-splitting", "Prime splitting table and doom bounds");
  split->add_option("--fields", cfg.fields, "Field spec JSON")->required()->check(CLI::ExistingFile);
  split->add_option("--pmax", cfg.pmax, "Largest prime in the table");
  format(split);

  auto* lineq = app.add_subcommand("lineq", "Decide linear equivalence of two divisors mod p");
  curve(lineq);
  lineq->add_option("--prime", cfg.prime, "Prime")->required();
  lineq->add_option("A,--a", cfg.a, "First divisor, e.g. \"3*(0:1:0)\"")->required();
  lineq->add_option("B,--b", cfg.b, "Second divisor")->required();
  format(lineq);

  auto* validate = app.add_subcommand("curve-validate", "Check a curve spec and its reductions");
  curve(validate);
  validate->add_option("--primes", cfg.primes, "Primes to test for good reduction")->delimiter(',');
  format(validate);

  auto* points = app.add_subcommand("points", "Points over F_{p^k}");
  curve(points);
  points->add_option("--prime", cfg.prime, "Prime")->required();
  points->add_option("--degree", cfg.degree, "Extension degree k");
  format(points);

  auto* sym2 = app.add_subcommand("sym2", "Effective degree-2 divisors over F_p");
  curve(sym2);
  sym2->add_option("--prime", cfg.prime, "Prime")->required();
  format(sym2);

  auto* fixed = app.add_subcommand("fixed-points", "Involution-fixed points mod p and doom conditions");
  curve(fixed);
  fixed->add_option("--prime", cfg.prime, "Odd prime")->required();
  fixed->add_option("--fields", cfg.fields, "Field spec JSON for the splitting verdict")->check(CLI::ExistingFile);
  format(fixed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (quiet) verbosity = -1;

  try {
    if (*sieve) return cmd_sieve(cfg);
    if (*split) return cmd_analyze_splitting(cfg);
    if (*lineq) return cmd_lineq(cfg);
    if (*validate) return cmd_curve_validate(cfg);
    if (*points) return cmd_points(cfg);
    if (*sym2) return cmd_sym2(cfg);
    if (*fixed) return cmd_fixed_points(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_internal() ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
