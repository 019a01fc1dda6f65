#ifndef LONESIEVE_SIEVE_HPP
#define LONESIEVE_SIEVE_HPP

// The involution sieve at a prime p: reduce the known divisors, split the
// degree-2 divisors over F_p into certified-lonely (H_p) and the rest (S_p),
// and collect the torsion residues m with (1 - w)(Q) = m [c0 - c_inf], Q in S_p.

#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "lonesieve/marked_curve.hpp"
#include "lonesieve/serialize.hpp"
#include "lonesieve/torsion.hpp"

namespace lonesieve {

inline void require_odd_prime(std::uint32_t p) {
  if (!is_prime(p)) fail(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not prime");
  if (p == 2) fail(ErrorKind::EvenPrime, "odd primes required");
}

/// Reduction of one known divisor at p.
inline EffectiveDivisor reduce_known_divisor(const KnownDivisor& k, std::uint32_t p) {
  require_odd_prime(p);
  if (k.d == 0) {
    RationalPoint P, Q;
    for (int i = 0; i < 3; ++i) P[i] = k.points[0][i][0], Q[i] = k.points[1][i][0];
    return point_divisor(reduce_point(P, p)) + point_divisor(reduce_point(Q, p));
  }
  int leg = legendre_symbol(k.d, p);
  if (leg == 0)
    fail(ErrorKind::RamifiedCoordinateField, "'" + k.label + "': " + std::to_string(p) + " ramifies in Q(sqrt " + std::to_string(k.d) + ")");
  if (leg == 1) {
    auto pts = reduce_at_degree_one_primes(k.field(), k.points[0], p);
    if (pts.size() != 2) fail(ErrorKind::BadReduction, "'" + k.label + "' did not reduce to two points");
    return point_divisor(pts[0]) + point_divisor(pts[1]);
  }
  Place pl = place_of(reduce_at_inert_prime(k.d, k.points[0], p));
  return EffectiveDivisor(pl, pl.degree == 1 ? 2 : 1);
}

inline std::vector<EffectiveDivisor> reduce_known_divisors(const MarkedCurveData& D, std::uint32_t p) {
  std::vector<EffectiveDivisor> out;
  for (auto& k : D.known) out.push_back(reduce_known_divisor(k, p));
  return out;
}

/// The curve, involution and marked points mod p.
struct ReducedModel {
  std::uint32_t p = 0;
  PlaneCurve C;
  Matrix3 M{};
  Point c0, cinf;
};

inline ReducedModel reduce_model(const MarkedCurveData& D, std::uint32_t p) {
  require_odd_prime(p);
  if (!D.has_torsion_model()) fail(ErrorKind::InvalidInput, "curve spec needs involution, marked_points and torsion_order");
  ReducedModel R{p, reduce_mod_p(D.F, p), reduce_matrix(*D.involution, p), {}, {}};
  R.c0 = reduce_point(*D.c0, p);
  R.cinf = reduce_point(*D.cinf, p);
  validate_involution(R.M, R.C.form());
  return R;
}

struct SieveSets {
  std::vector<EffectiveDivisor> sym2, H, S;
};

/// H_p from the certified labels at p; S_p = X^(2)(F_p) minus H_p.
inline SieveSets build_Hp_Sp(const MarkedCurveData& D, const PlaneCurve& C, std::uint32_t p, const LonelyCertificates& lonely) {
  SieveSets out;
  out.sym2 = sym2_enumerate(C);
  std::set<std::string> certified;
  if (auto it = lonely.find(p); it != lonely.end()) {
    for (auto& lbl : it->second) {
      if (!D.find(lbl)) fail(ErrorKind::UnknownLabel, "certificate at p = " + std::to_string(p) + " names unknown divisor '" + lbl + "'");
      certified.insert(lbl);
    }
    for (auto& lbl : certified) {
      if (!D.involution) break;
      std::string img = involution_image_label(D, *D.find(lbl));
      if (!certified.count(img))
        fail(ErrorKind::InvolutionUnstableCertificates,
             "at p = " + std::to_string(p) + ": '" + lbl + "' is certified but its image '" + img + "' is not");
    }
  }
  std::set<EffectiveDivisor> H;
  for (auto& lbl : certified) H.insert(reduce_known_divisor(*D.find(lbl), p));
  out.H.assign(H.begin(), H.end());
  for (auto& Q : out.sym2)
    if (!H.count(Q)) out.S.push_back(Q);
  if (out.S.size() + out.H.size() != out.sym2.size())
    fail(ErrorKind::InvalidInput, "a certified divisor does not reduce into X^(2)(F_" + std::to_string(p) + ")");
  return out;
}

struct SieveReport {
  std::uint32_t p = 0;
  int n = 0;
  std::size_t sym2_size = 0, hp_size = 0, sp_size = 0;
  std::vector<int> Wp;
  std::map<int, std::size_t> witnesses;
  std::size_t unmatched = 0;
  bool assumption_rank_zero = false;
  std::string curve_digest;
  std::optional<double> ms_elapsed;

  Json to_json() const {
    Json w = Json::object();
    for (auto& [m, c] : witnesses) w[std::to_string(m)] = c;
    Json j{{"p", p},
           {"n", n},
           {"sym2_size", sym2_size},
           {"Hp_size", hp_size},
           {"Sp_size", sp_size},
           {"Wp", Wp},
           {"witnesses", w},
           {"unmatched", unmatched},
           {"assumption_rank_zero", assumption_rank_zero},
           {"curve_digest", curve_digest}};
    if (ms_elapsed) j["ms_elapsed"] = *ms_elapsed;
    return j;
  }

  static SieveReport from_json(const Json& j) {
    SieveReport r;
    try {
      r.p = j.at("p").get<std::uint32_t>();
      r.n = j.at("n").get<int>();
      r.sym2_size = j.at("sym2_size").get<std::size_t>();
      r.hp_size = j.at("Hp_size").get<std::size_t>();
      r.sp_size = j.at("Sp_size").get<std::size_t>();
      r.Wp = j.at("Wp").get<std::vector<int>>();
      for (auto& [k, v] : j.at("witnesses").items()) r.witnesses[std::stoi(k)] = v.get<std::size_t>();
      r.unmatched = j.at("unmatched").get<std::size_t>();
      r.assumption_rank_zero = j.at("assumption_rank_zero").get<bool>();
      r.curve_digest = j.at("curve_digest").get<std::string>();
      if (j.contains("ms_elapsed")) r.ms_elapsed = j["ms_elapsed"].get<double>();
    } catch (const Json::exception& e) {
      fail(ErrorKind::InvalidInput, std::string("malformed report: ") + e.what());
    }
    return r;
  }
};

/// Residue of each divisor, computed on a pool of workers; the output order is the input order.
inline std::vector<std::optional<int>> match_all(const ClassMatcher& T, const std::vector<EffectiveDivisor>& divs, int workers) {
  if (workers < 1) fail(ErrorKind::InvalidInput, "worker count must be >= 1");
  std::vector<std::optional<int>> out(divs.size());
  std::vector<std::exception_ptr> errors(divs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < divs.size();) {
      try {
        out[i] = T.class_match(divs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline SieveReport compute_Wp(const MarkedCurveData& D, std::uint32_t p, const LonelyCertificates& lonely, int workers = 1) {
  auto start = std::chrono::steady_clock::now();
  ReducedModel R = reduce_model(D, p);
  ClassMatcher T(R.C, R.M, R.c0, R.cinf, D.n);
  SieveSets sets = build_Hp_Sp(D, R.C, p, lonely);
  auto residues = match_all(T, sets.S, workers);

  SieveReport rep;
  rep.p = p;
  rep.n = D.n;
  rep.sym2_size = sets.sym2.size();
  rep.hp_size = sets.H.size();
  rep.sp_size = sets.S.size();
  rep.assumption_rank_zero = D.assumption_rank_zero;
  rep.curve_digest = D.digest;
  for (auto& m : residues) {
    if (m) ++rep.witnesses[*m];
    else ++rep.unmatched;
  }
  for (auto& [m, c] : rep.witnesses) rep.Wp.push_back(m);
  for (int m : rep.Wp)
    if (!rep.witnesses.count((D.n - m) % D.n))
      fail(ErrorKind::MultipleMatches, "W_" + std::to_string(p) + " is not closed under negation");
  rep.ms_elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

struct Verdict {
  std::vector<int> residues;
  bool resolved = false;
};

inline Verdict intersect_and_verdict(const std::vector<SieveReport>& reports) {
  if (reports.empty()) fail(ErrorKind::EmptyReportList, "no reports to intersect");
  for (auto& r : reports)
    if (r.curve_digest != reports.front().curve_digest || r.n != reports.front().n)
      fail(ErrorKind::MixedCurves, "reports for p = " + std::to_string(reports.front().p) + " and p = " + std::to_string(r.p) +
                                       " come from different curves");
  std::set<int> acc(reports.front().Wp.begin(), reports.front().Wp.end());
  for (auto& r : reports) {
    std::set<int> next;
    for (int m : r.Wp)
      if (acc.count(m)) next.insert(m);
    acc = std::move(next);
  }
  Verdict v;
  v.residues.assign(acc.begin(), acc.end());
  v.resolved = v.residues == std::vector<int>{0};
  return v;
}

struct FixedPointScan {
  std::vector<Point> points;
  bool extra_fixed_point = false;
};

/// Rational reductions of a declared fixed point (one per degree-1 prime above p).
inline std::vector<Point> reduce_fixed_point(const FixedPointDecl& f, std::uint32_t p) {
  if (f.rational()) {
    RationalPoint P{f.point[0][0], f.point[1][0], f.point[2][0]};
    return {reduce_point(P, p)};
  }
  return reduce_at_degree_one_primes(f.field, f.point, p);
}

inline FixedPointScan fixed_points_mod_p(const MarkedCurveData& D, std::uint32_t p) {
  require_odd_prime(p);
  if (!D.involution) fail(ErrorKind::InvalidInput, "curve spec has no involution");
  PlaneCurve C = reduce_mod_p(D.F, p);
  Matrix3 M = reduce_matrix(*D.involution, p);
  std::set<Point, decltype(&point_less)> declared(&point_less);
  for (auto& f : D.fixed_points)
    if (f.rational())
      for (auto& P : reduce_fixed_point(f, p)) declared.insert(P);
  FixedPointScan out;
  for (auto& P : C.enumerate_points(1)) {
    if (!(apply_matrix(M, P) == P)) continue;
    out.points.push_back(P);
    if (!declared.count(P)) out.extra_fixed_point = true;
  }
  return out;
}

struct FixedPointCoincidence {
  std::string first, second;
  bool coincide = false;
};

struct CurveDoomReport {
  std::uint32_t p = 0;
  FixedPointScan fixed;
  std::vector<FixedPointCoincidence> coincidences;
  std::optional<DoomReport> splitting;

  Json to_json() const {
    Json pts = Json::array();
    for (auto& P : fixed.points) pts.push_back(point_json(P));
    Json co = Json::array();
    for (auto& c : coincidences) co.push_back({{"first", c.first}, {"second", c.second}, {"coincide", c.coincide}});
    Json j{{"p", p},
           {"fixed_points", pts},
           {"extra_fixed_point", fixed.extra_fixed_point},
           {"reduction_coincidences", co},
           {"non_lonely_condition", "external"}};
    if (splitting) {
      j["splitting"] = {{"K", std::string(to_string(splitting->splitting_in_K))},
                        {"B_profile", splitting->profile_in_B},
                        {"doomed", splitting->doomed},
                        {"reason", splitting->reason}};
    }
    return j;
  }
};

/// Fixed-point status, reduction coincidences of declared fixed points, and the field-splitting verdict.
inline CurveDoomReport doom_check(const MarkedCurveData& D, std::uint32_t p, const std::optional<QuadraticFieldSpec>& K,
                                  const std::optional<CubicFieldSpec>& B) {
  CurveDoomReport r;
  r.p = p;
  r.fixed = fixed_points_mod_p(D, p);
  std::vector<std::vector<Point>> red;
  for (auto& f : D.fixed_points) red.push_back(reduce_fixed_point(f, p));
  for (std::size_t i = 0; i < D.fixed_points.size(); ++i)
    for (std::size_t j = i + 1; j < D.fixed_points.size(); ++j) {
      if (red[i].empty() || red[j].empty()) continue;
      FixedPointCoincidence c{D.fixed_points[i].label, D.fixed_points[j].label, false};
      for (auto& P : red[i])
        for (auto& Q : red[j])
          if (P == Q) c.coincide = true;
      r.coincidences.push_back(c);
    }
  if (K) r.splitting = doomed_at(*K, B, p);
  return r;
}

}  // namespace lonesieve

#endif  // LONESIEVE_SIEVE_HPP
