#ifndef LONESIEVE_MARKED_CURVE_HPP
#define LONESIEVE_MARKED_CURVE_HPP

// A plane curve over Q with an involution, a rational torsion class
// [c0 - c_inf], known degree-2 divisors and declared fixed points, read from
// and written to JSON.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lonesieve/io.hpp"
#include "lonesieve/rational.hpp"
#include "lonesieve/splitting.hpp"

namespace lonesieve {

using Json = nlohmann::json;

/// A degree-2 divisor over Q: two rational points, or a point over Q(sqrt d)
/// together with its conjugate.
struct KnownDivisor {
  std::string label;
  std::int64_t d = 0;  // 0 for a pair of rational points
  std::vector<AlgebraicPoint> points;  // over field(): two points, conjugates when d != 0

  NumberField field() const { return d == 0 ? NumberField() : NumberField::quadratic(d); }
};

struct FixedPointDecl {
  std::string label;
  NumberField field;
  AlgebraicPoint point;
  bool rational() const { return field.degree() == 1; }
};

struct MarkedCurveData {
  std::string label;
  RationalForm F;
  std::optional<RationalMatrix> involution;
  std::optional<RationalPoint> c0, cinf;
  int n = 0;
  bool assumption_rank_zero = false;
  std::vector<KnownDivisor> known;
  std::vector<FixedPointDecl> fixed_points;
  Json metadata = Json::object();
  std::string digest;

  bool has_torsion_model() const { return involution && c0 && cinf && n >= 1; }
  const KnownDivisor* find(const std::string& lbl) const {
    for (auto& k : known)
      if (k.label == lbl) return &k;
    return nullptr;
  }
};

namespace detail {

[[noreturn]] inline void bad_field(const std::string& ptr, const std::string& what) {
  fail(ErrorKind::InvalidInput, "at " + (ptr.empty() ? std::string("/") : ptr) + ": " + what);
}

inline const Json& member(const Json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object()) bad_field(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad_field(ptr + "/" + key, "missing");
  return *it;
}

inline Rational json_rational(const Json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      bad_field(ptr, e.what());
    }
  }
  bad_field(ptr, "expected an integer or a string \"a/b\"");
}

inline std::int64_t json_int(const Json& j, const std::string& ptr) {
  if (!j.is_number_integer()) bad_field(ptr, "expected an integer");
  return j.get<std::int64_t>();
}

inline const Json& json_array(const Json& j, const std::string& ptr, std::size_t size = 0) {
  if (!j.is_array()) bad_field(ptr, "expected an array");
  if (size && j.size() != size) bad_field(ptr, "expected " + std::to_string(size) + " entries");
  return j;
}

inline RationalPoint json_point(const Json& j, const std::string& ptr) {
  json_array(j, ptr, 3);
  RationalPoint P;
  for (int i = 0; i < 3; ++i) P[i] = json_rational(j[i], ptr + "/" + std::to_string(i));
  if (P[0] == 0 && P[1] == 0 && P[2] == 0) bad_field(ptr, "zero vector is not a projective point");
  return P;
}

/// Coordinates in a power basis: each entry is a scalar or a list of coefficients.
inline AlgebraicPoint json_algebraic_point(const Json& j, const NumberField& K, const std::string& ptr) {
  json_array(j, ptr, 3);
  AlgebraicPoint P;
  for (int i = 0; i < 3; ++i) {
    std::string pi = ptr + "/" + std::to_string(i);
    std::vector<Rational> c;
    if (j[i].is_array()) {
      if (static_cast<int>(j[i].size()) > K.degree()) bad_field(pi, "more coefficients than the field degree");
      for (std::size_t k = 0; k < j[i].size(); ++k) c.push_back(json_rational(j[i][k], pi + "/" + std::to_string(k)));
    } else {
      c.push_back(json_rational(j[i], pi));
    }
    P[i] = K.element(std::move(c));
  }
  if (NumberField::is_zero(P[0]) && NumberField::is_zero(P[1]) && NumberField::is_zero(P[2]))
    bad_field(ptr, "zero vector is not a projective point");
  return P;
}

inline Json rational_json(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1 && boost::multiprecision::abs(q) < Rational(1LL << 53))
    return boost::multiprecision::numerator(q).convert_to<std::int64_t>();
  return to_string(q);
}

inline Json algebraic_json(const AlgebraicPoint& P, bool scalar) {
  Json out = Json::array();
  for (auto& c : P) {
    if (scalar) {
      out.push_back(rational_json(c[0]));
    } else {
      Json cj = Json::array();
      for (auto& q : c) cj.push_back(rational_json(q));
      out.push_back(cj);
    }
  }
  return out;
}

}  // namespace detail

/// Semantic content of the curve spec in a fixed layout; the digest hashes its dump.
inline Json canonical_json(const MarkedCurveData& D) {
  using detail::rational_json;
  Json j;
  j["label"] = D.label;
  j["degree"] = D.F.degree;
  Json coeffs = Json::array();
  for (auto& [e, c] : D.F.coeffs) coeffs.push_back({e[0], e[1], e[2], rational_json(c)});
  j["coeffs"] = coeffs;
  if (D.involution) {
    Json M = Json::array();
    for (auto& row : *D.involution) M.push_back({rational_json(row[0]), rational_json(row[1]), rational_json(row[2])});
    j["involution"] = M;
  }
  if (D.c0 && D.cinf) {
    auto pj = [](const RationalPoint& P) { return Json{rational_json(P[0]), rational_json(P[1]), rational_json(P[2])}; };
    j["marked_points"] = {{"c0", pj(*D.c0)}, {"cinf", pj(*D.cinf)}};
  }
  if (D.n) j["torsion_order"] = D.n;
  j["assumption_rank_zero"] = D.assumption_rank_zero;
  Json known = Json::array();
  for (auto& k : D.known) {
    Json kj{{"label", k.label}};
    if (k.d == 0) {
      kj["points"] = {detail::algebraic_json(k.points[0], true), detail::algebraic_json(k.points[1], true)};
    } else {
      kj["d"] = k.d;
      kj["point"] = detail::algebraic_json(k.points[0], false);
    }
    known.push_back(kj);
  }
  j["known_divisors"] = known;
  Json fixed = Json::array();
  for (auto& f : D.fixed_points) {
    Json fj{{"label", f.label}};
    if (!f.rational()) {
      Json g = Json::array();
      for (auto& c : f.field.minpoly()) g.push_back(rational_json(Rational(c)));
      fj["minpoly"] = g;
    }
    fj["point"] = detail::algebraic_json(f.point, f.rational());
    fixed.push_back(fj);
  }
  j["fixed_points"] = fixed;
  return j;
}

/// Parses and validates a curve spec. Errors carry a JSON pointer to the offending field.
inline MarkedCurveData curve_from_json(const Json& j) {
  using namespace detail;
  MarkedCurveData D;
  if (!j.is_object()) bad_field("", "expected an object");
  if (j.contains("label")) {
    if (!j["label"].is_string()) bad_field("/label", "expected a string");
    D.label = j["label"].get<std::string>();
  }
  std::int64_t deg = json_int(member(j, "degree", ""), "/degree");
  if (deg < 1 || deg > 12) bad_field("/degree", "degree must be between 1 and 12");
  D.F.degree = static_cast<int>(deg);
  const Json& coeffs = json_array(member(j, "coeffs", ""), "/coeffs");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    std::string ptr = "/coeffs/" + std::to_string(i);
    json_array(coeffs[i], ptr, 4);
    Exponent e;
    for (int k = 0; k < 3; ++k) {
      std::int64_t v = json_int(coeffs[i][k], ptr + "/" + std::to_string(k));
      if (v < 0) bad_field(ptr + "/" + std::to_string(k), "negative exponent");
      e[k] = static_cast<int>(v);
    }
    if (e[0] + e[1] + e[2] != deg) bad_field(ptr, "exponents do not sum to the degree");
    D.F.add_to(e, json_rational(coeffs[i][3], ptr + "/3"));
  }
  if (D.F.coeffs.empty()) bad_field("/coeffs", "zero form");

  const NumberField Q;
  auto on_curve = [&](const NumberField& K, const AlgebraicPoint& P) { return NumberField::is_zero(D.F.eval(K, P)); };

  if (j.contains("involution")) {
    const Json& M = json_array(j["involution"], "/involution", 3);
    RationalMatrix R;
    for (int r = 0; r < 3; ++r) {
      json_array(M[r], "/involution/" + std::to_string(r), 3);
      for (int c = 0; c < 3; ++c) R[r][c] = json_rational(M[r][c], "/involution/" + std::to_string(r) + "/" + std::to_string(c));
    }
    try {
      validate_involution(R, D.F);
    } catch (const Error& e) {
      fail(e.kind(), std::string("at /involution: ") + e.what());
    }
    D.involution = R;
  }
  if (j.contains("marked_points")) {
    const Json& mp = j["marked_points"];
    D.c0 = json_point(member(mp, "c0", "/marked_points"), "/marked_points/c0");
    D.cinf = json_point(member(mp, "cinf", "/marked_points"), "/marked_points/cinf");
    if (!on_curve(Q, to_algebraic(Q, *D.c0))) bad_field("/marked_points/c0", "point is not on the curve");
    if (!on_curve(Q, to_algebraic(Q, *D.cinf))) bad_field("/marked_points/cinf", "point is not on the curve");
    if (proportional(Q, to_algebraic(Q, *D.c0), to_algebraic(Q, *D.cinf))) bad_field("/marked_points", "c0 and cinf coincide");
    if (D.involution &&
        !proportional(Q, apply_matrix(Q, *D.involution, to_algebraic(Q, *D.c0)), to_algebraic(Q, *D.cinf)))
      bad_field("/marked_points", "the involution does not swap c0 and cinf");
  }
  if (j.contains("torsion_order")) {
    D.n = static_cast<int>(json_int(j["torsion_order"], "/torsion_order"));
    if (D.n < 1 || D.n > 64) bad_field("/torsion_order", "order must be between 1 and 64");
  }
  if (j.contains("assumption_rank_zero")) {
    if (!j["assumption_rank_zero"].is_boolean()) bad_field("/assumption_rank_zero", "expected a boolean");
    D.assumption_rank_zero = j["assumption_rank_zero"].get<bool>();
  }
  if (j.contains("metadata")) D.metadata = j["metadata"];

  std::set<std::string> labels;
  if (j.contains("known_divisors")) {
    const Json& kd = json_array(j["known_divisors"], "/known_divisors");
    for (std::size_t i = 0; i < kd.size(); ++i) {
      std::string ptr = "/known_divisors/" + std::to_string(i);
      KnownDivisor k;
      const Json& lj = member(kd[i], "label", ptr);
      if (!lj.is_string()) bad_field(ptr + "/label", "expected a string");
      k.label = lj.get<std::string>();
      if (!labels.insert(k.label).second) bad_field(ptr + "/label", "duplicate label '" + k.label + "'");
      if (kd[i].contains("points")) {
        const Json& pts = json_array(kd[i]["points"], ptr + "/points", 2);
        for (int t = 0; t < 2; ++t) k.points.push_back(to_algebraic(Q, json_point(pts[t], ptr + "/points/" + std::to_string(t))));
      } else {
        k.d = json_int(member(kd[i], "d", ptr), ptr + "/d");
        if (k.d == 0 || k.d == 1 || !detail::is_squarefree(k.d)) bad_field(ptr + "/d", "d must be a squarefree integer other than 0 and 1");
        NumberField K = k.field();
        AlgebraicPoint P = json_algebraic_point(member(kd[i], "point", ptr), K, ptr + "/point");
        k.points = {P, {K.conjugate(P[0]), K.conjugate(P[1]), K.conjugate(P[2])}};
      }
      NumberField K = k.field();
      for (auto& P : k.points)
        if (!on_curve(K, P)) bad_field(ptr, "point is not on the curve");
      D.known.push_back(std::move(k));
    }
  }
  if (j.contains("fixed_points")) {
    const Json& fp = json_array(j["fixed_points"], "/fixed_points");
    for (std::size_t i = 0; i < fp.size(); ++i) {
      std::string ptr = "/fixed_points/" + std::to_string(i);
      FixedPointDecl f;
      const Json& lj = member(fp[i], "label", ptr);
      if (!lj.is_string()) bad_field(ptr + "/label", "expected a string");
      f.label = lj.get<std::string>();
      if (fp[i].contains("minpoly")) {
        const Json& g = json_array(fp[i]["minpoly"], ptr + "/minpoly");
        std::vector<BigInt> coeffs;
        for (std::size_t k = 0; k < g.size(); ++k) coeffs.push_back(json_int(g[k], ptr + "/minpoly/" + std::to_string(k)));
        try {
          f.field = NumberField(coeffs);
        } catch (const Error& e) {
          bad_field(ptr + "/minpoly", e.what());
        }
      }
      f.point = json_algebraic_point(member(fp[i], "point", ptr), f.field, ptr + "/point");
      if (!on_curve(f.field, f.point)) bad_field(ptr, "point is not on the curve");
      if (D.involution && !proportional(f.field, apply_matrix(f.field, *D.involution, f.point), f.point))
        bad_field(ptr, "point is not fixed by the involution");
      D.fixed_points.push_back(std::move(f));
    }
  }
  if (D.involution) {
    // the known set must be involution-stable
    for (std::size_t i = 0; i < D.known.size(); ++i) {
      const auto& k = D.known[i];
      NumberField K = k.field();
      AlgebraicPoint img = apply_matrix(K, *D.involution, k.points[0]);
      bool found = false;
      for (auto& o : D.known) {
        if (o.d != k.d) continue;
        if (k.d == 0) {
          AlgebraicPoint img2 = apply_matrix(K, *D.involution, k.points[1]);
          found = (proportional(K, img, o.points[0]) && proportional(K, img2, o.points[1])) ||
                  (proportional(K, img, o.points[1]) && proportional(K, img2, o.points[0]));
        } else {
          found = proportional(K, img, o.points[0]) || proportional(K, img, o.points[1]);
        }
        if (found) break;
      }
      if (!found) bad_field("/known_divisors/" + std::to_string(i), "image under the involution is not a known divisor");
    }
  }
  D.digest = sha256_hex(canonical_json(D).dump());
  return D;
}

inline MarkedCurveData load_curve(const std::filesystem::path& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::InvalidInput, path.string() + ": " + e.what());
  }
  return curve_from_json(j);
}

/// The image of a known divisor under the involution, by label.
inline std::string involution_image_label(const MarkedCurveData& D, const KnownDivisor& k) {
  NumberField K = k.field();
  AlgebraicPoint img = apply_matrix(K, *D.involution, k.points[0]);
  AlgebraicPoint img2 = apply_matrix(K, *D.involution, k.points[1]);
  for (auto& o : D.known) {
    if (o.d != k.d) continue;
    if ((proportional(K, img, o.points[0]) && proportional(K, img2, o.points[1])) ||
        (proportional(K, img, o.points[1]) && proportional(K, img2, o.points[0])))
      return o.label;
  }
  fail(ErrorKind::InvalidInput, "known divisors are not involution-stable");
}

/// Per-prime labels of known divisors asserted to be p-adically lonely.
using LonelyCertificates = std::map<std::uint32_t, std::vector<std::string>>;

inline LonelyCertificates certificates_from_json(const Json& j) {
  using namespace detail;
  LonelyCertificates out;
  const Json& c = member(j, "certificates", "");
  if (!c.is_object()) bad_field("/certificates", "expected an object keyed by prime");
  for (auto& [key, labels] : c.items()) {
    std::string ptr = "/certificates/" + key;
    if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos || key.size() > 9)
      bad_field(ptr, "key must be a prime");
    auto p = static_cast<std::uint32_t>(std::stoul(key));
    json_array(labels, ptr);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!labels[i].is_string()) bad_field(ptr + "/" + std::to_string(i), "expected a label");
      out[p].push_back(labels[i].get<std::string>());
    }
  }
  return out;
}

inline LonelyCertificates load_certificates(const std::filesystem::path& path) {
  try {
    return certificates_from_json(Json::parse(read_file(path)));
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::InvalidInput, path.string() + ": " + e.what());
  }
}

}  // namespace lonesieve

#endif  // LONESIEVE_MARKED_CURVE_HPP
