#ifndef LONESIEVE_SERIALIZE_HPP
#define LONESIEVE_SERIALIZE_HPP

// JSON and text forms of points, divisors, forms and certificates over F_p.
//
// An element of F_{p^k} is written as an integer (k = 1) or as its k
// coordinates in the power basis of the canonical field, whose modulus is the
// lexicographically smallest monic irreducible polynomial of degree k.
// A divisor is a list of [coordinates, place degree, multiplicity].

#include <string>

#include <json.hpp>

#include "lonesieve/lineq.hpp"

namespace lonesieve {

inline nlohmann::json element_json(const Fq& a) {
  if (a.field()->degree() == 1) return a.coeff(0);
  return std::vector<std::uint32_t>(a.coeffs().begin(), a.coeffs().end());
}

inline nlohmann::json point_json(const Point& P) { return {element_json(P[0]), element_json(P[1]), element_json(P[2])}; }

inline nlohmann::json divisor_json(const EffectiveDivisor& D) {
  nlohmann::json out = nlohmann::json::array();
  for (auto& [pl, m] : D.terms()) out.push_back({point_json(pl.rep), pl.degree, m});
  return out;
}

inline nlohmann::json form_json(const Form& F) {
  nlohmann::json out = nlohmann::json::array();
  for (auto& e : monomials(F.degree()))
    if (auto c = F.coeff(e)) out.push_back({e[0], e[1], e[2], c});
  return out;
}

inline nlohmann::json certificate_json(const EquivalenceCertificate& c) {
  return {{"m", c.m}, {"F", form_json(c.F)}, {"G", form_json(c.G)}, {"R", divisor_json(c.R)}};
}

inline Fq element_from_json(const nlohmann::json& j, const GaloisField* K) {
  if (j.is_number_integer()) return K->from_int(j.get<std::int64_t>());
  if (!j.is_array() || static_cast<int>(j.size()) != K->degree())
    fail(ErrorKind::InvalidInput, "field element must be an integer or " + std::to_string(K->degree()) + " coordinates");
  std::vector<std::uint32_t> c;
  for (auto& v : j) {
    if (!v.is_number_integer()) fail(ErrorKind::InvalidInput, "field element coordinates must be integers");
    c.push_back(mod_of(v.get<std::int64_t>(), K->characteristic()));
  }
  return K->from_coeffs(c);
}

inline EffectiveDivisor divisor_from_json(const nlohmann::json& j, const PlaneCurve& C) {
  if (!j.is_array()) fail(ErrorKind::InvalidInput, "divisor must be a JSON list");
  EffectiveDivisor D;
  for (auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[1].is_number_integer() || !t[2].is_number_integer())
      fail(ErrorKind::InvalidInput, "divisor term must be [coordinates, degree, multiplicity]");
    int k = t[1].get<int>();
    if (k < 1 || k > kMaxPublicExtensionDegree) fail(ErrorKind::InvalidInput, "place degree out of range");
    const GaloisField* K = field_of(C.p(), k);
    if (!t[0].is_array() || t[0].size() != 3) fail(ErrorKind::InvalidInput, "a point needs three coordinates");
    Point P = normalize({element_from_json(t[0][0], K), element_from_json(t[0][1], K), element_from_json(t[0][2], K)});
    if (!C.contains(P)) fail(ErrorKind::InvalidInput, "point " + to_string(P) + " is not on the curve");
    Place pl = place_of(P);
    if (pl.degree != k) fail(ErrorKind::InvalidInput, "point " + to_string(P) + " has degree " + std::to_string(pl.degree));
    int m = t[2].get<int>();
    if (m < 1) fail(ErrorKind::InvalidInput, "multiplicity must be positive");
    D.add(pl, m);
  }
  return D;
}

/// Parses "3*(0:1:0) + 2*(1:0:0) + (0:0:1)" (rational points) or the JSON list form.
inline EffectiveDivisor parse_divisor(const std::string& text, const PlaneCurve& C) {
  auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorKind::InvalidInput, std::string("divisor: ") + e.what());
    }
    return divisor_from_json(j, C);
  }
  const GaloisField* Fp = C.base();
  EffectiveDivisor D;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&]() -> std::int64_t {
    skip();
    std::size_t start = i;
    if (i < text.size() && text[i] == '-') ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i || (i == start + 1 && text[start] == '-')) fail(ErrorKind::InvalidInput, "divisor: number expected at offset " + std::to_string(start));
    return std::stoll(text.substr(start, i - start));
  };
  auto expect = [&](char c) {
    skip();
    if (i >= text.size() || text[i] != c) fail(ErrorKind::InvalidInput, std::string("divisor: '") + c + "' expected at offset " + std::to_string(i));
    ++i;
  };
  skip();
  if (i == text.size()) return D;
  for (;;) {
    skip();
    std::int64_t mult = 1;
    if (i < text.size() && text[i] != '(') {
      mult = number();
      expect('*');
    }
    expect('(');
    std::int64_t x = number();
    expect(':');
    std::int64_t y = number();
    expect(':');
    std::int64_t z = number();
    expect(')');
    if (mult < 1) fail(ErrorKind::InvalidInput, "divisor: multiplicity must be positive");
    Point P = normalize({Fp->from_int(x), Fp->from_int(y), Fp->from_int(z)});
    if (!C.contains(P)) fail(ErrorKind::InvalidInput, "point " + to_string(P) + " is not on the curve");
    D.add(place_of(P), static_cast<int>(mult));
    skip();
    if (i == text.size()) break;
    expect('+');
  }
  return D;
}

}  // namespace lonesieve

#endif  // LONESIEVE_SERIALIZE_HPP
