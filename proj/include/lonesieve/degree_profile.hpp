#ifndef LONESIEVE_DEGREE_PROFILE_HPP
#define LONESIEVE_DEGREE_PROFILE_HPP

// Factorization type of an integer polynomial modulo p.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "lonesieve/extension.hpp"
#include "lonesieve/poly.hpp"

namespace lonesieve {

/// Integer polynomial, ascending coefficients.
using IntPoly = std::vector<std::int64_t>;

inline int int_degree(const IntPoly& g) {
  int d = static_cast<int>(g.size()) - 1;
  while (d >= 0 && g[d] == 0) --d;
  return d;
}

inline Poly reduce_int_poly(const IntPoly& g, std::uint32_t p) {
  const GaloisField* F = prime_field(p);
  std::vector<Fq> c;
  c.reserve(g.size());
  for (auto v : g) c.push_back(F->from_int(v));
  return Poly(F, std::move(c));
}

struct DegreeProfile {
  std::vector<int> degrees;  // ascending, with multiplicity
  bool squarefree = true;

  bool has_linear_factor() const { return std::find(degrees.begin(), degrees.end(), 1) != degrees.end(); }
  bool operator==(const DegreeProfile&) const = default;
};

/// Degrees of the irreducible factors of g mod p (with multiplicity).
/// Degree <= 3 goes through root scanning; degrees 4..6 through distinct-degree factorization.
inline DegreeProfile factor_degree_profile(const IntPoly& g, std::uint32_t p) {
  int deg = int_degree(g);
  if (deg < 1 || deg > 6) fail(ErrorKind::InvalidInput, "degree profile supports 1 <= deg g <= 6");
  if (!is_prime(p) || p >= kMaxCharacteristic) fail(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not a supported prime");
  if (mod_of(g[deg], p) == 0)
    fail(ErrorKind::LeadingCoefficientVanishes, "p = " + std::to_string(p) + " divides the leading coefficient");

  Poly f = reduce_int_poly(g, p).monic();
  const GaloisField* F = f.field();
  DegreeProfile out;
  out.squarefree = Poly::gcd(f, f.derivative()).degree() == 0;

  if (deg <= 3) {
    for (std::uint32_t r = 0; r < p && f.degree() > 0; ++r) {
      Fq root = F->from_residue(r);
      Poly lin(F, {-root, F->one()});
      while (f.degree() > 0 && f(root).is_zero()) {
        f = f / lin;
        out.degrees.push_back(1);
      }
    }
    if (f.degree() == 3) {
      out.degrees.push_back(3);
    } else if (f.degree() == 2) {
      // rootless quadratic; for odd p its discriminant is a non-square
      if (p != 2) {
        Fq disc = f.coeff(1) * f.coeff(1) - f.coeff(0).scaled(4);
        if (legendre_symbol(disc.coeff(0), p) != -1)
          fail(ErrorKind::InvalidInput, "inconsistent quadratic factor");
      }
      out.degrees.push_back(2);
    }
  } else {
    for (auto& [h, mult] : factor(f))
      for (int i = 0; i < mult; ++i) out.degrees.push_back(h.degree());
  }
  std::sort(out.degrees.begin(), out.degrees.end());
  return out;
}

}  // namespace lonesieve

#endif  // LONESIEVE_DEGREE_PROFILE_HPP
