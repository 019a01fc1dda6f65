#ifndef LONESIEVE_SPLITTING_HPP
#define LONESIEVE_SPLITTING_HPP

// Splitting of rational primes in an imaginary quadratic field K = Q(sqrt d)
// and a cubic field B = Q[x]/(g), and the resulting "sieve doomed at p" test.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "lonesieve/degree_profile.hpp"
#include "lonesieve/field.hpp"

namespace lonesieve {

enum class Splitting { Inert, Split, Ramified };

inline std::string_view to_string(Splitting s) {
  switch (s) {
    case Splitting::Inert: return "inert";
    case Splitting::Split: return "split";
    case Splitting::Ramified: return "ramified";
  }
  return "?";
}

namespace detail {

inline bool is_squarefree(std::int64_t n) {
  std::uint64_t m = static_cast<std::uint64_t>(n < 0 ? -n : n);
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % (q * q) == 0) return false;
    while (m % q == 0) m /= q;
  }
  return true;
}

inline bool is_perfect_square(std::int64_t n) {
  if (n < 0) return false;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  for (std::int64_t s = std::max<std::int64_t>(0, r - 2); s <= r + 2; ++s)
    if (s * s == n) return true;
  return false;
}

}  // namespace detail

/// Number of reduced primitive positive definite binary quadratic forms of discriminant disc < 0.
inline int class_number(std::int64_t disc) {
  if (disc >= 0) fail(ErrorKind::InvalidInput, "class number needs a negative discriminant");
  int h = 0;
  std::int64_t D = -disc;
  for (std::int64_t a = 1; 3 * a * a <= D; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      std::int64_t num = b * b + D;
      if (num % (4 * a) != 0) continue;
      std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
      ++h;
    }
  }
  return h;
}

struct QuadraticFieldSpec {
  std::int64_t d = 0;
  bool class_number_one = false;

  static QuadraticFieldSpec make(std::int64_t d) {
    if (d >= 0) fail(ErrorKind::InvalidInput, "d must be negative");
    if (!detail::is_squarefree(d)) fail(ErrorKind::InvalidInput, "d = " + std::to_string(d) + " is not squarefree");
    QuadraticFieldSpec s;
    s.d = d;
    s.class_number_one = class_number(s.discriminant()) == 1;
    return s;
  }

  std::int64_t discriminant() const { return mod_of(d, 4) == 1 ? d : 4 * d; }
};

struct CubicFieldSpec {
  IntPoly g;  // monic cubic, ascending coefficients
  std::int64_t disc = 0;
  bool irreducible = false;

  /// Builds a CubicFieldSpec without rejecting reducible cubics; callers that need a
  /// field check `irreducible` (see require_field()).
  static CubicFieldSpec make(IntPoly g) {
    if (int_degree(g) != 3 || g.size() != 4 || g[3] != 1) fail(ErrorKind::InvalidInput, "cubic must be monic of degree 3");
    CubicFieldSpec s;
    s.g = g;
    std::int64_t c0 = g[0], c1 = g[1], c2 = g[2];
    s.disc = c2 * c2 * c1 * c1 - 4 * c1 * c1 * c1 - 4 * c2 * c2 * c2 * c0 - 27 * c0 * c0 + 18 * c2 * c1 * c0;
    s.irreducible = !has_integer_root(g);
    return s;
  }

  const CubicFieldSpec& require_field() const {
    if (!irreducible) fail(ErrorKind::InvalidInput, "cubic is reducible over Q");
    return *this;
  }

 private:
  static bool has_integer_root(const IntPoly& g) {
    std::int64_t c0 = g[0];
    if (c0 == 0) return true;
    std::int64_t m = c0 < 0 ? -c0 : c0;
    auto eval = [&](std::int64_t x) {
      __int128 v = 0;
      for (int i = 3; i >= 0; --i) v = v * x + g[i];
      return v == 0;
    };
    for (std::int64_t q = 1; q * q <= m; ++q) {
      if (m % q) continue;
      for (std::int64_t r : {q, m / q})
        if (eval(r) || eval(-r)) return true;
    }
    return false;
  }
};

inline Splitting quadratic_splitting(const QuadraticFieldSpec& K, std::uint32_t p) {
  if (p == 2) fail(ErrorKind::EvenPrime, "quadratic splitting is only classified for odd p");
  if (!is_prime(p)) fail(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not prime");
  if (K.discriminant() % static_cast<std::int64_t>(p) == 0) return Splitting::Ramified;
  return legendre_symbol(K.d, p) == 1 ? Splitting::Split : Splitting::Inert;
}

/// Smallest odd prime splitting in K, for class-number-one K. Such a prime
/// satisfies a^2 + |d| b^2 = 4p with b >= 1, hence p >= |d|/4.
inline std::uint32_t min_split_prime(const QuadraticFieldSpec& K, std::int64_t ceiling = 0) {
  if (!K.class_number_one) fail(ErrorKind::InvalidInput, "min_split_prime requires class number one");
  std::int64_t ad = -K.d;
  if (ceiling <= 0) ceiling = 10 * ad;
  std::int64_t start = (ad + 3) / 4;
  for (std::int64_t p = 3; p < start; p += 2)
    if (is_prime(p) && quadratic_splitting(K, static_cast<std::uint32_t>(p)) == Splitting::Split)
      fail(ErrorKind::InvalidInput, "prime " + std::to_string(p) + " splits below the class-number-one norm bound");
  for (std::int64_t p = std::max<std::int64_t>(3, start); p <= ceiling; ++p) {
    if (p % 2 == 0 || !is_prime(p)) continue;
    if (quadratic_splitting(K, static_cast<std::uint32_t>(p)) != Splitting::Split) continue;
    for (std::int64_t b = 1; ad * b * b <= 4 * p; ++b)
      if (detail::is_perfect_square(4 * p - ad * b * b)) return static_cast<std::uint32_t>(p);
  }
  fail(ErrorKind::SearchExhausted, "no split prime up to " + std::to_string(ceiling));
}

struct DoomReport {
  std::uint32_t p = 0;
  Splitting splitting_in_K = Splitting::Inert;
  std::vector<int> profile_in_B;  // empty when no cubic was supplied
  bool doomed = false;
  std::string reason;
};

/// The sieve at p is doomed iff p is not inert in B, i.e. g has a root mod p.
/// Without a cubic, the quadratic criterion alone is applied (inert in K => doomed).
inline DoomReport doomed_at(const QuadraticFieldSpec& K, const std::optional<CubicFieldSpec>& B, std::uint32_t p) {
  if (p == 2) fail(ErrorKind::EvenPrime, "doom classification needs an odd prime");
  if (K.d % static_cast<std::int64_t>(p) == 0) fail(ErrorKind::RamifiedPrime, std::to_string(p) + " divides d");
  if (B && B->disc % static_cast<std::int64_t>(p) == 0)
    fail(ErrorKind::RamifiedPrime, std::to_string(p) + " divides disc(g)");
  DoomReport r;
  r.p = p;
  r.splitting_in_K = quadratic_splitting(K, p);
  if (B) {
    B->require_field();
    r.profile_in_B = factor_degree_profile(B->g, p).degrees;
    bool linear = std::find(r.profile_in_B.begin(), r.profile_in_B.end(), 1) != r.profile_in_B.end();
    r.doomed = linear;
    if (!linear) r.reason = "inert-in-B";
    else r.reason = r.splitting_in_K == Splitting::Inert ? "inert-in-K" : "degree-one-factor";
  } else {
    r.doomed = r.splitting_in_K == Splitting::Inert;
    r.reason = r.doomed ? "inert-in-K" : "split-in-K";
  }
  return r;
}

struct DoomRangeReport {
  std::vector<DoomReport> rows;
  std::vector<std::uint32_t> excluded;  // odd primes dividing d or disc(g)
  std::optional<std::uint32_t> smallest_non_doomed;
};

inline DoomRangeReport doom_range_report(const QuadraticFieldSpec& K, const std::optional<CubicFieldSpec>& B,
                                         std::uint32_t pmax) {
  if (pmax < 3) fail(ErrorKind::InvalidInput, "pmax must be at least 3");
  DoomRangeReport out;
  for (std::uint32_t p = 3; p <= pmax; p += 2) {
    if (!is_prime(p)) continue;
    if (K.d % static_cast<std::int64_t>(p) == 0 || (B && B->disc % static_cast<std::int64_t>(p) == 0)) {
      out.excluded.push_back(p);
      continue;
    }
    out.rows.push_back(doomed_at(K, B, p));
    if (!out.rows.back().doomed && !out.smallest_non_doomed) out.smallest_non_doomed = p;
  }
  return out;
}

/// True iff no odd unramified p <= pmax is inert in both K and B. Requires
/// disc(g)/d to be a nonzero rational square.
inline bool no_degree_six_check(const QuadraticFieldSpec& K, const CubicFieldSpec& B, std::uint32_t pmax) {
  if (B.disc == 0 || !detail::is_perfect_square(B.disc * K.d))
    fail(ErrorKind::IncompatibleFields, "disc(g)/d = " + std::to_string(B.disc) + "/" + std::to_string(K.d) +
                                            " is not a nonzero rational square");
  for (std::uint32_t p = 3; p <= pmax; p += 2) {
    if (!is_prime(p)) continue;
    if (K.d % static_cast<std::int64_t>(p) == 0 || B.disc % static_cast<std::int64_t>(p) == 0) continue;
    if (quadratic_splitting(K, p) == Splitting::Inert && factor_degree_profile(B.g, p).degrees == std::vector<int>{3})
      return false;
  }
  return true;
}

/// Numerator of (N-1)/12: the order of the cuspidal class [c0 - c_inf] on J_0(N), N prime.
inline std::uint64_t x0_torsion_order(std::uint64_t N) {
  if (!is_prime(N)) fail(ErrorKind::CompositeLevel, std::to_string(N) + " is not prime");
  if (N < 11) fail(ErrorKind::InvalidInput, "prime level must be at least 11");
  return (N - 1) / std::gcd<std::uint64_t>(N - 1, 12);
}

}  // namespace lonesieve

#endif  // LONESIEVE_SPLITTING_HPP
