#ifndef LONESIEVE_RATIONAL_HPP
#define LONESIEVE_RATIONAL_HPP

// Curves, matrices and points over Q and over number fields given by a power
// basis, with reduction to F_p.

#include <array>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lonesieve/curve.hpp"
#include "lonesieve/torsion.hpp"

namespace lonesieve {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt parse_bigint(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size() || s.find_first_not_of("0123456789", i) != std::string::npos)
    fail(ErrorKind::InvalidInput, "not an integer: '" + s + "'");
  return BigInt(s[0] == '+' ? s.substr(1) : s);
}

/// Parses "a" or "a/b".
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_bigint(s));
  BigInt den = parse_bigint(s.substr(slash + 1));
  if (den == 0) fail(ErrorKind::InvalidInput, "zero denominator in '" + s + "'");
  return Rational(parse_bigint(s.substr(0, slash)), den);
}

inline std::string to_string(const Rational& q) {
  std::string s = boost::multiprecision::numerator(q).str();
  if (boost::multiprecision::denominator(q) != 1) s += "/" + boost::multiprecision::denominator(q).str();
  return s;
}

inline std::uint32_t mod_p(const BigInt& a, std::uint32_t p) {
  BigInt r = a % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint32_t>();
}

inline std::uint32_t reduce_rational(const Rational& q, std::uint32_t p) {
  std::uint32_t den = mod_p(boost::multiprecision::denominator(q), p);
  if (den == 0) fail(ErrorKind::DenominatorClash, to_string(q) + " has a denominator divisible by " + std::to_string(p));
  return mul_mod(mod_p(boost::multiprecision::numerator(q), p), inv_mod(den, p), p);
}

/// p-adic valuation; a large sentinel for zero.
inline int valuation(const Rational& q, std::uint32_t p) {
  if (q == 0) return 1 << 20;
  int v = 0;
  BigInt n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
  while (n % p == 0) n /= p, ++v;
  while (d % p == 0) d /= p, --v;
  return v;
}

inline Rational power_of(std::uint32_t p, int e) {
  BigInt pe = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(e < 0 ? -e : e));
  return e >= 0 ? Rational(pe) : Rational(BigInt(1), pe);
}

/// Q[t]/(g) for an integer polynomial g (ascending coefficients), elements in the power basis.
class NumberField {
 public:
  using Element = std::vector<Rational>;

  NumberField() : NumberField(std::vector<BigInt>{0, 1}) {}
  explicit NumberField(std::vector<BigInt> g) : g_(std::move(g)) {
    while (!g_.empty() && g_.back() == 0) g_.pop_back();
    if (g_.size() < 2) fail(ErrorKind::InvalidInput, "minimal polynomial must have degree >= 1");
  }

  static NumberField quadratic(std::int64_t d) { return NumberField({BigInt(-d), 0, 1}); }

  int degree() const { return static_cast<int>(g_.size()) - 1; }
  const std::vector<BigInt>& minpoly() const { return g_; }

  Element from_rational(const Rational& q) const {
    Element e(degree(), 0);
    e[0] = q;
    return e;
  }
  Element element(std::vector<Rational> c) const {
    if (static_cast<int>(c.size()) > degree()) fail(ErrorKind::InvalidInput, "too many power-basis coordinates");
    c.resize(degree(), 0);
    return c;
  }

  Element add(const Element& a, const Element& b) const {
    Element r(degree());
    for (int i = 0; i < degree(); ++i) r[i] = a[i] + b[i];
    return r;
  }
  Element sub(const Element& a, const Element& b) const {
    Element r(degree());
    for (int i = 0; i < degree(); ++i) r[i] = a[i] - b[i];
    return r;
  }
  Element mul(const Element& a, const Element& b) const {
    const int n = degree();
    std::vector<Rational> prod(2 * n - 1, 0);
    for (int i = 0; i < n; ++i)
      if (a[i] != 0)
        for (int j = 0; j < n; ++j) prod[i + j] += a[i] * b[j];
    Rational lc(g_.back());
    for (int k = 2 * n - 2; k >= n; --k) {
      if (prod[k] == 0) continue;
      Rational f = prod[k] / lc;
      for (int i = 0; i <= n; ++i) prod[k - n + i] -= f * Rational(g_[i]);
    }
    prod.resize(n);
    return prod;
  }
  /// Image under t -> -t when g is even (the conjugation of Q(sqrt d)).
  Element conjugate(const Element& a) const {
    Element r = a;
    for (int i = 1; i < degree(); i += 2) r[i] = -r[i];
    return r;
  }
  static bool is_zero(const Element& a) {
    for (auto& c : a)
      if (c != 0) return false;
    return true;
  }

 private:
  std::vector<BigInt> g_;
};

using AlgebraicPoint = std::array<NumberField::Element, 3>;
using RationalPoint = std::array<Rational, 3>;
using RationalMatrix = std::array<std::array<Rational, 3>, 3>;

inline AlgebraicPoint to_algebraic(const NumberField& K, const RationalPoint& P) {
  return {K.from_rational(P[0]), K.from_rational(P[1]), K.from_rational(P[2])};
}

inline bool proportional(const NumberField& K, const AlgebraicPoint& P, const AlgebraicPoint& Q) {
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3;
    if (!NumberField::is_zero(K.sub(K.mul(P[i], Q[j]), K.mul(P[j], Q[i])))) return false;
  }
  return true;
}

inline AlgebraicPoint apply_matrix(const NumberField& K, const RationalMatrix& M, const AlgebraicPoint& P) {
  AlgebraicPoint r;
  for (int i = 0; i < 3; ++i) {
    r[i] = K.from_rational(0);
    for (int j = 0; j < 3; ++j) r[i] = K.add(r[i], K.mul(K.from_rational(M[i][j]), P[j]));
  }
  return r;
}

/// Homogeneous form with rational coefficients.
struct RationalForm {
  int degree = 0;
  std::map<Exponent, Rational> coeffs;  // nonzero entries only

  void add_to(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    auto& slot = coeffs[e];
    slot += c;
    if (slot == 0) coeffs.erase(e);
  }

  bool operator==(const RationalForm& o) const { return degree == o.degree && coeffs == o.coeffs; }

  NumberField::Element eval(const NumberField& K, const AlgebraicPoint& P) const {
    std::array<std::vector<NumberField::Element>, 3> pw;
    for (int i = 0; i < 3; ++i) {
      pw[i].push_back(K.from_rational(1));
      for (int k = 0; k < degree; ++k) pw[i].push_back(K.mul(pw[i].back(), P[i]));
    }
    auto acc = K.from_rational(0);
    for (auto& [e, c] : coeffs)
      acc = K.add(acc, K.mul(K.from_rational(c), K.mul(pw[0][e[0]], K.mul(pw[1][e[1]], pw[2][e[2]]))));
    return acc;
  }

  /// F(M v).
  RationalForm compose(const RationalMatrix& M) const {
    using Lin = std::map<Exponent, Rational>;
    auto mul = [](const Lin& a, const Lin& b) {
      Lin r;
      for (auto& [ea, ca] : a)
        for (auto& [eb, cb] : b) r[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}] += ca * cb;
      return r;
    };
    std::array<std::vector<Lin>, 3> pw;
    for (int i = 0; i < 3; ++i) {
      Lin row;
      for (int j = 0; j < 3; ++j)
        if (M[i][j] != 0) row[{j == 0, j == 1, j == 2}] = M[i][j];
      pw[i].push_back(Lin{{{0, 0, 0}, Rational(1)}});
      for (int k = 0; k < degree; ++k) pw[i].push_back(mul(pw[i].back(), row));
    }
    RationalForm out{degree, {}};
    for (auto& [e, c] : coeffs)
      for (auto& [f, v] : mul(pw[0][e[0]], mul(pw[1][e[1]], pw[2][e[2]]))) out.add_to(f, c * v);
    return out;
  }

  /// Coefficientwise reduction.
  Form reduce(std::uint32_t p) const {
    Form F(p, degree);
    for (auto& [e, c] : coeffs) F.set(e, reduce_rational(c, p));
    if (F.is_zero()) fail(ErrorKind::BadReduction, "form vanishes mod " + std::to_string(p));
    return F;
  }

  std::string to_string() const {
    std::string s;
    for (auto& [e, c] : coeffs) {
      if (!s.empty()) s += " + ";
      s += "(" + lonesieve::to_string(c) + ")";
      const char* v = "xyz";
      for (int i = 0; i < 3; ++i)
        if (e[i]) s += std::string("*") + v[i] + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
    }
    return s.empty() ? "0" : s;
  }
};

/// The reduction as a smooth curve over F_p.
inline PlaneCurve reduce_mod_p(const RationalForm& F, std::uint32_t p) {
  Form Fp = F.reduce(p);
  return PlaneCurve(Fp);
}

/// Scalar lambda with F(M v) = lambda F(v) and mu with M^2 = mu I, over Q.
struct RationalInvolutionCheck {
  Rational lambda, mu;
  bool trivial = false;
};

inline RationalInvolutionCheck validate_involution(const RationalMatrix& M, const RationalForm& F) {
  Rational det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                 M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
  if (det == 0) fail(ErrorKind::InvalidInput, "involution matrix is singular");
  if (F.coeffs.empty()) fail(ErrorKind::InvalidInput, "zero form");
  RationalInvolutionCheck out;
  RationalForm G = F.compose(M);
  auto& [e0, c0] = *F.coeffs.begin();
  auto it = G.coeffs.find(e0);
  out.lambda = it == G.coeffs.end() ? Rational(0) : it->second / c0;
  RationalForm scaled{F.degree, {}};
  for (auto& [e, c] : F.coeffs) scaled.add_to(e, c * out.lambda);
  if (out.lambda == 0 || !(G == scaled)) fail(ErrorKind::NotAnAutomorphism, "matrix does not preserve the curve");
  RationalMatrix M2{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) M2[i][j] += M[i][k] * M[k][j];
  out.mu = M2[0][0];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (M2[i][j] != (i == j ? out.mu : Rational(0))) fail(ErrorKind::NotAnInvolution, "M^2 is not scalar");
  out.trivial = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (M[i][j] != (i == j ? M[0][0] : Rational(0))) out.trivial = false;
  return out;
}

namespace detail {

/// Scales a projective vector of rationals so every entry is p-integral and one is a p-unit.
template <std::size_t N>
std::array<Rational, N> p_primitive(std::array<Rational, N> v, std::uint32_t p) {
  int vmin = 1 << 20;
  for (auto& c : v) vmin = std::min(vmin, valuation(c, p));
  if (vmin == (1 << 20)) fail(ErrorKind::InvalidInput, "zero vector");
  Rational s = power_of(p, -vmin);
  for (auto& c : v) c *= s;
  return v;
}

}  // namespace detail

inline Point reduce_point(const RationalPoint& P, std::uint32_t p) {
  auto v = detail::p_primitive(P, p);
  const GaloisField* K = prime_field(p);
  return normalize({K->from_residue(reduce_rational(v[0], p)), K->from_residue(reduce_rational(v[1], p)),
                    K->from_residue(reduce_rational(v[2], p))});
}

/// Projective reduction of a matrix; BadReduction if it degenerates mod p.
inline Matrix3 reduce_matrix(const RationalMatrix& M, std::uint32_t p) {
  std::array<Rational, 9> flat;
  for (int i = 0; i < 9; ++i) flat[i] = M[i / 3][i % 3];
  flat = detail::p_primitive(flat, p);
  Matrix3 out{};
  for (int i = 0; i < 9; ++i) out[i / 3][i % 3] = reduce_rational(flat[i], p);
  std::int64_t det = 0;
  for (int j = 0; j < 3; ++j) {
    std::int64_t minor = static_cast<std::int64_t>(mul_mod(out[1][(j + 1) % 3], out[2][(j + 2) % 3], p)) -
                         mul_mod(out[1][(j + 2) % 3], out[2][(j + 1) % 3], p);
    det += static_cast<std::int64_t>(out[0][j]) * mod_of(minor, p);
  }
  if (mod_of(det, p) == 0) fail(ErrorKind::BadReduction, "involution matrix is singular mod " + std::to_string(p));
  return out;
}

/// Reductions of an algebraic point at the degree-1 primes above p that come
/// from simple roots of the minimal polynomial mod p, one per root in increasing order.
inline std::vector<Point> reduce_at_degree_one_primes(const NumberField& K, const AlgebraicPoint& P, std::uint32_t p) {
  const auto& g = K.minpoly();
  if (mod_p(g.back(), p) == 0) fail(ErrorKind::BadReduction, "leading coefficient of the minimal polynomial vanishes mod " + std::to_string(p));
  // make all power-basis coordinates p-integral
  int vmin = 0;
  for (auto& c : P)
    for (auto& q : c) vmin = std::min(vmin, valuation(q, p));
  Rational s = power_of(p, -vmin);

  constexpr int kPrecision = 64;
  const BigInt pk = boost::multiprecision::pow(BigInt(p), kPrecision);
  auto modk = [&](BigInt a) {
    a %= pk;
    if (a < 0) a += pk;
    return a;
  };
  auto inv_k = [&](const BigInt& a) {
    // a is a p-unit; Newton iteration for the inverse mod p^k
    BigInt x = inv_mod(mod_p(a, p), p);
    for (BigInt m = p; m < pk;) {
      m = m * m;
      x = modk(x * (2 - a * x));
    }
    return modk(x);
  };
  auto eval_int = [&](const std::vector<BigInt>& f, const BigInt& r) {
    BigInt acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = modk(acc * r + f[i]);
    return acc;
  };
  std::vector<BigInt> dg;
  for (std::size_t i = 1; i < g.size(); ++i) dg.push_back(g[i] * static_cast<unsigned>(i));

  std::vector<Point> out;
  const GaloisField* Fp = prime_field(p);
  for (std::uint32_t r0 = 0; r0 < p; ++r0) {
    if (mod_p(eval_int(g, r0), p) != 0 || mod_p(eval_int(dg, r0), p) == 0) continue;
    BigInt r = r0;
    for (BigInt m = p; m < pk;) {
      m = m * m;
      r = modk(r - eval_int(g, r) * inv_k(eval_int(dg, r)));
    }
    std::array<BigInt, 3> val;
    int vcoord = kPrecision;
    for (int i = 0; i < 3; ++i) {
      BigInt acc = 0, rp = 1;
      for (auto& q : P[i]) {
        Rational c = q * s;
        acc = modk(acc + boost::multiprecision::numerator(c) * inv_k(boost::multiprecision::denominator(c)) * rp);
        rp = modk(rp * r);
      }
      val[i] = acc;
      if (acc != 0) {
        int v = 0;
        for (BigInt t = acc; t % p == 0; t /= p) ++v;
        vcoord = std::min(vcoord, v);
      }
    }
    if (vcoord >= kPrecision) fail(ErrorKind::BadReduction, "point reduction exceeded p-adic precision");
    BigInt pv = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(vcoord));
    Point Q;
    for (int i = 0; i < 3; ++i) Q[i] = Fp->from_residue(mod_p(val[i] / pv, p));
    out.push_back(normalize(Q));
  }
  return out;
}

/// Reduction of a point over Q(sqrt d) at a prime p inert in it, as a point over F_{p^2}.
inline Point reduce_at_inert_prime(std::int64_t d, const AlgebraicPoint& P, std::uint32_t p) {
  std::array<Rational, 6> flat;
  for (int i = 0; i < 3; ++i) flat[2 * i] = P[i][0], flat[2 * i + 1] = P[i][1];
  flat = detail::p_primitive(flat, p);
  const GaloisField* K2 = field_of(p, 2);
  Fq delta = roots(Poly(K2, {K2->from_int(-d), K2->zero(), K2->one()})).front();
  Point Q;
  for (int i = 0; i < 3; ++i)
    Q[i] = K2->from_residue(reduce_rational(flat[2 * i], p)) + delta.scaled(reduce_rational(flat[2 * i + 1], p));
  return normalize(Q);
}

}  // namespace lonesieve

#endif  // LONESIEVE_RATIONAL_HPP
