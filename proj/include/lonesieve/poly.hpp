#ifndef LONESIEVE_POLY_HPP
#define LONESIEVE_POLY_HPP

// Dense univariate polynomials over a GaloisField, with gcd, modular
// powering and Cantor-Zassenhaus style factorization.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "lonesieve/field.hpp"

namespace lonesieve {

class Poly {
 public:
  explicit Poly(const GaloisField* f) : f_(f) {}
  Poly(const GaloisField* f, std::vector<Fq> c) : f_(f), c_(std::move(c)) { trim(); }

  static Poly constant(const Fq& a) { return Poly(a.field(), {a}); }
  static Poly x(const GaloisField* f) { return Poly(f, {f->zero(), f->one()}); }
  static Poly monomial(const Fq& a, int deg) {
    std::vector<Fq> c(deg + 1, a.field()->zero());
    c[deg] = a;
    return Poly(a.field(), std::move(c));
  }
  /// From residues mod p, ascending; the field must be a prime field or the residues
  /// are read as prime-subfield elements.
  static Poly from_residues(const GaloisField* f, const std::vector<std::uint32_t>& r) {
    std::vector<Fq> c;
    c.reserve(r.size());
    for (auto v : r) c.push_back(f->from_residue(v));
    return Poly(f, std::move(c));
  }

  const GaloisField* field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  const std::vector<Fq>& coeffs() const { return c_; }
  Fq coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : f_->zero(); }
  const Fq& lead() const { return c_.back(); }

  Fq operator()(const Fq& x) const {
    Fq r = f_->zero();
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  Poly operator+(const Poly& o) const {
    std::vector<Fq> c(std::max(c_.size(), o.c_.size()), f_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] = c[i] + o.c_[i];
    return Poly(f_, std::move(c));
  }
  Poly operator-(const Poly& o) const {
    std::vector<Fq> c(std::max(c_.size(), o.c_.size()), f_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] = c[i] - o.c_[i];
    return Poly(f_, std::move(c));
  }
  Poly operator-() const {
    std::vector<Fq> c;
    c.reserve(c_.size());
    for (const auto& a : c_) c.push_back(-a);
    return Poly(f_, std::move(c));
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(f_);
    std::vector<Fq> c(c_.size() + o.c_.size() - 1, f_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    }
    return Poly(f_, std::move(c));
  }
  Poly operator*(const Fq& a) const {
    std::vector<Fq> c;
    c.reserve(c_.size());
    for (const auto& v : c_) c.push_back(v * a);
    return Poly(f_, std::move(c));
  }
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  /// Total order: by degree, then coefficients from the top.
  bool operator<(const Poly& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    for (std::size_t i = c_.size(); i-- > 0;)
      if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * lead().inverse();
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly(f_);
    std::vector<Fq> c;
    c.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i].scaled(static_cast<std::uint32_t>(i % f_->characteristic())));
    return Poly(f_, std::move(c));
  }

  /// Quotient and remainder; b must be nonzero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) fail(ErrorKind::InvalidInput, "polynomial division by zero");
    const GaloisField* f = a.f_;
    if (a.degree() < b.degree()) return {Poly(f), a};
    std::vector<Fq> r = a.c_;
    int db = b.degree();
    std::vector<Fq> q(a.degree() - db + 1, f->zero());
    Fq inv = b.lead().inverse();
    for (int i = a.degree(); i >= db; --i) {
      if (r[i].is_zero()) continue;
      Fq t = r[i] * inv;
      q[i - db] = t;
      for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.c_[j];
    }
    r.resize(db);
    return {Poly(f, std::move(q)), Poly(f, std::move(r))};
  }
  Poly operator%(const Poly& b) const { return divmod(*this, b).second; }
  Poly operator/(const Poly& b) const { return divmod(*this, b).first; }

  /// Monic gcd (zero if both are zero).
  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  static Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

  static Poly powmod(Poly base, std::uint64_t e, const Poly& m) {
    Poly r = Poly::constant(m.f_->one()) % m;
    base = base % m;
    while (e) {
      if (e & 1) r = mulmod(r, base, m);
      e >>= 1;
      if (e) base = mulmod(base, base, m);
    }
    return r;
  }

  /// Composition a(b) mod m.
  static Poly compose_mod(const Poly& a, const Poly& b, const Poly& m) {
    Poly r(a.f_);
    for (std::size_t i = a.c_.size(); i-- > 0;) r = (r * b + Poly::constant(a.c_[i])) % m;
    return r;
  }

  /// h^q mod m, where q is the size of the coefficient field.
  static Poly qth_power_mod(const Poly& h, const Poly& m) {
    Poly r = h % m;
    for (int i = 0; i < h.f_->degree(); ++i) r = powmod(r, h.f_->characteristic(), m);
    return r;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += c_[i].to_string();
      if (i) s += i == 1 ? "*x" : "*x^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  const GaloisField* f_;
  std::vector<Fq> c_;
};

namespace detail {

inline Poly random_poly(const GaloisField* f, int deg_bound, std::mt19937_64& rng) {
  std::vector<Fq> c;
  c.reserve(deg_bound);
  std::uniform_int_distribution<std::uint32_t> dist(0, f->characteristic() - 1);
  for (int i = 0; i < deg_bound; ++i) {
    Fq::Coeffs v(f->degree());
    for (auto& x : v) x = dist(rng);
    c.emplace_back(f, std::move(v));
  }
  return Poly(f, std::move(c));
}

/// p-th root of a polynomial whose exponents are all multiples of p.
inline Poly pth_root(const Poly& c) {
  const GaloisField* f = c.field();
  std::uint32_t p = f->characteristic();
  std::vector<Fq> r;
  for (int i = 0; i <= c.degree(); i += static_cast<int>(p))
    r.push_back(frobenius_power(c.coeff(i), f->degree() - 1));
  return Poly(f, std::move(r));
}

}  // namespace detail

/// Squarefree decomposition of a nonzero polynomial: pairs (monic squarefree factor, multiplicity).
inline std::vector<std::pair<Poly, int>> squarefree_factorization(const Poly& f0) {
  std::vector<std::pair<Poly, int>> out;
  Poly f = f0.monic();
  if (f.degree() <= 0) return out;
  Poly c = Poly::gcd(f, f.derivative());
  Poly w = f / c;
  int i = 1;
  while (!w.is_one()) {
    Poly y = Poly::gcd(w, c);
    Poly fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    int p = static_cast<int>(f.field()->characteristic());
    for (auto& [g, m] : squarefree_factorization(detail::pth_root(c.monic()))) out.emplace_back(g, m * p);
  }
  return out;
}

/// Distinct-degree factorization of a monic squarefree polynomial.
/// Returns (product of all irreducible factors of degree e, e).
inline std::vector<std::pair<Poly, int>> distinct_degree_factorization(const Poly& f0) {
  std::vector<std::pair<Poly, int>> out;
  Poly f = f0.monic();
  const GaloisField* F = f.field();
  Poly x = Poly::x(F);
  Poly h = x % f;
  int e = 0;
  while (f.degree() >= 2 * (e + 1)) {
    ++e;
    h = Poly::qth_power_mod(h, f);
    Poly g = Poly::gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, e);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

/// Splits a monic squarefree product of degree-e irreducibles into its factors.
inline std::vector<Poly> equal_degree_factorization(const Poly& f, int e) {
  if (f.degree() == e) return {f};
  const GaloisField* F = f.field();
  std::uint32_t p = F->characteristic();
  // Absolute trace into F_p on each residue field, then the quadratic character.
  const int trace_len = F->degree() * e;
  std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(f.degree()) * 131 + e);
  std::vector<Poly> pending{f}, done;
  while (!pending.empty()) {
    Poly g = pending.back();
    pending.pop_back();
    if (g.degree() == e) {
      done.push_back(g);
      continue;
    }
    for (;;) {
      Poly a = detail::random_poly(F, g.degree(), rng);
      if (a.degree() < 1) continue;
      Poly t = a % g, acc = t;
      for (int j = 1; j < trace_len; ++j) {
        t = Poly::powmod(t, p, g);
        acc = acc + t;
      }
      Poly probe = p == 2 ? acc : Poly::powmod(acc, (p - 1) / 2, g) - Poly::constant(F->one());
      Poly d = Poly::gcd(g, probe);
      if (d.degree() > 0 && d.degree() < g.degree()) {
        pending.push_back(d);
        pending.push_back((g / d).monic());
        break;
      }
    }
  }
  std::sort(done.begin(), done.end());
  return done;
}

/// Full factorization into monic irreducibles with multiplicity, sorted.
inline std::vector<std::pair<Poly, int>> factor(const Poly& f) {
  std::vector<std::pair<Poly, int>> out;
  if (f.degree() <= 0) return out;
  for (auto& [sq, mult] : squarefree_factorization(f))
    for (auto& [block, e] : distinct_degree_factorization(sq))
      for (auto& g : equal_degree_factorization(block, e)) out.emplace_back(g, mult);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first == b.first) return a.second < b.second;
    return a.first < b.first;
  });
  return out;
}

/// Distinct roots in the coefficient field, sorted.
inline std::vector<Fq> roots(const Poly& f) {
  std::vector<Fq> out;
  if (f.degree() <= 0) return out;
  Poly m = f.monic();
  Poly x = Poly::x(f.field());
  Poly g = Poly::gcd(m, Poly::qth_power_mod(x, m) - x);
  if (g.degree() <= 0) return out;
  for (auto& lin : equal_degree_factorization(g, 1)) out.push_back(-lin.coeff(0));
  std::sort(out.begin(), out.end());
  return out;
}

/// Ben-Or irreducibility test.
inline bool is_irreducible(const Poly& f) {
  if (f.degree() <= 0) return false;
  if (f.degree() == 1) return true;
  Poly m = f.monic();
  Poly x = Poly::x(f.field());
  Poly h = x % m;
  for (int i = 1; 2 * i <= m.degree(); ++i) {
    h = Poly::qth_power_mod(h, m);
    if (Poly::gcd(m, h - x).degree() > 0) return false;
  }
  return true;
}

}  // namespace lonesieve

#endif  // LONESIEVE_POLY_HPP
