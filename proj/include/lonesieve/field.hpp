#ifndef LONESIEVE_FIELD_HPP
#define LONESIEVE_FIELD_HPP

// Exact arithmetic in F_p and F_p[t]/(m(t)).

#include <boost/container/small_vector.hpp>

#include <cassert>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lonesieve/error.hpp"

namespace lonesieve {

/// Largest supported characteristic (exclusive).
inline constexpr std::uint32_t kMaxCharacteristic = 1u << 20;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// True remainder of a modulo p, in 0..p-1 (negative inputs allowed).
inline std::uint32_t mod_of(std::int64_t a, std::uint32_t p) {
  std::int64_t r = a % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}

inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + p - b;
}

inline std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  if (nr == 0) fail(ErrorKind::InvalidInput, "inverse of zero");
  while (nr) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return mod_of(t, p);
}

/// Euler's criterion. Returns -1, 0 or +1.
inline int legendre_symbol(std::int64_t a, std::uint32_t p) {
  if (p == 2) fail(ErrorKind::EvenPrime, "legendre symbol needs an odd prime");
  if (!is_prime(p)) fail(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not prime");
  std::uint32_t r = mod_of(a, p);
  if (r == 0) return 0;
  return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Reduces a signed decimal integer literal of any length modulo p.
inline std::uint32_t reduce_decimal(std::string_view s, std::uint32_t p) {
  bool neg = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
  if (i == s.size()) fail(ErrorKind::InvalidInput, "empty integer literal");
  std::uint64_t r = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      fail(ErrorKind::InvalidInput, "bad integer literal '" + std::string(s) + "'");
    r = (r * 10 + static_cast<std::uint64_t>(s[i] - '0')) % p;
  }
  return neg ? static_cast<std::uint32_t>((p - r) % p) : static_cast<std::uint32_t>(r);
}

class GaloisField;

/// Element of a GaloisField: residue polynomial of degree < k, ascending coefficients.
class Fq {
 public:
  using Coeffs = boost::container::small_vector<std::uint32_t, 4>;

  Fq() = default;
  Fq(const GaloisField* f, Coeffs c) : f_(f), c_(std::move(c)) {}

  const GaloisField* field() const { return f_; }
  const Coeffs& coeffs() const { return c_; }
  std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  bool is_zero() const {
    for (auto v : c_)
      if (v) return false;
    return true;
  }
  bool is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i]) return false;
    return true;
  }
  /// True when the element lies in the prime subfield.
  bool in_prime_field() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i]) return false;
    return true;
  }

  inline Fq operator+(const Fq& o) const;
  inline Fq operator-(const Fq& o) const;
  inline Fq operator-() const;
  inline Fq operator*(const Fq& o) const;
  inline Fq operator/(const Fq& o) const;
  Fq& operator+=(const Fq& o) { return *this = *this + o; }
  Fq& operator-=(const Fq& o) { return *this = *this - o; }
  Fq& operator*=(const Fq& o) { return *this = *this * o; }

  inline Fq scaled(std::uint32_t s) const;
  inline Fq inverse() const;
  inline Fq pow(std::uint64_t e) const;
  inline Fq frobenius() const;

  bool operator==(const Fq& o) const { return c_ == o.c_; }
  /// Lexicographic on the coefficient vector, highest degree first.
  std::strong_ordering operator<=>(const Fq& o) const {
    assert(c_.size() == o.c_.size());
    for (std::size_t i = c_.size(); i-- > 0;)
      if (c_[i] != o.c_[i]) return c_[i] <=> o.c_[i];
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto v : c_) h = (h ^ v) * 0x100000001b3ull;
    return h;
  }

  std::string to_string() const;

 private:
  const GaloisField* f_ = nullptr;
  Coeffs c_;
};

/// F_p[t]/(modulus). The modulus must be monic irreducible; the canonical
/// fields come from field_of() in extension.hpp, which also checks that.
class GaloisField {
 public:
  GaloisField(std::uint32_t p, std::vector<std::uint32_t> modulus)
      : p_(p), mod_(std::move(modulus)) {
    if (p_ < 2 || p_ >= kMaxCharacteristic || !is_prime(p_))
      fail(ErrorKind::NonPrimeModulus, std::to_string(p_) + " is not a supported prime");
    if (mod_.size() < 2 || mod_.back() != 1)
      fail(ErrorKind::InvalidInput, "field modulus must be monic of degree >= 1");
    k_ = static_cast<int>(mod_.size()) - 1;
    for (auto& v : mod_) v %= p_;
    // Frobenius images of t^i, used for O(k^2) p-th powers.
    Fq t = k_ == 1 ? from_int(mod_of(-static_cast<std::int64_t>(mod_[0]), p_)) : gen();
    Fq tp = t.pow(p_);
    Fq acc = one();
    frob_.reserve(k_);
    for (int i = 0; i < k_; ++i) {
      frob_.push_back(acc.coeffs());
      acc = acc * tp;
    }
  }

  GaloisField(const GaloisField&) = delete;
  GaloisField& operator=(const GaloisField&) = delete;

  std::uint32_t characteristic() const { return p_; }
  int degree() const { return k_; }
  const std::vector<std::uint32_t>& modulus() const { return mod_; }

  /// Field order as a double (the exact value may exceed 64 bits).
  double order_approx() const {
    double q = 1;
    for (int i = 0; i < k_; ++i) q *= p_;
    return q;
  }
  /// Field order when it fits in 64 bits, otherwise 0.
  std::uint64_t order() const {
    unsigned __int128 q = 1;
    for (int i = 0; i < k_; ++i) {
      q *= p_;
      if (q >> 64) return 0;
    }
    return static_cast<std::uint64_t>(q);
  }

  Fq zero() const { return Fq(this, Fq::Coeffs(k_, 0)); }
  Fq one() const { return from_int(1); }
  Fq from_int(std::int64_t v) const {
    Fq::Coeffs c(k_, 0);
    c[0] = mod_of(v, p_);
    return Fq(this, std::move(c));
  }
  Fq from_residue(std::uint32_t v) const {
    Fq::Coeffs c(k_, 0);
    c[0] = v % p_;
    return Fq(this, std::move(c));
  }
  /// The class of t (only meaningful for k >= 2).
  Fq gen() const {
    Fq::Coeffs c(k_, 0);
    if (k_ >= 2) c[1] = 1;
    else c[0] = mod_of(-static_cast<std::int64_t>(mod_[0]), p_);
    return Fq(this, std::move(c));
  }
  Fq from_coeffs(std::span<const std::uint32_t> v) const {
    if (static_cast<int>(v.size()) > k_) fail(ErrorKind::InvalidInput, "too many coefficients for field element");
    Fq::Coeffs c(k_, 0);
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i] % p_;
    return Fq(this, std::move(c));
  }
  /// Element with base-p digit expansion `code` (digit i is the t^i coefficient).
  Fq from_code(std::uint64_t code) const {
    Fq::Coeffs c(k_, 0);
    for (int i = 0; i < k_; ++i) {
      c[i] = static_cast<std::uint32_t>(code % p_);
      code /= p_;
    }
    return Fq(this, std::move(c));
  }

  // Arithmetic kernels; Fq forwards here.
  Fq add(const Fq& a, const Fq& b) const {
    Fq::Coeffs c(k_);
    for (int i = 0; i < k_; ++i) c[i] = add_mod(a.coeffs()[i], b.coeffs()[i], p_);
    return Fq(this, std::move(c));
  }
  Fq sub(const Fq& a, const Fq& b) const {
    Fq::Coeffs c(k_);
    for (int i = 0; i < k_; ++i) c[i] = sub_mod(a.coeffs()[i], b.coeffs()[i], p_);
    return Fq(this, std::move(c));
  }
  Fq neg(const Fq& a) const {
    Fq::Coeffs c(k_);
    for (int i = 0; i < k_; ++i) c[i] = a.coeffs()[i] ? p_ - a.coeffs()[i] : 0;
    return Fq(this, std::move(c));
  }
  Fq scale(const Fq& a, std::uint32_t s) const {
    Fq::Coeffs c(k_);
    for (int i = 0; i < k_; ++i) c[i] = mul_mod(a.coeffs()[i], s, p_);
    return Fq(this, std::move(c));
  }
  Fq mul(const Fq& a, const Fq& b) const {
    if (k_ == 1) return Fq(this, Fq::Coeffs{mul_mod(a.coeffs()[0], b.coeffs()[0], p_)});
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    boost::container::small_vector<std::uint64_t, 16> prod(2 * k_ - 1, 0);
    for (int i = 0; i < k_; ++i) {
      if (!x[i]) continue;
      for (int j = 0; j < k_; ++j)
        prod[i + j] += static_cast<std::uint64_t>(x[i]) * y[j];
    }
    for (int i = 2 * k_ - 2; i >= k_; --i) {
      std::uint64_t top = prod[i] % p_;
      if (!top) continue;
      std::uint64_t ntop = p_ - top;
      for (int j = 0; j < k_; ++j)
        prod[i - k_ + j] += ntop * mod_[j];
    }
    Fq::Coeffs c(k_);
    for (int i = 0; i < k_; ++i) c[i] = static_cast<std::uint32_t>(prod[i] % p_);
    return Fq(this, std::move(c));
  }
  Fq frobenius(const Fq& a) const {
    if (k_ == 1) return a;
    std::vector<std::uint64_t> acc(k_, 0);
    for (int i = 0; i < k_; ++i) {
      std::uint32_t ai = a.coeffs()[i];
      if (!ai) continue;
      for (int j = 0; j < k_; ++j) acc[j] = (acc[j] + static_cast<std::uint64_t>(ai) * frob_[i][j]) % p_;
    }
    Fq::Coeffs c(k_);
    for (int i = 0; i < k_; ++i) c[i] = static_cast<std::uint32_t>(acc[i]);
    return Fq(this, std::move(c));
  }
  /// Norm to F_p, as a residue.
  std::uint32_t norm(const Fq& a) const {
    Fq acc = a, conj = a;
    for (int i = 1; i < k_; ++i) {
      conj = frobenius(conj);
      acc = mul(acc, conj);
    }
    return acc.coeffs()[0];
  }
  /// Trace to F_p, as a residue.
  std::uint32_t trace(const Fq& a) const {
    Fq acc = a, conj = a;
    for (int i = 1; i < k_; ++i) {
      conj = frobenius(conj);
      acc = add(acc, conj);
    }
    return acc.coeffs()[0];
  }
  Fq inverse(const Fq& a) const {
    if (a.is_zero()) fail(ErrorKind::InvalidInput, "inverse of zero in F_" + std::to_string(p_) + "^" + std::to_string(k_));
    if (k_ == 1) return Fq(this, Fq::Coeffs{inv_mod(a.coeffs()[0], p_)});
    // a^{-1} = (a^p a^{p^2} ... a^{p^{k-1}}) / N(a)
    Fq conj = a, rest = one();
    for (int i = 1; i < k_; ++i) {
      conj = frobenius(conj);
      rest = mul(rest, conj);
    }
    std::uint32_t n = mul(rest, a).coeffs()[0];
    return scale(rest, inv_mod(n, p_));
  }

 private:
  std::uint32_t p_;
  int k_ = 1;
  std::vector<std::uint32_t> mod_;
  std::vector<Fq::Coeffs> frob_;
};

inline Fq Fq::operator+(const Fq& o) const { return f_->add(*this, o); }
inline Fq Fq::operator-(const Fq& o) const { return f_->sub(*this, o); }
inline Fq Fq::operator-() const { return f_->neg(*this); }
inline Fq Fq::operator*(const Fq& o) const { return f_->mul(*this, o); }
inline Fq Fq::operator/(const Fq& o) const { return f_->mul(*this, f_->inverse(o)); }
inline Fq Fq::scaled(std::uint32_t s) const { return f_->scale(*this, s); }
inline Fq Fq::inverse() const { return f_->inverse(*this); }
inline Fq Fq::frobenius() const { return f_->frobenius(*this); }
inline Fq Fq::pow(std::uint64_t e) const {
  Fq r = f_->one(), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

inline std::string Fq::to_string() const {
  if (c_.size() == 1) return std::to_string(c_[0]);
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  os << ']';
  return os.str();
}

/// Applies Frobenius j times.
inline Fq frobenius_power(Fq x, int j) {
  for (int i = 0; i < j; ++i) x = x.frobenius();
  return x;
}

}  // namespace lonesieve

template <>
struct std::hash<lonesieve::Fq> {
  std::size_t operator()(const lonesieve::Fq& x) const noexcept { return x.hash(); }
};

#endif  // LONESIEVE_FIELD_HPP
