#ifndef LONESIEVE_FORM_HPP
#define LONESIEVE_FORM_HPP

// Homogeneous ternary forms over F_p, dense in the lex-descending monomial
// order x > y > z: (m,0,0), (m-1,1,0), (m-1,0,1), (m-2,2,0), ...

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lonesieve/field.hpp"
#include "lonesieve/poly.hpp"

namespace lonesieve {

using Exponent = std::array<int, 3>;

/// Number of monomials of degree m in three variables.
inline int monomial_count(int m) { return m < 0 ? 0 : (m + 1) * (m + 2) / 2; }

inline int monomial_index(const Exponent& e) {
  int m = e[0] + e[1] + e[2];
  int a = e[0], b = e[1];
  return (m - a) * (m - a + 1) / 2 + (m - a - b);
}

inline std::vector<Exponent> monomials(int m) {
  std::vector<Exponent> out;
  out.reserve(monomial_count(m));
  for (int a = m; a >= 0; --a)
    for (int b = m - a; b >= 0; --b) out.push_back({a, b, m - a - b});
  return out;
}

inline bool divides(const Exponent& a, const Exponent& b) { return a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2]; }

class Form {
 public:
  Form() = default;
  Form(std::uint32_t p, int deg) : p_(p), deg_(deg), c_(monomial_count(deg), 0) {}
  Form(std::uint32_t p, int deg, std::vector<std::uint32_t> c) : p_(p), deg_(deg), c_(std::move(c)) {
    if (static_cast<int>(c_.size()) != monomial_count(deg)) fail(ErrorKind::InvalidInput, "form coefficient count mismatch");
  }

  static Form linear(std::uint32_t p, std::uint32_t a, std::uint32_t b, std::uint32_t c) { return Form(p, 1, {a % p, b % p, c % p}); }
  static Form constant(std::uint32_t p, std::uint32_t v) { return Form(p, 0, {v % p}); }

  std::uint32_t characteristic() const { return p_; }
  int degree() const { return deg_; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }
  std::uint32_t coeff(const Exponent& e) const { return c_[monomial_index(e)]; }
  void set(const Exponent& e, std::uint32_t v) { c_[monomial_index(e)] = v % p_; }
  void add_to(const Exponent& e, std::uint32_t v) {
    auto& r = c_[monomial_index(e)];
    r = add_mod(r, v % p_, p_);
  }

  bool is_zero() const {
    for (auto v : c_)
      if (v) return false;
    return true;
  }

  /// Leading monomial in the lex order (the first nonzero entry).
  Exponent leading_monomial() const {
    auto ms = monomials(deg_);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i]) return ms[i];
    fail(ErrorKind::InvalidInput, "zero form has no leading monomial");
  }
  std::uint32_t leading_coeff() const { return coeff(leading_monomial()); }

  Form operator+(const Form& o) const {
    check_same(o);
    Form r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = add_mod(r.c_[i], o.c_[i], p_);
    return r;
  }
  Form operator-(const Form& o) const {
    check_same(o);
    Form r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = sub_mod(r.c_[i], o.c_[i], p_);
    return r;
  }
  Form scaled(std::uint32_t s) const {
    Form r = *this;
    for (auto& v : r.c_) v = mul_mod(v, s % p_, p_);
    return r;
  }
  Form operator*(const Form& o) const {
    Form r(p_, deg_ + o.deg_);
    auto ma = monomials(deg_), mb = monomials(o.deg_);
    for (std::size_t i = 0; i < ma.size(); ++i) {
      if (!c_[i]) continue;
      for (std::size_t j = 0; j < mb.size(); ++j) {
        if (!o.c_[j]) continue;
        r.add_to({ma[i][0] + mb[j][0], ma[i][1] + mb[j][1], ma[i][2] + mb[j][2]}, mul_mod(c_[i], o.c_[j], p_));
      }
    }
    return r;
  }
  bool operator==(const Form& o) const { return p_ == o.p_ && deg_ == o.deg_ && c_ == o.c_; }

  Form partial(int var) const {
    if (deg_ == 0) return Form(p_, 0);
    Form r(p_, deg_ - 1);
    auto ms = monomials(deg_);
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (!c_[i] || ms[i][var] == 0) continue;
      Exponent e = ms[i];
      std::uint32_t k = static_cast<std::uint32_t>(e[var]) % p_;
      --e[var];
      r.add_to(e, mul_mod(c_[i], k, p_));
    }
    return r;
  }

  /// Value at a point whose coordinates lie in one field.
  Fq operator()(const Fq& x, const Fq& y, const Fq& z) const {
    const GaloisField* K = x.field();
    std::vector<Fq> px{K->one()}, py{K->one()}, pz{K->one()};
    for (int i = 0; i < deg_; ++i) {
      px.push_back(px.back() * x);
      py.push_back(py.back() * y);
      pz.push_back(pz.back() * z);
    }
    Fq acc = K->zero();
    auto ms = monomials(deg_);
    for (std::size_t i = 0; i < ms.size(); ++i)
      if (c_[i]) acc += (px[ms[i][0]] * py[ms[i][1]] * pz[ms[i][2]]).scaled(c_[i]);
    return acc;
  }
  template <class Pt>
  Fq at(const Pt& P) const {
    return (*this)(P[0], P[1], P[2]);
  }

  /// F(M v): substitution of the linear change of variables x_i -> sum_j M[i][j] x_j.
  Form compose(const std::array<std::array<std::uint32_t, 3>, 3>& M) const {
    std::array<Form, 3> lin;
    for (int i = 0; i < 3; ++i) lin[i] = Form::linear(p_, M[i][0], M[i][1], M[i][2]);
    std::array<std::vector<Form>, 3> pw;
    for (int i = 0; i < 3; ++i) {
      pw[i].push_back(Form::constant(p_, 1));
      for (int k = 0; k < deg_; ++k) pw[i].push_back(pw[i].back() * lin[i]);
    }
    Form r(p_, deg_);
    auto ms = monomials(deg_);
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (!c_[i]) continue;
      r = r + (pw[0][ms[i][0]] * pw[1][ms[i][1]] * pw[2][ms[i][2]]).scaled(c_[i]);
    }
    return r;
  }

  /// F(x, y, 1) as a polynomial in y with coefficients in F_p[x].
  std::vector<Poly> dehomogenize_z(const GaloisField* Fp) const {
    std::vector<Poly> out(deg_ + 1, Poly(Fp));
    std::vector<std::vector<std::uint32_t>> raw(deg_ + 1, std::vector<std::uint32_t>(deg_ + 1, 0));
    auto ms = monomials(deg_);
    for (std::size_t i = 0; i < ms.size(); ++i) raw[ms[i][1]][ms[i][0]] = add_mod(raw[ms[i][1]][ms[i][0]], c_[i], p_);
    for (int b = 0; b <= deg_; ++b) out[b] = Poly::from_residues(Fp, raw[b]);
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
  }

  std::string to_string() const {
    static const char* names[3] = {"x", "y", "z"};
    std::string s;
    auto ms = monomials(deg_);
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (!c_[i]) continue;
      if (!s.empty()) s += " + ";
      std::string mono;
      for (int v = 0; v < 3; ++v) {
        if (ms[i][v] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names[v];
        if (ms[i][v] > 1) mono += "^" + std::to_string(ms[i][v]);
      }
      if (mono.empty()) s += std::to_string(c_[i]);
      else if (c_[i] == 1) s += mono;
      else s += std::to_string(c_[i]) + "*" + mono;
    }
    return s.empty() ? "0" : s;
  }

 private:
  void check_same(const Form& o) const {
    if (p_ != o.p_ || deg_ != o.deg_) fail(ErrorKind::InvalidInput, "form arithmetic needs equal degree and field");
  }

  std::uint32_t p_ = 2;
  int deg_ = 0;
  std::vector<std::uint32_t> c_{0};
};

/// Remainder of G on division by F (lex order). Zero iff F divides G.
inline Form normal_form(const Form& G, const Form& F) {
  Form r = G;
  if (G.degree() < F.degree()) return r;
  Exponent lm = F.leading_monomial();
  std::uint32_t p = F.characteristic();
  std::uint32_t inv_lc = inv_mod(F.leading_coeff(), p);
  auto ms = monomials(G.degree());
  auto fm = monomials(F.degree());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::uint32_t c = r.coeffs()[i];
    if (!c || !divides(lm, ms[i])) continue;
    Exponent q{ms[i][0] - lm[0], ms[i][1] - lm[1], ms[i][2] - lm[2]};
    std::uint32_t s = mul_mod(c, inv_lc, p);
    for (std::size_t j = 0; j < fm.size(); ++j) {
      std::uint32_t fc = F.coeffs()[j];
      if (!fc) continue;
      r.add_to({q[0] + fm[j][0], q[1] + fm[j][1], q[2] + fm[j][2]}, p - mul_mod(s, fc, p));
    }
  }
  return r;
}

inline bool divisible_by(const Form& G, const Form& F) { return normal_form(G, F).is_zero(); }

/// Degree-m monomials not divisible by LM(F): a basis of degree-m forms modulo F.
inline std::vector<Exponent> standard_monomials(const Form& F, int m) {
  Exponent lm = F.leading_monomial();
  std::vector<Exponent> out;
  for (auto& e : monomials(m))
    if (!divides(lm, e)) out.push_back(e);
  return out;
}

/// Form with the given coefficients on a list of monomials.
inline Form form_from_basis(std::uint32_t p, int m, const std::vector<Exponent>& basis, const std::vector<std::uint32_t>& v) {
  Form G(p, m);
  for (std::size_t i = 0; i < basis.size(); ++i) G.set(basis[i], v[i]);
  return G;
}

}  // namespace lonesieve

#endif  // LONESIEVE_FORM_HPP
