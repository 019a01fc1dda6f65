#ifndef LONESIEVE_DIVISOR_HPP
#define LONESIEVE_DIVISOR_HPP

// Effective divisors on a plane curve over F_p and intersection divisors of forms.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lonesieve/curve.hpp"

namespace lonesieve {

class EffectiveDivisor {
 public:
  EffectiveDivisor() = default;
  explicit EffectiveDivisor(const Place& pl, int mult = 1) { add(pl, mult); }

  void add(const Place& pl, int mult = 1) {
    if (mult < 0) fail(ErrorKind::InvalidInput, "negative multiplicity");
    if (mult == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), pl, [](const auto& t, const Place& q) { return t.first < q; });
    if (it != terms_.end() && it->first == pl) it->second += mult;
    else terms_.insert(it, {pl, mult});
    degree_ += mult * pl.degree;
  }

  EffectiveDivisor operator+(const EffectiveDivisor& o) const {
    EffectiveDivisor r = *this;
    for (auto& [pl, m] : o.terms_) r.add(pl, m);
    return r;
  }

  /// this - o when the difference is effective.
  std::optional<EffectiveDivisor> minus(const EffectiveDivisor& o) const {
    EffectiveDivisor r = *this;
    for (auto& [pl, m] : o.terms_) {
      auto it = std::find_if(r.terms_.begin(), r.terms_.end(), [&](const auto& t) { return t.first == pl; });
      if (it == r.terms_.end() || it->second < m) return std::nullopt;
      it->second -= m;
      r.degree_ -= m * pl.degree;
      if (it->second == 0) r.terms_.erase(it);
    }
    return r;
  }

  EffectiveDivisor times(int k) const {
    EffectiveDivisor r;
    for (auto& [pl, m] : terms_) r.add(pl, m * k);
    return r;
  }

  int multiplicity(const Place& pl) const {
    for (auto& [q, m] : terms_)
      if (q == pl) return m;
    return 0;
  }

  int degree() const { return degree_; }
  bool empty() const { return terms_.empty(); }
  const std::vector<std::pair<Place, int>>& terms() const { return terms_; }

  bool operator==(const EffectiveDivisor& o) const { return terms_ == o.terms_; }
  bool operator<(const EffectiveDivisor& o) const {
    if (degree_ != o.degree_) return degree_ < o.degree_;
    return terms_ < o.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [pl, m] : terms_) {
      if (!s.empty()) s += " + ";
      if (m != 1) s += std::to_string(m) + "*";
      s += pl.to_string();
    }
    return s;
  }

 private:
  std::vector<std::pair<Place, int>> terms_;
  int degree_ = 0;
};

inline EffectiveDivisor point_divisor(const Point& P, int mult = 1) { return EffectiveDivisor(place_of(P), mult); }

namespace detail {

/// Two F_p vectors spanning the line L = 0.
inline std::pair<std::array<std::uint32_t, 3>, std::array<std::uint32_t, 3>> line_basis(const Form& L) {
  std::uint32_t p = L.characteristic();
  std::uint32_t a = L.coeff({1, 0, 0}), b = L.coeff({0, 1, 0}), c = L.coeff({0, 0, 1});
  if (a) {
    std::uint32_t ia = inv_mod(a, p);
    return {{mul_mod(p - b, ia, p), 1, 0}, {mul_mod(p - c, ia, p), 0, 1}};
  }
  if (b) return {{1, 0, 0}, {0, mul_mod(p - c, inv_mod(b, p), p), 1}};
  if (c) return {{1, 0, 0}, {0, 1, 0}};
  fail(ErrorKind::InvalidInput, "zero linear form");
}

/// Zeros of G on the line L = 0, as places with root multiplicities.
inline EffectiveDivisor zeros_on_line(const Form& G, const Form& L) {
  std::uint32_t p = G.characteristic();
  const GaloisField* Fp = prime_field(p);
  auto [u, v] = line_basis(L);
  // G(s u + v) in F_p[s]
  std::vector<Poly> X;
  for (int i = 0; i < 3; ++i) X.push_back(Poly::from_residues(Fp, {v[i], u[i]}));
  int m = G.degree();
  std::array<std::vector<Poly>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    pw[i].push_back(Poly::constant(Fp->one()));
    for (int k = 0; k < m; ++k) pw[i].push_back(pw[i].back() * X[i]);
  }
  Poly b(Fp);
  for (auto& e : monomials(m)) {
    std::uint32_t c = G.coeff(e);
    if (c) b = b + pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]] * Fp->from_residue(c);
  }
  if (b.is_zero()) fail(ErrorKind::FormDivisibleByCurve, "line " + L.to_string() + " lies in the zero set of " + G.to_string());
  EffectiveDivisor D;
  if (b.degree() < m) D.add(place_of({Fp->from_residue(u[0]), Fp->from_residue(u[1]), Fp->from_residue(u[2])}), m - b.degree());
  for (auto& [f, mult] : factor(b)) {
    const GaloisField* K = field_of(p, f.degree());
    Fq s0 = roots(lift_poly(f, K)).front();
    Point P{s0.scaled(u[0]) + K->from_residue(v[0]), s0.scaled(u[1]) + K->from_residue(v[1]), s0.scaled(u[2]) + K->from_residue(v[2])};
    D.add(place_of(P), mult);
  }
  return D;
}

}  // namespace detail

/// Divisor of zeros of G on C. Bezout (total degree deg G * deg C) is asserted.
inline EffectiveDivisor intersection_divisor(const Form& G, const PlaneCurve& C) {
  if (G.characteristic() != C.p()) fail(ErrorKind::InvalidInput, "form and curve over different fields");
  if (G.is_zero() || divisible_by(G, C.form()))
    fail(ErrorKind::FormDivisibleByCurve, "form " + G.to_string() + " vanishes identically on the curve");
  const int d = C.degree(), k = G.degree();
  if (k == 0) return {};
  if (k == 1) return detail::zeros_on_line(C.form(), G);
  if (d == 1) return detail::zeros_on_line(G, C.form());

  std::uint32_t p = C.p();
  const GaloisField* Fp = prime_field(p);
  const Form& F = C.form();
  std::vector<Point> pts;

  // points on z = 0
  Poly h = detail::gcd_nonzero(detail::restrict_infinity(F, Fp), detail::restrict_infinity(G, Fp));
  if (h.degree() >= 1) {
    for (auto& [f, mult] : factor(h)) {
      (void)mult;
      const GaloisField* K = field_of(p, f.degree());
      Fq x0 = roots(detail::lift_poly(f, K)).front();
      pts.push_back(normalize({x0, K->one(), K->zero()}));
    }
  }
  Point e1{Fp->one(), Fp->zero(), Fp->zero()};
  if (F.at(e1).is_zero() && G.at(e1).is_zero()) pts.push_back(e1);

  // affine points
  auto A = F.dehomogenize_z(Fp), B = G.dehomogenize_z(Fp);
  Poly r = detail::resultant_y(A, B, Fp);
  if (r.is_zero()) fail(ErrorKind::BezoutMismatch, "resultant vanished for " + G.to_string());
  for (auto& [f, mult] : factor(r)) {
    (void)mult;
    int e = f.degree();
    const GaloisField* K = field_of(p, e);
    Fq x0 = roots(detail::lift_poly(f, K)).front();
    Poly g = detail::gcd_nonzero(detail::specialize_x(A, x0), detail::specialize_x(B, x0));
    if (g.degree() < 1) continue;
    for (auto& [gy, gm] : factor(g)) {
      (void)gm;
      const GaloisField* L = field_of(p, e * gy.degree());
      std::vector<Fq> gc;
      for (auto& c : gy.coeffs()) gc.push_back(embed(c, L));
      Fq y0 = roots(Poly(L, std::move(gc))).front();
      pts.push_back(normalize({embed(x0, L), y0, L->one()}));
    }
  }

  std::vector<Place> places;
  for (auto& P : pts) places.push_back(place_of(P));
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());

  const int total = d * k;
  for (int attempt = 0; attempt < 2; ++attempt) {
    EffectiveDivisor D;
    bool ok = true;
    for (auto& pl : places) {
      int N = total / pl.degree * (attempt + 1);
      auto ord = C.order_at(G, pl.rep, N);
      if (!ord || *ord == 0) {
        ok = false;
        break;
      }
      D.add(pl, *ord);
    }
    if (ok && D.degree() == total) return D;
  }
  fail(ErrorKind::BezoutMismatch, "intersection of " + G.to_string() + " with the curve does not have degree " + std::to_string(total));
}

/// Unordered pairs of rational places (with repetition) plus all degree-2 places.
inline std::vector<EffectiveDivisor> sym2_enumerate(const PlaneCurve& C) {
  auto places = C.places_up_to_degree(2);
  std::vector<Place> ones, twos;
  for (auto& pl : places) (pl.degree == 1 ? ones : twos).push_back(pl);
  std::vector<EffectiveDivisor> out;
  for (std::size_t i = 0; i < ones.size(); ++i)
    for (std::size_t j = i; j < ones.size(); ++j) out.push_back(EffectiveDivisor(ones[i]) + EffectiveDivisor(ones[j]));
  for (auto& pl : twos) out.push_back(EffectiveDivisor(pl));
  std::sort(out.begin(), out.end());
  std::size_t n = ones.size(), m = n + 2 * twos.size();
  if (2 * out.size() != n * n + m) fail(ErrorKind::InvalidInput, "symmetric square size check failed");
  return out;
}

inline Place place_image(const Place& pl, const Matrix3& M) { return place_of(apply_matrix(M, pl.rep)); }

inline EffectiveDivisor involution_image(const EffectiveDivisor& D, const Matrix3& M) {
  EffectiveDivisor r;
  for (auto& [pl, m] : D.terms()) r.add(place_image(pl, M), m);
  return r;
}

}  // namespace lonesieve

#endif  // LONESIEVE_DIVISOR_HPP
