#ifndef LONESIEVE_CURVE_HPP
#define LONESIEVE_CURVE_HPP

// Smooth projective plane curves over F_p: smoothness, points, places,
// branch expansions and intersection divisors.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lonesieve/extension.hpp"
#include "lonesieve/form.hpp"

namespace lonesieve {

using Point = std::array<Fq, 3>;
using Matrix3 = std::array<std::array<std::uint32_t, 3>, 3>;

/// Scales so that the first nonzero coordinate is 1.
inline Point normalize(const Point& P) {
  for (int i = 0; i < 3; ++i) {
    if (P[i].is_zero()) continue;
    Fq inv = P[i].inverse();
    return {P[0] * inv, P[1] * inv, P[2] * inv};
  }
  fail(ErrorKind::InvalidInput, "(0:0:0) is not a projective point");
}

inline bool point_less(const Point& a, const Point& b) {
  for (int i = 0; i < 3; ++i) {
    auto c = a[i] <=> b[i];
    if (c != 0) return c < 0;
  }
  return false;
}

inline Point frobenius(const Point& P) { return {P[0].frobenius(), P[1].frobenius(), P[2].frobenius()}; }

inline std::string to_string(const Point& P) {
  return "(" + P[0].to_string() + ":" + P[1].to_string() + ":" + P[2].to_string() + ")";
}

inline Point apply_matrix(const Matrix3& M, const Point& P) {
  const GaloisField* K = P[0].field();
  Point r{K->zero(), K->zero(), K->zero()};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i] += P[j].scaled(M[i][j]);
  return normalize(r);
}

inline Point lift_point(const Point& P, const GaloisField* target) {
  return {embed(P[0], target), embed(P[1], target), embed(P[2], target)};
}

/// Closed point: a Frobenius orbit, stored as its lexicographically smallest
/// member with coordinates in the canonical field of degree `degree`.
struct Place {
  int degree = 1;
  Point rep;

  const GaloisField* field() const { return rep[0].field(); }

  bool operator==(const Place& o) const { return degree == o.degree && rep == o.rep; }
  bool operator<(const Place& o) const {
    if (degree != o.degree) return degree < o.degree;
    return point_less(rep, o.rep);
  }
  std::string to_string() const { return lonesieve::to_string(rep) + (degree > 1 ? "[deg " + std::to_string(degree) + "]" : ""); }
};

/// The place through a normalized point, whatever field the point is written in.
inline Place place_of(const Point& P0) {
  Point P = normalize(P0);
  const GaloisField* K = P[0].field();
  int E = K->degree();
  int e = E;
  for (int j = 1; j < E; ++j) {
    if (E % j) continue;
    Point Q = P;
    for (int i = 0; i < j; ++i) Q = frobenius(Q);
    if (Q == P) {
      e = j;
      break;
    }
  }
  if (e < E) {
    const GaloisField* k = field_of(K->characteristic(), e);
    P = {descend(P[0], k), descend(P[1], k), descend(P[2], k)};
  }
  Point best = P, cur = P;
  for (int j = 1; j < e; ++j) {
    cur = frobenius(cur);
    if (point_less(cur, best)) best = cur;
  }
  return Place{e, best};
}

/// All points of a place, in the field of the place.
inline std::vector<Point> conjugates(const Place& pl) {
  std::vector<Point> out{pl.rep};
  for (int j = 1; j < pl.degree; ++j) out.push_back(frobenius(out.back()));
  return out;
}

namespace detail {

/// det of the Sylvester matrix of a, b in y over F_p[x], by fraction-free elimination.
inline Poly resultant_y(const std::vector<Poly>& a, const std::vector<Poly>& b, const GaloisField* Fp) {
  int s = static_cast<int>(a.size()) - 1, t = static_cast<int>(b.size()) - 1;
  if (s < 0 || t < 0) return Poly(Fp);
  auto power = [&](const Poly& base, int e) {
    Poly r = Poly::constant(Fp->one());
    for (int i = 0; i < e; ++i) r = r * base;
    return r;
  };
  if (s == 0) return power(a[0], t);
  if (t == 0) return power(b[0], s);
  int n = s + t;
  std::vector<std::vector<Poly>> M(n, std::vector<Poly>(n, Poly(Fp)));
  for (int r = 0; r < t; ++r)
    for (int i = 0; i <= s; ++i) M[r][r + s - i] = a[i];
  for (int r = 0; r < s; ++r)
    for (int j = 0; j <= t; ++j) M[t + r][r + t - j] = b[j];
  bool negate = false;
  Poly prev = Poly::constant(Fp->one());
  for (int k = 0; k < n - 1; ++k) {
    int piv = k;
    while (piv < n && M[piv][k].is_zero()) ++piv;
    if (piv == n) return Poly(Fp);
    if (piv != k) {
      std::swap(M[piv], M[k]);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
    prev = M[k][k];
  }
  Poly det = M[n - 1][n - 1];
  return negate ? -det : det;
}

/// Univariate polynomial over a field with coefficients given in F_p, lifted to K.
inline Poly lift_poly(const Poly& f, const GaloisField* K) {
  std::vector<Fq> c;
  for (auto& v : f.coeffs()) c.push_back(embed(v, K));
  return Poly(K, std::move(c));
}

/// a(x0, y) for a bivariate polynomial given as coefficients of y^i in F_p[x].
inline Poly specialize_x(const std::vector<Poly>& a, const Fq& x0) {
  const GaloisField* K = x0.field();
  std::vector<Fq> c;
  for (auto& ai : a) {
    Fq v = K->zero();
    for (std::size_t j = ai.coeffs().size(); j-- > 0;) v = v * x0 + embed(ai.coeffs()[j], K);
    c.push_back(v);
  }
  return Poly(K, std::move(c));
}

/// Univariate polynomial F(x, 1, 0) in x.
inline Poly restrict_infinity(const Form& F, const GaloisField* Fp) {
  std::vector<std::uint32_t> c(F.degree() + 1, 0);
  for (int a = 0; a <= F.degree(); ++a) c[a] = F.coeff({a, F.degree() - a, 0});
  return Poly::from_residues(Fp, c);
}

inline Poly gcd_nonzero(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.is_zero() ? b : b.monic();
  if (b.is_zero()) return a.monic();
  return Poly::gcd(a, b);
}

}  // namespace detail

enum class Smoothness { Smooth, Singular, Undecided };

/// Jacobian criterion over the algebraic closure, by elimination.
inline Smoothness smoothness_status(const Form& F) {
  if (F.is_zero()) return Smoothness::Singular;
  int d = F.degree();
  if (d == 1) return Smoothness::Smooth;
  if (d == 0) return Smoothness::Singular;
  std::uint32_t p = F.characteristic();
  const GaloisField* Fp = prime_field(p);
  std::array<Form, 4> G{F, F.partial(0), F.partial(1), F.partial(2)};
  if (G[1].is_zero() && G[2].is_zero() && G[3].is_zero()) return Smoothness::Singular;

  // the line z = 0
  Poly h(Fp);
  bool f_inf_zero = detail::restrict_infinity(F, Fp).is_zero();
  if (f_inf_zero) return Smoothness::Singular;
  for (auto& g : G) h = detail::gcd_nonzero(h, detail::restrict_infinity(g, Fp));
  if (h.degree() >= 1) return Smoothness::Singular;
  Point e1{Fp->one(), Fp->zero(), Fp->zero()};
  if (std::all_of(G.begin(), G.end(), [&](const Form& g) { return g.at(e1).is_zero(); })) return Smoothness::Singular;

  // the chart z = 1
  std::array<std::vector<Poly>, 4> A;
  for (int i = 0; i < 4; ++i) A[i] = G[i].dehomogenize_z(Fp);
  if (A[0].size() <= 1) return Smoothness::Singular;
  int gi = 1;
  while (gi < 4 && A[gi].empty()) ++gi;
  Poly r = detail::resultant_y(A[0], A[gi], Fp);
  if (r.is_zero()) return Smoothness::Singular;
  for (auto& [fac, mult] : factor(r)) {
    (void)mult;
    int e = fac.degree();
    if (e > d * (d - 1)) return Smoothness::Undecided;
    const GaloisField* K = field_of(p, e);
    Fq x0 = roots(detail::lift_poly(fac, K)).front();
    Poly g(K);
    bool all_zero = true;
    for (auto& Ai : A) {
      Poly s = detail::specialize_x(Ai, x0);
      if (!s.is_zero()) all_zero = false;
      g = detail::gcd_nonzero(g, s);
    }
    if (all_zero || g.degree() >= 1) return Smoothness::Singular;
  }
  return Smoothness::Smooth;
}

inline bool is_smooth(const Form& F) { return smoothness_status(F) == Smoothness::Smooth; }

/// Default ceiling on the number of projective points scanned by enumerate_points.
inline constexpr std::uint64_t kEnumerationCeiling = 1ull << 24;

/// Truncated power series over one field.
using Series = std::vector<Fq>;

inline Series series_mul(const Series& a, const Series& b, std::size_t len) {
  const GaloisField* K = a.front().field();
  Series r(len, K->zero());
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

/// Branch of the curve at a point: P is the origin of the chart where its
/// first nonzero coordinate is 1; coord[param] = P[param] + t and coord[dep]
/// is solved to O(t^(precision+1)).
struct BranchExpansion {
  Point center;
  int chart = 0;
  int param = 1;
  int dep = 2;
  int precision = 0;
  std::array<Series, 3> coord;
};

class PlaneCurve;

inline Series eval_on_branch(const Form& G, const BranchExpansion& B, std::size_t len);

class PlaneCurve {
 public:
  /// Validates smoothness; BadReduction otherwise.
  explicit PlaneCurve(Form F) : F_(std::move(F)) {
    if (F_.degree() < 1) fail(ErrorKind::InvalidInput, "curve form must have degree >= 1");
    auto s = smoothness_status(F_);
    if (s == Smoothness::Singular) fail(ErrorKind::BadReduction, "curve " + F_.to_string() + " is singular over F_" + std::to_string(p()));
    if (s == Smoothness::Undecided) fail(ErrorKind::BadReduction, "smoothness of " + F_.to_string() + " undecided");
    grad_ = {F_.partial(0), F_.partial(1), F_.partial(2)};
  }

  const Form& form() const { return F_; }
  std::uint32_t p() const { return F_.characteristic(); }
  int degree() const { return F_.degree(); }
  int genus() const { return (degree() - 1) * (degree() - 2) / 2; }
  const GaloisField* base() const { return prime_field(p()); }
  const std::array<Form, 3>& gradient() const { return grad_; }

  bool contains(const Point& P) const { return F_.at(P).is_zero(); }

  /// Points over F_{p^k}, normalized and lexicographically sorted.
  std::vector<Point> enumerate_points(int k, std::uint64_t ceiling = kEnumerationCeiling) const {
    if (k < 1) fail(ErrorKind::DegreeOutOfRange, "extension degree must be >= 1");
    double q = 1;
    for (int i = 0; i < k; ++i) q *= p();
    if (q * q + q + 1 > static_cast<double>(ceiling))
      fail(ErrorKind::EnumerationTooLarge, "P^2(F_" + std::to_string(p()) + "^" + std::to_string(k) + ") exceeds the enumeration ceiling");
    const GaloisField* K = field_of(p(), k);
    std::uint64_t qi = static_cast<std::uint64_t>(q);
    int d = degree();
    std::vector<Point> out;
    auto zeros_in_z = [&](const Fq& x, const Fq& y) {
      // F(x, y, z) as a polynomial in z
      std::vector<Fq> c(d + 1, K->zero());
      for (auto& e : monomials(d)) {
        std::uint32_t v = F_.coeff(e);
        if (v) c[e[2]] += (x.pow(e[0]) * y.pow(e[1])).scaled(v);
      }
      Poly f(K, std::move(c));
      if (f.is_zero()) {
        std::vector<Fq> all;
        for (std::uint64_t code = 0; code < qi; ++code) all.push_back(K->from_code(code));
        return all;
      }
      return roots(f);
    };
    Fq zero = K->zero(), one = K->one();
    for (std::uint64_t code = 0; code < qi; ++code) {
      Fq y = K->from_code(code);
      for (auto& z : zeros_in_z(one, y)) out.push_back({one, y, z});
    }
    for (auto& z : zeros_in_z(zero, one)) out.push_back({zero, one, z});
    if (F_(zero, zero, one).is_zero()) out.push_back({zero, zero, one});
    std::sort(out.begin(), out.end(), point_less);
    return out;
  }

  /// Places of degree <= dmax (dmax <= 3), sorted by degree then representative.
  std::vector<Place> places_up_to_degree(int dmax) const {
    if (dmax < 1 || dmax > 3) fail(ErrorKind::DegreeOutOfRange, "places_up_to_degree supports 1 <= dmax <= 3");
    std::vector<Place> out;
    for (int e = 1; e <= dmax; ++e) {
      for (auto& P : enumerate_points(e)) {
        Place pl = place_of(P);
        if (pl.degree == e && pl.rep == P) out.push_back(pl);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Largest auxiliary degree accepted by the linear-equivalence machinery.
  int max_aux_degree() const { return degree() + (64 + degree() - 1) / degree(); }

  BranchExpansion local_expansion(const Point& P0, int N) const {
    if (N < 0 || N > degree() * max_aux_degree() + 1)
      fail(ErrorKind::PrecisionOverflow, "branch precision " + std::to_string(N) + " above the cap");
    Point P = normalize(P0);
    if (!contains(P)) fail(ErrorKind::InvalidInput, "point " + to_string(P) + " is not on the curve");
    const GaloisField* K = P[0].field();
    BranchExpansion B;
    B.center = P;
    B.precision = N;
    B.chart = P[0].is_zero() ? (P[1].is_zero() ? 2 : 1) : 0;
    int u = (B.chart + 1) % 3, v = (B.chart + 2) % 3;
    if (u > v) std::swap(u, v);
    Fq fu = grad_[u].at(P);
    if (!fu.is_zero()) {
      B.dep = u;
      B.param = v;
    } else {
      B.dep = v;
      B.param = u;
    }
    Fq c = grad_[B.dep].at(P);
    if (c.is_zero()) fail(ErrorKind::InvalidInput, "singular point " + to_string(P));
    Fq cinv = c.inverse();
    std::size_t len = static_cast<std::size_t>(N) + 1;
    for (int i = 0; i < 3; ++i) B.coord[i] = Series(len, K->zero());
    B.coord[B.chart][0] = K->one();
    B.coord[B.param][0] = P[B.param];
    if (len > 1) B.coord[B.param][1] = K->one();
    B.coord[B.dep][0] = P[B.dep];
    for (std::size_t n = 1; n < len; ++n) {
      Series val = eval_on_branch(F_, B, n + 1);
      B.coord[B.dep][n] -= val[n] * cinv;
    }
    return B;
  }

  /// Order of vanishing of G at P along the branch, or nullopt if above N.
  std::optional<int> order_at(const Form& G, const Point& P, int N) const {
    BranchExpansion B = local_expansion(P, N);
    Series s = eval_on_branch(G, B, static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i)
      if (!s[i].is_zero()) return i;
    return std::nullopt;
  }

 private:
  Form F_;
  std::array<Form, 3> grad_;
};

/// G(X(t), Y(t), Z(t)) mod t^len.
inline Series eval_on_branch(const Form& G, const BranchExpansion& B, std::size_t len) {
  const GaloisField* K = B.center[0].field();
  int m = G.degree();
  std::array<std::vector<Series>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    Series base(B.coord[i].begin(), B.coord[i].begin() + std::min(len, B.coord[i].size()));
    base.resize(len, K->zero());
    Series one(len, K->zero());
    one[0] = K->one();
    pw[i].push_back(one);
    for (int k = 0; k < m; ++k) pw[i].push_back(i == B.chart ? one : series_mul(pw[i].back(), base, len));
  }
  Series acc(len, K->zero());
  auto ms = monomials(m);
  for (std::size_t j = 0; j < ms.size(); ++j) {
    std::uint32_t c = G.coeffs()[j];
    if (!c) continue;
    const auto& e = ms[j];
    // one of the three factors is identically 1 (the chart coordinate)
    int a = (B.chart + 1) % 3, b = (B.chart + 2) % 3;
    Series prod = series_mul(pw[a][e[a]], pw[b][e[b]], len);
    for (std::size_t i = 0; i < len; ++i)
      if (!prod[i].is_zero()) acc[i] += prod[i].scaled(c);
  }
  return acc;
}

}  // namespace lonesieve

#endif  // LONESIEVE_CURVE_HPP
