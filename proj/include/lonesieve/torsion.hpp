#ifndef LONESIEVE_TORSION_HPP
#define LONESIEVE_TORSION_HPP

// Matching (1 - w)(Q) = [Q - w(Q)] against multiples of [c0 - c_inf] on a
// smooth plane curve over F_p.
//
// Q + m c_inf ~ w(Q) + m c0 is tested with the residual method, using the
// special form l * H_m through w(Q) + m c0: l is the line through w(Q) and
// H_m a fixed form through m c0. The residual of H_m and the conditions it
// imposes are computed once per m; per divisor only the line residual and the
// conditions at Q are new.

#include <optional>
#include <tuple>
#include <vector>

#include "lonesieve/lineq.hpp"

namespace lonesieve {

/// Validates F(M v) = lambda F(v) and M^2 = mu I over F_p.
struct InvolutionCheck {
  std::uint32_t lambda = 0;
  std::uint32_t mu = 0;
  bool trivial = false;  // M is a scalar matrix
};

inline InvolutionCheck validate_involution(const Matrix3& M, const Form& F) {
  std::uint32_t p = F.characteristic();
  std::int64_t det = 0;
  for (int j = 0; j < 3; ++j) {
    std::int64_t minor = static_cast<std::int64_t>(mul_mod(M[1][(j + 1) % 3], M[2][(j + 2) % 3], p)) -
                         mul_mod(M[1][(j + 2) % 3], M[2][(j + 1) % 3], p);
    det += static_cast<std::int64_t>(M[0][j]) * mod_of(minor, p);
  }
  if (mod_of(det, p) == 0) fail(ErrorKind::InvalidInput, "involution matrix is singular mod " + std::to_string(p));
  InvolutionCheck out;
  Form G = F.compose(M);
  Exponent lm = F.leading_monomial();
  out.lambda = mul_mod(G.coeff(lm), inv_mod(F.coeff(lm), p), p);
  if (out.lambda == 0 || !(G == F.scaled(out.lambda)))
    fail(ErrorKind::NotAnAutomorphism, "matrix does not preserve " + F.to_string());
  Matrix3 M2{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::uint64_t s = 0;
      for (int k = 0; k < 3; ++k) s += mul_mod(M[i][k], M[k][j], p);
      M2[i][j] = static_cast<std::uint32_t>(s % p);
    }
  out.mu = M2[0][0];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (M2[i][j] != (i == j ? out.mu : 0u)) fail(ErrorKind::NotAnInvolution, "M^2 is not scalar");
  if (out.mu == 0) fail(ErrorKind::NotAnInvolution, "M^2 vanishes");
  out.trivial = M[0][1] == 0 && M[0][2] == 0 && M[1][0] == 0 && M[1][2] == 0 && M[2][0] == 0 && M[2][1] == 0 &&
                M[0][0] == M[1][1] && M[1][1] == M[2][2];
  return out;
}

/// Line through the two points of an effective degree-2 divisor (the tangent line for 2P).
inline Form line_through(const EffectiveDivisor& D, const PlaneCurve& C) {
  if (D.degree() != 2) fail(ErrorKind::InvalidInput, "line_through needs a degree-2 divisor");
  std::uint32_t p = C.p();
  auto cross = [](const Point& a, const Point& b) -> Point {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };
  Point coeffs;
  const auto& t = D.terms();
  if (t.size() == 1 && t.front().first.degree == 2) {
    const Point& P = t.front().first.rep;
    coeffs = normalize(cross(P, frobenius(P)));
  } else if (t.size() == 1) {
    const Point& P = t.front().first.rep;
    coeffs = {C.gradient()[0].at(P), C.gradient()[1].at(P), C.gradient()[2].at(P)};
  } else {
    coeffs = cross(t[0].first.rep, t[1].first.rep);
  }
  const GaloisField* Fp = prime_field(p);
  return Form::linear(p, descend(coeffs[0], Fp).coeff(0), descend(coeffs[1], Fp).coeff(0), descend(coeffs[2], Fp).coeff(0));
}

/// Residues 0, 1, n-1, 2, n-2, ...
inline std::vector<int> match_order(int n) {
  std::vector<int> out{0};
  for (int k = 1; static_cast<int>(out.size()) < n; ++k) {
    out.push_back(k);
    if (static_cast<int>(out.size()) < n && n - k != k) out.push_back(n - k);
  }
  return out;
}

class ClassMatcher {
 public:
  /// Precomputes per-level data and checks that [c0 - c_inf] has exact order n mod p.
  ClassMatcher(const PlaneCurve& C, const Matrix3& M, const Point& c0, const Point& cinf, int n)
      : C_(C), M_(M), n_(n) {
    if (n < 1) fail(ErrorKind::InvalidInput, "torsion order must be >= 1");
    if (C.degree() < 2) fail(ErrorKind::InvalidInput, "torsion matching needs a curve of degree >= 2");
    validate_involution(M, C.form());
    c0_ = place_of(c0);
    cinf_ = place_of(cinf);
    if (c0_.degree != 1 || cinf_.degree != 1 || !C.contains(c0_.rep) || !C.contains(cinf_.rep))
      fail(ErrorKind::InvalidInput, "marked points must be rational points of the curve");
    if (c0_ == cinf_) fail(ErrorKind::BadReduction, "c0 and c_inf reduce to the same point mod " + std::to_string(C.p()));
    if (!(place_image(c0_, M) == cinf_)) fail(ErrorKind::InvalidInput, "involution does not swap c0 and c_inf mod " + std::to_string(C.p()));
    for (int m = 0; m <= n; ++m) levels_.push_back(make_level(m));
    for (int r = 1; r <= n; ++r) {
      const Level& L = levels_[r];
      bool equiv = has_form_through(C_, EffectiveDivisor(cinf_, r) + L.R, L.h_degree);
      if (r < n && equiv)
        fail(ErrorKind::MultipleMatches, std::to_string(r) + "(c0 - c_inf) is principal mod " + std::to_string(C.p()) +
                                             "; torsion reduction is not injective for n = " + std::to_string(n));
      if (r == n && !equiv)
        fail(ErrorKind::TorsionOrderMismatch, std::to_string(n) + "(c0 - c_inf) is not principal mod " + std::to_string(C.p()));
    }
  }

  int n() const { return n_; }
  const Place& c0() const { return c0_; }
  const Place& cinf() const { return cinf_; }
  const PlaneCurve& curve() const { return C_; }
  const Matrix3& involution() const { return M_; }

  /// Whether Q + m c_inf ~ w(Q) + m c0.
  bool matches(const EffectiveDivisor& Q, int m) const { return matches(Q, residual_of_line(Q), m); }

  /// The residue m with (1 - w)(Q) = m [c0 - c_inf], if any. The order check in
  /// the constructor makes a match unique, so the search stops at the first hit.
  std::optional<int> class_match(const EffectiveDivisor& Q) const {
    EffectiveDivisor V = residual_of_line(Q);
    for (int m : match_order(n_))
      if (matches(Q, V, m)) return m;
    return std::nullopt;
  }

  /// Every matching residue, without early exit.
  std::vector<int> all_matches(const EffectiveDivisor& Q) const {
    EffectiveDivisor V = residual_of_line(Q);
    std::vector<int> out;
    for (int m = 0; m < n_; ++m)
      if (matches(Q, V, m)) out.push_back(m);
    return out;
  }

 private:
  struct Level {
    int h_degree = 0;
    Form H;
    EffectiveDivisor R;      // div H - m c0
    EffectiveDivisor fixed;  // m c_inf + R
    std::vector<Exponent> basis;  // degree h_degree + 1
    Echelon echelon{2, 0};
  };

  Level make_level(int m) const {
    Level L;
    EffectiveDivisor mc0(c0_, m);
    std::tie(L.h_degree, L.H) = lowest_form_through(C_, mc0);
    if (L.h_degree + 1 > C_.max_aux_degree()) fail(ErrorKind::AuxiliaryDegreeOverflow, "torsion order too large for this curve");
    auto R = intersection_divisor(L.H, C_).minus(mc0);
    if (!R) fail(ErrorKind::BezoutMismatch, "form through m c0 misses c0");
    L.R = *R;
    L.fixed = EffectiveDivisor(cinf_, m) + L.R;
    L.basis = standard_monomials(C_.form(), L.h_degree + 1);
    L.echelon = Echelon(C_.p(), static_cast<int>(L.basis.size()));
    for (auto& row : divisor_conditions(C_, L.fixed, L.basis)) L.echelon.insert(std::move(row));
    return L;
  }

  /// Q + (div(l) - w(Q)), with l the line through w(Q).
  EffectiveDivisor residual_of_line(const EffectiveDivisor& Q) const {
    if (Q.degree() != 2) fail(ErrorKind::InvalidInput, "class matching needs a degree-2 divisor");
    EffectiveDivisor MQ = involution_image(Q, M_);
    Form l = line_through(MQ, C_);
    auto Rl = intersection_divisor(l, C_).minus(MQ);
    if (!Rl) fail(ErrorKind::BezoutMismatch, "line through w(Q) misses w(Q)");
    return Q + *Rl;
  }

  bool matches(const EffectiveDivisor& /*Q*/, const EffectiveDivisor& V, int m) const {
    const Level& L = levels_[m];
    Echelon local(C_.p(), L.echelon.ncols());
    const int target = L.echelon.ncols() - L.echelon.rank();
    for (auto& [pl, nu] : V.terms()) {
      int mu0 = L.fixed.multiplicity(pl);
      for (auto& row : place_conditions(C_, pl, L.basis, mu0, mu0 + nu)) {
        L.echelon.reduce(row);
        local.insert(std::move(row));
        if (local.rank() == target) return false;
      }
    }
    return true;
  }

  const PlaneCurve& C_;
  Matrix3 M_;
  int n_;
  Place c0_, cinf_;
  std::vector<Level> levels_;
};

}  // namespace lonesieve

#endif  // LONESIEVE_TORSION_HPP
