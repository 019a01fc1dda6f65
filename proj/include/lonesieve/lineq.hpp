#ifndef LONESIEVE_LINEQ_HPP
#define LONESIEVE_LINEQ_HPP

// Linear equivalence of effective divisors on a smooth plane curve over F_p,
// decided by the residual (Brill-Noether) method, and a brute-force oracle.

#include <map>
#include <optional>
#include <vector>

#include "lonesieve/divisor.hpp"
#include "lonesieve/linalg.hpp"

namespace lonesieve {

/// Dimension of degree-m forms modulo the curve form.
inline int forms_mod_curve_dim(const PlaneCurve& C, int m) { return monomial_count(m) - monomial_count(m - C.degree()); }

/// F_p-linear conditions "coefficient of t^j of G along the branch vanishes" for
/// from <= j < to, split into components over the residue field of the place.
inline std::vector<Row> place_conditions(const PlaneCurve& C, const Place& pl, const std::vector<Exponent>& basis, int from, int to) {
  std::vector<Row> out;
  if (to <= from) return out;
  std::size_t len = static_cast<std::size_t>(to);
  BranchExpansion B = C.local_expansion(pl.rep, to - 1);
  const GaloisField* K = pl.field();
  int m = basis.empty() ? 0 : basis.front()[0] + basis.front()[1] + basis.front()[2];
  int a = (B.chart + 1) % 3, b = (B.chart + 2) % 3;
  std::array<std::vector<Series>, 3> pw;
  for (int i : {a, b}) {
    Series base = B.coord[i];
    base.resize(len, K->zero());
    Series one(len, K->zero());
    one[0] = K->one();
    pw[i].push_back(one);
    for (int k = 0; k < m; ++k) pw[i].push_back(series_mul(pw[i].back(), base, len));
  }
  const int e = pl.degree;
  out.assign(static_cast<std::size_t>((to - from) * e), Row(basis.size(), 0));
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const auto& ex = basis[col];
    Series prod = series_mul(pw[a][ex[a]], pw[b][ex[b]], len);
    for (int j = from; j < to; ++j)
      for (int c = 0; c < e; ++c) out[static_cast<std::size_t>((j - from) * e + c)][col] = prod[j].coeff(c);
  }
  return out;
}

inline std::vector<Row> divisor_conditions(const PlaneCurve& C, const EffectiveDivisor& D, const std::vector<Exponent>& basis) {
  std::vector<Row> out;
  for (auto& [pl, mult] : D.terms()) {
    auto rows = place_conditions(C, pl, basis, 0, mult);
    out.insert(out.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
  }
  return out;
}

/// First kernel vector of the degree-m forms (mod the curve) vanishing on D.
inline std::optional<Form> form_through(const PlaneCurve& C, const EffectiveDivisor& D, int m) {
  auto basis = standard_monomials(C.form(), m);
  auto rows = divisor_conditions(C, D, basis);
  auto ker = nullspace(std::move(rows), static_cast<int>(basis.size()), C.p());
  if (ker.empty()) return std::nullopt;
  return form_from_basis(C.p(), m, basis, ker.front());
}

/// Whether some degree-m form not divisible by the curve form vanishes on D.
inline bool has_form_through(const PlaneCurve& C, const EffectiveDivisor& D, int m) {
  auto basis = standard_monomials(C.form(), m);
  Echelon E(C.p(), static_cast<int>(basis.size()));
  for (auto& [pl, mult] : D.terms()) {
    for (auto& r : place_conditions(C, pl, basis, 0, mult)) {
      E.insert(std::move(r));
      if (E.full()) return false;
    }
  }
  return !E.full();
}

struct EquivalenceCertificate {
  int m = 0;
  Form F;  // div F = B + R
  Form G;  // div G = A + R
  EffectiveDivisor R;
};

struct LinEquivResult {
  bool equivalent = false;
  std::optional<EquivalenceCertificate> certificate;
};

/// Smallest auxiliary degree with more forms than conditions imposed by a degree-deg divisor.
inline int auxiliary_degree(const PlaneCurve& C, int deg) {
  int m = 0;
  while (forms_mod_curve_dim(C, m) <= deg || m * C.degree() < deg) ++m;
  return m;
}

/// Lowest degree m with m d >= deg D carrying a form through D, and that form.
inline std::pair<int, Form> lowest_form_through(const PlaneCurve& C, const EffectiveDivisor& D) {
  if (D.empty()) return {0, Form::constant(C.p(), 1)};
  int m = (D.degree() + C.degree() - 1) / C.degree();
  for (; m <= C.max_aux_degree(); ++m)
    if (auto F = form_through(C, D, m)) return {m, *F};
  fail(ErrorKind::AuxiliaryDegreeOverflow, "auxiliary degree would exceed " + std::to_string(C.max_aux_degree()));
}

inline LinEquivResult lin_equiv(const EffectiveDivisor& A, const EffectiveDivisor& B, const PlaneCurve& C) {
  if (A.degree() != B.degree())
    fail(ErrorKind::DegreeMismatch, "deg A = " + std::to_string(A.degree()) + " but deg B = " + std::to_string(B.degree()));
  auto [m, F0] = lowest_form_through(C, B);
  auto R = intersection_divisor(F0, C).minus(B);
  if (!R) fail(ErrorKind::BezoutMismatch, "form chosen through B does not contain B");
  EquivalenceCertificate cert{m, F0, F0, *R};
  if (A == B) return {true, cert};
  auto G = form_through(C, A + *R, m);
  if (!G) return {false, std::nullopt};
  cert.G = *G;
  return {true, cert};
}

/// Re-checks a certificate with two independent intersection computations.
inline bool verify_certificate(const EquivalenceCertificate& cert, const EffectiveDivisor& A, const EffectiveDivisor& B,
                               const PlaneCurve& C) {
  if (cert.F.degree() != cert.m || cert.G.degree() != cert.m) return false;
  if (divisible_by(cert.F, C.form()) || divisible_by(cert.G, C.form())) return false;
  return intersection_divisor(cert.F, C) == B + cert.R && intersection_divisor(cert.G, C) == A + cert.R;
}

enum class Tristate { False, True, Unknown };

inline const char* to_string(Tristate t) {
  switch (t) {
    case Tristate::False: return "false";
    case Tristate::True: return "true";
    case Tristate::Unknown: return "unknown";
  }
  return "?";
}

/// Largest number of projective forms the oracle may tabulate.
inline constexpr std::size_t kOracleFormLimit = 1u << 15;

/// Exhaustive witness search: tabulates the divisor of every projective form
/// of degree <= mmax (taken modulo the curve form) and looks for
/// div F + A = div G + B.
class BruteForceOracle {
 public:
  BruteForceOracle(const PlaneCurve& C, int mmax) : C_(C), mmax_(mmax) {
    if (C.p() > 4 || mmax < 1 || mmax > 3)
      fail(ErrorKind::SearchSpaceTooLarge, "oracle needs q <= 4 and 1 <= mmax <= 3");
    std::size_t total = 0;
    for (int m = 1; m <= mmax; ++m) {
      double count = 1;
      for (int i = 0; i < forms_mod_curve_dim(C, m); ++i) count *= C.p();
      total += static_cast<std::size_t>(count);
    }
    if (total > kOracleFormLimit) fail(ErrorKind::SearchSpaceTooLarge, std::to_string(total) + " forms exceed the oracle limit");
    tables_.resize(mmax + 1);
    for (int m = 1; m <= mmax; ++m) {
      auto basis = standard_monomials(C.form(), m);
      std::size_t N = basis.size();
      Row v(N, 0);
      // all vectors whose first nonzero entry is 1
      for (std::size_t lead = 0; lead < N; ++lead) {
        std::fill(v.begin(), v.end(), 0);
        v[lead] = 1;
        for (;;) {
          Form G = form_from_basis(C.p(), m, basis, v);
          tables_[m].emplace(intersection_divisor(G, C), G);
          std::size_t i = lead + 1;
          while (i < N && ++v[i] == C.p()) v[i++] = 0;
          if (i >= N) break;
        }
      }
    }
  }

  /// A witness pair (F, G) with div F + A = div G + B, if one exists within the table.
  std::optional<std::pair<Form, Form>> witness(const EffectiveDivisor& A, const EffectiveDivisor& B) const {
    for (int m = 1; m <= mmax_; ++m) {
      for (auto& [div, F] : tables_[m]) {
        auto T = (div + A).minus(B);
        if (!T) continue;
        auto it = tables_[m].find(*T);
        if (it != tables_[m].end() && !(it->second == F)) return std::pair{F, it->second};
      }
    }
    return std::nullopt;
  }

  Tristate equiv(const EffectiveDivisor& A, const EffectiveDivisor& B) const {
    if (A.degree() != B.degree()) fail(ErrorKind::DegreeMismatch, "divisors of different degree");
    if (A == B) return Tristate::True;
    if (witness(A, B)) return Tristate::True;
    // distinct points are never equivalent in positive genus; no g^1_2 on smooth plane curves of degree >= 4
    if (A.degree() == 1 && C_.genus() >= 1) return Tristate::False;
    if (A.degree() == 2 && C_.degree() >= 4) return Tristate::False;
    return Tristate::Unknown;
  }

 private:
  const PlaneCurve& C_;
  int mmax_;
  std::vector<std::multimap<EffectiveDivisor, Form>> tables_;
};

inline Tristate brute_force_equiv(const EffectiveDivisor& A, const EffectiveDivisor& B, const PlaneCurve& C, int mmax) {
  if (A.degree() != B.degree()) fail(ErrorKind::DegreeMismatch, "divisors of different degree");
  if (A == B) return Tristate::True;
  return BruteForceOracle(C, mmax).equiv(A, B);
}

}  // namespace lonesieve

#endif  // LONESIEVE_LINEQ_HPP
