#ifndef LONESIEVE_EXTENSION_HPP
#define LONESIEVE_EXTENSION_HPP

// Canonical finite fields: F_p[t]/(m) with m the lexicographically smallest
// monic irreducible of degree k (coefficients compared from the top, 0..p-1).

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "lonesieve/field.hpp"
#include "lonesieve/poly.hpp"

namespace lonesieve {

/// Largest extension degree accepted by build_extension().
inline constexpr int kMaxPublicExtensionDegree = 6;

namespace detail {

inline std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, int k, const GaloisField* prime) {
  if (k == 1) return {0, 1};
  // Non-leading coefficients as a base-p counter; digit k-1 is most significant.
  std::vector<std::uint32_t> low(k, 0);
  for (;;) {
    std::vector<std::uint32_t> m(low.begin(), low.end());
    m.push_back(1);
    if (m[0] != 0 && is_irreducible(Poly::from_residues(prime, m))) return m;
    int i = 0;
    while (i < k && ++low[i] == p) low[i++] = 0;
    if (i == k) fail(ErrorKind::SearchExhausted, "no irreducible polynomial found");
  }
}

struct FieldRegistry {
  std::mutex mu;
  std::map<std::pair<std::uint32_t, int>, std::unique_ptr<GaloisField>> fields;

  static FieldRegistry& instance() {
    static FieldRegistry r;
    return r;
  }
};

}  // namespace detail

/// Canonical F_{p^k}; any k >= 1 (internal use for residue fields of places).
/// Fields live for the whole program, so raw pointers to them stay valid.
inline const GaloisField* field_of(std::uint32_t p, int k) {
  if (p < 2 || p >= kMaxCharacteristic || !is_prime(p))
    fail(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not a supported prime");
  if (k < 1) fail(ErrorKind::DegreeOutOfRange, "extension degree must be >= 1");
  auto& reg = detail::FieldRegistry::instance();
  {
    std::lock_guard lock(reg.mu);
    auto it = reg.fields.find({p, k});
    if (it != reg.fields.end()) return it->second.get();
  }
  const GaloisField* prime = k == 1 ? nullptr : field_of(p, 1);
  auto mod = detail::smallest_irreducible(p, k, prime);
  auto f = std::make_unique<GaloisField>(p, std::move(mod));
  std::lock_guard lock(reg.mu);
  auto [it, inserted] = reg.fields.emplace(std::pair{p, k}, std::move(f));
  return it->second.get();
}

inline const GaloisField* prime_field(std::uint32_t p) { return field_of(p, 1); }

/// Public constructor for F_{p^k}, 1 <= k <= 6.
inline const GaloisField* build_extension(std::uint64_t p, int k) {
  if (p < 2 || p >= kMaxCharacteristic || !is_prime(p))
    fail(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not a prime below 2^20");
  if (k < 1 || k > kMaxPublicExtensionDegree)
    fail(ErrorKind::DegreeOutOfRange, "extension degree " + std::to_string(k) + " outside 1..6");
  return field_of(static_cast<std::uint32_t>(p), k);
}

/// Moves a prime-subfield element into another field of the same characteristic.
inline Fq lift_prime(const Fq& a, const GaloisField* target) {
  if (!a.in_prime_field()) fail(ErrorKind::InvalidInput, "element not in the prime field");
  return target->from_residue(a.coeff(0));
}

namespace detail {

struct EmbeddingCache {
  std::mutex mu;
  std::map<std::pair<const GaloisField*, const GaloisField*>, Fq> images;

  static EmbeddingCache& instance() {
    static EmbeddingCache c;
    return c;
  }
};

/// Image of the generator of src in target: the smallest root of src's modulus.
inline Fq generator_image(const GaloisField* src, const GaloisField* target) {
  auto& cache = EmbeddingCache::instance();
  {
    std::lock_guard lock(cache.mu);
    auto it = cache.images.find({src, target});
    if (it != cache.images.end()) return it->second;
  }
  std::vector<Fq> mc;
  for (auto v : src->modulus()) mc.push_back(target->from_residue(v));
  auto rts = roots(Poly(target, std::move(mc)));
  if (rts.empty()) fail(ErrorKind::InvalidInput, "field embedding needs e | E");
  std::lock_guard lock(cache.mu);
  return cache.images.emplace(std::pair{src, target}, rts.front()).first->second;
}

}  // namespace detail

/// Image of an F_{p^e} element in F_{p^E} (e | E) under the embedding sending
/// the generator of the smaller field to the smallest root of its modulus.
inline Fq embed(const Fq& a, const GaloisField* target) {
  const GaloisField* src = a.field();
  if (src == target) return a;
  if (src->degree() == 1) return target->from_residue(a.coeff(0));
  if (target->degree() % src->degree() != 0) fail(ErrorKind::InvalidInput, "field embedding needs e | E");
  Fq g = detail::generator_image(src, target);
  Fq r = target->zero(), pw = target->one();
  for (int i = 0; i < src->degree(); ++i) {
    r += pw.scaled(a.coeff(i));
    pw *= g;
  }
  return r;
}

/// True iff a lies in the subfield of degree e.
inline bool in_subfield(const Fq& a, int e) {
  int E = a.field()->degree();
  if (E % e != 0) return false;
  return frobenius_power(a, e) == a;
}

/// Inverse of embed(): the preimage of a in the canonical field of degree e.
inline Fq descend(const Fq& a, const GaloisField* target) {
  const GaloisField* src = a.field();
  if (src == target) return a;
  int e = target->degree(), E = src->degree();
  if (!in_subfield(a, e)) fail(ErrorKind::InvalidInput, "element does not lie in the requested subfield");
  if (e == 1) return target->from_residue(a.coeff(0));
  std::uint32_t p = src->characteristic();
  // Solve sum_i c_i g^i = a for c over F_p: E equations, e unknowns.
  Fq g = detail::generator_image(target, src);
  std::vector<std::vector<std::uint32_t>> rows(E, std::vector<std::uint32_t>(e + 1, 0));
  Fq pw = src->one();
  for (int i = 0; i < e; ++i) {
    for (int r = 0; r < E; ++r) rows[r][i] = pw.coeff(r);
    pw *= g;
  }
  for (int r = 0; r < E; ++r) rows[r][e] = a.coeff(r);
  int row = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < e && row < E; ++col) {
    int piv = row;
    while (piv < E && rows[piv][col] == 0) ++piv;
    if (piv == E) continue;
    std::swap(rows[piv], rows[row]);
    std::uint32_t inv = inv_mod(rows[row][col], p);
    for (auto& v : rows[row]) v = mul_mod(v, inv, p);
    for (int r = 0; r < E; ++r) {
      if (r == row || rows[r][col] == 0) continue;
      std::uint32_t f = rows[r][col];
      for (int c = 0; c <= e; ++c) rows[r][c] = sub_mod(rows[r][c], mul_mod(f, rows[row][c], p), p);
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<std::uint32_t> c(e, 0);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) c[pivot_col[i]] = rows[i][e];
  return target->from_coeffs(c);
}

}  // namespace lonesieve

#endif  // LONESIEVE_EXTENSION_HPP
