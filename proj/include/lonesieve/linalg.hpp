#ifndef LONESIEVE_LINALG_HPP
#define LONESIEVE_LINALG_HPP

// Dense linear algebra over F_p.

#include <cstdint>
#include <vector>

#include "lonesieve/field.hpp"

namespace lonesieve {

using Row = std::vector<std::uint32_t>;

/// Incrementally built row space, kept in semi-echelon form: every stored
/// row has a leading 1 and zeros in the pivot columns of earlier rows.
class Echelon {
 public:
  Echelon(std::uint32_t p, int ncols) : p_(p), ncols_(ncols) {}

  int ncols() const { return ncols_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool full() const { return rank() == ncols_; }

  void reduce(Row& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::uint32_t f = v[pivots_[i]];
      if (!f) continue;
      const Row& r = rows_[i];
      std::uint32_t nf = p_ - f;
      for (int c = pivots_[i]; c < ncols_; ++c)
        if (r[c]) v[c] = static_cast<std::uint32_t>((v[c] + static_cast<std::uint64_t>(nf) * r[c]) % p_);
    }
  }

  /// Adds v to the span; returns false when v was already in it.
  bool insert(Row v) {
    reduce(v);
    int piv = 0;
    while (piv < ncols_ && v[piv] == 0) ++piv;
    if (piv == ncols_) return false;
    std::uint32_t inv = inv_mod(v[piv], p_);
    for (int c = piv; c < ncols_; ++c) v[c] = mul_mod(v[c], inv, p_);
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
  }

 private:
  std::uint32_t p_;
  int ncols_;
  std::vector<Row> rows_;
  std::vector<int> pivots_;
};

/// Basis of {x : A x = 0}, one vector per free column in increasing order.
inline std::vector<Row> nullspace(std::vector<Row> A, int ncols, std::uint32_t p) {
  int nrows = static_cast<int>(A.size());
  std::vector<int> pivot_of_col(ncols, -1);
  int r = 0;
  for (int c = 0; c < ncols && r < nrows; ++c) {
    int piv = r;
    while (piv < nrows && A[piv][c] == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(A[piv], A[r]);
    std::uint32_t inv = inv_mod(A[r][c], p);
    for (int k = c; k < ncols; ++k) A[r][k] = mul_mod(A[r][k], inv, p);
    for (int i = 0; i < nrows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      std::uint32_t f = p - A[i][c];
      for (int k = c; k < ncols; ++k)
        if (A[r][k]) A[i][k] = static_cast<std::uint32_t>((A[i][k] + static_cast<std::uint64_t>(f) * A[r][k]) % p);
    }
    pivot_of_col[c] = r++;
  }
  std::vector<Row> basis;
  for (int free = 0; free < ncols; ++free) {
    if (pivot_of_col[free] != -1) continue;
    Row v(ncols, 0);
    v[free] = 1;
    for (int c = 0; c < ncols; ++c) {
      int pr = pivot_of_col[c];
      if (pr != -1 && A[pr][free]) v[c] = p - A[pr][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace lonesieve

#endif  // LONESIEVE_LINALG_HPP
