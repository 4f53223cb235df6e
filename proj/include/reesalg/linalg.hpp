#pragma once

#include <unordered_map>
#include <vector>

#include "reesalg/ring.hpp"

namespace reesalg {

// Rank of a dense rational matrix by Gaussian elimination.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> M) {
  std::size_t rows = M.size();
  if (!rows) return 0;
  std::size_t cols = M[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && M[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (M[r][c] == 0) continue;
      Rational f = M[r][c] / M[rank][c];
      for (std::size_t k = c; k < cols; ++k) M[r][k] -= f * M[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Kernel basis of a dense rational matrix (column vectors v with M v = 0).
inline std::vector<std::vector<Rational>> rational_kernel(std::vector<std::vector<Rational>> M, std::size_t cols) {
  std::size_t rows = M.size();
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && M[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[rank]);
    Rational inv = 1 / M[rank][c];
    for (std::size_t k = c; k < cols; ++k) M[rank][k] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || M[r][c] == 0) continue;
      Rational f = M[r][c];
      for (std::size_t k = c; k < cols; ++k) M[r][k] -= f * M[rank][k];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -M[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Incremental row echelon form over polynomials viewed as coefficient
// vectors indexed by monomials.
class LinearSpan {
 public:
  // Returns true if p was independent of the current span.
  bool insert(Polynomial p) {
    while (!p.is_zero()) {
      auto it = pivots_.find(p.leading_monomial());
      if (it == pivots_.end()) break;
      const Polynomial& row = rows_[it->second];
      p = p - row * Rational(p.leading_coefficient() / row.leading_coefficient());
    }
    if (p.is_zero()) return false;
    pivots_.emplace(p.leading_monomial(), rows_.size());
    rows_.push_back(std::move(p));
    return true;
  }

  std::size_t dimension() const { return rows_.size(); }

 private:
  std::vector<Polynomial> rows_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> pivots_;
};

}  // namespace reesalg
