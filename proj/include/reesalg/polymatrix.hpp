#pragma once

#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "reesalg/groebner.hpp"
#include "reesalg/linalg.hpp"
#include "reesalg/ring.hpp"

namespace reesalg {

// k-element subsets of {0..n-1} in lex order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), e_(rows * cols, Polynomial(ring_)) {}

  PolyMatrix(RingPtr ring, const std::vector<std::vector<Polynomial>>& rows) : ring_(std::move(ring)) {
    rows_ = rows.size();
    cols_ = rows_ ? rows[0].size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) fail(ErrorCode::ValidationError, "ragged matrix");
      for (const auto& p : r) {
        if (!p.is_zero()) require_same_ring(ring_, p.ring());
        e_.push_back(p.is_zero() ? Polynomial(ring_) : p);
      }
    }
  }

  static PolyMatrix parse(const RingPtr& ring, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::vector<Polynomial>> m;
    for (const auto& r : rows) {
      std::vector<Polynomial> row;
      for (const auto& s : r) row.push_back(Polynomial::parse(ring, s));
      m.push_back(std::move(row));
    }
    return PolyMatrix(ring, m);
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Polynomial& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  std::vector<Polynomial> column(std::size_t j) const {
    std::vector<Polynomial> c;
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }
  std::vector<Polynomial> entries() const { return e_; }

  bool is_zero() const {
    for (const auto& p : e_)
      if (!p.is_zero()) return false;
    return true;
  }

  unsigned max_entry_degree() const {
    unsigned d = 0;
    for (const auto& p : e_) d = std::max(d, p.total_degree());
    return d;
  }

  PolyMatrix transpose() const {
    PolyMatrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  PolyMatrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    PolyMatrix s(ring_, rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = (*this)(rs[i], cs[j]);
    return s;
  }

  PolyMatrix columns(std::size_t from, std::size_t to) const {
    std::vector<std::size_t> rs(rows_), cs;
    for (std::size_t i = 0; i < rows_; ++i) rs[i] = i;
    for (std::size_t j = from; j < to; ++j) cs.push_back(j);
    return submatrix(rs, cs);
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorCode::SizeOutOfRange, "matrix product of incompatible shapes");
    PolyMatrix c(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        Polynomial s(a.ring_);
        for (std::size_t k = 0; k < a.cols_; ++k)
          if (!a(i, k).is_zero() && !b(k, j).is_zero()) s += a(i, k) * b(k, j);
        c(i, j) = s;
      }
    return c;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  static PolyMatrix hconcat(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_) fail(ErrorCode::SizeOutOfRange, "hconcat of different heights");
    PolyMatrix c(a.ring_, a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) c(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, a.cols_ + j) = b(i, j);
    }
    return c;
  }

  static PolyMatrix from_columns(const RingPtr& ring, const std::vector<std::vector<Polynomial>>& cols) {
    std::size_t r = cols.empty() ? 0 : cols[0].size();
    PolyMatrix m(ring, r, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < r; ++i) m(i, j) = cols[j][i];
    return m;
  }

  PolyMatrix evaluated(const std::vector<std::pair<std::size_t, Rational>>& values) const {
    PolyMatrix m = *this;
    for (auto& p : m.e_) p = evaluate(p, values);
    return m;
  }

  // One line per row, entries separated by two spaces.
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += "  ";
        s += (*this)(i, j).to_string();
      }
      s += "\n";
    }
    return s;
  }

  // Degree labels for graded maps (twists of the row/column free summands).
  std::vector<int> row_degrees;
  std::vector<int> col_degrees;

 private:
  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Polynomial> e_;
};

namespace detail {

inline Polynomial det_bareiss(PolyMatrix M) {
  std::size_t n = M.rows();
  const RingPtr& R = M.ring();
  if (n == 0) return Polynomial::constant(R, 1);
  bool negate = false;
  Polynomial prev = Polynomial::constant(R, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k).is_zero()) {
      std::size_t i = k + 1;
      while (i < n && M(i, k).is_zero()) ++i;
      if (i == n) return Polynomial(R);
      for (std::size_t j = 0; j < n; ++j) std::swap(M(k, j), M(i, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial v = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        M(i, j) = prev.is_constant() ? v * Rational(1 / prev.leading_coefficient()) : divide_exact(v, prev);
      }
      M(i, k) = Polynomial(R);
    }
    prev = M(k, k);
  }
  Polynomial d = M(n - 1, n - 1);
  return negate ? -d : d;
}

inline Polynomial det_cofactor(const PolyMatrix& M) {
  std::size_t n = M.rows();
  const RingPtr& R = M.ring();
  if (n == 0) return Polynomial::constant(R, 1);
  // memo[mask] = det of the last popcount(mask) rows restricted to mask.
  std::unordered_map<std::uint32_t, Polynomial> memo;
  std::function<Polynomial(std::uint32_t)> rec = [&](std::uint32_t mask) -> Polynomial {
    int k = __builtin_popcount(mask);
    if (k == 0) return Polynomial::constant(R, 1);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::size_t row = n - std::size_t(k);
    Polynomial s(R);
    int pos = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      if (!M(row, j).is_zero()) {
        Polynomial term = M(row, j) * rec(mask & ~(1u << j));
        s = (pos % 2) ? s - term : s + term;
      }
      ++pos;
    }
    memo.emplace(mask, s);
    return s;
  };
  return rec(n >= 32 ? 0xffffffffu : ((1u << n) - 1));
}

}  // namespace detail

// Cofactor expansion with memoised minors up to 10x10; larger matrices of
// entries of degree <= 1 use Bareiss elimination.
inline Polynomial determinant(const PolyMatrix& M) {
  if (M.rows() != M.cols()) fail(ErrorCode::NotSquare, "determinant of a non-square matrix");
  if (M.rows() > 20) fail(ErrorCode::SizeOutOfRange, "determinant larger than 20x20");
  if (M.rows() > 10 && M.max_entry_degree() <= 1) return detail::det_bareiss(M);
  return detail::det_cofactor(M);
}

inline Polynomial minor_of(const PolyMatrix& M, const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) {
  return determinant(M.submatrix(rs, cs));
}

// The t-th exterior power: rows and columns indexed by lex-ordered
// t-subsets, entries the corresponding t x t minors.
inline PolyMatrix exterior_power(const PolyMatrix& M, std::size_t t) {
  if (t > std::min(M.rows(), M.cols())) fail(ErrorCode::SizeOutOfRange, "exterior power beyond matrix size");
  auto rs = subsets(M.rows(), t);
  auto cs = subsets(M.cols(), t);
  PolyMatrix W(M.ring(), rs.size(), cs.size());
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) W(i, j) = minor_of(M, rs[i], cs[j]);
  return W;
}

// Ideal of t x t minors; the unit ideal for t <= 0.
inline IdealHandle minors(const PolyMatrix& M, int t) {
  const RingPtr& R = M.ring();
  if (t <= 0) return IdealHandle::unit(R);
  if (std::size_t(t) > std::min(M.rows(), M.cols()))
    fail(ErrorCode::SizeOutOfRange, std::to_string(t) + "-minors of a " + std::to_string(M.rows()) + "x" +
                                        std::to_string(M.cols()) + " matrix");
  std::vector<Polynomial> gens;
  for (const auto& rs : subsets(M.rows(), t))
    for (const auto& cs : subsets(M.cols(), t)) {
      Polynomial d = minor_of(M, rs, cs);
      if (d.is_zero()) continue;
      d = d.monic();
      if (std::find(gens.begin(), gens.end(), d) == gens.end()) gens.push_back(std::move(d));
    }
  return IdealHandle(R, std::move(gens));
}

// Ideal of the entries.
inline IdealHandle entries_ideal(const PolyMatrix& M) {
  std::vector<Polynomial> gens;
  for (const auto& p : M.entries())
    if (!p.is_zero()) gens.push_back(p);
  return IdealHandle(M.ring(), std::move(gens));
}

// Rank over the fraction field, by fraction-free elimination.
inline std::size_t rank_of(const PolyMatrix& A) {
  PolyMatrix M = A;
  const RingPtr& R = M.ring();
  std::size_t rank = 0;
  Polynomial prev = Polynomial::constant(R, 1);
  for (std::size_t c = 0; c < M.cols() && rank < M.rows(); ++c) {
    std::size_t piv = rank;
    std::size_t best = M.rows();
    for (; piv < M.rows(); ++piv)
      if (!M(piv, c).is_zero() && (best == M.rows() || M(piv, c).size() < M(best, c).size())) best = piv;
    if (best == M.rows()) continue;
    for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M(rank, j), M(best, j));
    for (std::size_t i = rank + 1; i < M.rows(); ++i) {
      for (std::size_t j = c + 1; j < M.cols(); ++j) {
        Polynomial v = M(i, j) * M(rank, c) - M(i, c) * M(rank, j);
        M(i, j) = prev.is_constant() ? v * Rational(1 / prev.leading_coefficient()) : divide_exact(v, prev);
      }
      M(i, c) = Polynomial(R);
    }
    prev = M(rank, c);
    ++rank;
  }
  return rank;
}

// Rank after substituting random integers for every variable. Never exceeds
// the true rank; equals it for all but a thin set of points.
inline std::size_t specialized_rank(const PolyMatrix& M, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-97, 97);
  std::vector<std::pair<std::size_t, Rational>> vals;
  for (std::size_t v = 0; v < M.ring()->num_vars(); ++v) vals.emplace_back(v, Rational(dist(rng)));
  std::vector<std::vector<Rational>> num(M.rows(), std::vector<Rational>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      Polynomial p = evaluate(M(i, j), vals);
      num[i][j] = p.is_zero() ? Rational(0) : p.leading_coefficient();
    }
  return rational_rank(std::move(num));
}

// Fitt_i = I_{n-i}(phi) for phi with n rows.
inline IdealHandle fitting_ideal(const PolyMatrix& phi, int i) {
  int t = int(phi.rows()) - i;
  if (t <= 0) return IdealHandle::unit(phi.ring());
  if (std::size_t(t) > std::min(phi.rows(), phi.cols())) return IdealHandle(phi.ring(), {});
  return minors(phi, t);
}

// B with [y].phi = [x].B. Each term goes to the first x-variable (in `xs`
// order) dividing it.
inline PolyMatrix jacobian_dual(const PolyMatrix& phi, std::vector<std::size_t> xs = {}) {
  const RingPtr& R = phi.ring();
  if (xs.empty()) xs = R->x_indices();
  if (phi.rows() != R->num_y()) fail(ErrorCode::SizeOutOfRange, "phi needs one row per y-variable");
  PolyMatrix B(R, xs.size(), phi.cols());
  std::vector<std::vector<std::vector<Polynomial::Term>>> acc(xs.size(), std::vector<std::vector<Polynomial::Term>>(phi.cols()));
  for (std::size_t j = 0; j < phi.cols(); ++j) {
    Polynomial ell(R);
    for (std::size_t i = 0; i < phi.rows(); ++i) ell += Polynomial::variable(R, R->y(i)) * phi(i, j);
    for (const auto& [m, c] : ell.terms()) {
      std::size_t slot = xs.size();
      for (std::size_t k = 0; k < xs.size(); ++k)
        if (m[xs[k]]) {
          slot = k;
          break;
        }
      if (slot == xs.size()) fail(ErrorCode::NotXDivisible, "term of x-degree 0 in column " + std::to_string(j + 1));
      acc[slot][j].emplace_back(m / Monomial::variable(xs[slot]), c);
    }
  }
  for (std::size_t k = 0; k < xs.size(); ++k)
    for (std::size_t j = 0; j < phi.cols(); ++j) B(k, j) = Polynomial::from_terms(R, acc[k][j]);
  return B;
}

// [B(psi) | euler(f_1) | ... | euler(f_k)].
inline PolyMatrix modified_jacobian_dual(const PolyMatrix& psi, const std::vector<Polynomial>& fs) {
  PolyMatrix B = jacobian_dual(psi);
  if (fs.empty()) return B;
  std::vector<std::vector<Polynomial>> cols;
  for (const auto& f : fs) cols.push_back(euler_column(f));
  return PolyMatrix::hconcat(B, PolyMatrix::from_columns(psi.ring(), cols));
}

}  // namespace reesalg
