#pragma once

#include <map>
#include <random>
#include <vector>

#include "reesalg/theorems.hpp"

namespace testkit {

using namespace reesalg;

// Hand-rolled generator of small random polynomials.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational() {
    int num = integer(-9, 9);
    int den = integer(1, 4);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  Monomial monomial(const RingDescriptor& R, int max_deg) {
    Monomial m;
    int deg = integer(0, max_deg);
    for (int k = 0; k < deg; ++k) {
      std::size_t v = std::size_t(integer(0, int(R.num_vars()) - 1));
      m.set(v, m[v] + 1);
    }
    return m;
  }

  Polynomial poly(const RingPtr& R, int terms = 4, int max_deg = 3) {
    std::vector<Polynomial::Term> ts;
    int n = integer(0, terms);
    for (int k = 0; k < n; ++k) ts.emplace_back(monomial(*R, max_deg), rational());
    return Polynomial::from_terms(R, std::move(ts));
  }

  // A random form of the given bidegree.
  Polynomial form(const RingPtr& R, BiDegree deg, int terms = 3) {
    auto monos = monomials_of_bidegree(*R, deg);
    std::vector<Polynomial::Term> ts;
    for (int k = 0; k < terms; ++k) ts.emplace_back(monos[std::size_t(integer(0, int(monos.size()) - 1))], rational());
    return Polynomial::from_terms(R, std::move(ts));
  }

  PolyMatrix matrix(const RingPtr& R, std::size_t rows, std::size_t cols, int terms = 2, int max_deg = 1) {
    PolyMatrix M(R, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) M(i, j) = poly(R, terms, max_deg);
    return M;
  }

  std::vector<std::pair<std::size_t, Rational>> point(const RingDescriptor& R) {
    std::vector<std::pair<std::size_t, Rational>> p;
    for (std::size_t v = 0; v < R.num_vars(); ++v) p.emplace_back(v, Rational(integer(-20, 20)));
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Plain Gaussian elimination over Q.
inline std::size_t dense_rank(std::vector<std::vector<Rational>> M) {
  std::size_t rank = 0;
  std::size_t cols = M.empty() ? 0 : M[0].size();
  for (std::size_t c = 0; c < cols && rank < M.size(); ++c) {
    std::size_t p = rank;
    while (p < M.size() && M[p][c] == 0) ++p;
    if (p == M.size()) continue;
    std::swap(M[p], M[rank]);
    for (std::size_t i = 0; i < M.size(); ++i) {
      if (i == rank || M[i][c] == 0) continue;
      Rational f = M[i][c] / M[rank][c];
      for (std::size_t j = c; j < cols; ++j) M[i][j] -= f * M[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline Rational dense_det(std::vector<std::vector<Rational>> M) {
  std::size_t n = M.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && M[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(M[p], M[c]);
      det = -det;
    }
    det *= M[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      Rational f = M[i][c] / M[c][c];
      for (std::size_t j = c; j < n; ++j) M[i][j] -= f * M[c][j];
    }
  }
  return det;
}

inline Rational value_at(const Polynomial& p, const std::vector<std::pair<std::size_t, Rational>>& pt) {
  Polynomial v = evaluate(p, pt);
  return v.is_zero() ? Rational(0) : v.leading_coefficient();
}

inline std::vector<std::vector<Rational>> numeric(const PolyMatrix& M,
                                                  const std::vector<std::pair<std::size_t, Rational>>& pt) {
  std::vector<std::vector<Rational>> out(M.rows(), std::vector<Rational>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) out[i][j] = value_at(M(i, j), pt);
  return out;
}

// Rank of a family of polynomials as coefficient vectors.
inline std::size_t span_rank(const std::vector<Polynomial>& ps) {
  std::map<std::vector<unsigned>, std::size_t> index;
  for (const auto& p : ps)
    for (const auto& [m, c] : p.terms()) {
      std::vector<unsigned> key(m.exponents().begin(), m.exponents().end());
      index.emplace(key, index.size());
    }
  std::vector<std::vector<Rational>> M;
  for (const auto& p : ps) {
    std::vector<Rational> row(index.size());
    for (const auto& [m, c] : p.terms()) row[index[std::vector<unsigned>(m.exponents().begin(), m.exponents().end())]] = c;
    M.push_back(std::move(row));
  }
  return dense_rank(std::move(M));
}

// All products m * g landing in bidegree `deg`, for g in `gens`.
inline std::vector<Polynomial> multiples_in(const RingPtr& R, const std::vector<Polynomial>& gens, BiDegree deg) {
  std::vector<Polynomial> out;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    BiDegree gd = bidegree_of(g);
    if (!gd.componentwise_le(deg)) continue;
    for (const auto& m : monomials_of_bidegree(*R, deg - gd)) out.push_back(g.times_term(m, 1));
  }
  return out;
}

// dim_k of the bidegree piece of the ideal generated by `gens`, without a
// Groebner basis.
inline std::size_t piece_dim(const RingPtr& R, const std::vector<Polynomial>& gens, BiDegree deg) {
  return span_rank(multiples_in(R, gens, deg));
}

// dim J_deg - dim (L + B_+ J)_deg straight from the definition.
inline std::size_t minimal_count_by_definition(const IdealHandle& J, const IdealHandle& L, BiDegree deg) {
  const RingPtr& R = J.ring();
  auto jgens = J.generators();
  std::vector<Polynomial> low = multiples_in(R, L.generators(), deg);
  for (std::size_t v = 0; v < R->num_vars(); ++v) {
    BiDegree vd = R->grading(v);
    if (!vd.componentwise_le(deg)) continue;
    for (auto& p : multiples_in(R, jgens, deg - vd)) low.push_back(p * Polynomial::variable(R, v));
  }
  return piece_dim(R, jgens, deg) - span_rank(low);
}

inline std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline ExampleRecord example(const std::string& name) {
  auto ex = find_example(name);
  if (!ex) throw std::runtime_error("missing example " + name);
  return *ex;
}

}  // namespace testkit
