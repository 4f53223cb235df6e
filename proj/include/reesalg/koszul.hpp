#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reesalg/groebner.hpp"
#include "reesalg/linalg.hpp"
#include "reesalg/polymatrix.hpp"
#include "reesalg/rees.hpp"

namespace reesalg {

struct BasisLabel {
  std::vector<std::size_t> subset;  // indices into the generator list
  Monomial x_part;

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

// Free module over T = k[y] with generators of the listed degrees.
struct GradedFreeModule {
  std::vector<int> twists;
  std::vector<BasisLabel> labels;

  std::size_t rank() const { return twists.size(); }
  std::map<int, std::size_t> twist_multiset() const {
    std::map<int, std::size_t> m;
    for (int t : twists) ++m[t];
    return m;
  }
  int twist_sum() const {
    int s = 0;
    for (int t : twists) s += t;
    return s;
  }
};

// One x-degree strand of the Koszul complex on bihomogeneous generators,
// viewed as a complex of free T-modules F_m -> ... -> F_0.
struct StrandComplex {
  int t = 0;
  RingPtr ring;
  std::vector<BiDegree> generator_degrees;
  std::vector<GradedFreeModule> modules;  // F_0..F_m
  std::vector<PolyMatrix> maps;           // maps[k-1] : F_k -> F_{k-1}

  std::size_t length() const { return maps.size(); }
  std::size_t rank(std::size_t k) const { return k < modules.size() ? modules[k].rank() : 0; }
  const PolyMatrix& sigma(std::size_t k) const { return maps.at(k - 1); }
};

namespace detail {

// Parity of the permutation sorting the concatenation of the sequences.
inline int concat_sign(std::initializer_list<const std::vector<std::size_t>*> parts) {
  std::vector<std::size_t> seq;
  for (auto* p : parts) seq.insert(seq.end(), p->begin(), p->end());
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

inline std::vector<std::size_t> complement(const std::vector<std::size_t>& s, std::size_t n) {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (k < s.size() && s[k] == i) {
      ++k;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

inline std::size_t subset_index(const std::vector<std::vector<std::size_t>>& all, const std::vector<std::size_t>& s) {
  auto it = std::lower_bound(all.begin(), all.end(), s);
  return std::size_t(it - all.begin());
}

}  // namespace detail

inline StrandComplex koszul_strand(const std::vector<GradedGenerator>& gens, int t) {
  if (gens.empty()) fail(ErrorCode::ValidationError, "no generators");
  if (t < 0) fail(ErrorCode::SizeOutOfRange, "negative strand degree");
  StrandComplex K;
  K.t = t;
  K.ring = gens[0].poly.ring();
  const RingPtr& R = K.ring;
  auto xs = R->x_indices();
  for (const auto& g : gens) {
    if (g.degree.x < 1) fail(ErrorCode::NonpositiveXDegreeGenerator, "strand generators need positive x-degree");
    K.generator_degrees.push_back(g.degree);
  }
  std::size_t q = gens.size();
  for (std::size_t i = 0; i <= q; ++i) {
    GradedFreeModule F;
    for (const auto& J : subsets(q, i)) {
      int a = 0, b = 0;
      for (auto j : J) a += gens[j].degree.x, b += gens[j].degree.y;
      if (a > t) continue;
      for (const auto& m : monomials_of_degree(xs, t - a)) {
        F.labels.push_back({J, m});
        F.twists.push_back(b);
      }
    }
    if (F.rank() == 0) break;
    K.modules.push_back(std::move(F));
  }
  auto key_less = [](const Monomial& a, const Monomial& b) { return a.exponents() < b.exponents(); };
  for (std::size_t i = 1; i < K.modules.size(); ++i) {
    const auto& src = K.modules[i];
    const auto& dst = K.modules[i - 1];
    std::map<std::vector<std::size_t>, std::map<Monomial, std::size_t, decltype(key_less)>> rows;
    for (std::size_t r = 0; r < dst.rank(); ++r) {
      auto [it, _] = rows.try_emplace(dst.labels[r].subset, key_less);
      it->second[dst.labels[r].x_part] = r;
    }
    std::vector<std::map<std::size_t, std::vector<Polynomial::Term>>> cols(src.rank());
    for (std::size_t c = 0; c < src.rank(); ++c) {
      const auto& J = src.labels[c].subset;
      for (std::size_t p = 0; p < J.size(); ++p) {
        std::vector<std::size_t> rest = J;
        rest.erase(rest.begin() + long(p));
        const auto& target = rows.at(rest);
        Rational sign = p % 2 ? -1 : 1;
        for (const auto& [m, coef] : gens[J[p]].poly.terms()) {
          Monomial mx, my;
          for (std::size_t v = 0; v < R->num_vars(); ++v) (R->is_x(v) ? mx : my).set(v, m[v]);
          Monomial full = mx * src.labels[c].x_part;
          cols[c][target.at(full)].emplace_back(my, sign * coef);
        }
      }
    }
    PolyMatrix S(R, dst.rank(), src.rank());
    for (std::size_t c = 0; c < src.rank(); ++c)
      for (auto& [r, terms] : cols[c]) S(r, c) = Polynomial::from_terms(R, std::move(terms));
    K.maps.push_back(std::move(S));
  }
  return K;
}

inline StrandComplex koszul_strand(const Instance& inst, int t) { return koszul_strand(strand_generators(inst), t); }

struct BeOptions {
  bool heights = true;
  std::size_t max_minors = 4000;  // skip heights past this many minors
  std::uint64_t seed = 1;
};

struct BeReport {
  std::vector<std::size_t> ranks;  // r_1..r_m
  std::vector<int> heights;        // ht I_{r_k}(sigma_k); -1 when skipped
  bool composition_zero = true;
  bool rank_condition = true;
  bool grade_condition = true;
  bool grade_known = true;
  std::size_t coker_rank = 0;

  bool acyclic() const { return composition_zero && rank_condition && grade_condition && grade_known; }
};

namespace detail {

inline bool is_zero_product(const PolyMatrix& a, const PolyMatrix& b) { return (a * b).is_zero(); }

// Ranks of the maps of a complex: specialization lower bounds, closed
// by the complex inequalities r_k + r_{k+1} <= f_k, else exact elimination.
inline std::vector<std::size_t> complex_ranks(const StrandComplex& K, std::uint64_t seed, bool is_complex) {
  std::size_t m = K.length();
  if (!is_complex) {
    std::vector<std::size_t> r;
    for (std::size_t k = 1; k <= m; ++k) r.push_back(rank_of(K.sigma(k)));
    return r;
  }
  std::vector<std::size_t> lo(m + 2, 0), hi(m + 2, 0);
  for (std::size_t k = 1; k <= m; ++k) {
    for (std::uint64_t s = 0; s < 2; ++s) lo[k] = std::max(lo[k], specialized_rank(K.sigma(k), seed + 7919 * s + k));
  }
  for (std::size_t k = 1; k <= m; ++k) {
    std::size_t up = std::min(K.rank(k - 1), K.rank(k));
    up = std::min(up, K.rank(k) - std::min(K.rank(k), lo[k + 1]));
    if (k > 1) up = std::min(up, K.rank(k - 1) - std::min(K.rank(k - 1), lo[k - 1]));
    hi[k] = up;
  }
  std::vector<std::size_t> r(m);
  for (std::size_t k = 1; k <= m; ++k) r[k - 1] = lo[k] == hi[k] ? lo[k] : rank_of(K.sigma(k));
  return r;
}

inline std::size_t minor_count(std::size_t rows, std::size_t cols, std::size_t r) {
  return binomial(rows, r) * binomial(cols, r);
}

}  // namespace detail

// I_{r_k}(sigma_k).
inline IdealHandle rank_ideal(const StrandComplex& K, std::size_t k, std::size_t r) {
  return minors(K.sigma(k), int(r));
}

inline BeReport be_check(const StrandComplex& K, const BeOptions& opts = {}) {
  BeReport rep;
  std::size_t m = K.length();
  for (std::size_t k = 1; k < m; ++k)
    if (!detail::is_zero_product(K.sigma(k), K.sigma(k + 1))) rep.composition_zero = false;
  rep.ranks = detail::complex_ranks(K, opts.seed, rep.composition_zero);
  for (std::size_t k = 1; k <= m; ++k) {
    std::size_t next = k < m ? rep.ranks[k] : 0;
    if (K.rank(k) != rep.ranks[k - 1] + next) rep.rank_condition = false;
  }
  rep.coker_rank = K.rank(0) - (m ? rep.ranks[0] : 0);
  for (std::size_t k = 1; k <= m; ++k) {
    int h = -1;
    if (opts.heights && detail::minor_count(K.rank(k - 1), K.rank(k), rep.ranks[k - 1]) <= opts.max_minors)
      h = height(rank_ideal(K, k, rep.ranks[k - 1]));
    rep.heights.push_back(h);
    if (h < 0) rep.grade_known = false;
    else if (h < int(k)) rep.grade_condition = false;
  }
  return rep;
}

struct Multipliers {
  std::vector<std::vector<Polynomial>> a;  // a[k-1] indexed by lex r_k-subsets of the basis of F_{k-1}
  std::vector<int> shifts;                 // shifts[k-1]: degree of a_k as a map into the wedge power
  bool degrees_consistent = true;          // entry degrees agree with the twist bookkeeping

  int shift() const { return shifts.empty() ? 0 : shifts[0]; }
};

// Degree shifts from the module twists alone: s_m = D_m, s_k = D_k - s_{k+1}
// with D_k the sum of the twists of F_k.
inline std::vector<int> twist_shifts(const StrandComplex& K) {
  std::size_t m = K.length();
  std::vector<int> s(m, 0);
  for (std::size_t k = m; k >= 1; --k) {
    int D = K.modules[k].twist_sum();
    s[k - 1] = k == m ? D : D - s[k];
  }
  return s;
}

namespace detail {

inline PolyMatrix wedge(const PolyMatrix& M, std::size_t r) {
  if (r == 0) {
    PolyMatrix one(M.ring(), 1, 1);
    one(0, 0) = Polynomial::constant(M.ring(), 1);
    return one;
  }
  return exterior_power(M, r);
}

}  // namespace detail

inline Multipliers be_multipliers(const StrandComplex& K, const BeReport& rep) {
  std::size_t m = K.length();
  Multipliers out;
  if (m == 0) return out;
  if (!rep.rank_condition) fail(ErrorCode::FactorizationInconsistent, "rank condition fails");
  out.a.resize(m);
  {
    PolyMatrix W = detail::wedge(K.sigma(m), rep.ranks[m - 1]);
    if (W.cols() != 1) fail(ErrorCode::FactorizationInconsistent, "top map is not injective");
    out.a[m - 1] = W.column(0);
  }
  for (std::size_t k = m - 1; k >= 1; --k) {
    std::size_t rk = rep.ranks[k - 1];
    std::size_t fk = K.rank(k);
    PolyMatrix M = detail::wedge(K.sigma(k), rk);
    auto col_sets = subsets(fk, rk);
    auto next_sets = subsets(fk, fk - rk);
    const auto& next = out.a[k];
    std::vector<Polynomial> w;
    for (const auto& U : col_sets) {
      auto Uc = detail::complement(U, fk);
      Polynomial c = next[detail::subset_index(next_sets, Uc)];
      w.push_back(detail::concat_sign({&U, &Uc}) < 0 ? -c : c);
    }
    std::size_t u0 = 0;
    while (u0 < w.size() && w[u0].is_zero()) ++u0;
    if (u0 == w.size()) fail(ErrorCode::FactorizationInconsistent, "multiplier vanishes");
    std::vector<Polynomial> ak;
    for (std::size_t i = 0; i < M.rows(); ++i) ak.push_back(divide_exact(M(i, u0), w[u0]));
    for (std::size_t i = 0; i < M.rows(); ++i)
      for (std::size_t j = 0; j < M.cols(); ++j)
        if (!(M(i, j) == ak[i] * w[j]))
          fail(ErrorCode::FactorizationInconsistent, "wedge power is not the outer product of the multipliers");
    out.a[k - 1] = std::move(ak);
  }
  out.shifts = twist_shifts(K);
  for (std::size_t k = 1; k <= m; ++k) {
    const auto& tw = K.modules[k - 1].twists;
    auto sets = subsets(K.rank(k - 1), rep.ranks[k - 1]);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const Polynomial& p = out.a[k - 1][i];
      if (p.is_zero()) continue;
      int wdeg = 0;
      for (auto b : sets[i]) wdeg += tw[b];
      if (!p.is_homogeneous() || int(p.total_degree()) != out.shifts[k - 1] - wdeg) out.degrees_consistent = false;
    }
  }
  return out;
}

// ht of the ideal of entries of a_k.
inline IdealHandle multiplier_ideal(const StrandComplex& K, const Multipliers& mult, std::size_t k) {
  std::vector<Polynomial> gens;
  for (const auto& p : mult.a.at(k - 1))
    if (!p.is_zero()) gens.push_back(p);
  return IdealHandle(K.ring, std::move(gens));
}

// sqrt I(a_k) == sqrt I(sigma_k) by mutual radical membership.
inline bool radicals_agree(const StrandComplex& K, const Multipliers& mult, const BeReport& rep, std::size_t k) {
  IdealHandle ia = multiplier_ideal(K, mult, k);
  IdealHandle is = rank_ideal(K, k, rep.ranks[k - 1]);
  for (const auto& g : is.generators())
    if (!radical_membership(g, ia)) return false;
  for (const auto& g : ia.generators())
    if (!radical_membership(g, is)) return false;
  return true;
}

struct KmComplex {
  PolyMatrix lambda;  // rows: dual basis of F_0; columns: (p-1)-subsets of the basis of F_0
  std::size_t coker_rank = 0;
  std::size_t generator_count = 0;
  int shift = 0;
  bool composes_to_zero = false;  // sigma_1^T * lambda == 0
  BiDegree predicted;             // (delta - t, shift + tau)
};

inline KmComplex km_complex(const StrandComplex& K, const BeReport& rep, const Multipliers& mult, DeltaTau dt) {
  const RingPtr& R = K.ring;
  std::size_t f0 = K.rank(0);
  std::size_t r1 = K.length() ? rep.ranks[0] : 0;
  std::size_t p = f0 - r1;
  if (p < 1 || p > 2) fail(ErrorCode::RankOutOfRange, "cokernel rank must be 1 or 2, got " + std::to_string(p));
  KmComplex km;
  km.coker_rank = p;
  km.shift = mult.shift();
  auto cols = subsets(f0, p - 1);
  auto usets = subsets(f0, r1);
  std::vector<Polynomial> a1 = K.length() ? mult.a[0] : std::vector<Polynomial>{Polynomial::constant(R, 1)};
  km.lambda = PolyMatrix(R, f0, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& S = cols[c];
    for (std::size_t u = 0; u < usets.size(); ++u) {
      const auto& U = usets[u];
      if (a1[u].is_zero()) continue;
      std::vector<std::size_t> SU = S;
      SU.insert(SU.end(), U.begin(), U.end());
      std::vector<std::size_t> sorted = SU;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      auto rest = detail::complement(sorted, f0);
      std::vector<std::size_t> kk{rest[0]};
      int sign = detail::concat_sign({&S, &U, &kk});
      km.lambda(rest[0], c) += sign < 0 ? -a1[u] : a1[u];
    }
  }
  km.composes_to_zero = K.length() == 0 || (K.sigma(1).transpose() * km.lambda).is_zero();
  km.generator_count = binomial(f0, p - 1);
  km.predicted = {dt.delta - K.t, km.shift + dt.tau};
  return km;
}

struct KmCertificate {
  std::size_t coker_rank = 0;
  bool granted = false;
  int multiplier_height = -1;       // ht I(a_1), rank one only
  std::vector<int> sigma_heights;   // ht I(sigma_k)
  std::string reason;
};

inline KmCertificate km_exactness_certificate(const StrandComplex& K, const BeReport& rep, const Multipliers& mult) {
  KmCertificate c;
  c.coker_rank = rep.coker_rank;
  for (std::size_t k = 1; k <= K.length(); ++k) {
    int h = rep.heights.size() >= k ? rep.heights[k - 1] : -1;
    if (h < 0) h = height(rank_ideal(K, k, rep.ranks[k - 1]));
    c.sigma_heights.push_back(h);
  }
  if (c.coker_rank == 1) {
    c.multiplier_height = K.length() ? height(multiplier_ideal(K, mult, 1)) : kInfiniteHeight;
    c.granted = c.multiplier_height >= 2;
    c.reason = c.granted ? "ht I(a_1) >= 2" : "ht I(a_1) = " + std::to_string(c.multiplier_height) + " < 2";
  } else if (c.coker_rank == 2) {
    c.granted = true;
    for (std::size_t k = 1; k <= c.sigma_heights.size(); ++k)
      if (c.sigma_heights[k - 1] < int(k) + 2) {
        c.granted = false;
        c.reason = "ht I(sigma_" + std::to_string(k) + ") = " + std::to_string(c.sigma_heights[k - 1]) + " < " +
                   std::to_string(k + 2);
        break;
      }
    if (c.granted) c.reason = "ht I(sigma_k) >= k+2 for all k";
  } else {
    c.reason = "cokernel rank outside {1, 2}";
  }
  return c;
}

namespace detail {

// dim_k of the submodule of F_1^* generated by the rows of sigma_1, degree by
// degree, from a Groebner basis in k[y, e] with e_c e_c' = 0.
inline std::map<int, std::size_t> row_module_dims(const StrandComplex& K, int kmin, int kmax) {
  const RingPtr& R = K.ring;
  const PolyMatrix& S = K.sigma(1);
  const auto& tw1 = K.modules[1].twists;
  std::size_t n = R->num_y();
  std::size_t f1 = K.rank(1);
  if (n + f1 > kMaxVars) fail(ErrorCode::TooManyVariables, "strand too large for the module basis");
  int top = 0;
  for (int t : tw1) top = std::max(top, t);
  std::vector<int> w(n + f1, 1);
  for (std::size_t c = 0; c < f1; ++c) w[n + c] = top + 1 - tw1[c];
  MonomialOrder ord = MonomialOrder::weighted_degrevlex(w);
  auto ys = R->y_indices();
  auto lift = [&](const Monomial& m) {
    Monomial out;
    for (std::size_t i = 0; i < n; ++i) out.set(i, m[ys[i]]);
    return out;
  };
  std::vector<IPoly> gens;
  for (std::size_t b = 0; b < S.rows(); ++b) {
    IPoly g;
    Integer den = 1;
    for (std::size_t c = 0; c < f1; ++c)
      for (const auto& [m, q] : S(b, c).terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    for (std::size_t c = 0; c < f1; ++c)
      for (const auto& [m, q] : S(b, c).terms()) {
        Rational v = q * den;
        g.push_back({lift(m) * Monomial::variable(n + c), v.get_num()});
      }
    if (g.empty()) continue;
    sort_terms(g, ord);
    gens.push_back(std::move(g));
  }
  for (std::size_t c = 0; c < f1; ++c)
    for (std::size_t c2 = c; c2 < f1; ++c2) gens.push_back({{Monomial::variable(n + c) * Monomial::variable(n + c2), 1}});
  GroebnerOptions opts;
  for (std::size_t v = 0; v < kMaxVars; ++v) opts.sugar_weights[v] = v < w.size() ? w[v] : 1;
  opts.degree_bound = kmax + top + 1;
  Buchberger bb(ord, opts);
  auto basis = bb.run(std::move(gens));
  std::vector<Monomial> lms;
  for (const auto& p : basis) lms.push_back(p.front().m);
  std::vector<std::size_t> yvars(n);
  for (std::size_t i = 0; i < n; ++i) yvars[i] = i;
  std::map<int, std::size_t> out;
  for (int k = kmin; k <= kmax; ++k) {
    std::size_t total = 0, standard = 0;
    for (std::size_t c = 0; c < f1; ++c) {
      int deg = k + tw1[c];
      if (deg < 0) continue;
      for (const auto& u : monomials_of_degree(yvars, deg)) {
        ++total;
        Monomial m = u * Monomial::variable(n + c);
        bool std_ = true;
        for (const auto& l : lms)
          if (l.divides(m)) {
            std_ = false;
            break;
          }
        if (std_) ++standard;
      }
    }
    out[k] = total - standard;
  }
  return out;
}

inline std::size_t t_piece(std::size_t n, int deg) {
  if (deg < 0) return 0;
  return binomial(std::size_t(deg) + n - 1, n - 1);
}

}  // namespace detail

// j -> dim_k (ker sigma_1^*)(-tau)_j for j in [jmin, jmax].
inline std::map<int, std::size_t> strand_kernel_dims(const StrandComplex& K, int tau, int jmin, int jmax) {
  std::size_t n = K.ring->num_y();
  const auto& tw0 = K.modules[0].twists;
  std::map<int, std::size_t> out;
  std::map<int, std::size_t> image;
  if (K.length()) image = detail::row_module_dims(K, jmin - tau, jmax - tau);
  for (int j = jmin; j <= jmax; ++j) {
    int k = j - tau;
    std::size_t whole = 0;
    for (int t : tw0) whole += detail::t_piece(n, k + t);
    std::size_t im = K.length() ? image[k] : 0;
    out[j] = whole - im;
  }
  return out;
}

}  // namespace reesalg
