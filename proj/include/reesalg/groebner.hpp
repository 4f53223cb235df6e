#pragma once

#include <atomic>
#include <cstdlib>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "reesalg/ring.hpp"

namespace reesalg {

// Default S-pair budget for a single Buchberger run.
inline std::atomic<std::size_t>& default_pair_budget() {
  static std::atomic<std::size_t> budget{200000};
  return budget;
}

struct GroebnerOptions {
  std::size_t max_pairs = default_pair_budget().load();
  // Drop S-pairs whose sugar exceeds this. Only meaningful for inputs that
  // are homogeneous for the sugar weights.
  std::optional<int> degree_bound;
  std::array<int, kMaxVars> sugar_weights = [] {
    std::array<int, kMaxVars> w{};
    w.fill(1);
    return w;
  }();
};

namespace detail {

struct ITerm {
  Monomial m;
  Integer c;
};
using IPoly = std::vector<ITerm>;

inline int weighted_degree(const Monomial& m, const std::array<int, kMaxVars>& w) {
  int d = 0;
  for (std::size_t v = 0; v < kMaxVars; ++v) d += w[v] * int(m[v]);
  return d;
}

inline void sort_terms(IPoly& p, const MonomialOrder& ord) {
  std::sort(p.begin(), p.end(), [&](const ITerm& a, const ITerm& b) { return ord.greater(a.m, b.m); });
}

// Divides by the content and makes the leading coefficient positive.
// Returns the factor divided out (signed).
inline Integer make_primitive(IPoly& p) {
  if (p.empty()) return 1;
  Integer g = 0;
  for (const auto& t : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  if (p.front().c < 0) g = -g;
  if (g != 1)
    for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
  return g;
}

inline IPoly to_ipoly(const Polynomial& f, const MonomialOrder& ord) {
  Integer den = 1;
  for (const auto& t : f.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.second.get_den_mpz_t());
  IPoly p;
  p.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    Integer n = c.get_num() * (den / c.get_den());
    p.push_back({m, std::move(n)});
  }
  sort_terms(p, ord);
  return p;
}

inline Polynomial to_polynomial(const IPoly& p, const RingPtr& ring, const Rational& divisor = 1) {
  std::vector<Polynomial::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p) {
    for (std::size_t v = ring->num_vars(); v < kMaxVars; ++v)
      if (t.m[v]) fail(ErrorCode::RingMismatch, "auxiliary variable survived elimination");
    terms.emplace_back(t.m, Rational(t.c) / divisor);
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

inline Polynomial to_monic_polynomial(const IPoly& p, const RingPtr& ring) {
  if (p.empty()) return Polynomial(ring);
  return to_polynomial(p, ring, Rational(p.front().c));
}

// Reduction against a fixed list of polynomials.
class Reducer {
 public:
  explicit Reducer(const MonomialOrder& ord) : ord_(&ord) {}

  void add(const IPoly* p) {
    polys_.push_back(p);
    masks_.push_back(p->front().m.support_mask());
  }
  std::size_t size() const { return polys_.size(); }

  const IPoly* find(const Monomial& m, std::uint32_t mask) const {
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      if (masks_[i] & ~mask) continue;
      if (polys_[i]->front().m.divides(m)) return polys_[i];
    }
    return nullptr;
  }

  // Fraction-free reduction. If `full`, tails are reduced as well. On
  // return h is primitive and h == scale * (true remainder) where the
  // remainder is taken with respect to the input h.
  void reduce(IPoly& h, bool full, Rational* scale = nullptr, int* sugar = nullptr,
              const std::array<int, kMaxVars>* weights = nullptr) const {
    std::size_t pos = 0;
    unsigned steps = 0;
    IPoly out;
    while (pos < h.size()) {
      const Monomial& m = h[pos].m;
      const IPoly* g = find(m, m.support_mask());
      if (!g) {
        if (!full) break;
        ++pos;
        continue;
      }
      Monomial u = m / g->front().m;
      const Integer& lg = g->front().c;
      Integer gc = gcd(lg, h[pos].c);
      Integer a = lg / gc;
      Integer b = h[pos].c / gc;
      if (a < 0) {
        a = -a;
        b = -b;
      }
      bool scale_h = a != 1;
      if (sugar && weights) {
        int s = weighted_degree(u, *weights) + sugar_of(*g, *weights);
        if (s > *sugar) *sugar = s;
      }
      out.clear();
      out.reserve(h.size() + g->size());
      for (std::size_t i = 0; i < pos; ++i) {
        out.push_back(std::move(h[i]));
        if (scale_h) out.back().c *= a;
      }
      std::size_t i = pos + 1, j = 1;
      Monomial mg;
      if (j < g->size()) mg = (*g)[j].m * u;
      while (i < h.size() || j < g->size()) {
        int c;
        if (i == h.size()) c = -1;
        else if (j == g->size()) c = 1;
        else c = ord_->compare(h[i].m, mg);
        if (c > 0) {
          out.push_back(std::move(h[i]));
          if (scale_h) out.back().c *= a;
          ++i;
        } else {
          ITerm t{mg, 0};
          mpz_mul(t.c.get_mpz_t(), b.get_mpz_t(), (*g)[j].c.get_mpz_t());
          t.c = -t.c;
          if (c == 0) {
            if (scale_h) t.c += a * h[i].c;
            else t.c += h[i].c;
            ++i;
          }
          if (t.c != 0) out.push_back(std::move(t));
          ++j;
          if (j < g->size()) mg = (*g)[j].m * u;
        }
      }
      h.swap(out);
      if (scale) *scale *= Rational(a);
      if (++steps % 8 == 0) {
        Integer c = make_primitive_tail(h);
        if (scale) *scale /= Rational(c);
      }
    }
    Integer c = make_primitive(h);
    if (scale) *scale /= Rational(c);
  }

 private:
  static int sugar_of(const IPoly& g, const std::array<int, kMaxVars>& w) {
    int s = 0;
    for (const auto& t : g) s = std::max(s, weighted_degree(t.m, w));
    return s;
  }

  // Content division without sign normalisation.
  static Integer make_primitive_tail(IPoly& p) {
    if (p.empty()) return 1;
    Integer g = 0;
    for (const auto& t : p) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
      if (g == 1) return 1;
    }
    for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
    return g;
  }

  const MonomialOrder* ord_;
  std::vector<const IPoly*> polys_;
  std::vector<std::uint32_t> masks_;
};

// Buchberger's algorithm with the Gebauer-Moeller criteria and the sugar
// selection strategy. Input generators enter the queue with the pairs so
// that homogeneous input is processed degree by degree.
class Buchberger {
 public:
  Buchberger(const MonomialOrder& ord, GroebnerOptions opts) : ord_(ord), opts_(opts) {}

  std::vector<IPoly> run(std::vector<IPoly> gens) {
    for (auto& g : gens) {
      if (g.empty()) continue;
      make_primitive(g);
      pending_.push_back(std::move(g));
      Pair p;
      p.i = kGenerator;
      p.j = pending_.size() - 1;
      p.lcm = pending_.back().front().m;
      p.sugar = sugar_of(pending_.back());
      pairs_.push_back(p);
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k)
        if (pair_less(pairs_[k], pairs_[best])) best = k;
      Pair p = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      if (opts_.degree_bound && p.sugar > *opts_.degree_bound) {
        truncated_ = true;
        continue;
      }
      IPoly h;
      int sugar = p.sugar;
      if (p.i == kGenerator) {
        h = std::move(pending_[p.j]);
      } else {
        if (++pairs_done_ > opts_.max_pairs) throw BudgetExceeded(opts_.max_pairs);
        h = spoly(p);
      }
      if (h.empty()) continue;
      reducer_.reduce(h, true, nullptr, &sugar, &opts_.sugar_weights);
      if (h.empty()) continue;
      if (h.front().m.is_one()) {
        unit_ = true;
        IPoly one{{Monomial{}, 1}};
        return {one};
      }
      insert(std::move(h), sugar);
    }
    return reduced_basis();
  }

  std::size_t pairs_processed() const { return pairs_done_; }
  bool truncated() const { return truncated_; }

 private:
  static constexpr std::size_t kGenerator = std::numeric_limits<std::size_t>::max();

  struct Elem {
    std::unique_ptr<IPoly> p;
    Monomial lm;
    int sugar;
    bool active;
  };
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    int sugar;
  };

  int sugar_of(const IPoly& p) const {
    int s = 0;
    for (const auto& t : p) s = std::max(s, weighted_degree(t.m, opts_.sugar_weights));
    return s;
  }

  bool pair_less(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = ord_.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }

  IPoly spoly(const Pair& p) const {
    const IPoly& f = *G_[p.i].p;
    const IPoly& g = *G_[p.j].p;
    Monomial uf = p.lcm / f.front().m;
    Monomial ug = p.lcm / g.front().m;
    Integer gc = gcd(f.front().c, g.front().c);
    Integer a = g.front().c / gc;
    Integer b = f.front().c / gc;
    IPoly out;
    out.reserve(f.size() + g.size());
    std::size_t i = 1, j = 1;
    while (i < f.size() || j < g.size()) {
      int c;
      Monomial mf, mg;
      if (i < f.size()) mf = f[i].m * uf;
      if (j < g.size()) mg = g[j].m * ug;
      if (i == f.size()) c = -1;
      else if (j == g.size()) c = 1;
      else c = ord_.compare(mf, mg);
      if (c > 0) {
        out.push_back({mf, a * f[i].c});
        ++i;
      } else if (c < 0) {
        out.push_back({mg, -(b * g[j].c)});
        ++j;
      } else {
        Integer s = a * f[i].c - b * g[j].c;
        if (s != 0) out.push_back({mf, std::move(s)});
        ++i, ++j;
      }
    }
    return out;
  }

  void insert(IPoly h, int sugar) {
    Monomial lm = h.front().m;
    std::size_t k = G_.size();
    // Gebauer-Moeller update.
    std::vector<Pair> C;
    for (std::size_t i = 0; i < G_.size(); ++i) {
      if (!G_[i].active) continue;
      Pair p;
      p.i = i;
      p.j = k;
      p.lcm = Monomial::lcm(G_[i].lm, lm);
      int wl = weighted_degree(p.lcm, opts_.sugar_weights);
      p.sugar = std::max(G_[i].sugar + wl - weighted_degree(G_[i].lm, opts_.sugar_weights),
                         sugar + wl - weighted_degree(lm, opts_.sugar_weights));
      C.push_back(p);
    }
    std::vector<Pair> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      const Pair& p = C[a];
      bool keep = G_[p.i].lm.coprime(lm);
      if (!keep) {
        bool dominated = false;
        for (std::size_t b = a + 1; b < C.size() && !dominated; ++b)
          if (C[b].lcm.divides(p.lcm)) dominated = true;
        for (std::size_t b = 0; b < D.size() && !dominated; ++b)
          if (D[b].lcm.divides(p.lcm)) dominated = true;
        keep = !dominated;
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (const auto& p : pairs_) {
      if (p.i == kGenerator) {
        kept.push_back(p);
        continue;
      }
      if (lm.divides(p.lcm)) {
        Monomial l1 = Monomial::lcm(G_[p.i].lm, lm);
        Monomial l2 = Monomial::lcm(G_[p.j].lm, lm);
        if (!(l1 == p.lcm) && !(l2 == p.lcm)) continue;
      }
      kept.push_back(p);
    }
    for (const auto& p : D)
      if (!G_[p.i].lm.coprime(lm)) kept.push_back(p);
    pairs_.swap(kept);

    for (auto& g : G_)
      if (g.active && lm.divides(g.lm)) g.active = false;
    G_.push_back({std::make_unique<IPoly>(std::move(h)), lm, sugar, true});
    rebuild_reducer();
  }

  void rebuild_reducer() {
    reducer_ = Reducer(ord_);
    for (const auto& g : G_)
      if (g.active) reducer_.add(g.p.get());
  }

  std::vector<IPoly> reduced_basis() {
    std::vector<const Elem*> act;
    for (const auto& g : G_)
      if (g.active) act.push_back(&g);
    std::sort(act.begin(), act.end(), [&](const Elem* a, const Elem* b) { return ord_.greater(b->lm, a->lm); });
    std::vector<IPoly> out;
    for (std::size_t k = 0; k < act.size(); ++k) {
      Reducer others(ord_);
      for (std::size_t l = 0; l < act.size(); ++l)
        if (l != k) others.add(act[l]->p.get());
      IPoly h = *act[k]->p;
      others.reduce(h, true);
      out.push_back(std::move(h));
    }
    return out;
  }

  const MonomialOrder& ord_;
  GroebnerOptions opts_;
  std::vector<Elem> G_;
  std::vector<Pair> pairs_;
  std::vector<IPoly> pending_;
  Reducer reducer_{ord_};
  std::size_t pairs_done_ = 0;
  bool truncated_ = false;
  bool unit_ = false;
};

}  // namespace detail

// A Groebner basis together with the order it was computed for.
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, MonomialOrder ord, std::vector<detail::IPoly> polys, bool truncated = false)
      : ring_(std::move(ring)), order_(std::move(ord)), polys_(std::move(polys)), truncated_(truncated) {
    for (const auto& p : polys_) masks_.push_back(p.front().m.support_mask());
  }

  const RingPtr& ring() const { return ring_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<detail::IPoly>& ipolys() const { return polys_; }
  std::size_t size() const { return polys_.size(); }
  bool truncated() const { return truncated_; }
  bool is_unit() const { return polys_.size() == 1 && polys_[0].front().m.is_one(); }
  bool is_zero() const { return polys_.empty(); }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> r;
    for (const auto& p : polys_) r.push_back(p.front().m);
    return r;
  }

  std::vector<Polynomial> polynomials() const {
    std::vector<Polynomial> r;
    for (const auto& p : polys_) r.push_back(detail::to_monic_polynomial(p, ring_));
    return r;
  }

  detail::Reducer reducer() const {
    detail::Reducer r(order_);
    for (const auto& p : polys_) r.add(&p);
    return r;
  }

  // Exact remainder of f on division by the basis.
  Polynomial normal_form(const Polynomial& f) const {
    auto h = detail::to_ipoly(f, order_);
    Integer den = 1;
    for (const auto& t : f.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.second.get_den_mpz_t());
    Rational scale(den);
    reducer().reduce(h, true, &scale);
    return detail::to_polynomial(h, ring_, scale);
  }

  bool reduces_to_zero(const Polynomial& f) const {
    auto h = detail::to_ipoly(f, order_);
    reducer().reduce(h, true);
    return h.empty();
  }

  // True when no leading monomial divides m.
  bool is_standard(const Monomial& m) const {
    std::uint32_t mask = m.support_mask();
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      if (masks_[i] & ~mask) continue;
      if (polys_[i].front().m.divides(m)) return false;
    }
    return true;
  }

 private:
  RingPtr ring_;
  MonomialOrder order_;
  std::vector<detail::IPoly> polys_;
  std::vector<std::uint32_t> masks_;
  bool truncated_;
};

inline GroebnerBasis compute_groebner(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                      const MonomialOrder& ord, GroebnerOptions opts = {}) {
  std::vector<detail::IPoly> in;
  for (const auto& g : gens)
    if (!g.is_zero()) in.push_back(detail::to_ipoly(g, ord));
  detail::Buchberger bb(ord, opts);
  auto out = bb.run(std::move(in));
  return GroebnerBasis(ring, ord, std::move(out), bb.truncated());
}

// An ideal given by generators, with Groebner bases cached per order.
class IdealHandle {
 public:
  IdealHandle() = default;
  IdealHandle(RingPtr ring, std::vector<Polynomial> gens) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
    for (auto& g : gens) {
      require_same_ring(ring_, g.ring());
      if (!g.is_zero()) gens_.push_back(std::move(g));
    }
  }

  static IdealHandle unit(RingPtr ring) { return IdealHandle(ring, {Polynomial::constant(ring, 1)}); }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const& { return gens_; }
  std::vector<Polynomial> generators() && { return std::move(gens_); }
  std::size_t num_generators() const { return gens_.size(); }

  bool is_homogeneous() const {
    for (const auto& g : gens_)
      if (!g.is_homogeneous()) return false;
    return true;
  }
  bool is_bihomogeneous() const {
    for (const auto& g : gens_)
      if (!g.is_bihomogeneous()) return false;
    return true;
  }

  const GroebnerBasis& basis() const { return basis(ring_->order()); }

  const GroebnerBasis& basis(const MonomialOrder& ord) const {
    std::string key = ord.key();
    {
      std::lock_guard<std::mutex> lock(cache_->mu);
      auto it = cache_->bases.find(key);
      if (it != cache_->bases.end()) return *it->second;
    }
    auto gb = std::make_shared<GroebnerBasis>(compute_groebner(ring_, gens_, ord));
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto [it, inserted] = cache_->bases.emplace(key, gb);
    return *it->second;
  }

  // Seeds the cache with a basis known to be reduced for its order.
  void adopt_basis(GroebnerBasis gb) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    cache_->bases[gb.order().key()] = std::make_shared<GroebnerBasis>(std::move(gb));
  }

 private:
  struct Cache {
    std::mutex mu;
    std::map<std::string, std::shared_ptr<GroebnerBasis>> bases;
  };
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

inline std::vector<Polynomial> groebner_basis(const IdealHandle& I, const MonomialOrder& ord) {
  return I.basis(ord).polynomials();
}
inline std::vector<Polynomial> groebner_basis(const IdealHandle& I) { return I.basis().polynomials(); }

inline Polynomial normal_form(const Polynomial& f, const IdealHandle& I) {
  require_same_ring(f.ring(), I.ring());
  return I.basis().normal_form(f);
}

inline bool contains(const IdealHandle& I, const Polynomial& f) {
  require_same_ring(f.ring(), I.ring());
  if (f.is_zero()) return true;
  return I.basis().reduces_to_zero(f);
}

inline bool contains(const IdealHandle& I, const IdealHandle& J) {
  for (const auto& g : J.generators())
    if (!contains(I, g)) return false;
  return true;
}

inline bool ideals_equal(const IdealHandle& I, const IdealHandle& J) { return contains(I, J) && contains(J, I); }

inline bool is_unit_ideal(const IdealHandle& I) { return I.basis().is_unit(); }

inline IdealHandle ideal_sum(const IdealHandle& I, const IdealHandle& J) {
  require_same_ring(I.ring(), J.ring());
  auto g = I.generators();
  for (const auto& h : J.generators()) g.push_back(h);
  return IdealHandle(I.ring(), std::move(g));
}

// Ideal whose generators are the reduced basis of I in the ring order.
inline IdealHandle reduced_ideal(const IdealHandle& I) {
  const auto& gb = I.basis();
  IdealHandle r(I.ring(), gb.polynomials());
  r.adopt_basis(gb);
  return r;
}

namespace detail {

inline std::size_t aux_index(const RingPtr& ring) { return ring->num_vars(); }

inline std::array<int, kMaxVars> unit_weights_except(std::size_t v) {
  std::array<int, kMaxVars> w{};
  w.fill(1);
  w[v] = 0;
  return w;
}

// Reduced basis of t*I + (1-t)*J, keeping only elements free of t.
inline std::vector<Polynomial> intersect_generators(const IdealHandle& I, const IdealHandle& J) {
  const RingPtr& R = I.ring();
  std::size_t t = aux_index(R);
  std::size_t n = R->num_vars() + 1;
  MonomialOrder ord = MonomialOrder::elimination(n, {t});
  Monomial tm = Monomial::variable(t);
  std::vector<IPoly> gens;
  for (const auto& f : I.generators()) {
    IPoly p = to_ipoly(f, ord);
    for (auto& term : p) term.m = term.m * tm;
    gens.push_back(std::move(p));
  }
  for (const auto& g : J.generators()) {
    IPoly p = to_ipoly(g, ord);
    IPoly q;
    for (const auto& term : p) {
      q.push_back(term);
      q.push_back({term.m * tm, -term.c});
    }
    sort_terms(q, ord);
    gens.push_back(std::move(q));
  }
  GroebnerOptions opts;
  // t gets weight 0, so homogeneous inputs stay homogeneous.
  opts.sugar_weights = unit_weights_except(t);
  Buchberger bb(ord, opts);
  auto basis = bb.run(std::move(gens));
  std::vector<Polynomial> out;
  for (const auto& p : basis) {
    bool has_t = false;
    for (const auto& term : p)
      if (term.m[t]) has_t = true;
    if (!has_t) out.push_back(to_monic_polynomial(p, R));
  }
  return out;
}

inline bool is_variable(const Polynomial& f, std::size_t* v) {
  if (f.size() != 1 || f.terms()[0].first.degree() != 1) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (f.terms()[0].first[i]) *v = i;
  return true;
}

// I : v (or I : v^inf) for homogeneous I, via the reverse-lex basis with v
// in the last position.
inline IdealHandle colon_by_variable(const IdealHandle& I, std::size_t v, bool saturate) {
  MonomialOrder ord = MonomialOrder::degrevlex_last(I.ring()->num_vars(), v);
  const auto& gb = I.basis(ord);
  std::vector<Polynomial> gens;
  for (const auto& p : gb.ipolys()) {
    unsigned k = 255;
    for (const auto& t : p) k = std::min(k, t.m[v]);
    if (!saturate) k = std::min(k, 1u);
    IPoly q = p;
    if (k) {
      Monomial d = Monomial::variable(v, k);
      for (auto& t : q) t.m = t.m / d;
    }
    gens.push_back(to_monic_polynomial(q, I.ring()));
  }
  return IdealHandle(I.ring(), std::move(gens));
}

}  // namespace detail

inline IdealHandle intersect(const IdealHandle& I, const IdealHandle& J) {
  require_same_ring(I.ring(), J.ring());
  if (I.generators().empty() || J.generators().empty()) return IdealHandle(I.ring(), {});
  if (is_unit_ideal(I)) return J;
  if (is_unit_ideal(J)) return I;
  return IdealHandle(I.ring(), detail::intersect_generators(I, J));
}

inline IdealHandle colon(const IdealHandle& I, const Polynomial& j) {
  require_same_ring(I.ring(), j.ring());
  if (j.is_zero()) return IdealHandle::unit(I.ring());
  std::size_t v;
  if (detail::is_variable(j, &v) && I.is_homogeneous()) return detail::colon_by_variable(I, v, false);
  IdealHandle inter = intersect(I, IdealHandle(I.ring(), {j}));
  std::vector<Polynomial> gens;
  for (const auto& g : inter.generators()) gens.push_back(divide_exact(g, j));
  return IdealHandle(I.ring(), std::move(gens));
}

// I : J, as the intersection of the colons by the generators of J.
inline IdealHandle colon(const IdealHandle& I, const IdealHandle& J) {
  require_same_ring(I.ring(), J.ring());
  if (J.generators().empty()) return IdealHandle::unit(I.ring());
  std::optional<IdealHandle> acc;
  for (const auto& j : J.generators()) {
    IdealHandle c = colon(I, j);
    acc = acc ? intersect(*acc, c) : c;
    if (ideals_equal(*acc, I)) break;
  }
  return *acc;
}

struct SaturationResult {
  IdealHandle ideal;
  unsigned exponent = 1;  // least N >= 1 with I : J^N = I : J^inf
};

// Iterates I <- I : J until the reduced basis stops changing.
inline SaturationResult saturate(const IdealHandle& I, const IdealHandle& J) {
  IdealHandle cur = reduced_ideal(I);
  unsigned steps = 0;
  for (;;) {
    IdealHandle next = reduced_ideal(colon(cur, J));
    if (next.generators() == cur.generators()) break;
    cur = next;
    ++steps;
  }
  return {cur, std::max(1u, steps)};
}

// I intersected with the subring free of `drop`, via an elimination order.
inline IdealHandle eliminate(const IdealHandle& I, const std::vector<std::size_t>& drop) {
  const RingPtr& R = I.ring();
  for (auto v : drop)
    if (v >= R->num_vars()) fail(ErrorCode::UnknownVariable, "elimination variable out of range");
  MonomialOrder ord = MonomialOrder::elimination(R->num_vars(), drop);
  const auto& gb = I.basis(ord);
  std::vector<Polynomial> gens;
  for (const auto& p : gb.ipolys()) {
    bool keep = true;
    for (const auto& t : p)
      for (auto v : drop)
        if (t.m[v]) keep = false;
    if (keep) gens.push_back(detail::to_monic_polynomial(p, R));
  }
  return IdealHandle(R, std::move(gens));
}

inline constexpr int kInfiniteHeight = std::numeric_limits<int>::max();

struct DimHeight {
  int dim = 0;     // -1 for the unit ideal
  int height = 0;  // kInfiniteHeight for the unit ideal
};

namespace detail {

// Smallest set of variables meeting every support in `supports`.
inline int min_hitting_set(const std::vector<std::uint32_t>& supports, std::uint32_t chosen, int size, int best) {
  if (size >= best) return best;
  for (auto s : supports) {
    if (s & chosen) continue;
    for (std::size_t v = 0; v < kMaxVars; ++v) {
      if (!(s & (1u << v))) continue;
      best = min_hitting_set(supports, chosen | (1u << v), size + 1, best);
    }
    return best;
  }
  return size;
}

}  // namespace detail

// Krull dimension of B/I and height of I, read off the leading monomials.
inline DimHeight dimension_and_height(const IdealHandle& I) {
  int n = int(I.ring()->num_vars());
  const auto& gb = I.basis();
  if (gb.is_unit()) return {-1, kInfiniteHeight};
  std::vector<std::uint32_t> supports;
  for (const auto& m : gb.leading_monomials()) supports.push_back(m.support_mask());
  std::sort(supports.begin(), supports.end(),
            [](std::uint32_t a, std::uint32_t b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
  int h = detail::min_hitting_set(supports, 0, 0, n + 1);
  return {n - h, h};
}

inline int height(const IdealHandle& I) { return dimension_and_height(I).height; }

// p in rad(I) iff 1 in I + (1 - t p).
inline bool radical_membership(const Polynomial& p, const IdealHandle& I) {
  require_same_ring(p.ring(), I.ring());
  if (p.is_zero() || contains(I, p)) return true;
  const RingPtr& R = I.ring();
  std::size_t t = detail::aux_index(R);
  MonomialOrder ord = MonomialOrder::degrevlex(R->num_vars() + 1);
  std::vector<detail::IPoly> gens;
  for (const auto& g : I.generators()) gens.push_back(detail::to_ipoly(g, ord));
  detail::IPoly q = detail::to_ipoly(p, ord);
  detail::IPoly r;
  r.push_back({Monomial{}, 1});
  Integer den = 1;
  for (const auto& term : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), term.second.get_den_mpz_t());
  for (auto& term : q) r.push_back({term.m * Monomial::variable(t), -term.c});
  r.front().c = den;
  detail::sort_terms(r, ord);
  gens.push_back(std::move(r));
  detail::Buchberger bb(ord, GroebnerOptions{});
  auto out = bb.run(std::move(gens));
  return out.size() == 1 && out[0].front().m.is_one();
}

// Monomials of the given bidegree, in descending ring order.
inline std::vector<Monomial> monomials_of_bidegree(const RingDescriptor& R, BiDegree deg) {
  std::vector<Monomial> out;
  if (deg.x < 0 || deg.y < 0) return out;
  for (std::size_t v = 0; v < R.num_vars(); ++v)
    if (R.grading(v) == BiDegree{0, 0}) fail(ErrorCode::ValidationError, "variable of bidegree (0,0)");
  Monomial cur;
  std::function<void(std::size_t, BiDegree)> rec = [&](std::size_t v, BiDegree left) {
    if (v == R.num_vars()) {
      if (left == BiDegree{0, 0}) out.push_back(cur);
      return;
    }
    BiDegree g = R.grading(v);
    for (unsigned e = 0;; ++e) {
      BiDegree used{g.x * int(e), g.y * int(e)};
      if (used.x > left.x || used.y > left.y) break;
      cur.set(v, e);
      rec(v + 1, left - used);
      if (g == BiDegree{0, 0}) break;
    }
    cur.set(v, 0);
  };
  rec(0, deg);
  const auto& ord = R.order();
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ord.greater(a, b); });
  return out;
}

// Monomials of total degree `deg` in the listed variables, in descending
// degrevlex order for the ranking given by `vars`.
inline std::vector<Monomial> monomials_of_degree(const std::vector<std::size_t>& vars, int deg) {
  std::vector<Monomial> out;
  if (deg < 0) return out;
  Monomial cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k + 1 == vars.size()) {
      cur.set(vars[k], left);
      out.push_back(cur);
      cur.set(vars[k], 0);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur.set(vars[k], e);
      rec(k + 1, left - e);
    }
    cur.set(vars[k], 0);
  };
  if (vars.empty()) {
    if (deg == 0) out.push_back(cur);
    return out;
  }
  rec(0, deg);
  MonomialOrder ord = MonomialOrder::degrevlex(kMaxVars);
  std::vector<std::size_t> ranking = vars;
  for (std::size_t v = 0; v < kMaxVars; ++v)
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) ranking.push_back(v);
  ord = MonomialOrder::degrevlex_ranked(ranking);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ord.greater(a, b); });
  return out;
}

struct PieceDims {
  std::size_t ambient = 0;  // dim_k B_deg
  std::size_t ideal = 0;    // dim_k I_deg
};

inline PieceDims graded_piece_dims(const IdealHandle& I, BiDegree deg) {
  if (!I.is_bihomogeneous()) fail(ErrorCode::NotBihomogeneous, "graded pieces need a bihomogeneous ideal");
  auto monos = monomials_of_bidegree(*I.ring(), deg);
  const auto& gb = I.basis();
  std::size_t standard = 0;
  for (const auto& m : monos)
    if (gb.is_standard(m)) ++standard;
  return {monos.size(), monos.size() - standard};
}

}  // namespace reesalg
