#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reesalg/groebner.hpp"
#include "reesalg/linalg.hpp"
#include "reesalg/polymatrix.hpp"

namespace reesalg {

// A presentation matrix over k[x] (one row per y-variable) together with
// optional defining relations of a quotient ring k[x]/(rels).
struct Instance {
  RingPtr ring;
  PolyMatrix phi;
  std::vector<Polynomial> quotient_rels;
  std::string label;

  std::size_t num_x() const { return ring->num_x(); }
  std::size_t num_y() const { return ring->num_y(); }
  std::size_t num_cols() const { return phi.cols(); }
  // Rank of the module presented by phi.
  int rank() const { return int(num_y()) - int(num_cols()); }

  void validate() const {
    auto bad = [&](const std::string& what) { fail(ErrorCode::ValidationError, what); };
    if (!ring) bad("instance has no ring");
    if (phi.cols() == 0) bad("phi has no columns");
    if (phi.rows() != ring->num_y()) bad("phi needs one row per y-variable");
    if (!same_ring(phi.ring(), ring)) bad("phi is over a different ring");
    if (rank() < 1) bad("phi needs more rows than columns");
    for (std::size_t j = 0; j < phi.cols(); ++j) {
      std::optional<int> xdeg;
      for (std::size_t i = 0; i < phi.rows(); ++i) {
        const Polynomial& p = phi(i, j);
        if (p.is_zero()) continue;
        if (!p.is_bihomogeneous()) bad("phi entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not bihomogeneous");
        BiDegree b = bidegree_of(p);
        if (b.y != 0) bad("phi entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") involves y-variables");
        if (b.x == 0) bad("phi entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is a nonzero constant");
        if (xdeg && *xdeg != b.x) bad("column " + std::to_string(j + 1) + " mixes x-degrees");
        xdeg = b.x;
      }
      if (!xdeg) bad("column " + std::to_string(j + 1) + " is zero");
    }
    for (const auto& f : quotient_rels) {
      if (f.is_zero()) bad("zero quotient relation");
      if (!same_ring(f.ring(), ring)) bad("quotient relation over a different ring");
      if (!f.is_bihomogeneous() || bidegree_of(f).y != 0) bad("quotient relation must be a form in the x-variables");
      if (bidegree_of(f).x == 0) bad("quotient relation is a constant");
    }
  }

  // x-degree shared by the entries of column j.
  int column_degree(std::size_t j) const {
    for (std::size_t i = 0; i < phi.rows(); ++i)
      if (!phi(i, j).is_zero()) return bidegree_of(phi(i, j)).x;
    return 0;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return same_ring(a.ring, b.ring) && a.phi == b.phi && a.quotient_rels == b.quotient_rels && a.label == b.label;
  }
};

inline Instance make_instance(RingPtr ring, PolyMatrix phi, std::vector<Polynomial> rels = {}, std::string label = {}) {
  Instance inst{std::move(ring), std::move(phi), std::move(rels), std::move(label)};
  inst.validate();
  return inst;
}

struct GradedGenerator {
  Polynomial poly;
  BiDegree degree;
};

// The entries of [y].phi followed by the quotient relations.
inline std::vector<GradedGenerator> strand_generators(const Instance& inst) {
  const RingPtr& R = inst.ring;
  std::vector<GradedGenerator> out;
  for (std::size_t j = 0; j < inst.phi.cols(); ++j) {
    Polynomial ell(R);
    for (std::size_t i = 0; i < inst.phi.rows(); ++i) ell += Polynomial::variable(R, R->y(i)) * inst.phi(i, j);
    out.push_back({ell, {inst.column_degree(j), 1}});
  }
  for (const auto& f : inst.quotient_rels) out.push_back({f, bidegree_of(f)});
  return out;
}

inline IdealHandle symmetric_ideal(const Instance& inst) {
  std::vector<Polynomial> gens;
  for (auto& g : strand_generators(inst)) gens.push_back(std::move(g.poly));
  return IdealHandle(inst.ring, std::move(gens));
}

struct DeltaTau {
  int delta = 0;
  int tau = 0;
};

inline DeltaTau delta_tau(const std::vector<GradedGenerator>& gens, std::size_t num_x) {
  DeltaTau dt;
  for (const auto& g : gens) {
    dt.delta += g.degree.x;
    dt.tau += g.degree.y;
  }
  dt.delta -= int(num_x);
  return dt;
}

inline DeltaTau delta_tau(const Instance& inst) { return delta_tau(strand_generators(inst), inst.num_x()); }

// The ideal (x_1, ..., x_d).
inline IdealHandle x_ideal(const RingPtr& R) {
  std::vector<Polynomial> gens;
  for (auto v : R->x_indices()) gens.push_back(Polynomial::variable(R, v));
  return IdealHandle(R, std::move(gens));
}

struct BidegreeWindow {
  int max_x = 0;
  int max_y = 0;
  bool contains(BiDegree b) const { return b.x >= 0 && b.y >= 0 && b.x <= max_x && b.y <= max_y; }
};

inline BidegreeWindow default_window(const Instance& inst) {
  int d = int(inst.num_x()) - int(inst.quotient_rels.size());
  int top = d;
  for (std::size_t j = 0; j < inst.num_cols(); ++j) top = std::max(top, inst.column_degree(j));
  return {std::max(0, delta_tau(inst).delta), 4 * top + 2};
}

// Called between expensive stages; returning false cancels the run.
using ProgressFn = std::function<bool(std::string_view stage, std::size_t done, std::size_t total)>;

namespace detail {

inline void report_progress(const ProgressFn& fn, std::string_view stage, std::size_t done, std::size_t total) {
  if (fn && !fn(stage, done, total)) fail(ErrorCode::Cancelled, std::string(stage));
}

// Least N >= 1 with (x)^N J contained in L, by pushing normal forms modulo
// L through multiplication by the x-variables.
inline unsigned annihilating_exponent(const IdealHandle& L, const IdealHandle& J) {
  const RingPtr& R = L.ring();
  const auto& gbL = L.basis();
  std::vector<Polynomial> layer;
  LinearSpan first;
  for (const auto& g : J.generators()) {
    Polynomial r = gbL.normal_form(g);
    if (!r.is_zero() && first.insert(r)) layer.push_back(r);
  }
  unsigned n = 0;
  while (!layer.empty()) {
    ++n;
    LinearSpan span;
    std::vector<Polynomial> next;
    for (const auto& r : layer)
      for (auto v : R->x_indices()) {
        Polynomial q = gbL.normal_form(Polynomial::variable(R, v) * r);
        if (!q.is_zero() && span.insert(q)) next.push_back(std::move(q));
      }
    layer = std::move(next);
  }
  return std::max(1u, n);
}

}  // namespace detail

// L : (x)^inf as the intersection of the saturations by single x-variables.
inline SaturationResult saturate_by_x(const IdealHandle& L, const ProgressFn& progress = {}) {
  const RingPtr& R = L.ring();
  auto xs = R->x_indices();
  std::vector<IdealHandle> parts;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    detail::report_progress(progress, "saturate", k, xs.size());
    parts.push_back(reduced_ideal(detail::colon_by_variable(L, xs[k], true)));
  }
  std::optional<IdealHandle> J;
  if (parts.empty()) J = reduced_ideal(L);
  for (std::size_t a = 0; a < parts.size() && !J; ++a) {
    bool smallest = true;
    for (std::size_t v = 0; v < parts.size() && smallest; ++v)
      if (v != a && !contains(parts[v], parts[a])) smallest = false;
    if (smallest) J = parts[a];
  }
  if (!J) {
    J = parts[0];
    for (std::size_t k = 1; k < parts.size(); ++k) {
      detail::report_progress(progress, "intersect", k, parts.size());
      J = reduced_ideal(intersect(*J, parts[k]));
    }
  }
  detail::report_progress(progress, "exponent", 0, 1);
  unsigned n = detail::annihilating_exponent(L, *J);
  return {*J, n};
}

struct FittingRow {
  int index = 0;     // Fitt_index = I_{rows - index}(phi)
  int height = 0;    // in the quotient ring
  int required = 0;  // index - rank + 2
  bool ok = false;
};

struct HypothesisReport {
  int num_x = 0;
  int quotient_height = 0;
  int dim_ring = 0;
  int rank = 0;
  bool rank_full = false;
  int max_minor_height = 0;
  bool pd_one = false;
  bool entries_generate_m = false;
  bool mu_matches = false;
  std::vector<FittingRow> fitting;
  std::vector<std::pair<int, bool>> gs;  // (s, G_s holds) for s = 2..dim_ring
  std::vector<std::string> warnings;

  bool holds_gs(int s) const {
    if (s <= 1) return true;
    for (auto [t, ok] : gs)
      if (t == s) return ok;
    return false;
  }
};

namespace detail {

inline int height_modulo(const IdealHandle& I, const IdealHandle& rels, int rels_height) {
  int h = height(rels.generators().empty() ? I : ideal_sum(I, rels));
  if (h == kInfiniteHeight) return kInfiniteHeight;
  return h - rels_height;
}

}  // namespace detail

inline HypothesisReport hypothesis_report(const Instance& inst) {
  const RingPtr& R = inst.ring;
  HypothesisReport rep;
  IdealHandle rels(R, inst.quotient_rels);
  rep.num_x = int(inst.num_x());
  rep.quotient_height = inst.quotient_rels.empty() ? 0 : height(rels);
  rep.dim_ring = rep.num_x - rep.quotient_height;
  rep.rank = inst.rank();
  int cols = int(inst.num_cols());
  int rows = int(inst.num_y());

  IdealHandle top = minors(inst.phi, cols);
  rep.rank_full = !contains(rels, top);
  rep.max_minor_height = detail::height_modulo(top, rels, rep.quotient_height);
  rep.pd_one = rep.rank_full && rep.max_minor_height >= 1;
  if (!rep.pd_one) rep.warnings.push_back("phi is not a presentation of projective dimension one");

  IdealHandle m = x_ideal(R);
  IdealHandle i1 = entries_ideal(inst.phi);
  rep.entries_generate_m = ideals_equal(rels.generators().empty() ? i1 : ideal_sum(i1, rels), m);
  if (!rep.entries_generate_m) rep.warnings.push_back("I_1(phi) differs from the x-ideal");

  rep.mu_matches = cols == rep.dim_ring;
  if (!rep.mu_matches) rep.warnings.push_back("number of generators differs from dim + rank");

  int top_index = std::max(rep.rank, rep.dim_ring + rep.rank - 2);
  for (int i = rep.rank; i <= top_index && i < rows; ++i) {
    FittingRow row;
    row.index = i;
    row.height = detail::height_modulo(fitting_ideal(inst.phi, i), rels, rep.quotient_height);
    row.required = i - rep.rank + 2;
    row.ok = row.height >= row.required;
    rep.fitting.push_back(row);
  }
  for (int s = 2; s <= rep.dim_ring; ++s) {
    bool ok = true;
    for (const auto& row : rep.fitting)
      if (row.index <= s + rep.rank - 2 && !row.ok) ok = false;
    rep.gs.emplace_back(s, ok);
  }
  if (rep.dim_ring >= 2 && !rep.gs.back().second)
    rep.warnings.push_back("G_" + std::to_string(rep.dim_ring) + " fails");
  return rep;
}

struct ReesIdeal {
  IdealHandle L;
  IdealHandle J;
  unsigned exponent = 1;  // least N >= 1 with (x)^N J inside L
  std::vector<std::string> warnings;
};

struct ReesOptions {
  bool check_hypotheses = true;
  ProgressFn progress;
};

inline ReesIdeal rees_ideal(const Instance& inst, const ReesOptions& opts = {}) {
  ReesIdeal out;
  if (opts.check_hypotheses) out.warnings = hypothesis_report(inst).warnings;
  out.L = symmetric_ideal(inst);
  auto sat = saturate_by_x(out.L, opts.progress);
  out.J = sat.ideal;
  out.exponent = sat.exponent;
  return out;
}

class BidegreeTable {
 public:
  std::map<BiDegree, std::size_t> counts;
  std::vector<std::string> warnings;

  std::size_t at(BiDegree b) const {
    auto it = counts.find(b);
    return it == counts.end() ? 0 : it->second;
  }
  std::size_t total() const {
    std::size_t s = 0;
    for (const auto& [b, c] : counts) s += c;
    return s;
  }
  bool empty() const { return counts.empty(); }
  // Entries with first coordinate i.
  BidegreeTable row(int i) const {
    BidegreeTable t;
    for (const auto& [b, c] : counts)
      if (b.x == i) t.counts[b] = c;
    return t;
  }

  friend bool operator==(const BidegreeTable& a, const BidegreeTable& b) { return a.counts == b.counts; }

  std::string to_string() const {
    std::string s = "{";
    for (const auto& [b, c] : counts) {
      if (s.size() > 1) s += ", ";
      s += "(" + std::to_string(b.x) + "," + std::to_string(b.y) + "):" + std::to_string(c);
    }
    return s + "}";
  }
};

namespace detail {

// Number of candidates at each bidegree that stay independent modulo the
// ideal generated by `excess`.
inline std::map<BiDegree, std::size_t> independent_counts(const RingPtr& R, const std::vector<Polynomial>& excess,
                                                          const std::map<BiDegree, std::vector<Polynomial>>& cands) {
  std::map<BiDegree, std::size_t> out;
  if (cands.empty()) return out;
  int bound = 0;
  for (const auto& [b, list] : cands) bound = std::max(bound, b.x + b.y);
  GroebnerOptions opts;
  opts.degree_bound = bound;
  std::vector<Polynomial> gens;
  for (const auto& g : excess)
    if (int(g.total_degree()) <= bound) gens.push_back(g);
  GroebnerBasis gb = compute_groebner(R, gens, R->order(), opts);
  for (const auto& [b, list] : cands) {
    LinearSpan span;
    std::size_t c = 0;
    for (const auto& p : list)
      if (span.insert(gb.normal_form(p))) ++c;
    if (c) out[b] = c;
  }
  return out;
}

inline void flag_boundary(BidegreeTable& t, const BidegreeWindow& w) {
  for (const auto& [b, c] : t.counts)
    if (b.y == w.max_y)
      t.warnings.push_back("WindowTooSmall: generators at the ydeg bound " + std::to_string(w.max_y));
}

}  // namespace detail

// dim J_(a,b) - dim (L + B_+ J)_(a,b) over the window.
inline BidegreeTable minimal_generators_B(const IdealHandle& J, const IdealHandle& L, const BidegreeWindow& window) {
  const RingPtr& R = J.ring();
  require_same_ring(R, L.ring());
  auto gbJ = reduced_ideal(J).generators();
  std::map<BiDegree, std::vector<Polynomial>> cands;
  for (const auto& g : gbJ) {
    BiDegree b = bidegree_of(g);
    if (window.contains(b) && !contains(L, g)) cands[b].push_back(g);
  }
  std::vector<Polynomial> excess = L.generators();
  for (const auto& g : gbJ)
    for (std::size_t v = 0; v < R->num_vars(); ++v) excess.push_back(Polynomial::variable(R, v) * g);
  BidegreeTable t;
  t.counts = detail::independent_counts(R, excess, cands);
  detail::flag_boundary(t, window);
  return t;
}

// dim A_(i,b) - dim ((y) A)_(i,b) for the x-degree i.
inline BidegreeTable minimal_generators_T(const IdealHandle& J, const IdealHandle& L, int i,
                                          const BidegreeWindow& window) {
  const RingPtr& R = J.ring();
  require_same_ring(R, L.ring());
  auto gbJ = reduced_ideal(J).generators();
  std::map<BiDegree, std::vector<Polynomial>> cands;
  for (const auto& g : gbJ) {
    BiDegree b = bidegree_of(g);
    if (b.x > i || b.y > window.max_y || i > window.max_x) continue;
    for (const auto& u : monomials_of_degree(R->x_indices(), i - b.x)) {
      Polynomial p = g * Polynomial::monomial(R, u, 1);
      if (!contains(L, p)) cands[{i, b.y}].push_back(std::move(p));
    }
  }
  std::vector<Polynomial> excess = L.generators();
  for (const auto& g : gbJ)
    for (auto v : R->y_indices()) excess.push_back(Polynomial::variable(R, v) * g);
  BidegreeTable t;
  t.counts = detail::independent_counts(R, excess, cands);
  detail::flag_boundary(t, window);
  return t;
}

struct SpecialFiber {
  IdealHandle fiber_ideal;  // generated by forms in the y-variables only
  int analytic_spread = 0;
};

// For bihomogeneous J the basis elements of x-degree 0 already generate
// J intersected with k[y].
inline SpecialFiber special_fiber(const IdealHandle& J) {
  const RingPtr& R = J.ring();
  std::vector<Polynomial> gens;
  IdealHandle red = reduced_ideal(J);
  for (const auto& g : red.generators())
    if (bidegree_of(g).x == 0) gens.push_back(g);
  SpecialFiber sf{IdealHandle(R, gens), 0};
  if (gens.empty()) {
    sf.analytic_spread = int(R->num_y());
  } else {
    int dim = dimension_and_height(sf.fiber_ideal).dim;
    sf.analytic_spread = dim < 0 ? -1 : dim - int(R->num_x());
  }
  return sf;
}

inline SpecialFiber special_fiber(const Instance& inst) { return special_fiber(rees_ideal(inst, {false, {}}).J); }

struct DetGeneratorReport {
  Polynomial det;
  BiDegree bidegree;
  BiDegree expected;
  bool skipped = false;  // det lies in L
  bool in_J = false;
  bool outside_L = false;
  bool kills_x = false;   // x_v det in L for every v
  bool colon_matches = false;  // L : (x) == L + (det)
  bool bidegree_matches = false;
  bool piece_is_line = false;  // dim A_(delta,tau) == 1
  std::string notice;

  bool passed() const {
    if (skipped) return true;
    return in_J && outside_L && kills_x && colon_matches && bidegree_matches && piece_is_line;
  }
};

// Requires [generators of L] = [x].B; B square.
inline DetGeneratorReport det_generator_check(const Instance& inst, const PolyMatrix& B, const IdealHandle& J,
                                              bool compute_colon = true) {
  const RingPtr& R = inst.ring;
  auto gens = strand_generators(inst);
  if (B.rows() != inst.num_x() || B.cols() != gens.size())
    fail(ErrorCode::IdentityFailed, "B must be (#x) by (#generators of L)");
  for (std::size_t j = 0; j < B.cols(); ++j) {
    Polynomial s(R);
    for (std::size_t i = 0; i < B.rows(); ++i) s += Polynomial::variable(R, R->x(i)) * B(i, j);
    if (!(s == gens[j].poly)) fail(ErrorCode::IdentityFailed, "[x].B differs from generator " + std::to_string(j + 1));
  }
  IdealHandle L(R, [&] {
    std::vector<Polynomial> v;
    for (const auto& g : gens) v.push_back(g.poly);
    return v;
  }());
  DetGeneratorReport rep;
  rep.det = determinant(B);
  DeltaTau dt = delta_tau(gens, inst.num_x());
  rep.expected = {dt.delta, dt.tau};
  if (rep.det.is_zero() || contains(L, rep.det)) {
    rep.skipped = true;
    rep.notice = "det B lies in L; the check assumes a nonzero top component";
    return rep;
  }
  rep.outside_L = true;
  rep.bidegree = bidegree_of(rep.det);
  rep.bidegree_matches = rep.bidegree == rep.expected;
  rep.in_J = contains(J, rep.det);
  rep.kills_x = true;
  for (auto v : R->x_indices())
    if (!contains(L, Polynomial::variable(R, v) * rep.det)) rep.kills_x = false;
  if (compute_colon) {
    IdealHandle lhs = colon(L, x_ideal(R));
    IdealHandle rhs = ideal_sum(L, IdealHandle(R, {rep.det}));
    rep.colon_matches = ideals_equal(lhs, rhs);
  } else {
    rep.colon_matches = rep.kills_x;
    rep.notice = "L : (x) containment certified by x_v det in L only";
  }
  auto pj = graded_piece_dims(J, rep.expected);
  auto pl = graded_piece_dims(L, rep.expected);
  rep.piece_is_line = pj.ideal - pl.ideal == 1;
  return rep;
}

}  // namespace reesalg
