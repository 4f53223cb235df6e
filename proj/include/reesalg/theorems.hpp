#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "reesalg/koszul.hpp"
#include "reesalg/rees.hpp"

namespace reesalg {

enum class Setting { AALP, CI, TANGENT, GENERIC };

inline const char* setting_name(Setting s) {
  switch (s) {
    case Setting::AALP: return "AALP";
    case Setting::CI: return "CI";
    case Setting::TANGENT: return "TANGENT";
    case Setting::GENERIC: return "GENERIC";
  }
  return "GENERIC";
}

enum class CertStatus { Proved, HypothesisFailed, Unconditional };

inline const char* status_name(CertStatus s) {
  switch (s) {
    case CertStatus::Proved: return "proved";
    case CertStatus::HypothesisFailed: return "hypothesis-failed";
    case CertStatus::Unconditional: return "unconditional";
  }
  return "unconditional";
}

// Transposed Jacobian of the forms with respect to the x-variables.
inline PolyMatrix jacobian_transpose(const std::vector<Polynomial>& forms) {
  const RingPtr& R = forms.at(0).ring();
  PolyMatrix J(R, R->num_x(), forms.size());
  for (std::size_t i = 0; i < R->num_x(); ++i)
    for (std::size_t j = 0; j < forms.size(); ++j) J(i, j) = partial_derivative(forms[j], R->x(i));
  return J;
}

namespace detail {

inline bool is_x_quadric(const Polynomial& f) {
  return !f.is_zero() && f.is_bihomogeneous() && bidegree_of(f) == BiDegree{2, 0};
}

inline bool matches_aalp(const Instance& inst) {
  std::size_t d = inst.num_x();
  if (!inst.quotient_rels.empty() || d < 3 || inst.num_cols() != d) return false;
  for (std::size_t j = 0; j < d; ++j)
    if (inst.column_degree(j) != (j + 2 < d ? 1 : 2)) return false;
  return true;
}

inline bool matches_ci(const Instance& inst) {
  if (inst.quotient_rels.size() != 2 || inst.num_x() < 3) return false;
  if (inst.num_cols() != inst.num_x() - 2) return false;
  for (const auto& f : inst.quotient_rels)
    if (!is_x_quadric(f)) return false;
  for (std::size_t j = 0; j < inst.num_cols(); ++j)
    if (inst.column_degree(j) != 1) return false;
  return height(IdealHandle(inst.ring, inst.quotient_rels)) == 2;
}

}  // namespace detail

inline Setting classify(const Instance& inst) {
  if (detail::matches_aalp(inst)) return Setting::AALP;
  if (detail::matches_ci(inst)) {
    if (inst.num_x() == 4 && inst.num_y() == 4 && inst.phi == jacobian_transpose(inst.quotient_rels))
      return Setting::TANGENT;
    return Setting::CI;
  }
  return Setting::GENERIC;
}

struct PredictionRow {
  int component = 0;  // i in A_i
  std::size_t count = 0;
  BiDegree bidegree;
  CertStatus status = CertStatus::Unconditional;
  bool count_unconditional = false;  // the count holds even when the bidegree is not certified
  std::string reason;
};

// A Kim-Mukundan prediction for A_{delta - t} read off strand t.
struct StrandPrediction {
  int t = 0;
  std::size_t coker_rank = 0;
  std::size_t count = 0;
  BiDegree bidegree;
  int shift = 0;
  bool certified = false;
  std::string reason;
};

struct PredictionReport {
  Setting setting = Setting::GENERIC;
  int d = 0;
  int delta = 0;
  int tau = 0;
  std::vector<PredictionRow> rows;
  std::vector<StrandPrediction> strands;
  std::optional<Polynomial> top_generator;  // det of the (modified) Jacobian dual
  std::map<std::string, int> heights;
  std::vector<std::string> notes;
};

struct StrandAnalysis {
  StrandComplex strand;
  BeReport be;
  std::optional<Multipliers> multipliers;
  std::optional<KmComplex> km;
  std::optional<KmCertificate> certificate;
};

inline StrandAnalysis analyze_strand(const std::vector<GradedGenerator>& gens, int t, DeltaTau dt,
                                     const BeOptions& opts = {}) {
  StrandAnalysis a{koszul_strand(gens, t), {}, {}, {}, {}};
  a.be = be_check(a.strand, opts);
  if (!a.be.composition_zero || !a.be.rank_condition) return a;
  a.multipliers = be_multipliers(a.strand, a.be);
  if (a.be.coker_rank == 1 || a.be.coker_rank == 2) {
    a.km = km_complex(a.strand, a.be, *a.multipliers, dt);
    a.certificate = km_exactness_certificate(a.strand, a.be, *a.multipliers);
  }
  return a;
}

namespace detail {

inline StrandPrediction strand_prediction(const StrandAnalysis& a) {
  StrandPrediction p;
  p.t = a.strand.t;
  p.coker_rank = a.be.coker_rank;
  if (a.km) {
    p.count = a.km->generator_count;
    p.bidegree = a.km->predicted;
    p.shift = a.km->shift;
  }
  if (a.certificate) {
    p.certified = a.certificate->granted && a.be.acyclic();
    p.reason = a.certificate->reason;
  } else {
    p.reason = "no Kim-Mukundan complex for this strand";
  }
  return p;
}

inline void fill_strands(PredictionReport& rep, const Instance& inst) {
  auto gens = strand_generators(inst);
  DeltaTau dt = delta_tau(gens, inst.num_x());
  int ht_l = height(symmetric_ideal(inst));
  rep.heights["ht L"] = ht_l;
  bool regular = gens.size() == inst.num_x() && ht_l == int(gens.size());
  if (!regular) rep.notes.push_back("generators of L are not a regular sequence of length #x");
  for (int t = 0; t <= dt.delta; ++t) {
    auto a = analyze_strand(gens, t, dt);
    rep.strands.push_back(strand_prediction(a));
    if (!regular) {
      rep.strands.back().certified = false;
      rep.strands.back().reason = "L is not a complete intersection of #x generators";
    }
    if (t == 1 && a.strand.length()) rep.heights["ht I(sigma)"] = a.be.heights.at(0);
    if (t == 2 && a.strand.length()) rep.heights["ht I(rho)"] = a.be.heights.at(0);
  }
}

// Rows shared by both theorem settings: A_2 at (2,d), A_1 at (1,lin) with
// `ones` generators, A_0 at (0,fib).
inline void theorem_rows(PredictionReport& rep, const Instance& inst, std::size_t ones, int lin, int fib) {
  auto hyp = hypothesis_report(inst);
  std::string failed;
  if (!hyp.pd_one) failed = "phi is not a projective-dimension-one presentation";
  else if (!hyp.entries_generate_m) failed = "I_1(phi) differs from the x-ideal";
  else if (!hyp.holds_gs(hyp.dim_ring)) failed = "G_" + std::to_string(hyp.dim_ring) + " fails";
  const StrandPrediction* s1 = rep.strands.size() > 1 ? &rep.strands[1] : nullptr;
  int rho = rep.heights.count("ht I(rho)") ? rep.heights["ht I(rho)"] : -1;
  PredictionRow a2{2, 1, {2, rep.d}, CertStatus::Unconditional, true, "top component is generated by det B"};
  PredictionRow a1{1, ones, {1, lin}, CertStatus::HypothesisFailed, false, ""};
  if (s1 && s1->certified) {
    a1.status = CertStatus::Proved;
    a1.reason = s1->reason;
  } else {
    int h = rep.heights.count("ht I(sigma)") ? rep.heights["ht I(sigma)"] : -1;
    a1.reason = "ht I(sigma) = " + std::to_string(h) + " < 3";
  }
  PredictionRow a0{0, 1, {0, fib}, CertStatus::HypothesisFailed, true, ""};
  if (rho >= 2) {
    a0.status = CertStatus::Proved;
    a0.reason = "ht I(rho) = " + std::to_string(rho) + " >= 2";
  } else {
    a0.reason = "ht I(rho) = " + std::to_string(rho) + " < 2";
  }
  rep.rows = {a2, a1, a0};
  if (!failed.empty())
    for (auto& row : rep.rows) {
      row.status = CertStatus::HypothesisFailed;
      row.count_unconditional = false;
      row.reason = failed;
    }
  for (const auto& row : rep.rows) {
    for (const auto& s : rep.strands) {
      if (rep.delta - s.t != row.component || !s.count) continue;
      if (s.bidegree != row.bidegree || s.count != row.count)
        rep.notes.push_back("strand " + std::to_string(s.t) + " complex predicts " + std::to_string(s.count) + " at (" +
                            std::to_string(s.bidegree.x) + "," + std::to_string(s.bidegree.y) + ")");
    }
  }
}

}  // namespace detail

inline PredictionReport predict_aalp(const Instance& inst) {
  if (!detail::matches_aalp(inst)) fail(ErrorCode::SettingMismatch, "instance is not of type (1,...,1,2,2) with d >= 3");
  PredictionReport rep;
  rep.setting = Setting::AALP;
  rep.d = int(inst.num_x());
  DeltaTau dt = delta_tau(inst);
  rep.delta = dt.delta;
  rep.tau = dt.tau;
  detail::fill_strands(rep, inst);
  detail::theorem_rows(rep, inst, std::size_t(rep.d), 2 * rep.d - 2, 4 * rep.d - 4);
  rep.top_generator = determinant(jacobian_dual(inst.phi));
  return rep;
}

inline PredictionReport predict_ci(const Instance& inst) {
  if (!detail::matches_ci(inst))
    fail(ErrorCode::SettingMismatch, "instance needs a linear phi with #x - 2 columns and two quadrics of height 2");
  PredictionReport rep;
  rep.setting = classify(inst);
  rep.d = int(inst.num_x()) - 2;
  DeltaTau dt = delta_tau(inst);
  rep.delta = dt.delta;
  rep.tau = dt.tau;
  detail::fill_strands(rep, inst);
  detail::theorem_rows(rep, inst, std::size_t(rep.d + 2), 2 * rep.d, 4 * rep.d);
  rep.top_generator = determinant(modified_jacobian_dual(inst.phi, inst.quotient_rels));
  if (rep.setting == Setting::TANGENT) rep.notes.push_back("normality of the quotient ring is asserted by the user");
  return rep;
}

inline PredictionReport predict(const Instance& inst) {
  switch (classify(inst)) {
    case Setting::AALP: return predict_aalp(inst);
    case Setting::CI:
    case Setting::TANGENT: return predict_ci(inst);
    case Setting::GENERIC: break;
  }
  PredictionReport rep;
  rep.setting = Setting::GENERIC;
  rep.d = int(inst.num_x());
  DeltaTau dt = delta_tau(inst);
  rep.delta = dt.delta;
  rep.tau = dt.tau;
  if (dt.delta >= 0) detail::fill_strands(rep, inst);
  return rep;
}

// The Jacobian dual used for the top component: plain for presentations
// without relations, modified otherwise.
inline std::optional<PolyMatrix> top_dual(const Instance& inst) {
  try {
    PolyMatrix B = inst.quotient_rels.empty() ? jacobian_dual(inst.phi)
                                              : modified_jacobian_dual(inst.phi, inst.quotient_rels);
    if (B.rows() != B.cols()) return std::nullopt;
    return B;
  } catch (const Error&) {
    return std::nullopt;
  }
}

struct RowCheck {
  PredictionRow row;
  BidegreeTable observed;
  bool certified = false;
  bool agrees = false;
  bool count_agrees = false;
  std::string message;
};

struct VerifyReport {
  PredictionReport prediction;
  BidegreeWindow window;
  unsigned exponent = 1;
  BidegreeTable oracle;
  std::map<int, BidegreeTable> oracle_T;
  std::vector<RowCheck> checks;
  std::optional<DetGeneratorReport> det;
  std::vector<std::string> warnings;
  bool failed = false;
};

inline std::string bidegree_string(BiDegree b) {
  return "(" + std::to_string(b.x) + "," + std::to_string(b.y) + ")";
}

inline VerifyReport verify_instance(const Instance& inst, std::optional<BidegreeWindow> window = std::nullopt) {
  VerifyReport v;
  v.prediction = predict(inst);
  v.window = window ? *window : default_window(inst);
  ReesIdeal ri = rees_ideal(inst);
  v.exponent = ri.exponent;
  v.warnings = ri.warnings;
  v.oracle = minimal_generators_B(ri.J, ri.L, v.window);
  for (const auto& w : v.oracle.warnings) v.warnings.push_back(w);
  for (int i = 0; i <= v.window.max_x; ++i) v.oracle_T[i] = minimal_generators_T(ri.J, ri.L, i, v.window);
  for (const auto& row : v.prediction.rows) {
    RowCheck c;
    c.row = row;
    c.observed = v.oracle.row(row.component);
    c.certified = row.status != CertStatus::HypothesisFailed;
    BidegreeTable want;
    want.counts[row.bidegree] = row.count;
    c.agrees = c.observed == want;
    c.count_agrees = c.observed.total() == row.count;
    if (c.agrees) {
      c.message = "matches oracle";
    } else if (c.certified) {
      c.message = "oracle " + c.observed.to_string() + " contradicts certified " + std::to_string(row.count) + " at " +
                  bidegree_string(row.bidegree);
      v.failed = true;
    } else {
      c.message = "differs from predicted " + bidegree_string(row.bidegree) + ": " + row.reason + "; oracle " +
                  c.observed.to_string();
      if (row.count_unconditional && !c.count_agrees) {
        c.message += "; unconditional count " + std::to_string(row.count) + " fails";
        v.failed = true;
      }
    }
    v.checks.push_back(std::move(c));
  }
  for (const auto& s : v.prediction.strands) {
    if (!s.certified || !s.count) continue;
    int i = v.prediction.delta - s.t;
    if (i < 0 || i > v.window.max_x) continue;
    BidegreeTable want;
    want.counts[s.bidegree] = s.count;
    if (!(v.oracle_T[i] == want)) {
      v.failed = true;
      v.warnings.push_back("certified strand " + std::to_string(s.t) + " prediction differs from the T-minimal oracle");
    }
  }
  if (auto B = top_dual(inst)) {
    v.det = det_generator_check(inst, *B, ri.J);
    if (!v.det->passed()) v.failed = true;
  }
  return v;
}

struct DualityRow {
  int j = 0;
  std::size_t oracle = 0;
  std::size_t kernel = 0;
};

struct DualityReport {
  int t = 0;
  int component = 0;
  std::vector<DualityRow> rows;
  std::size_t mismatches = 0;
};

inline DualityReport duality_verify(const Instance& inst, const ReesIdeal& ri, int t, int jmin, int jmax) {
  auto gens = strand_generators(inst);
  DeltaTau dt = delta_tau(gens, inst.num_x());
  DualityReport rep;
  rep.t = t;
  rep.component = dt.delta - t;
  auto K = koszul_strand(gens, t);
  auto ker = strand_kernel_dims(K, dt.tau, jmin, jmax);
  for (int j = jmin; j <= jmax; ++j) {
    std::size_t a = 0;
    if (rep.component >= 0) {
      BiDegree b{rep.component, j};
      a = graded_piece_dims(ri.J, b).ideal - graded_piece_dims(ri.L, b).ideal;
    }
    rep.rows.push_back({j, a, ker[j]});
    if (a != ker[j]) ++rep.mismatches;
  }
  return rep;
}

inline DualityReport duality_verify(const Instance& inst, int t, int jmin, int jmax) {
  return duality_verify(inst, rees_ideal(inst, {false, {}}), t, jmin, jmax);
}

struct TangentInstance {
  Instance instance;
  bool forms_in_entries = false;   // f, g in I_1(Theta) via the Euler relation
  bool entries_cover_m = false;    // I_1(Theta) + (f, g) contains the x-ideal
  int minors_height = 0;           // ht I_2(Theta)
  bool evidence = false;           // minors_height >= 3
  std::vector<std::string> notes;
};

inline TangentInstance build_tangent_instance(const Polynomial& f, const Polynomial& g, std::string label = "tangent") {
  const RingPtr& R = f.ring();
  require_same_ring(R, g.ring());
  if (!detail::is_x_quadric(f) || !detail::is_x_quadric(g)) fail(ErrorCode::NotQuadrics, "f and g must be quadrics in x");
  if (R->num_x() != 4 || R->num_y() != 4) fail(ErrorCode::SettingMismatch, "tangent instances need 4 x- and 4 y-variables");
  if (height(IdealHandle(R, {f, g})) != 2) fail(ErrorCode::NotRegularSequence, "ht(f, g) < 2");
  TangentInstance out;
  PolyMatrix theta = jacobian_transpose({f, g});
  out.instance = make_instance(R, theta, {f, g}, std::move(label));
  IdealHandle i1 = entries_ideal(theta);
  out.forms_in_entries = contains(i1, f) && contains(i1, g);
  out.entries_cover_m = contains(ideal_sum(i1, IdealHandle(R, {f, g})), x_ideal(R));
  out.minors_height = height(minors(theta, 2));
  out.evidence = out.minors_height >= 3;
  out.notes.push_back("normality of the quotient ring is asserted by the user");
  return out;
}

// B(Theta) equals Theta with x_i replaced by y_i.
inline bool jacobians_lemma_check(const PolyMatrix& theta) {
  PolyMatrix B = jacobian_dual(theta);
  if (B.rows() != theta.rows() || B.cols() != theta.cols()) return false;
  for (std::size_t i = 0; i < theta.rows(); ++i)
    for (std::size_t j = 0; j < theta.cols(); ++j)
      if (!(B(i, j) == swap_blocks(theta(i, j), SwapDirection::XToY))) return false;
  return true;
}

struct ProbeReport {
  std::string label;
  bool refused = false;
  std::string notice;
  int minors_height = 0;
  int rho_height = -1;
  std::optional<int> fiber_degree;
  bool consistent = true;  // ht I(rho) >= 2 implies fiber degree 8
};

inline ProbeReport conjecture_probe(const Polynomial& f, const Polynomial& g, bool run_oracle = true,
                                    std::string label = "probe") {
  ProbeReport rep;
  rep.label = label;
  TangentInstance ti = build_tangent_instance(f, g, std::move(label));
  rep.minors_height = ti.minors_height;
  if (!ti.evidence) {
    rep.refused = true;
    rep.notice = "ht I_2(Theta) = " + std::to_string(ti.minors_height) + " < 3; outside the normal setting";
    return rep;
  }
  auto K = koszul_strand(ti.instance, 2);
  BeReport be = be_check(K);
  rep.rho_height = be.heights.empty() ? -1 : be.heights[0];
  if (run_oracle) {
    auto sf = special_fiber(rees_ideal(ti.instance, {false, {}}).J);
    if (sf.fiber_ideal.num_generators() == 1) rep.fiber_degree = bidegree_of(sf.fiber_ideal.generators()[0]).y;
    if (rep.rho_height >= 2) rep.consistent = rep.fiber_degree && *rep.fiber_degree == 8;
  }
  return rep;
}

struct ObservationReport {
  int d = 0;
  std::vector<std::size_t> coker_ranks;  // strands t = 0..d
  std::vector<std::size_t> expected;     // binom(d, t)
  bool ranks_match = false;
  bool det_outside_L = false;
  bool det_in_J = false;  // certified by x_v det in L
};

// The module of differentials of k[x_1..x_{2d}]/(f_1..f_d), via its
// transposed Jacobian presentation.
inline Instance differentials_instance(const std::vector<Polynomial>& fs, std::string label = "differentials") {
  const RingPtr& R = fs.at(0).ring();
  return make_instance(R, jacobian_transpose(fs), fs, std::move(label));
}

inline ObservationReport observation_ranks(int d, const std::vector<Polynomial>& fs) {
  if (fs.size() != std::size_t(d)) fail(ErrorCode::SettingMismatch, "need d quadrics");
  const RingPtr& R = fs.at(0).ring();
  if (R->num_x() != std::size_t(2 * d)) fail(ErrorCode::SettingMismatch, "need 2d x-variables");
  for (const auto& f : fs)
    if (!detail::is_x_quadric(f)) fail(ErrorCode::NotQuadrics, "forms must be quadrics in x");
  Instance inst = differentials_instance(fs);
  auto gens = strand_generators(inst);
  ObservationReport rep;
  rep.d = d;
  BeOptions opts;
  opts.heights = false;
  for (int t = 0; t <= d; ++t) {
    auto K = koszul_strand(gens, t);
    rep.coker_ranks.push_back(be_check(K, opts).coker_rank);
    rep.expected.push_back(binomial(std::size_t(d), std::size_t(t)));
  }
  rep.ranks_match = rep.coker_ranks == rep.expected;
  Polynomial det = determinant(modified_jacobian_dual(inst.phi, fs));
  GroebnerOptions go;
  go.degree_bound = int(det.total_degree()) + 1;
  std::vector<Polynomial> lg;
  for (const auto& g : gens) lg.push_back(g.poly);
  GroebnerBasis gb = compute_groebner(R, lg, R->order(), go);
  rep.det_outside_L = !det.is_zero() && !gb.reduces_to_zero(det);
  rep.det_in_J = true;
  for (auto v : R->x_indices())
    if (!gb.reduces_to_zero(Polynomial::variable(R, v) * det)) rep.det_in_J = false;
  return rep;
}

struct ExpectedFacts {
  BidegreeTable table;
  std::map<std::string, int> facts;
  std::vector<std::string> provenance;
};

struct ExampleRecord {
  std::string name;
  Instance instance;
  ExpectedFacts expected;
  std::map<std::string, PolyMatrix> matrices;  // displayed matrices
};

namespace detail {

inline PolyMatrix parse_rows(const RingPtr& R, std::vector<std::vector<std::string>> rows) {
  return PolyMatrix::parse(R, rows);
}

}  // namespace detail

inline std::vector<ExampleRecord> example_registry() {
  std::vector<ExampleRecord> out;
  {
    auto R = standard_ring(4, 5);
    auto phi = detail::parse_rows(R, {{"x1", "0", "x4^2", "x2*x3"},
                                      {"x2", "0", "x1*x2", "x3^2"},
                                      {"0", "0", "x1^2", "x2^2"},
                                      {"0", "x3", "x2^2", "x2*x3"},
                                      {"0", "x4", "x4^2", "x2^2"}});
    ExampleRecord r{"ex-4-13", make_instance(R, phi, {}, "ex-4-13"), {}, {}};
    r.expected.table.counts = {{{1, 5}, 2}, {{0, 12}, 1}, {{2, 4}, 1}};
    r.expected.facts = {{"ht I_4(phi)", 2}, {"G_4", 1}, {"ht I(sigma)", 2}, {"ht I(rho)", 2},
                        {"delta", 2},       {"tau", 4}, {"analytic spread", 4}};
    r.expected.provenance = {"two equations of bidegree (1,5)", "one equation of bidegree (0,12)",
                             "ht I(sigma) = 2, so the strand-1 hypotheses fail"};
    r.matrices["sigma"] = detail::parse_rows(R, {{"y1", "0"}, {"y2", "0"}, {"0", "y4"}, {"0", "y5"}});
    out.push_back(std::move(r));
  }
  {
    auto R = standard_ring(4, 3);
    auto psi = detail::parse_rows(R, {{"x1", "x3"}, {"x3", "x4"}, {"x4", "x2"}});
    std::vector<Polynomial> fg{Polynomial::parse(R, "x1^2"), Polynomial::parse(R, "x2^2")};
    ExampleRecord r{"ex-5-12", make_instance(R, psi, fg, "ex-5-12"), {}, {}};
    r.expected.table.counts = {{{1, 4}, 4}, {{0, 6}, 1}, {{2, 2}, 1}};
    r.expected.facts = {{"rank rho", 9}, {"ht I(rho)", 1}, {"ht I(sigma)", 3}, {"G_2", 1},
                        {"delta", 2},    {"tau", 2},       {"analytic spread", 2}};
    r.expected.provenance = {"four equations of bidegree (1,4)", "rank rho = 9 and ht I(rho) = 1"};
    r.matrices["psi"] = psi;
    r.matrices["rho"] = detail::parse_rows(R, {{"1", "0", "y1", "0", "0", "0", "0", "0", "0", "0"},
                                               {"0", "0", "0", "y1", "0", "0", "y3", "0", "0", "0"},
                                               {"0", "0", "y2", "0", "y1", "0", "y1", "0", "0", "0"},
                                               {"0", "0", "y3", "0", "0", "y1", "y2", "0", "0", "0"},
                                               {"0", "1", "0", "0", "0", "0", "0", "y3", "0", "0"},
                                               {"0", "0", "0", "y2", "0", "0", "0", "y1", "y3", "0"},
                                               {"0", "0", "0", "y3", "0", "0", "0", "y2", "0", "y3"},
                                               {"0", "0", "0", "0", "y2", "0", "0", "0", "y1", "0"},
                                               {"0", "0", "0", "0", "y3", "y2", "0", "0", "y2", "y1"},
                                               {"0", "0", "0", "0", "0", "y3", "0", "0", "0", "y2"}});
    out.push_back(std::move(r));
  }
  {
    auto R = standard_ring(4, 4);
    Polynomial f = Polynomial::parse(R, "x1^2+x2*x3+x4^2");
    Polynomial g = Polynomial::parse(R, "x2^2+x1*x4+x3^2");
    TangentInstance ti = build_tangent_instance(f, g, "ex-jacobians");
    ExampleRecord r{"ex-jacobians", ti.instance, {}, {}};
    r.expected.table.counts = {{{2, 2}, 1}, {{1, 4}, 4}};
    r.expected.facts = {{"ht I_2(Theta)", 3}, {"delta", 2}, {"tau", 2}};
    r.expected.provenance = {"displayed Theta and B(Theta)", "four equations of bidegree (1,4)"};
    r.matrices["Theta"] = detail::parse_rows(R, {{"2*x1", "x4"}, {"x3", "2*x2"}, {"x2", "2*x3"}, {"2*x4", "x1"}});
    r.matrices["B(Theta)"] = detail::parse_rows(R, {{"2*y1", "y4"}, {"y3", "2*y2"}, {"y2", "2*y3"}, {"2*y4", "y1"}});
    r.matrices["[B(Theta)|Theta]"] = detail::parse_rows(
        R, {{"2*y1", "y4", "2*x1", "x4"}, {"y3", "2*y2", "x3", "2*x2"}, {"y2", "2*y3", "x2", "2*x3"}, {"2*y4", "y1", "2*x4", "x1"}});
    out.push_back(std::move(r));
  }
  {
    auto R = standard_ring(4, 4);
    Polynomial f = Polynomial::parse(R, "x1^2");
    Polynomial g = Polynomial::parse(R, "x2^2");
    ExampleRecord r{"tangent-degenerate", make_instance(R, jacobian_transpose({f, g}), {f, g}, "tangent-degenerate"), {}, {}};
    r.expected.facts = {{"ht I_2(Theta)", 1}};
    r.expected.provenance = {"non-reduced quotient; the normality evidence check fails"};
    out.push_back(std::move(r));
  }
  {
    auto R = standard_ring(3, 3);
    auto phi = detail::parse_rows(R, {{"x1"}, {"x2"}, {"x3"}});
    ExampleRecord r{"linear-type", make_instance(R, phi, {}, "linear-type"), {}, {}};
    r.expected.provenance = {"J = L"};
    out.push_back(std::move(r));
  }
  return out;
}

inline std::optional<ExampleRecord> find_example(std::string_view name) {
  for (auto& r : example_registry())
    if (r.name == name) return r;
  return std::nullopt;
}

// Seeded sparse forms with small integer coefficients.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  Polynomial form(const RingPtr& R, int deg, double density = 0.5, int coef = 3) {
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    std::uniform_int_distribution<int> c(-coef, coef);
    auto monos = monomials_of_degree(R->x_indices(), deg);
    for (;;) {
      Polynomial p(R);
      for (const auto& m : monos) {
        if (keep(rng_) > density) continue;
        int v = c(rng_);
        if (v) p += Polynomial::monomial(R, m, v);
      }
      if (!p.is_zero()) return p;
    }
  }

  // (d+1) x d with columns of x-degree 1, ..., 1, 2, 2.
  Instance aalp(int d, std::string label = "random-aalp") {
    auto R = standard_ring(std::size_t(d), std::size_t(d + 1));
    PolyMatrix phi(R, std::size_t(d + 1), std::size_t(d));
    for (int j = 0; j < d; ++j) {
      int deg = j + 2 < d ? 1 : 2;
      for (int i = 0; i <= d; ++i) phi(i, j) = sparse_entry(R, deg, deg == 1 ? 0.6 : 0.35);
      fix_column(phi, std::size_t(j), R, deg);
    }
    return make_instance(R, phi, {}, std::move(label));
  }

  // Linear (d+1) x d matrix over d+2 variables with two quadric relations.
  Instance ci(int d, std::string label = "random-ci") {
    auto R = standard_ring(std::size_t(d + 2), std::size_t(d + 1));
    for (;;) {
      PolyMatrix phi(R, std::size_t(d + 1), std::size_t(d));
      for (int j = 0; j < d; ++j) {
        for (int i = 0; i <= d; ++i) phi(i, j) = sparse_entry(R, 1, 0.85);
        fix_column(phi, std::size_t(j), R, 1);
      }
      Polynomial f = form(R, 2, 0.3), g = form(R, 2, 0.3);
      if (height(IdealHandle(R, {f, g})) != 2) continue;
      return make_instance(R, phi, {f, g}, std::move(label));
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  Polynomial sparse_entry(const RingPtr& R, int deg, double density) {
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    if (keep(rng_) > density) return Polynomial(R);
    std::uniform_int_distribution<int> c(-2, 2);
    auto monos = monomials_of_degree(R->x_indices(), deg);
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    Polynomial p(R);
    int terms = 1 + int(rng_() % 2);
    for (int k = 0; k < terms; ++k) {
      int v = c(rng_);
      p += Polynomial::monomial(R, monos[pick(rng_)], v ? v : 1);
    }
    return p;
  }

  void fix_column(PolyMatrix& phi, std::size_t j, const RingPtr& R, int deg) {
    bool any = false;
    for (std::size_t i = 0; i < phi.rows(); ++i) any |= !phi(i, j).is_zero();
    if (!any) phi(rng_() % phi.rows(), j) = form(R, deg, 0.4);
  }

  std::mt19937_64 rng_;
};

// Hypotheses the duality and theorem suites rely on: pd one, I_1 = m, G_d.
inline bool passes_gd(const Instance& inst) {
  auto h = hypothesis_report(inst);
  return h.pd_one && h.entries_generate_m && h.mu_matches && h.holds_gs(h.dim_ring);
}

// Random G_d-passing instances of both kinds, alternating.
inline std::vector<Instance> random_gd_instances(std::size_t count, std::uint64_t seed) {
  InstanceGenerator gen(seed);
  std::vector<Instance> out;
  std::size_t attempts = 0;
  while (out.size() < count && attempts < 2000) {
    ++attempts;
    bool aalp = out.size() % 2 == 0;
    std::string label = std::string(aalp ? "random-aalp-" : "random-ci-") + std::to_string(out.size());
    Instance inst = aalp ? gen.aalp(3, label) : gen.ci(2, label);
    if (passes_gd(inst)) out.push_back(std::move(inst));
  }
  return out;
}

// Seeded quadric pairs in 4 variables passing the normality evidence gate.
inline std::vector<std::pair<Polynomial, Polynomial>> random_quadric_pairs(std::size_t count, std::uint64_t seed) {
  InstanceGenerator gen(seed);
  auto R = standard_ring(4, 4);
  std::vector<std::pair<Polynomial, Polynomial>> out;
  std::size_t attempts = 0;
  while (out.size() < count && attempts < 2000) {
    ++attempts;
    Polynomial f = gen.form(R, 2, 0.35, 2), g = gen.form(R, 2, 0.35, 2);
    if (height(IdealHandle(R, {f, g})) != 2) continue;
    if (height(minors(jacobian_transpose({f, g}), 2)) < 3) continue;
    out.emplace_back(f, g);
  }
  return out;
}

// d generic quadrics in 2d variables with 2d y-variables: a complete
// intersection whose singular locus is the origin alone.
inline std::vector<Polynomial> random_quadrics(int d, std::uint64_t seed) {
  InstanceGenerator gen(seed);
  auto R = standard_ring(std::size_t(2 * d), std::size_t(2 * d));
  for (;;) {
    std::vector<Polynomial> fs;
    for (int i = 0; i < d; ++i) fs.push_back(gen.form(R, 2, 0.5, 3));
    IdealHandle ci(R, fs);
    if (height(ci) != d) continue;
    if (height(ideal_sum(minors(jacobian_transpose(fs), d), ci)) != 2 * d) continue;
    return fs;
  }
}

}  // namespace reesalg
