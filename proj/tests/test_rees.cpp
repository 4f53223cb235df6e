#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "support.hpp"

using namespace reesalg;
using testkit::Gen;

namespace {

Polynomial P(const RingPtr& R, const char* s) { return Polynomial::parse(R, s); }

BidegreeTable table(std::map<BiDegree, std::size_t> m) {
  BidegreeTable t;
  t.counts = std::move(m);
  return t;
}

// Renames variables by the permutation `perm` of all variable indices.
Polynomial renamed(const Polynomial& p, const std::vector<std::size_t>& perm) {
  std::vector<Polynomial::Term> ts;
  for (const auto& [m, c] : p.terms()) {
    Monomial n;
    for (std::size_t v = 0; v < perm.size(); ++v) n.set(perm[v], m[v]);
    ts.emplace_back(n, c);
  }
  return Polynomial::from_terms(p.ring(), std::move(ts));
}

// Same module with permuted x-variables and permuted generators.
Instance scrambled(const Instance& inst, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t d = inst.num_x(), n = inst.num_y();
  std::vector<std::size_t> xperm(d), rows(n);
  std::iota(xperm.begin(), xperm.end(), 0);
  std::iota(rows.begin(), rows.end(), 0);
  std::shuffle(xperm.begin(), xperm.end(), rng);
  std::shuffle(rows.begin(), rows.end(), rng);
  std::vector<std::size_t> perm(d + n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = 0; i < d; ++i) perm[i] = xperm[i];
  PolyMatrix phi(inst.ring, n, inst.num_cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < inst.num_cols(); ++j) phi(rows[i], j) = renamed(inst.phi(i, j), perm);
  std::vector<Polynomial> rels;
  for (const auto& f : inst.quotient_rels) rels.push_back(renamed(f, perm));
  return make_instance(inst.ring, phi, rels, inst.label + "-scrambled");
}

}  // namespace

TEST(SymmetricIdeal, Examples) {
  auto R = standard_ring(3, 3);
  auto col = make_instance(R, PolyMatrix::parse(R, {{"x1"}, {"x2"}, {"x3"}}));
  auto L = symmetric_ideal(col);
  ASSERT_EQ(L.num_generators(), 1u);
  EXPECT_EQ(L.generators()[0], P(R, "x1*y1+x2*y2+x3*y3"));

  auto gens413 = strand_generators(testkit::example("ex-4-13").instance);
  std::vector<BiDegree> degs;
  for (const auto& g : gens413) degs.push_back(g.degree);
  EXPECT_EQ(degs, (std::vector<BiDegree>{{1, 1}, {1, 1}, {2, 1}, {2, 1}}));

  auto gens512 = strand_generators(testkit::example("ex-5-12").instance);
  degs.clear();
  for (const auto& g : gens512) degs.push_back(g.degree);
  EXPECT_EQ(degs, (std::vector<BiDegree>{{1, 1}, {1, 1}, {2, 0}, {2, 0}}));
}

TEST(InstanceValidation, RejectsBadInput) {
  auto R = standard_ring(2, 2);
  EXPECT_THROW(make_instance(R, PolyMatrix(R, 2, 0)), Error);
  EXPECT_THROW(make_instance(R, PolyMatrix::parse(R, {{"x1*y1"}, {"x2"}})), Error);
  EXPECT_THROW(make_instance(R, PolyMatrix::parse(R, {{"x1", "x1"}, {"x2", "x2"}})), Error);
  EXPECT_THROW(make_instance(R, PolyMatrix::parse(R, {{"x1"}, {"x2^2"}})), Error);
  EXPECT_THROW(make_instance(R, PolyMatrix::parse(R, {{"x1"}, {"x2"}}), {P(R, "y1")}), Error);
}

TEST(ReesIdeal, LinearType) {
  auto ex = testkit::example("linear-type");
  auto ri = rees_ideal(ex.instance);
  EXPECT_TRUE(ideals_equal(ri.J, ri.L));
  EXPECT_EQ(ri.exponent, 1u);
  auto w = default_window(ex.instance);
  EXPECT_TRUE(minimal_generators_B(ri.J, ri.L, w).empty());
  EXPECT_TRUE(minimal_generators_T(ri.J, ri.L, 0, w).empty());
  auto sf = special_fiber(ri.J);
  EXPECT_EQ(sf.fiber_ideal.num_generators(), 0u);
  EXPECT_EQ(sf.analytic_spread, 3);
}

TEST(ReesIdeal, PaperTables) {
  struct Case {
    const char* name;
    BidegreeTable want;
  };
  for (const auto& c : {Case{"ex-4-13", table({{{1, 5}, 2}, {{0, 12}, 1}, {{2, 4}, 1}})},
                        Case{"ex-5-12", table({{{1, 4}, 4}, {{0, 6}, 1}, {{2, 2}, 1}})}}) {
    auto ex = testkit::example(c.name);
    auto ri = rees_ideal(ex.instance);
    EXPECT_TRUE(contains(ri.J, ri.L)) << c.name;
    EXPECT_FALSE(contains(ri.L, ri.J)) << c.name;
    EXPECT_EQ(minimal_generators_B(ri.J, ri.L, default_window(ex.instance)), c.want) << c.name;
  }
}

TEST(ReesIdeal, SaturationFixedPointAndExponent) {
  for (const char* name : {"ex-4-13", "ex-5-12", "ex-jacobians"}) {
    auto inst = testkit::example(name).instance;
    auto ri = rees_ideal(inst);
    auto m = x_ideal(inst.ring);
    EXPECT_TRUE(ideals_equal(colon(ri.J, m), ri.J)) << name;
    // m^N J in L, and m^(N-1) J not in L.
    std::vector<Polynomial> layer = ri.J.generators();
    std::vector<std::vector<Polynomial>> layers{layer};
    for (unsigned k = 0; k < ri.exponent; ++k) {
      std::vector<Polynomial> next;
      for (const auto& p : layers.back())
        for (auto v : inst.ring->x_indices()) next.push_back(p * Polynomial::variable(inst.ring, v));
      layers.push_back(std::move(next));
    }
    for (const auto& p : layers[ri.exponent]) ASSERT_TRUE(contains(ri.L, p)) << name;
    bool escapes = false;
    for (const auto& p : layers[ri.exponent - 1]) escapes = escapes || !contains(ri.L, p);
    EXPECT_TRUE(escapes) << name;
  }
}

TEST(ReesIdeal, AgreesWithIteratedColon) {
  for (const char* name : {"ex-4-13", "ex-5-12", "ex-jacobians", "linear-type"}) {
    auto inst = testkit::example(name).instance;
    auto ri = rees_ideal(inst);
    auto sat = saturate(ri.L, x_ideal(inst.ring));
    EXPECT_TRUE(ideals_equal(sat.ideal, ri.J)) << name;
    EXPECT_EQ(sat.exponent, ri.exponent) << name;
  }
}

TEST(ReesIdeal, ProgressCanCancel) {
  auto inst = testkit::example("ex-5-12").instance;
  std::vector<std::string> stages;
  ReesOptions opts;
  opts.progress = [&](std::string_view stage, std::size_t, std::size_t) {
    stages.emplace_back(stage);
    return true;
  };
  rees_ideal(inst, opts);
  EXPECT_FALSE(stages.empty());
  opts.progress = [](std::string_view, std::size_t, std::size_t) { return false; };
  try {
    rees_ideal(inst, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Cancelled);
  }
}

TEST(MinimalGenerators, MatchDefinitionOnExample512) {
  auto inst = testkit::example("ex-5-12").instance;
  auto ri = rees_ideal(inst);
  auto w = default_window(inst);
  auto t = minimal_generators_B(ri.J, ri.L, w);
  for (int a = 0; a <= w.max_x; ++a)
    for (int b = 0; b <= w.max_y; ++b)
      ASSERT_EQ(t.at({a, b}), testkit::minimal_count_by_definition(ri.J, ri.L, {a, b})) << a << "," << b;
}

TEST(MinimalGenerators, MatchDefinitionOnExample413) {
  auto inst = testkit::example("ex-4-13").instance;
  auto ri = rees_ideal(inst);
  auto t = minimal_generators_B(ri.J, ri.L, default_window(inst));
  for (BiDegree b : std::vector<BiDegree>{{2, 4}, {2, 3}, {2, 5}, {1, 5}, {1, 4}, {1, 6}, {0, 12}, {0, 11}, {1, 1}, {2, 1}})
    ASSERT_EQ(t.at(b), testkit::minimal_count_by_definition(ri.J, ri.L, b)) << b.x << "," << b.y;
}

TEST(MinimalGenerators, InvariantUnderRelabeling) {
  for (const char* name : {"ex-5-12", "ex-4-13"}) {
    auto inst = testkit::example(name).instance;
    auto ri = rees_ideal(inst);
    auto want = minimal_generators_B(ri.J, ri.L, default_window(inst));
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      auto other = scrambled(inst, seed);
      auto ro = rees_ideal(other);
      EXPECT_EQ(minimal_generators_B(ro.J, ro.L, default_window(other)), want) << name << " seed " << seed;
    }
  }
}

TEST(MinimalGenerators, TModuleCounts) {
  auto i512 = testkit::example("ex-5-12").instance;
  auto r512 = rees_ideal(i512);
  auto w512 = default_window(i512);
  EXPECT_EQ(minimal_generators_T(r512.J, r512.L, 0, w512), table({{{0, 6}, 1}}));
  auto i413 = testkit::example("ex-4-13").instance;
  auto r413 = rees_ideal(i413);
  EXPECT_EQ(minimal_generators_T(r413.J, r413.L, 2, default_window(i413)), table({{{2, 4}, 1}}));
}

TEST(MinimalGenerators, WindowBoundaryWarning) {
  auto inst = testkit::example("ex-4-13").instance;
  auto ri = rees_ideal(inst);
  auto at = minimal_generators_B(ri.J, ri.L, {2, 12});
  EXPECT_EQ(at.at({0, 12}), 1u);
  ASSERT_FALSE(at.warnings.empty());
  EXPECT_NE(at.warnings[0].find("WindowTooSmall"), std::string::npos);
  auto below = minimal_generators_B(ri.J, ri.L, {2, 11});
  EXPECT_EQ(below.at({0, 12}), 0u);
  EXPECT_TRUE(below.warnings.empty());
}

TEST(Hypotheses, Examples) {
  auto h413 = hypothesis_report(testkit::example("ex-4-13").instance);
  EXPECT_TRUE(h413.holds_gs(4));
  EXPECT_TRUE(h413.pd_one);
  EXPECT_TRUE(h413.entries_generate_m);
  ASSERT_FALSE(h413.fitting.empty());
  EXPECT_EQ(h413.fitting[0].index, 1);
  EXPECT_EQ(h413.fitting[0].height, 2);

  auto h512 = hypothesis_report(testkit::example("ex-5-12").instance);
  EXPECT_TRUE(h512.holds_gs(2));
  EXPECT_EQ(h512.dim_ring, 2);

  auto R = standard_ring(3, 3);
  auto zero_row = make_instance(R, PolyMatrix::parse(R, {{"x1"}, {"x2"}, {"0"}}));
  EXPECT_FALSE(hypothesis_report(zero_row).entries_generate_m);
}

TEST(Hypotheses, SymmetricIdealIsCompleteIntersection) {
  for (const char* name : {"ex-4-13", "ex-5-12", "ex-jacobians"}) {
    auto inst = testkit::example(name).instance;
    auto L = symmetric_ideal(inst);
    EXPECT_EQ(height(L), int(L.num_generators())) << name;
  }
}

TEST(SpecialFiber, ExamplesAndEliminationOracle) {
  struct Case {
    const char* name;
    int degree;
    int spread;
  };
  for (const auto& c : {Case{"ex-5-12", 6, 2}, Case{"ex-4-13", 12, 4}, Case{"ex-jacobians", 8, 3}}) {
    auto inst = testkit::example(c.name).instance;
    auto ri = rees_ideal(inst);
    auto sf = special_fiber(ri.J);
    ASSERT_EQ(sf.fiber_ideal.num_generators(), 1u) << c.name;
    EXPECT_EQ(bidegree_of(sf.fiber_ideal.generators()[0]), (BiDegree{0, c.degree})) << c.name;
    EXPECT_EQ(sf.analytic_spread, c.spread) << c.name;
    EXPECT_TRUE(ideals_equal(sf.fiber_ideal, eliminate(ri.J, inst.ring->x_indices()))) << c.name;
    // The x-degree 0 row of the B-minimal table sees the same generator.
    auto row0 = minimal_generators_B(ri.J, ri.L, default_window(inst)).row(0);
    EXPECT_EQ(row0.at({0, c.degree}), 1u) << c.name;
  }
}

TEST(DetGenerator, PassesOnExamples) {
  for (const char* name : {"ex-5-12", "ex-jacobians", "ex-4-13"}) {
    auto inst = testkit::example(name).instance;
    auto B = top_dual(inst);
    ASSERT_TRUE(B);
    auto rep = det_generator_check(inst, *B, rees_ideal(inst).J);
    EXPECT_FALSE(rep.skipped) << name;
    EXPECT_TRUE(rep.in_J && rep.outside_L && rep.colon_matches) << name;
    EXPECT_TRUE(rep.passed()) << name;
  }
}

TEST(DetGenerator, SkippedWhenDeterminantLiesInL) {
  auto inst = testkit::example("tangent-degenerate").instance;
  auto ri = rees_ideal(inst);
  ASSERT_TRUE(ideals_equal(ri.J, ri.L));
  auto rep = det_generator_check(inst, *top_dual(inst), ri.J);
  EXPECT_TRUE(rep.skipped);
  EXPECT_FALSE(rep.notice.empty());
  EXPECT_TRUE(rep.passed());
}

TEST(DetGenerator, RejectsWrongMatrix) {
  auto inst = testkit::example("ex-5-12").instance;
  auto B = *top_dual(inst);
  B(0, 0) = B(0, 0) + Polynomial::variable(inst.ring, inst.ring->y(0));
  try {
    det_generator_check(inst, B, rees_ideal(inst).J);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IdentityFailed);
  }
}
