#include <gtest/gtest.h>

#include "support.hpp"

using namespace reesalg;
using testkit::Gen;

namespace {

RingPtr ring44() { return standard_ring(4, 4); }

Polynomial P(const RingPtr& R, const char* s) { return Polynomial::parse(R, s); }

}  // namespace

TEST(PolyArith, Identities) {
  auto R = ring44();
  EXPECT_EQ(poly_arith(P(R, "x1"), Polynomial(R), ArithOp::Add), P(R, "x1"));
  EXPECT_EQ(poly_arith(P(R, "x1+x2"), P(R, "x1-x2"), ArithOp::Mul), P(R, "x1^2-x2^2"));
  auto q = P(R, "x1^2+x2*x3+x4^2");
  EXPECT_EQ(poly_arith(q, Polynomial::constant(R, 1), ArithOp::Mul), q);
  EXPECT_TRUE(poly_arith(q, q, ArithOp::Sub).is_zero());
}

TEST(PolyArith, RingMismatch) {
  auto a = P(standard_ring(2, 1), "x1");
  auto b = P(standard_ring(3, 1), "x1");
  try {
    poly_arith(a, b, ArithOp::Add);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RingMismatch);
  }
}

TEST(PolyArith, RingAxiomsOnRandomPolynomials) {
  auto R = ring44();
  Gen g(101);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = g.poly(R), b = g.poly(R), c = g.poly(R);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_TRUE((a - a).is_zero());
  }
}

TEST(PolyText, RoundTripAndSyntax) {
  auto R = ring44();
  auto p = P(R, "2*x1^2-1/2*x2*x3");
  EXPECT_EQ(p.to_string(), "2*x1^2-1/2*x2*x3");
  EXPECT_EQ(P(R, "4/6*x1").to_string(), "2/3*x1");
  EXPECT_EQ(P(R, "0").to_string(), "0");
  Gen g(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto q = g.poly(R, 5, 4);
    ASSERT_EQ(P(R, q.to_string().c_str()), q) << q.to_string();
  }
}

TEST(PolyText, ErrorsCarryPositions) {
  auto R = ring44();
  try {
    P(R, "x1+z9");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 4u);
  }
  EXPECT_THROW(P(R, "x1+"), ParseError);
  EXPECT_THROW(P(R, "1/0"), ParseError);
  EXPECT_THROW(P(R, "x1 x2"), ParseError);
}

TEST(Bidegree, Examples) {
  auto R = ring44();
  EXPECT_EQ(bidegree_of(P(R, "y1*x1+y2*x2")), (BiDegree{1, 1}));
  EXPECT_EQ(bidegree_of(P(R, "x1^2")), (BiDegree{2, 0}));
  try {
    bidegree_of(P(R, "x1*y1+x2^2"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotBihomogeneous);
  }
  try {
    bidegree_of(Polynomial(R));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroPolynomial);
  }
}

TEST(Bidegree, AdditiveUnderProducts) {
  auto R = ring44();
  Gen g(33);
  for (int trial = 0; trial < 100; ++trial) {
    BiDegree da{g.integer(0, 2), g.integer(0, 2)}, db{g.integer(0, 2), g.integer(0, 2)};
    auto a = g.form(R, da), b = g.form(R, db);
    if (a.is_zero() || b.is_zero()) continue;
    ASSERT_EQ(bidegree_of(a * b), bidegree_of(a) + bidegree_of(b));
  }
}

TEST(Derivative, Examples) {
  auto R = ring44();
  EXPECT_EQ(partial_derivative(P(R, "x1^2+x2*x3+x4^2"), "x1"), P(R, "2*x1"));
  EXPECT_TRUE(partial_derivative(P(R, "7"), "x1").is_zero());
  EXPECT_EQ(partial_derivative(P(R, "x2^2+x1*x4+x3^2"), "x4"), P(R, "x1"));
  try {
    partial_derivative(P(R, "x1"), "w");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownVariable);
  }
}

TEST(Euler, Examples) {
  auto R = ring44();
  auto col = [&](std::vector<const char*> s) {
    std::vector<Polynomial> out;
    for (auto t : s) out.push_back(P(R, t));
    return out;
  };
  EXPECT_EQ(euler_column(P(R, "x1^2")), col({"x1", "0", "0", "0"}));
  EXPECT_EQ(euler_column(P(R, "x1^2+x2*x3+x4^2")), col({"x1", "1/2*x3", "1/2*x2", "x4"}));
  EXPECT_EQ(euler_column(P(R, "x2^2+x1*x4+x3^2")), col({"1/2*x4", "x2", "x3", "1/2*x1"}));
  EXPECT_THROW(euler_column(P(R, "5")), Error);
  EXPECT_THROW(euler_column(P(R, "x1*y1")), Error);
}

TEST(Euler, RecoversTheForm) {
  auto R = ring44();
  Gen g(5);
  for (int trial = 0; trial < 60; ++trial) {
    auto f = g.form(R, {g.integer(1, 4), 0}, 4);
    if (f.is_zero()) continue;
    auto c = euler_column(f);
    Polynomial s(R);
    for (std::size_t i = 0; i < 4; ++i) s += Polynomial::variable(R, R->x(i)) * c[i];
    ASSERT_EQ(s, f);
  }
}

TEST(SwapBlocks, Examples) {
  auto R = ring44();
  auto f = P(R, "x1^2+x2*x3+x4^2");
  EXPECT_EQ(swap_blocks(f, SwapDirection::XToY), P(R, "y1^2+y2*y3+y4^2"));
  EXPECT_EQ(swap_blocks(swap_blocks(f, SwapDirection::XToY), SwapDirection::YToX), f);
  EXPECT_TRUE(swap_blocks(Polynomial(R), SwapDirection::XToY).is_zero());
  EXPECT_THROW(swap_blocks(P(R, "x1*y1"), SwapDirection::XToY), Error);
  EXPECT_THROW(swap_blocks(P(standard_ring(3, 2), "x1"), SwapDirection::XToY), Error);
}

TEST(SwapBlocks, InvolutionPair) {
  auto R = ring44();
  Gen g(9);
  for (int trial = 0; trial < 100; ++trial) {
    auto fx = g.form(R, {g.integer(0, 3), 0});
    auto fy = g.form(R, {0, g.integer(0, 3)});
    ASSERT_EQ(swap_blocks(swap_blocks(fx, SwapDirection::XToY), SwapDirection::YToX), fx);
    ASSERT_EQ(swap_blocks(swap_blocks(fy, SwapDirection::YToX), SwapDirection::XToY), fy);
  }
}

TEST(DivideExact, InvertsMultiplication) {
  auto R = standard_ring(3, 2);
  Gen g(77);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = g.poly(R, 4, 3), b = g.poly(R, 3, 2);
    if (b.is_zero()) continue;
    ASSERT_EQ(divide_exact(a * b, b), a);
  }
  EXPECT_THROW(divide_exact(P(R, "x1+1"), P(R, "x2")), Error);
}

TEST(MonomialOrder, DegrevlexTieBreak) {
  auto ord = MonomialOrder::degrevlex(3);
  Monomial a = Monomial::variable(0) * Monomial::variable(2);  // x0 x2
  Monomial b = Monomial::variable(1, 2);                        // x1^2
  EXPECT_TRUE(ord.greater(b, a));
  Gen g(3);
  auto R = standard_ring(3, 0);
  for (int trial = 0; trial < 200; ++trial) {
    auto m1 = g.monomial(*R, 4), m2 = g.monomial(*R, 4), m3 = g.monomial(*R, 2);
    if (ord.greater(m1, m2)) ASSERT_TRUE(ord.greater(m1 * m3, m2 * m3));
  }
}
