#include "qshuf/qshuf.hpp"

#include <gtest/gtest.h>

using namespace qshuf;
using Q = mpq_class;

namespace {

Algebra<RatFunc> exact(const Quiver& Qv) { return Algebra<RatFunc>(Qv, exact_params()); }

RatFunc rf(long v) { return field_traits<RatFunc>::from_int(v); }

}  // namespace

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(parse_rational("3"), Q(3));
  EXPECT_EQ(parse_rational("-2/6"), Q(-1, 3));
  EXPECT_THROW(parse_rational("1/0"), qshuf_error);
  EXPECT_THROW(parse_rational("x"), qshuf_error);
  EXPECT_THROW(parse_rational(""), qshuf_error);
}

TEST(Rational, ListErrorsCarryPosition) {
  try {
    parse_rational_list("1,2/3,,4", "--slope");
    FAIL();
  } catch (const qshuf_error& e) {
    EXPECT_NE(std::string(e.what()).find("character 7"), std::string::npos) << e.what();
  }
  auto v = parse_rational_list("0, 1/2", "--slope");
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[1], Q(1, 2));
}

TEST(Mersenne, FieldAxioms) {
  using F = Zp31;
  F a = F::from_signed(-5), b = F::from_signed(12345);
  EXPECT_EQ(a * a.inverse(), F::from_signed(1));
  EXPECT_EQ((a + b) - b, a);
  EXPECT_EQ(field_traits<F>::from_rational(Q(1, 3)) * F::from_signed(3), F::from_signed(1));
}

TEST(RatFunc, ArithmeticNormalizes) {
  RatFunc q = RatFunc::symbol(0), t = RatFunc::symbol(1);
  RatFunc x = (q * q - rf(1)) / (q - rf(1));
  EXPECT_EQ(x, q + rf(1));
  EXPECT_EQ((q / t) * (t / q), rf(1));
  EXPECT_TRUE(field_traits<RatFunc>::is_zero(x - q - rf(1)));
}

TEST(Symmetrize, StabilizedMonomialCountedByStabilizer) {
  RawLaurent<Q> p({2});
  p.add({1, 1}, Q(1));
  auto s = symmetrize(p);
  EXPECT_EQ(s.coefficient({1, 1}), Q(2));
}

TEST(Symmetrize, FreeOrbit) {
  RawLaurent<Q> p({2});
  p.add({2, 0}, Q(1));
  auto s = symmetrize(p);
  EXPECT_EQ(s.coefficient({2, 0}), Q(1));
  EXPECT_EQ(s.coefficient({0, 2}), Q(1));
  RawLaurent<Q> expect({2});
  expect.add({2, 0}, Q(1));
  expect.add({0, 2}, Q(1));
  EXPECT_EQ(s.to_raw(), expect);
}

TEST(Symmetrize, TrivialGroups) {
  RawLaurent<Q> p({1, 1});
  p.add({1, -1}, Q(1));
  auto s = symmetrize(p);
  EXPECT_EQ(s.terms().size(), 1u);
  EXPECT_EQ(s.coefficient({1, -1}), Q(1));
}

TEST(Substitute, JordanWheel) {
  auto A = exact(Quiver::jordan());
  RatFunc q = A.params.q, t = A.params.t[0];
  SymLaurent<RatFunc> F({3});
  F.add({1, 1, 1}, rf(1));
  Assignment<RatFunc> a{{0, {q / t, 1}}, {2, {rf(1) / t, 1}}};
  auto r = substitute(F, a);
  ASSERT_EQ(r.terms().size(), 1u);
  auto& [k, c] = *r.terms().begin();
  EXPECT_EQ(k, (ExpKey{0, 3, 0}));
  EXPECT_EQ(c, q / (t * t));
}

TEST(Substitute, EmptyAssignmentAndConstants) {
  SymLaurent<Q> F({2});
  F.add({2, -1}, Q(3));
  EXPECT_EQ(substitute(F, {}), F.to_raw());
  auto one = SymLaurent<Q>::constant({2}, Q(1));
  auto r = substitute(one, Assignment<Q>{{1, {Q(5), 0}}});
  ASSERT_EQ(r.terms().size(), 1u);
  EXPECT_EQ(r.terms().begin()->second, Q(1));
}

TEST(DegreeProfile, ReadsSortedExponents) {
  SymLaurent<Q> F({2});
  F.add({2, -1}, Q(1));
  EXPECT_EQ(degree_profile(F, {1}), 2);
  EXPECT_EQ(degree_profile(F, {0}), 0);
  EXPECT_EQ(degree_profile(F, {2}), 1);
}

TEST(Zeta, JordanFactor) {
  auto A = exact(Quiver::jordan());
  RatFunc q = A.params.q, t = A.params.t[0];
  auto Z = zeta(A, 0, 0);
  RatFunc x = rf(3);
  RatFunc expect = (rf(1) - x / q) * (rf(1) / t - x) * (rf(1) - t / (q * x)) / (rf(1) - x);
  EXPECT_EQ(Z(x), expect);
}

TEST(Zeta, SingleEdge) {
  auto A = exact(Quiver(2, {{0, 1}}));
  RatFunc q = A.params.q, t = A.params.t[0], x = rf(5);
  EXPECT_EQ(zeta(A, 0, 1)(x), rf(1) / t - x);
  EXPECT_EQ(zeta(A, 1, 0)(x), rf(1) - t / (q * x));
  auto B = exact(Quiver(2, {}));
  EXPECT_EQ(zeta(B, 0, 1)(x), rf(1));
}

TEST(Gamma, ClosedForms) {
  auto J = exact(Quiver::jordan());
  RatFunc q = J.params.q, t = J.params.t[0];
  EXPECT_EQ(gamma_const(J, 0), (rf(1) / t - rf(1)) * (rf(1) - t / q) / (rf(1) - rf(1) / q));
  auto P = exact(Quiver(1, {}));
  EXPECT_EQ(gamma_const(P, 0), rf(1) / (rf(1) - rf(1) / P.params.q));
  // two loops specialized to the same t
  Quiver L = Quiver::loops(2);
  Params<RatFunc> par{RatFunc::symbol(0), {RatFunc::symbol(1), RatFunc::symbol(1)}};
  Algebra<RatFunc> A2(L, par);
  RatFunc u = par.t[0], p = par.q;
  RatFunc a = rf(1) / u - rf(1), b = rf(1) - u / p;
  EXPECT_EQ(gamma_const(A2, 0), a * a * b * b / (rf(1) - rf(1) / p));
}

TEST(Linalg, SolveAndInvert) {
  std::vector<std::vector<Q>> cols{{Q(1), Q(2)}, {Q(3), Q(4)}};
  auto x = solve_columns(cols, std::vector<Q>{Q(5), Q(6)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], Q(-1));
  EXPECT_EQ((*x)[1], Q(2));
  auto inv = invert(std::vector<std::vector<Q>>{{Q(2), Q(0)}, {Q(1), Q(1)}});
  ASSERT_TRUE(inv);
  EXPECT_EQ((*inv)[1][0], Q(-1, 2));
  EXPECT_FALSE(invert(std::vector<std::vector<Q>>{{Q(1), Q(2)}, {Q(2), Q(4)}}));
}

TEST(Params, SeededSpecializationIsDeterministic) {
  auto a = specialized_params(Quiver::loops(2), 7), b = specialized_params(Quiver::loops(2), 7);
  EXPECT_EQ(a.point(), b.point());
  EXPECT_EQ(a.seed, 7u);
  EXPECT_TRUE(detail::multiplicatively_independent(a.point()));
  EXPECT_FALSE(detail::multiplicatively_independent({Q(2), Q(4)}));
}
