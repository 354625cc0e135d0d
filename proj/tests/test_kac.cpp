#include "qshuf/qshuf.hpp"

#include <gtest/gtest.h>

using namespace qshuf;

namespace {

std::vector<long> coefs(const KacPoly& K) {
  std::vector<long> r;
  for (auto& c : K.coef) r.push_back(c.get_si());
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

}  // namespace

TEST(Partitions, CountsAndConjugate) {
  std::vector<size_t> p{1, 1, 2, 3, 5, 7, 11};
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(partitions(n).size(), p[n]);
  EXPECT_EQ(conjugate(Partition{3, 1}), (Partition{2, 1, 1}));
}

TEST(Hua, JordanIsT) {
  auto ks = kac_hua_box(Quiver::jordan(), {5});
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(coefs(ks[n]), (std::vector<long>{0, 1})) << n;
}

TEST(Hua, SingleEdge) {
  Quiver A2(2, {{0, 1}});
  EXPECT_EQ(coefs(kac_hua(A2, {1, 1})), (std::vector<long>{1}));
  EXPECT_EQ(coefs(kac_hua(A2, {2, 1})), (std::vector<long>{}));
  EXPECT_EQ(coefs(kac_hua(A2, {1, 0})), (std::vector<long>{1}));
}

TEST(Hua, LoopsInDimensionOne) {
  for (int g = 1; g <= 3; ++g) {
    std::vector<long> expect(g + 1, 0);
    expect[g] = 1;
    EXPECT_EQ(coefs(kac_hua(Quiver::loops(g), {1})), expect);
  }
}

TEST(Hua, KroneckerDimensionVectorOneOne) {
  // Kronecker quiver (1,1): representations P^1 of lines, A = t + 1
  EXPECT_EQ(coefs(kac_hua(Quiver::multi_edge(2), {1, 1})), (std::vector<long>{1, 1}));
}

TEST(Hua, NonnegativeCoefficients) {
  for (auto& K : kac_hua_box(Quiver::loops(2), {4})) EXPECT_TRUE(K.nonnegative()) << K.str();
  for (auto& K : kac_hua_box(Quiver::multi_edge(3), {2, 2})) EXPECT_TRUE(K.nonnegative()) << K.str();
}

TEST(BruteForce, SmallCounts) {
  EXPECT_EQ(kac_bruteforce_count(Quiver::jordan(), {2}, 2), 2);
  EXPECT_EQ(kac_bruteforce_count(Quiver(2, {{0, 1}}), {1, 1}, 3), 1);
  EXPECT_EQ(kac_bruteforce_count(Quiver::loops(2), {1}, 3), 9);
  EXPECT_EQ(kac_bruteforce_count(Quiver(2, {{0, 0}, {0, 1}}), {1, 0}, 2), 2);
}

TEST(BruteForce, MatchesHuaOnSmallQuivers) {
  struct Case {
    Quiver Q;
    DimVector n;
  };
  std::vector<Case> cases{{Quiver::jordan(), {3}},         {Quiver::loops(2), {2}},
                          {Quiver::multi_edge(1), {2, 1}}, {Quiver::multi_edge(2), {1, 2}},
                          {Quiver::multi_edge(3), {2, 1}}, {Quiver(2, {{0, 0}, {0, 1}}), {1, 1}}};
  for (auto& c : cases)
    for (int q : {2, 3}) EXPECT_EQ(kac_bruteforce_count(c.Q, c.n, q, 2), kac_hua(c.Q, c.n).eval(q)) << dim_str(c.n);
}

TEST(BruteForce, LimitEnforced) { EXPECT_THROW(kac_bruteforce_count(Quiver::jordan(), {4}, 2), qshuf_error); }

TEST(Exp, Geometric) {
  TruncSeries z({5});
  z[{1}] = 1;
  auto E = plethystic_exp(z);
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(E[{n}], 1);
  TruncSeries zero({3});
  EXPECT_EQ(plethystic_exp(zero)[{0}], 1);
  EXPECT_EQ(plethystic_exp(zero)[{2}], 0);
}

TEST(Exp, TwoVariables) {
  TruncSeries s({2, 2});
  s[{1, 0}] = 1;
  s[{0, 1}] = 1;
  s[{1, 1}] = 1;
  EXPECT_EQ(plethystic_exp(s)[DimVector({2, 2})], 3);
}

TEST(Exp, RejectsConstantTerm) {
  TruncSeries s({2});
  s[{0}] = 1;
  EXPECT_THROW(plethystic_exp(s), qshuf_error);
}

TEST(Conjecture, SmallCases) {
  auto J = check_conjecture(Quiver::jordan(), {5}, {7, 8, 9});
  EXPECT_TRUE(J.all_equal);
  EXPECT_TRUE(J.seeds_agree);
  std::vector<long> dims{1, 1, 2, 3, 5, 7};
  for (auto& r : J.rows) EXPECT_EQ(r.lhs, dims[r.n[0]]);
  auto L = check_conjecture(Quiver::loops(2), {2}, {7, 8, 9});
  EXPECT_TRUE(L.all_equal);
  auto E = check_conjecture(Quiver(2, {{0, 1}}), {1, 1}, {7, 8, 9});
  EXPECT_TRUE(E.all_equal);
  EXPECT_EQ(E.rows.back().lhs, 2);
}
