#include "qshuf/qshuf.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qshuf;
using Q = mpq_class;

namespace {

struct Fixture {
  Quiver quiver;
  Algebra<Q> A;
  Hopf<Q> H;
  explicit Fixture(Quiver Qv, uint64_t seed = 11) : quiver(Qv), A(Qv, specialized_params(Qv, seed)), H(A) {}
  int V() const { return quiver.vertex_count(); }
};

GeneratorWord word(Side s, std::vector<Letter> l) { return GeneratorWord{s, std::move(l)}; }

GeneratorWord random_word(std::mt19937_64& rng, Side s, int len, int V) {
  GeneratorWord w{s, {}};
  for (int a = 0; a < len; ++a) w.letters.push_back({int(rng() % V), int(rng() % 5) - 2});
  return w;
}

// u gets the vertex multiset of w, shuffled; the first letter fixes the degree
void match(std::mt19937_64& rng, GeneratorWord& u, const GeneratorWord& w) {
  std::vector<int> verts;
  for (auto& l : w.letters) verts.push_back(l.vertex);
  std::shuffle(verts.begin(), verts.end(), rng);
  for (size_t a = 0; a < verts.size(); ++a) u.letters[a].vertex = verts[a];
  u.letters[0].d -= int(u.degree() + w.degree());
}

const SlopeVector kZero{Q(0)}, kOne{Q(1)};

}  // namespace

TEST(Pairing, GeneratorsJordanAndA2) {
  for (Quiver Qv : {Quiver::jordan(), Quiver(2, {{0, 1}})}) {
    Fixture f(Qv);
    for (int i = 0; i < f.V(); ++i)
      for (int j = 0; j < f.V(); ++j)
        for (int d = -3; d <= 3; ++d)
          for (int k = -3; k <= 3; ++k) {
            Q expect = (i == j && d + k == 0) ? gamma_const(f.A, i) : Q(0);
            EXPECT_EQ(f.H.pairing_word(generator<Q>(f.V(), i, d), word(Side::Minus, {{j, k}})), expect);
            EXPECT_EQ(f.H.pairing_word(word(Side::Plus, {{i, d}}), generator<Q>(f.V(), j, k, Side::Minus)), expect);
          }
  }
}

TEST(Pairing, ExactGenerator) {
  Algebra<RatFunc> A(Quiver::jordan(), exact_params());
  Hopf<RatFunc> H(A);
  EXPECT_EQ(H.pairing_word(generator<RatFunc>(1, 0, 2), word(Side::Minus, {{0, -2}})), gamma_const(A, 0));
}

TEST(Pairing, DegreeMismatchIsZero) {
  Fixture f(Quiver::jordan());
  auto F = f.H.expand(word(Side::Plus, {{0, 1}, {0, 0}}));
  EXPECT_EQ(f.H.pairing_word(F, word(Side::Minus, {{0, 0}, {0, 0}})), 0);
  EXPECT_EQ(f.H.pairing_word(F, word(Side::Minus, {{0, -1}})), 0);
}

TEST(Pairing, ForwardAgreesWithMirrored) {
  for (Quiver Qv : {Quiver::jordan(), Quiver(2, {{0, 1}}), Quiver(2, {{0, 0}, {0, 1}, {1, 0}})}) {
    Fixture f(Qv);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 15; ++t) {
      int len = 1 + int(rng() % 3);
      auto u = random_word(rng, Side::Plus, len, f.V()), w = random_word(rng, Side::Minus, len, f.V());
      match(rng, u, w);
      EXPECT_EQ(f.H.pairing_word(f.H.expand(u), w), f.H.pairing_word(u, f.H.expand(w))) << u.str() << " | " << w.str();
    }
  }
}

TEST(Pairing, JordanSquareAgainstTwoLetters) {
  Fixture f(Quiver::jordan());
  auto F = f.H.expand(word(Side::Plus, {{0, 0}, {0, 0}}));
  int nonzero = 0;
  for (int d = -1; d <= 1; ++d) {
    auto w1 = word(Side::Minus, {{0, d}}), w2 = word(Side::Minus, {{0, -d}});
    Q direct = f.H.pairing_word(F, concat(w1, w2));
    EXPECT_EQ(direct, f.H.pairing_tensor(f.H.coproduct_component(F, {1}, d), w1, w2)) << d;
    nonzero += direct != 0;
  }
  EXPECT_GT(nonzero, 0);
}

TEST(Bialgebra, PlusSide) {
  for (Quiver Qv : {Quiver::jordan(), Quiver(2, {{0, 1}}), Quiver::loops(2)}) {
    Fixture f(Qv);
    std::mt19937_64 rng(17);
    for (int t = 0; t < 10; ++t) {
      int l1 = 1 + int(rng() % 2), l2 = 1 + int(rng() % 2);
      auto w1 = random_word(rng, Side::Minus, l1, f.V()), w2 = random_word(rng, Side::Minus, l2, f.V());
      auto w = concat(w1, w2);
      auto u = random_word(rng, Side::Plus, l1 + l2, f.V());
      match(rng, u, w);
      auto F = f.H.expand(u);
      auto M = f.H.coproduct_component(F, w1.shape(f.V()), -w2.degree());
      EXPECT_EQ(f.H.pairing_word(F, w), f.H.pairing_tensor(M, w1, w2)) << u.str();
    }
  }
}

TEST(Bialgebra, MinusSide) {
  for (Quiver Qv : {Quiver::jordan(), Quiver(2, {{0, 1}}), Quiver::loops(2)}) {
    Fixture f(Qv);
    std::mt19937_64 rng(23);
    for (int t = 0; t < 10; ++t) {
      int l1 = 1 + int(rng() % 2), l2 = 1 + int(rng() % 2);
      auto u1 = random_word(rng, Side::Plus, l1, f.V()), u2 = random_word(rng, Side::Plus, l2, f.V());
      auto u = concat(u1, u2);
      auto w = random_word(rng, Side::Minus, l1 + l2, f.V());
      match(rng, w, u);
      auto G = f.H.expand(w);
      auto M = f.H.coproduct_component(G, u2.shape(f.V()), -u1.degree());
      EXPECT_EQ(f.H.pairing_word(u, G), f.H.pairing_tensor(u1, u2, M)) << w.str();
    }
  }
}

TEST(ExpressInWords, Basics) {
  Fixture f(Quiver::jordan());
  auto c = f.H.express_in_words(generator<Q>(1, 0, 3));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].first, word(Side::Plus, {{0, 3}}));
  EXPECT_EQ(c[0].second, 1);
  auto u = f.H.express_in_words(unit_element<Q>(1));
  ASSERT_EQ(u.size(), 1u);
  EXPECT_TRUE(u[0].first.letters.empty());
}

TEST(ExpressInWords, SlopeBasisRoundTrip) {
  Fixture f(Quiver::jordan());
  for (Side s : {Side::Plus, Side::Minus})
    for (auto& F : slope_basis(f.A, kZero, {2}, s).basis) {
      auto c = f.H.express_in_words(F);
      for (auto& [w, x] : c) EXPECT_EQ(w.letters.size(), 2u);
      EXPECT_EQ(f.H.expand(c, s, {2}), F);
    }
}

TEST(Coproduct, GeneratorComponents) {
  Fixture f(Quiver::jordan());
  auto F = generator<Q>(1, 0, 2);
  auto L = f.H.coproduct_component(F, {1}, 0);
  ASSERT_EQ(L.terms.size(), 1u);
  auto& [kl, cl] = *L.terms.begin();
  EXPECT_EQ(kl.left, ExpKey{2});
  EXPECT_TRUE(kl.right.empty());
  EXPECT_EQ(kl.cartan.all_modes().size(), 0u);
  EXPECT_EQ(cl, 1);
  auto R = f.H.coproduct_component(F, {0}, 2);
  ASSERT_EQ(R.terms.size(), 1u);
  auto& [kr, cr] = *R.terms.begin();
  EXPECT_EQ(kr.right, ExpKey{2});
  EXPECT_EQ(kr.cartan.zero, std::vector<int>{1});
  EXPECT_TRUE(kr.cartan.only_zero_modes());
  EXPECT_EQ(cr, 1);
  // higher Cartan modes carry the remaining degree
  auto H1 = f.H.coproduct_component(F, {0}, 1);
  ASSERT_FALSE(H1.is_zero());
  for (auto& [k, c] : H1.terms) EXPECT_EQ(k.cartan.degree(), 1);
}

TEST(Coproduct, UnitIsOneTensorOne) {
  Fixture f(Quiver::jordan());
  auto M = f.H.coproduct_component(unit_element<Q>(1), {0}, 0);
  ASSERT_EQ(M.terms.size(), 1u);
  EXPECT_EQ(M.terms.begin()->second, 1);
}

TEST(Coproduct, SlopeBoundOnRightLeg) {
  Fixture f(Quiver::jordan());
  for (auto& F : slope_basis(f.A, kZero, {2}, Side::Plus).basis)
    for (int k = 1; k <= 2; ++k)
      for (int e = 1; e <= 3; ++e) EXPECT_TRUE(f.H.coproduct_component(F, {2 - k}, e).is_zero()) << k << "," << e;
}

TEST(DeltaM, PrimitiveGenerator) {
  Fixture f(Quiver::jordan());
  auto P = generator<Q>(1, 0, 0);
  auto D = f.H.delta_m(P, kZero);
  ASSERT_EQ(D.size(), 2u);
  EXPECT_EQ(D[0].first, DimVector{0});
  EXPECT_EQ(D[1].first, DimVector{1});
  EXPECT_TRUE(f.H.primitive_check(P, kZero));
  auto U = f.H.delta_m(unit_element<Q>(1), kZero);
  ASSERT_EQ(U.size(), 1u);
  EXPECT_EQ(U[0].second.terms.size(), 1u);
}

TEST(DeltaM, TwoParticleBasis) {
  Fixture f(Quiver::jordan());
  auto B1 = slope_basis(f.A, kZero, {1}, Side::Plus);
  for (auto& F : slope_basis(f.A, kZero, {2}, Side::Plus).basis) {
    auto D = f.H.delta_m(F, kZero);
    for (auto& [k, M] : D) {
      EXPECT_LE(k[0], 2);
      if (k[0] != 1) continue;
      for (auto& [key, c] : M.terms) {
        EXPECT_EQ(key.left, ExpKey{0});
        EXPECT_EQ(key.right, ExpKey{0});
      }
    }
  }
  auto sq = shuffle_product(f.A, B1.basis[0], B1.basis[0]);
  EXPECT_FALSE(f.H.primitive_check(sq, kZero));
  EXPECT_THROW(f.H.delta_m(generator<Q>(1, 0, 1), kZero), qshuf_error);
}

TEST(DeltaM, PrimitiveCountsJordan) {
  Fixture f(Quiver::jordan());
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(f.H.primitive_count(kZero, {n}), 1) << n;
}

TEST(PBW, ShapeOneIsSingleFactor) {
  Fixture f(Quiver::jordan());
  SlopeFactorization<Q> PF(f.H, kZero, kOne);
  for (int d = -2; d <= 2; ++d) {
    auto D = PF.decompose(generator<Q>(1, 0, d));
    ASSERT_EQ(D.terms.size(), 1u);
    ASSERT_EQ(D.terms[0].factors.size(), 1u);
    EXPECT_EQ(D.terms[0].factors[0].r, Q(d));
    EXPECT_EQ(D.terms[0].factors[0].element, generator<Q>(1, 0, d));
  }
}

TEST(PBW, ProductOfTwoSlopes) {
  Fixture f(Quiver::jordan());
  SlopeFactorization<Q> PF(f.H, kZero, kOne);
  auto F = shuffle_product(f.A, generator<Q>(1, 0, 0), generator<Q>(1, 0, 1));
  auto D = PF.decompose(F);
  ASSERT_EQ(D.terms.size(), 1u);
  const auto& t = D.terms[0];
  ASSERT_EQ(t.factors.size(), 2u);
  EXPECT_EQ(t.factors[0].r, 0);
  EXPECT_EQ(t.factors[1].r, 1);
  EXPECT_EQ(t.factors[0].element.poly.scaled(t.coefficient), generator<Q>(1, 0, 0).poly.scaled(t.coefficient));
  EXPECT_EQ(PF.remultiply(D, F.shape()), F);
  EXPECT_EQ(D.closed_form_matches, D.closed_form_checks);
}

TEST(PBW, SlopeBasisIsSingleFactor) {
  Fixture f(Quiver::jordan());
  SlopeFactorization<Q> PF(f.H, kZero, kOne);
  for (auto& F : slope_basis(f.A, kZero, {2}, Side::Plus).basis) {
    auto D = PF.decompose(F);
    ASSERT_EQ(D.terms.size(), 1u);
    ASSERT_EQ(D.terms[0].factors.size(), 1u);
    EXPECT_EQ(D.terms[0].factors[0].r, 0);
    EXPECT_EQ(D.hinge_steps, 0);
  }
}

TEST(PBW, RoundTripOtherQuivers) {
  struct Case {
    Quiver Q;
    SlopeVector m, theta;
  };
  std::vector<Case> cases{{Quiver::jordan(), {Q(1, 3)}, {Q(2)}},
                          {Quiver(2, {{0, 1}}), {Q(1, 2), Q(0)}, {Q(1), Q(2)}},
                          {Quiver::multi_edge(2), {Q(0), Q(0)}, {Q(1), Q(1)}}};
  for (auto& c : cases) {
    Fixture f(c.Q, 3);
    SlopeFactorization<Q> PF(f.H, c.m, c.theta);
    std::mt19937_64 rng(41);
    for (int t = 0; t < 12; ++t) {
      auto u = random_word(rng, Side::Plus, 1 + int(rng() % 3), f.V());
      auto F = f.H.expand(u);
      if (F.is_zero()) continue;
      auto D = PF.decompose(F);
      EXPECT_EQ(PF.remultiply(D, F.shape()), F) << u.str();
      for (auto& term : D.terms)
        for (size_t a = 1; a < term.factors.size(); ++a) EXPECT_LT(term.factors[a - 1].r, term.factors[a].r);
    }
  }
}

TEST(PBW, ExactParameters) {
  Algebra<RatFunc> A(Quiver::jordan(), exact_params());
  Hopf<RatFunc> H(A);
  SlopeFactorization<RatFunc> PF(H, kZero, kOne);
  auto F = shuffle_product(A, generator<RatFunc>(1, 0, 1), generator<RatFunc>(1, 0, -1));
  auto D = PF.decompose(F);
  EXPECT_EQ(PF.remultiply(D, F.shape()), F);
}

TEST(DualBases, JordanOneParticle) {
  Fixture f(Quiver::jordan());
  auto D = dual_bases(f.H, kZero, {1});
  ASSERT_EQ(D.plus.size(), 1u);
  EXPECT_EQ(D.plus[0], generator<Q>(1, 0, 0));
  EXPECT_EQ(D.gram[0][0], gamma_const(f.A, 0));
  EXPECT_EQ(D.minus[0], generator<Q>(1, 0, 0, Side::Minus).scaled(1 / gamma_const(f.A, 0)));
}

TEST(DualBases, IdentityGram) {
  for (Quiver Qv : {Quiver::jordan(), Quiver(2, {{0, 1}})}) {
    Fixture f(Qv);
    SlopeVector m(f.V(), Q(0));
    DimVector n = f.V() == 1 ? DimVector{2} : DimVector{1, 1};
    auto D = dual_bases(f.H, m, n);
    EXPECT_EQ(D.plus.size(), 2u);
    for (size_t s = 0; s < D.plus.size(); ++s)
      for (size_t t = 0; t < D.minus.size(); ++t)
        EXPECT_EQ(f.H.pairing(D.plus[s], D.minus_words[t]), s == t ? Q(1) : Q(0));
  }
}

TEST(RPrime, LinearLayer) {
  Fixture f(Quiver::jordan());
  auto R = rprime_window_check(f.H, kZero, kOne, 1, 3);
  EXPECT_TRUE(R.passed());
  EXPECT_EQ(R.shape_one_checked, 7);
  EXPECT_EQ(R.shape_one_failures, 0);
}

TEST(RPrime, JordanWindow) {
  Fixture f(Quiver::jordan());
  auto R = rprime_window_check(f.H, kZero, kOne, 2, 3);
  for (auto& s : R.failures) ADD_FAILURE() << s;
  EXPECT_TRUE(R.passed());
  EXPECT_GT(R.discarded, 0);
  EXPECT_EQ(R.exact_reproductions, R.test_words);
}

TEST(RPrime, SingleEdgeWindow) {
  Fixture f(Quiver(2, {{0, 1}}));
  auto R = rprime_window_check(f.H, {Q(0), Q(0)}, {Q(1), Q(1)}, 2, 2);
  EXPECT_TRUE(R.passed());
}

TEST(Orthogonality, RandomMultiSlopeProducts) {
  Fixture f(Quiver::jordan());
  auto trials = slope_orthogonality_trials(f.H, kZero, kOne, 20, 7, 3, 2);
  ASSERT_EQ(trials.size(), 20u);
  for (auto& t : trials) EXPECT_TRUE(t.ok) << t.left << " | " << t.right;
}
