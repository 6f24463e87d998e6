#include <gtest/gtest.h>

#include "gwzw/coset.hpp"
#include "gwzw/homotopy.hpp"
#include "support.hpp"

using namespace gwzw;
using gwzw::testing::Gen;

TEST(Coefficients, ClosedForm) {
  EXPECT_EQ(wz_coefficient(1), Rational(-1, 3));
  EXPECT_EQ(wz_coefficient(2), Rational(1, 10));
  EXPECT_EQ(wz_coefficient(3), Rational(-1, 35));
  EXPECT_EQ(wz_coefficient(4), Rational(1, 126));
}

TEST(Coefficients, BetaRouteAgrees) {
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(wz_coefficient(n), wz_coefficient_beta(n)) << n;
}

TEST(Coefficients, DirectWzIntegralMatches) {
  Gen g(31);
  auto alg = build_ads(1);
  const auto t = invariant_tensor(1);
  for (int i = 0; i < 5; ++i) {
    const LieForm v = g.lie(alg, 1, 4);
    EXPECT_EQ(wz_term(v, t), wz_term_direct(v, t));
  }
}

TEST(Words, LtOnPowerWord) {
  const WordSum lt = lt_apply(power_word(2));
  ASSERT_EQ(lt.size(), 2u);
  for (const auto& w : lt) EXPECT_EQ(w.dt, 1);
  EXPECT_EQ(words_str(lt), "(1)dt<theta,F> + (1)dt<F,theta>");
  EXPECT_TRUE(lt_apply(lt).empty());
}

TEST(Words, LtSignFollowsLeftDegree) {
  // l'⟨A F⟩: A has degree 1, so the F slot picks up a minus sign.
  const WordSum lt = lt_apply(word({slot_a(), slot_f()}));
  ASSERT_EQ(lt.size(), 1u);
  EXPECT_EQ(lt[0].coeff, Scalar(-1));
}

TEST(Words, ChernSimonsWordMatchesBuilder) {
  Gen g(32);
  for (int n : {1, 2}) {
    auto alg = build_poincare(n);
    const auto t = invariant_tensor(n);
    const LieForm a = g.lie(alg, 1, 4);
    const HomotopyFamily fam(LieForm(alg, 1), a);
    EXPECT_EQ(evaluate_at(chern_simons_word(n), fam, t, 1), chern_simons(a, t));
  }
}

TEST(Cartan, PowerWordAndChernSimonsWord) {
  for (int n : {1, 2}) {
    auto alg = build_poincare(n);
    const auto t = invariant_tensor(n);
    const LieForm a = translation_form(alg) + lorentz_connection(alg);
    const auto fam = gauge_family(a, coset_element(alg));
    EXPECT_TRUE(cartan_check(power_word(n + 1), fam, t).pass()) << n;
    EXPECT_TRUE(cartan_check(chern_simons_word(n), fam, t).pass()) << n;
    EXPECT_TRUE(derivation_check(chern_simons_word(n), fam, t).pass()) << n;
  }
}

TEST(Cartan, RandomFamiliesInDeformedAlgebra) {
  Gen g(33);
  auto alg = build_ads(1);
  const auto t = invariant_tensor(1);
  for (int i = 0; i < 5; ++i) {
    const HomotopyFamily fam(g.lie(alg, 1, 3), g.lie(alg, 1, 3));
    EXPECT_TRUE(cartan_check(power_word(2), fam, t).pass());
    EXPECT_TRUE(cartan_check(chern_simons_word(1), fam, t).pass());
    EXPECT_TRUE(derivation_check(word({slot_a(), slot_f()}), fam, t).pass());
    EXPECT_TRUE(derivation_check(word({slot_bracket(slot_a(), slot_a()), slot_theta()}), fam, t).pass());
  }
}

TEST(Cartan, RejectsTDependentWords) {
  auto alg = build_poincare(1);
  const HomotopyFamily fam(LieForm(alg, 1), lorentz_connection(alg));
  EXPECT_THROW(cartan_check(word({slot_a(), slot_f()}, Scalar::param(Param::t)), fam, invariant_tensor(1)), AlgebraError);
}

TEST(ChernWeil, DerivativeOfChernSimons) {
  Gen g(34);
  for (int n : {1, 2}) {
    auto alg = build_poincare(n);
    const auto t = invariant_tensor(n);
    const LieForm a = n == 1 ? g.lie(alg, 1, 5) : translation_form(alg) + lorentz_connection(alg);
    std::vector<LieForm> fs(static_cast<std::size_t>(n + 1), curvature(a));
    EXPECT_EQ(ext_d(chern_simons(a, t)), trace(fs, t));
  }
}

TEST(Triangle, HoldsForRandomConnections) {
  Gen g(35);
  auto alg = build_ads(1);
  const auto t = invariant_tensor(1);
  for (int i = 0; i < 5; ++i) EXPECT_TRUE(triangle(g.lie(alg, 1, 3), g.lie(alg, 1, 3), t).pass());
  auto p = build_poincare(2);
  EXPECT_TRUE(triangle(translation_form(p) + lorentz_connection(p), lorentz_connection(p), invariant_tensor(2)).pass());
}

TEST(Transgression, VanishesOnEqualEndpoints) {
  auto alg = build_poincare(1);
  const LieForm a = translation_form(alg) + lorentz_connection(alg);
  EXPECT_TRUE(transgression(a, a, invariant_tensor(1)).is_zero());
  EXPECT_TRUE(chern_simons(LieForm(alg, 1), invariant_tensor(1)).is_zero());
}
