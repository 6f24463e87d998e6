#include <gtest/gtest.h>

#include "gwzw/coset.hpp"
#include "gwzw/lie_form.hpp"
#include "support.hpp"

using namespace gwzw;
using gwzw::testing::Gen;

TEST(Registry, GeneratorCounts) {
  EXPECT_EQ(build_poincare(1)->size(), 6u);
  EXPECT_EQ(build_poincare(2)->size(), 15u);
  EXPECT_EQ(build_ads(2)->dim(), 5);
}

TEST(Registry, JacobiExhaustive) {
  for (int n : {1, 2}) {
    const auto p = check_jacobi(*build_poincare(n));
    const auto a = check_jacobi(*build_ads(n));
    EXPECT_TRUE(p.pass()) << n;
    EXPECT_TRUE(a.pass()) << n;
  }
  EXPECT_EQ(check_jacobi(*build_poincare(2)).triples_checked, 455u);
  EXPECT_EQ(check_jacobi(*build_poincare(1)).triples_checked, 20u);
}

TEST(Registry, LiteralLorentzRowViolatesJacobi) {
  EXPECT_EQ(check_jacobi(*build_poincare_literal_jj(1)).violations.size(), 6u);
  EXPECT_EQ(check_jacobi(*build_poincare_literal_jj(2)).violations.size(), 60u);
}

TEST(Registry, SampleBrackets) {
  auto p = build_poincare(1);
  const int j01 = p->index_of(GeneratorId::J(0, 1));
  // [J_01, P_1] = η_11 P_0
  const auto& r = p->bracket(j01, p->p_index(1));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.begin()->first, p->p_index(0));
  EXPECT_EQ(r.begin()->second, Scalar(1));
  auto ads = build_ads(1);
  const auto& pp = ads->bracket(ads->p_index(0), ads->p_index(1));
  EXPECT_EQ(pp.at(j01), Scalar::param(Param::m2));
}

TEST(Registry, ContractionGivesPoincare) {
  EXPECT_EQ(*contract(*build_ads(2)), *build_poincare(2));
  EXPECT_THROW(contract(*build_poincare(1)), AlgebraError);
  EXPECT_THROW(build_poincare(0), AlgebraError);
}

TEST(Registry, TensorValues) {
  auto p = build_poincare(2);
  const auto t = invariant_tensor(2);
  EXPECT_EQ(t.rank(), 3);
  const int j01 = p->index_of(GeneratorId::J(0, 1)), j23 = p->index_of(GeneratorId::J(2, 3));
  EXPECT_EQ(t.value({j01, j23, p->p_index(4)}), Rational(4, 3));
  EXPECT_EQ(t.value({p->p_index(4), j23, j01}), Rational(4, 3));
  EXPECT_EQ(t.value({j01, j01, p->p_index(4)}), Rational(0));
  EXPECT_EQ(invariant_tensor(1).value({build_poincare(1)->index_of(GeneratorId::J(0, 1)), build_poincare(1)->p_index(2)}), Rational(1));
}

TEST(Registry, TensorInvariance) {
  for (int n : {1, 2}) {
    const auto t = invariant_tensor(n);
    EXPECT_TRUE(check_invariance(t, *build_poincare(n)).pass());
    // ε restricted from the (2n+2)-dimensional AdS algebra: exactly invariant.
    const auto ads = check_invariance(t, *build_ads(n));
    EXPECT_TRUE(ads.pass());
    EXPECT_FALSE(ads.lowest_m2_order.has_value());
  }
}

TEST(Registry, NonInvariantTensorIsCaught) {
  auto p = build_poincare(1);
  InvariantTensor t(2);
  t.set({p->index_of(GeneratorId::J(0, 1)), p->p_index(2)}, 1);
  const auto rep = check_invariance(t, *p);
  EXPECT_FALSE(rep.pass());
}

TEST(Registry, LorentzSplitIsReductive) {
  for (auto alg : {build_poincare(2), build_ads(2)}) EXPECT_TRUE(is_reductive(lorentz_split(*alg), *alg));
}

TEST(Registry, LeviCivita) {
  EXPECT_EQ(levi_civita({0, 1, 2}), 1);
  EXPECT_EQ(levi_civita({1, 0, 2}), -1);
  EXPECT_EQ(levi_civita({2, 0, 1}), 1);
  EXPECT_EQ(levi_civita({0, 0, 2}), 0);
}

// Lie-valued forms.

TEST(LieForms, BracketGradedAntisymmetry) {
  Gen g(21);
  for (auto alg : {build_poincare(1), build_ads(1)}) {
    for (int i = 0; i < 40; ++i) {
      const int p = g.uniform(0, 2), q = g.uniform(0, 2);
      const LieForm x = g.lie(alg, p), y = g.lie(alg, q);
      const LieForm yx = bracket(y, x);
      // [x, y] = −(−1)^{pq} [y, x]
      EXPECT_EQ(bracket(x, y), (p * q) % 2 ? yx : -yx);
    }
  }
}

TEST(LieForms, GradedJacobi) {
  Gen g(22);
  auto alg = build_ads(1);
  for (int i = 0; i < 30; ++i) {
    const int p = g.uniform(0, 1), q = g.uniform(0, 1), r = g.uniform(0, 1);
    const LieForm x = g.lie(alg, p, 2), y = g.lie(alg, q, 2), z = g.lie(alg, r, 2);
    auto sgn = [](int k) { return Scalar(k % 2 ? -1 : 1); };
    const LieForm sum = sgn(p * r) * bracket(x, bracket(y, z)) + sgn(q * p) * bracket(y, bracket(z, x)) +
                        sgn(r * q) * bracket(z, bracket(x, y));
    EXPECT_TRUE(sum.is_zero());
  }
}

TEST(LieForms, BianchiIdentity) {
  Gen g(23);
  for (auto alg : {build_poincare(1), build_ads(1)}) {
    for (int i = 0; i < 10; ++i) {
      const LieForm a = g.lie(alg, 1, 4);
      const LieForm f = curvature(a);
      EXPECT_TRUE((ext_d(f) + bracket(a, f)).is_zero());
    }
    const LieForm a = translation_form(alg) + lorentz_connection(alg);
    EXPECT_TRUE((ext_d(curvature(a)) + bracket(a, curvature(a))).is_zero());
  }
}

TEST(LieForms, CurvatureSplitsIntoRAndTorsion) {
  auto alg = build_poincare(1);
  const LieForm w = lorentz_connection(alg), e = translation_form(alg);
  EXPECT_EQ(curvature(e + w), curvature(w) + cov_d(e, w));
  // R^{01} = dω^{01} + ω^0_c ω^{c1} = dω^{01} + ω^{02} ∧ ω^{21}
  const FormExpr r01 = curvature(w).component(alg->index_of(GeneratorId::J(0, 1)));
  const FormExpr w02 = FormExpr::field(Field::w, 0, 2), w21 = FormExpr::field(Field::w, 2, 1);
  EXPECT_EQ(r01, ext_d(FormExpr::field(Field::w, 0, 1)) + wedge(w02, w21));
}

TEST(LieForms, TraceGradedSymmetry) {
  Gen g(24);
  auto alg = build_poincare(1);
  const auto t = invariant_tensor(1);
  for (int i = 0; i < 40; ++i) {
    const int p = g.uniform(0, 2), q = g.uniform(0, 2);
    const LieForm x = g.lie(alg, p), y = g.lie(alg, q);
    const FormExpr yx = trace({y, x}, t);
    EXPECT_EQ(trace({x, y}, t), (p * q) % 2 ? -yx : yx);
  }
}

TEST(LieForms, TraceIsAdjointInvariant) {
  Gen g(25);
  auto alg = build_poincare(1);
  const auto t = invariant_tensor(1);
  const LieForm phi = coset_scalar(alg);
  for (int i = 0; i < 10; ++i) {
    const LieForm x = g.lie(alg, 1), y = g.lie(alg, 2);
    EXPECT_EQ(trace({dress_adjoint(x, phi), dress_adjoint(y, phi)}, t), trace({x, y}, t));
  }
}

TEST(LieForms, TraceRejectsWrongArity) {
  auto alg = build_poincare(1);
  EXPECT_THROW(trace({lorentz_connection(alg)}, invariant_tensor(1)), AlgebraError);
}

TEST(LieForms, DressAdjointRequiresTranslationScalar) {
  auto alg = build_poincare(1);
  EXPECT_THROW(dress_adjoint(lorentz_connection(alg), lorentz_connection(alg)), AlgebraError);
  EXPECT_EQ(dress_adjoint(lorentz_connection(alg), LieForm(alg, 0)), lorentz_connection(alg));
}
