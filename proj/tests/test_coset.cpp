#include <gtest/gtest.h>

#include "gwzw/coset.hpp"
#include "gwzw/homotopy.hpp"

using namespace gwzw;

namespace {

LieForm flatness(const LieForm& v, int sign) {
  // dV ∓ ½[V, V]
  return ext_d(v) + Scalar(Rational(sign, 2)) * bracket(v, v);
}

}  // namespace

TEST(Coset, PoincareDressing) {
  for (int n : {1, 2}) {
    auto alg = build_poincare(n);
    const LieForm w = lorentz_connection(alg), e = translation_form(alg);
    const LieForm dressed = dress(e + w, coset_element(alg));
    EXPECT_EQ(dressed, e + cov_d(coset_scalar(alg), w) + w);
  }
}

TEST(Coset, MaurerCartanFlatness) {
  for (auto alg : {build_poincare(1), build_poincare(2)}) {
    const auto z = coset_element(alg);
    EXPECT_TRUE(flatness(maurer_cartan(z), -1).is_zero());
    EXPECT_TRUE(flatness(left_maurer_cartan(z), +1).is_zero());
  }
  auto ads = build_ads(1);
  const auto z = coset_element(ads, 3);
  LieForm r = flatness(maurer_cartan(z), -1);
  r.truncate_m2(3);
  EXPECT_TRUE(r.is_zero());
  r = flatness(left_maurer_cartan(z), +1);
  r.truncate_m2(3);
  EXPECT_TRUE(r.is_zero());
}

TEST(Coset, DressedCurvatureIsAdjoint) {
  auto alg = build_poincare(2);
  EXPECT_TRUE(dressed_curvature(translation_form(alg) + lorentz_connection(alg), coset_element(alg)).agree());
  auto ads = build_ads(1);
  auto dc = dressed_curvature(translation_form(ads) + lorentz_connection(ads), coset_element(ads, 2));
  dc.via_connection.truncate_m2(2);
  dc.via_adjoint.truncate_m2(2);
  EXPECT_TRUE(dc.agree());
}

TEST(Coset, CosetWzTermVanishes) {
  for (int n : {1, 2}) {
    auto alg = build_poincare(n);
    const auto z = coset_element(alg);
    EXPECT_TRUE(wz_term(maurer_cartan(z), invariant_tensor(n)).is_zero());
    EXPECT_TRUE(wz_term(left_maurer_cartan(z), invariant_tensor(n)).is_zero());
  }
}

TEST(Coset, AdsSeriesMatchesThroughM4) {
  for (int order : {0, 1, 2}) {
    const auto cmp = compare_ads_dressing(1, order);
    EXPECT_TRUE(cmp.matches_d_variant) << order;
    EXPECT_TRUE(cmp.matches_covariant_variant) << order;
    EXPECT_TRUE(cmp.variants_coincide) << order;
    EXPECT_TRUE(cmp.limit_matches_poincare) << order;
  }
}

TEST(Coset, AdsSeriesAtHigherDimension) {
  const auto cmp = compare_ads_dressing(2, 2);
  EXPECT_TRUE(cmp.matches_d_variant);
  EXPECT_TRUE(cmp.limit_matches_poincare);
}

TEST(Coset, RejectsNonCosetScalar) {
  auto alg = build_poincare(1);
  CosetElement z{lorentz_connection(alg), kExact};
  EXPECT_THROW(maurer_cartan(z), AlgebraError);
  EXPECT_THROW(dress(ext_d(lorentz_connection(alg)), coset_element(alg)), AlgebraError);
}

TEST(Coset, UnterminatedSeriesIsAnError) {
  auto ads = build_ads(1);
  EXPECT_THROW(maurer_cartan(CosetElement{coset_scalar(ads), kExact}), AlgebraError);
}
