#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "gwzw/form_expr.hpp"
#include "support.hpp"

using namespace gwzw;
using gwzw::testing::Gen;

namespace {

FormExpr w(int a, int b) { return FormExpr::field(Field::w, a, b); }
FormExpr e(int a) { return FormExpr::field(Field::e, a); }
FormExpr phi(int a) { return FormExpr::field(Field::phi, a); }
Scalar t() { return Scalar::param(Param::t); }

int parity(std::vector<int> p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

}  // namespace

TEST(Rational, ParsesAndCanonicalizes) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Scalar, BetaIntegrals) {
  // ∫ t²(1−t)² = 1/30 and ∫ t(1−t) = 1/6.
  Scalar p = t() * t() * (Scalar(1) - t()) * (Scalar(1) - t());
  EXPECT_EQ(p.integrate(Param::t, 0, 1), Scalar(Rational(1, 30)));
  EXPECT_EQ((t() * (Scalar(1) - t())).integrate(Param::t, 0, 1), Scalar(Rational(1, 6)));
}

TEST(Scalar, DerivativeInvertsIntegral) {
  const Scalar s = Scalar::param(Param::s);
  const Scalar p = Scalar(3) * t() * t() * s + Scalar(Rational(1, 2)) * s;
  EXPECT_EQ(p.derivative(Param::t).integrate(Param::t, 0, 1), p.substitute(Param::t, 1) - p.substitute(Param::t, 0));
}

TEST(Scalar, M2TruncationTracksOrder) {
  const Scalar m2 = Scalar::param(Param::m2);
  Scalar x = Scalar(1) + m2 + m2 * m2;
  x.truncate_m2(1);
  EXPECT_EQ(x, Scalar(1) + m2);
  EXPECT_EQ(x * m2, m2);  // product keeps the smaller order
  EXPECT_THROW(m2.integrate(Param::m2, 0, 1), std::exception);
}

TEST(FormExpr, OddAtomsAnticommute) {
  EXPECT_EQ(wedge(e(0), e(1)), -wedge(e(1), e(0)));
  EXPECT_TRUE(wedge(e(0), e(0)).is_zero());
  EXPECT_EQ(wedge(phi(0), e(1)), wedge(e(1), phi(0)));
  EXPECT_EQ(w(1, 0), -w(0, 1));
  EXPECT_TRUE(w(2, 2).is_zero());
}

TEST(FormExpr, LeibnizSignOnExample) {
  // d(ω ∧ e) = dω ∧ e − ω ∧ de
  const FormExpr x = wedge(w(0, 1), e(2));
  EXPECT_EQ(ext_d(x), wedge(ext_d(w(0, 1)), e(2)) - wedge(w(0, 1), ext_d(e(2))));
}

TEST(FormExpr, IntegrateToInnerBound) {
  // ∫_0^t s ds = t²/2
  const FormExpr x = Scalar::param(Param::s) * e(0);
  EXPECT_EQ(integrate_param_to(x, Param::s, Param::t), Scalar(Rational(1, 2)) * t() * t() * e(0));
}

TEST(FormExpr, SeriesCoefficients) {
  EXPECT_EQ(series_coefficient(SeriesKind::cosh, 2), Rational(1, 24));
  EXPECT_EQ(series_coefficient(SeriesKind::sinh_over_x, 1), Rational(1, 6));
  EXPECT_EQ(series_coefficient(SeriesKind::cosh_minus_one_over_x2, 1), Rational(1, 24));
  const FormExpr c = series_in_m2(SeriesKind::cosh, 3, 1);
  EXPECT_EQ(c, FormExpr::constant(Scalar(1)) + Scalar::param(Param::m2) * Scalar(Rational(1, 2)) * phi_squared(3));
}

// Property tests over random expressions.

TEST(FormProperties, GradedCommutativity) {
  Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const int p = g.uniform(0, 2), q = g.uniform(0, 2);
    const FormExpr a = g.form(p), b = g.form(q);
    const FormExpr ba = wedge(b, a);
    EXPECT_EQ(wedge(a, b), (p * q) % 2 ? -ba : ba) << a.str() << " | " << b.str();
  }
}

TEST(FormProperties, Associativity) {
  Gen g(12);
  for (int i = 0; i < 150; ++i) {
    const FormExpr a = g.mixed(2, 2), b = g.mixed(2, 2), c = g.mixed(2, 2);
    EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
  }
}

TEST(FormProperties, DSquaredVanishes) {
  Gen g(13);
  for (int i = 0; i < 200; ++i) EXPECT_TRUE(ext_d(ext_d(g.mixed(3, 4))).is_zero());
}

TEST(FormProperties, GradedLeibniz) {
  Gen g(14);
  for (int i = 0; i < 200; ++i) {
    const int p = g.uniform(0, 2);
    const FormExpr a = g.form(p), b = g.mixed(2, 3);
    const FormExpr rhs = wedge(ext_d(a), b) + (p % 2 ? -wedge(a, ext_d(b)) : wedge(a, ext_d(b)));
    EXPECT_EQ(ext_d(wedge(a, b)), rhs);
  }
}

TEST(FormProperties, DCommutesWithParameterIntegration) {
  Gen g(15);
  for (int i = 0; i < 100; ++i) {
    const FormExpr a = g.mixed(2, 4);
    EXPECT_EQ(ext_d(integrate_param(a, Param::t, 0, 1)), integrate_param(ext_d(a), Param::t, 0, 1));
  }
}

TEST(FormProperties, CanonicalizationIsConfluent) {
  // Every ordering of a word of distinct odd atoms canonicalizes to the same
  // word, with the permutation parity as its sign.
  const Monomial base{Atom(Field::w, 0, 1), Atom(Field::e, 0), Atom(Field::e, 2), Atom(Field::phi, 1, 0, true)};
  std::vector<int> perm(base.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Monomial m;
    for (int k : perm) m.push_back(base[static_cast<std::size_t>(k)]);
    const int sign = canonicalize(m);
    EXPECT_EQ(m, base);
    EXPECT_EQ(sign, parity(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(FormProperties, RepeatedOddAtomVanishes) {
  Monomial m{Atom(Field::e, 1), Atom(Field::w, 0, 2), Atom(Field::e, 1)};
  EXPECT_EQ(canonicalize(m), 0);
  Monomial even{Atom(Field::phi, 1), Atom(Field::phi, 1)};
  EXPECT_EQ(canonicalize(even), 1);
}

TEST(FormProperties, TextRoundTripThroughStrIsStable) {
  Gen g(16);
  for (int i = 0; i < 50; ++i) {
    const FormExpr a = g.mixed();
    EXPECT_EQ(a.str(), FormExpr(a).str());
  }
}
