#include <gtest/gtest.h>

#include <algorithm>

#include "gwzw/jet.hpp"
#include "support.hpp"

using namespace gwzw;
using gwzw::testing::Gen;

namespace {

int brute_sign(std::uint32_t i, std::uint32_t j) {
  if (i & j) return 0;
  std::vector<int> seq;
  for (int b = 0; b < 32; ++b)
    if (i & (1u << b)) seq.push_back(b);
  for (int b = 0; b < 32; ++b)
    if (j & (1u << b)) seq.push_back(b);
  int sign = 1;
  for (std::size_t x = 0; x < seq.size(); ++x)
    for (std::size_t y = x + 1; y < seq.size(); ++y)
      if (seq[x] > seq[y]) sign = -sign;
  return sign;
}

}  // namespace

TEST(Exterior, BasisSignsMatchPermutationParity) {
  for (std::uint32_t i = 0; i < 32; ++i)
    for (std::uint32_t j = 0; j < 32; ++j) EXPECT_EQ(basis_wedge_sign(i, j), brute_sign(i, j)) << i << " " << j;
}

TEST(Jets, DeterministicPerSeed) {
  const Atom w01(Field::w, 0, 1);
  const Atom e2(Field::e, 2);
  JetAssignment a(4, 7), b(4, 7);
  // Sampling order must not matter.
  a.jet(w01);
  a.jet(e2);
  b.jet(e2);
  b.jet(w01);
  EXPECT_EQ(a.jet(w01).comps, b.jet(w01).comps);
  EXPECT_EQ(a.jet(e2).jacobian, b.jet(e2).jacobian);
  EXPECT_EQ(a.param(Param::t), b.param(Param::t));
  JetAssignment c(4, 8);
  EXPECT_NE(a.jet(w01).comps, c.jet(w01).comps);
}

TEST(Jets, SamplesAreBounded) {
  JetAssignment j(5, 3);
  for (const auto& q : j.jet(Atom(Field::u, 1, 2)).jacobian) {
    EXPECT_LE(abs(q.get_num()), 9);
    EXPECT_LE(q.get_den(), 5);
  }
}

TEST(Jets, PreassignCoversAtoms) {
  const auto j = assign_jets({Atom(Field::phi, 0, 0, true), Atom(Field::e, 1)}, 3, 1);
  EXPECT_EQ(j.jet(Atom(Field::phi, 0)).gradient.size(), 3u);
  EXPECT_EQ(j.jet(Atom(Field::e, 1)).jacobian.size(), 9u);
}

TEST(Eval, GradientContraction) {
  JetAssignment j(3, 5);
  const auto v = eval(ext_d(FormExpr::field(Field::phi, 0)), j);
  const auto& grad = j.jet(Atom(Field::phi, 0)).gradient;
  for (int mu = 0; mu < 3; ++mu) EXPECT_EQ(v.coord(1u << mu), grad[static_cast<std::size_t>(mu)]);
}

TEST(Eval, HomomorphismForSumAndWedge) {
  Gen g(41);
  for (int i = 0; i < 60; ++i) {
    JetAssignment j(5, static_cast<std::uint64_t>(i));
    const FormExpr a = g.mixed(2, 3), b = g.mixed(2, 3);
    ExteriorValue sum = eval(a, j);
    sum += eval(b, j);
    EXPECT_EQ(eval(a + b, j), sum);
    EXPECT_EQ(eval(wedge(a, b), j), wedge(eval(a, j), eval(b, j)));
  }
}

TEST(Eval, GradedCommutativityCrossValidated) {
  Gen g(42);
  for (int i = 0; i < 60; ++i) {
    JetAssignment j(5, static_cast<std::uint64_t>(100 + i));
    const int p = g.uniform(0, 2), q = g.uniform(0, 2);
    const auto a = eval(g.form(p), j), b = eval(g.form(q), j);
    ExteriorValue ba = wedge(b, a);
    if ((p * q) % 2) ba *= Rational(-1);
    EXPECT_EQ(wedge(a, b), ba);
  }
}

TEST(Eval, LeibnizTransport) {
  JetAssignment j(4, 9);
  const FormExpr w = FormExpr::field(Field::w, 0, 1), e = FormExpr::field(Field::e, 2);
  EXPECT_EQ(eval(ext_d(wedge(w, e)), j), eval(wedge(ext_d(w), e) - wedge(w, ext_d(e)), j));
}

TEST(Eval, DSquaredVanishesNumerically) {
  Gen g(43);
  for (int i = 0; i < 30; ++i) EXPECT_TRUE(eval(ext_d(ext_d(g.mixed(2, 3))), JetAssignment(5, static_cast<std::uint64_t>(i))).is_zero());
}

TEST(Eval, DegreeAboveBaseIsAnError) {
  const FormExpr x = wedge(FormExpr::field(Field::e, 0), FormExpr::field(Field::e, 1));
  EXPECT_THROW(eval(x, JetAssignment(1, 1)), OracleError);
  EXPECT_THROW(JetAssignment(0, 1), OracleError);
}

TEST(CheckIdentity, PassesAndProducesWitness) {
  const FormExpr w = FormExpr::field(Field::w, 0, 1), e = FormExpr::field(Field::e, 2);
  const FormExpr lhs = ext_d(wedge(w, e));
  const FormExpr rhs = wedge(ext_d(w), e) - wedge(w, ext_d(e));
  const auto ok = check_identity(lhs, rhs, 5, 4);
  EXPECT_TRUE(ok.pass());
  EXPECT_EQ(ok.passed, 5);
  const auto bad = check_identity(lhs, -rhs, 5, 4);
  EXPECT_FALSE(bad.pass());
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_NE(bad.witness->lhs, bad.witness->rhs);
  EXPECT_NE(bad.witness->str(4).find("seed"), std::string::npos);
}

TEST(CheckIdentity, ParametersAreSampled) {
  const FormExpr e = FormExpr::field(Field::e, 0);
  EXPECT_FALSE(check_identity(Scalar::param(Param::t) * e, e, 3, 2).pass() &&
               check_identity(Scalar::param(Param::m2) * e, e, 3, 2).pass());
}
