#pragma once

#include <random>

#include "gwzw/lie_form.hpp"

namespace gwzw::testing {

/// Random exact forms for property tests. Deterministic per seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed, int dim = 3) : rng_(seed), dim_(dim) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational() {
    Rational q(uniform(-6, 6), uniform(1, 4));
    q.canonicalize();
    return q == 0 ? Rational(1) : q;
  }

  Atom atom(int max_degree) {
    for (;;) {
      const auto f = static_cast<Field>(uniform(0, kFieldCount - 1));
      const bool is_d = uniform(0, 2) == 0;
      const auto& info = field_info(f);
      if (info.degree + (is_d ? 1 : 0) > max_degree) continue;
      int a = uniform(0, dim_ - 1), b = 0;
      if (info.arity == 2) {
        b = uniform(0, dim_ - 1);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
      }
      return Atom(f, a, b, is_d);
    }
  }

  /// A single term of exactly the given degree (may come out zero).
  FormExpr monomial(int degree, bool params = true) {
    ParamExp exp;
    if (params) {
      exp[Param::t] = static_cast<std::uint8_t>(uniform(0, 1) * uniform(0, 2));
      exp[Param::s] = static_cast<std::uint8_t>(uniform(0, 3) == 0);
    }
    FormExpr x = FormExpr::constant(Scalar::monomial(rational(), exp));
    int left = degree;
    while (left > 0) {
      const Atom a = atom(left);
      left -= a.degree();
      x = wedge(x, FormExpr::atom(a));
    }
    if (uniform(0, 2) == 0) x = wedge(x, FormExpr::field(Field::phi, uniform(0, dim_ - 1)));
    return x;
  }

  FormExpr form(int degree, int terms = 3, bool params = true) {
    FormExpr x;
    for (int k = 0; k < terms; ++k) x += monomial(degree, params);
    return x;
  }

  /// Random mixed-degree expression.
  FormExpr mixed(int max_degree = 3, int terms = 4) {
    FormExpr x;
    for (int k = 0; k < terms; ++k) x += monomial(uniform(0, max_degree));
    return x;
  }

  LieForm lie(const AlgebraPtr& alg, int degree, int density = 3) {
    LieForm x(alg, degree);
    for (int k = 0; k < density; ++k) x.add(uniform(0, static_cast<int>(alg->size()) - 1), form(degree, 2, false));
    return x;
  }

 private:
  std::mt19937_64 rng_;
  int dim_;
};

}  // namespace gwzw::testing
