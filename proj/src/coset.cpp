#include "gwzw/coset.hpp"

#include <algorithm>

namespace gwzw {

namespace {

void require_coset(const CosetElement& z) {
  const auto split = lorentz_split(z.phi.alg());
  for (const auto& [g, c] : z.phi.components())
    if (std::find(split.coset.begin(), split.coset.end(), g) == split.coset.end())
      throw AlgebraError("coset scalar has a component outside the coset directions");
}

/// Σ_k (sign·ad_X)^k / (k+1)! dX
LieForm mc_series(const CosetElement& z, int sign) {
  require_coset(z);
  LieForm x = z.phi;
  x.truncate_m2(z.order);
  if (sign < 0) x = -x;
  LieForm term = ext_d(z.phi);
  term.truncate_m2(z.order);
  LieForm result = term;
  for (int k = 1; k < 64; ++k) {
    term = bracket(x, term);
    term *= Scalar(Rational(1, k + 1));
    if (term.is_zero()) return result;
    result += term;
  }
  throw AlgebraError("Maurer-Cartan series did not terminate; pass a finite m2 order");
}

}  // namespace

CosetElement coset_element(const AlgebraPtr& algebra, int order) {
  return CosetElement{coset_scalar(algebra), algebra->deformed() ? order : kExact};
}

LieForm maurer_cartan(const CosetElement& z) { return mc_series(z, +1); }

LieForm left_maurer_cartan(const CosetElement& z) { return mc_series(z, -1); }

LieForm dress(const LieForm& a, const CosetElement& z) {
  if (a.degree() != 1) throw AlgebraError("dress expects a 1-form connection");
  require_coset(z);
  return dress_adjoint(a, z.phi, z.order) + left_maurer_cartan(z);
}

DressedCurvature dressed_curvature(const LieForm& a, const CosetElement& z) {
  return {curvature(dress(a, z)), dress_adjoint(curvature(a), z.phi, z.order)};
}

LieForm ads_nonlinear_reference(const AlgebraPtr& ads, int order, LastTermVariant variant) {
  const int dim = ads->dim();
  auto phi = [](int a) { return FormExpr::field(Field::phi, a); };
  auto e = [](int a) { return FormExpr::field(Field::e, a); };
  auto w = [](int a, int b) { return FormExpr::field(Field::w, a, b); };
  auto m2_pow = [](int k, const Rational& c) {
    ParamExp p;
    p[Param::m2] = static_cast<std::uint8_t>(k);
    return Scalar::monomial(c, p);
  };

  std::vector<FormExpr> dphi(static_cast<std::size_t>(dim)), cov(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) {
    dphi[static_cast<std::size_t>(a)] = ext_d(phi(a));
    FormExpr d = ext_d(phi(a));
    for (int b = 0; b < dim; ++b) d += Scalar(eta(b)) * wedge(w(a, b), phi(b));
    cov[static_cast<std::size_t>(a)] = d;
  }
  const FormExpr phi2 = phi_squared(dim);
  FormExpr phi_dot_e, phi_dot_last;
  for (int c = 0; c < dim; ++c) {
    phi_dot_e += Scalar(eta(c)) * wedge(phi(c), e(c));
    const FormExpr& last = variant == LastTermVariant::d ? dphi[static_cast<std::size_t>(c)] : cov[static_cast<std::size_t>(c)];
    phi_dot_last += Scalar(eta(c)) * wedge(phi(c), last);
  }
  std::vector<FormExpr> phi2_pow{FormExpr::constant(Scalar(1))};
  for (int k = 1; k <= order + 1; ++k) phi2_pow.push_back(wedge(phi2_pow.back(), phi2));

  LieForm result(ads, 1);
  for (int a = 0; a < dim; ++a) {
    FormExpr v = e(a);
    const FormExpr transverse_e = wedge(phi2, e(a)) - wedge(phi(a), phi_dot_e);
    const FormExpr longitudinal = wedge(phi_dot_last, phi(a));
    for (int k = 0; k <= order; ++k) {
      // sinh x / x · Dφ^a
      v += m2_pow(k, series_coefficient(SeriesKind::sinh_over_x, k)) *
           wedge(phi2_pow[static_cast<std::size_t>(k)], cov[static_cast<std::size_t>(a)]);
      if (k == 0) continue;
      // (cosh x − 1)(δ^a_b − φ_bφ^a/φ²) e^b
      v += m2_pow(k, series_coefficient(SeriesKind::cosh, k)) * wedge(phi2_pow[static_cast<std::size_t>(k - 1)], transverse_e);
      // −(sinh x / x − 1)(φ^c dφ_c / φ²) φ^a
      v -= m2_pow(k, series_coefficient(SeriesKind::sinh_over_x, k)) *
           wedge(phi2_pow[static_cast<std::size_t>(k - 1)], longitudinal);
    }
    v.truncate_m2(order);
    result.set(ads->p_index(a), v);
  }
  for (int a = 0; a < dim; ++a) {
    for (int b = a + 1; b < dim; ++b) {
      FormExpr wab = w(a, b);
      const FormExpr pe = wedge(phi(a), e(b)) - wedge(phi(b), e(a));
      const FormExpr pd = wedge(phi(a), cov[static_cast<std::size_t>(b)]) - wedge(phi(b), cov[static_cast<std::size_t>(a)]);
      for (int k = 0; k + 1 <= order; ++k) {
        wab -= m2_pow(k + 1, series_coefficient(SeriesKind::sinh_over_x, k)) * wedge(phi2_pow[static_cast<std::size_t>(k)], pe);
        wab -= m2_pow(k + 1, series_coefficient(SeriesKind::cosh_minus_one_over_x2, k)) *
               wedge(phi2_pow[static_cast<std::size_t>(k)], pd);
      }
      wab.truncate_m2(order);
      result.set(ads->index_of(GeneratorId::J(a, b)), wab);
    }
  }
  return result;
}

AdsSeriesComparison compare_ads_dressing(int n, int order) {
  auto ads = build_ads(n);
  AdsSeriesComparison cmp;
  cmp.order = order;
  const LieForm a = translation_form(ads) + lorentz_connection(ads);
  cmp.engine = dress(a, coset_element(ads, order));
  const LieForm ref_d = ads_nonlinear_reference(ads, order, LastTermVariant::d);
  const LieForm ref_cov = ads_nonlinear_reference(ads, order, LastTermVariant::covariant);
  cmp.matches_d_variant = cmp.engine == ref_d;
  cmp.matches_covariant_variant = cmp.engine == ref_cov;
  cmp.variants_coincide = ref_d == ref_cov;

  auto poincare = build_poincare(n);
  const LieForm pa = translation_form(poincare) + lorentz_connection(poincare);
  const LieForm pdressed = dress(pa, coset_element(poincare));
  LieForm limit(poincare, 1);
  for (const auto& [g, c] : cmp.engine.components()) limit.set(g, substitute_param(c, Param::m2, 0));
  cmp.limit_matches_poincare = limit == pdressed;

  if (cmp.variants_coincide)
    cmp.notes.emplace_back("last vielbein term: d and D variants coincide (phi_c w^c_d phi^d = 0)");
  else if (cmp.matches_d_variant)
    cmp.notes.emplace_back("last vielbein term: engine matches the d variant only");
  else if (cmp.matches_covariant_variant)
    cmp.notes.emplace_back("last vielbein term: engine matches the D variant only");
  else
    cmp.notes.emplace_back("engine matches neither variant of the vielbein series");
  return cmp;
}

}  // namespace gwzw
