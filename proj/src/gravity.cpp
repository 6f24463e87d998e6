#include "gwzw/gravity.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gwzw {

EpsFactor eps_pair(std::string latex, LieForm form) { return {std::move(latex), std::move(form), 2}; }
EpsFactor eps_vector(std::string latex, LieForm form) { return {std::move(latex), std::move(form), 1}; }

namespace {

FormExpr pair_component(const LieForm& x, int a, int b) {
  auto j = x.alg().j_index(a, b);
  if (!j) return {};
  FormExpr c = x.component(j->first);
  return j->second < 0 ? -c : c;
}

std::string index_name(int slot, int dim) {
  if (dim <= 3) return std::string(1, static_cast<char>('a' + slot));
  return "a_{" + std::to_string(slot + 1) + "}";
}

/// The first component where two Lie-valued forms differ, or zero.
FormExpr lie_residual(const LieForm& x, const LieForm& y) {
  const LieForm diff = x - y;
  if (diff.is_zero()) return {};
  return diff.components().begin()->second;
}

}  // namespace

FormExpr epsilon_contract(const EpsilonTerm& term, int dim) {
  int total = 0;
  for (const auto& f : term.factors) total += f.arity;
  if (total != dim) throw AlgebraError("epsilon contraction needs " + std::to_string(dim) + " indices, got " + std::to_string(total));

  // Component tables: table[k][i] is factor k's component on its i-th index tuple.
  std::vector<std::vector<FormExpr>> tables;
  for (const auto& f : term.factors) {
    std::vector<FormExpr> t(static_cast<std::size_t>(f.arity == 2 ? dim * dim : dim));
    for (int a = 0; a < dim; ++a) {
      if (f.arity == 1) {
        t[static_cast<std::size_t>(a)] = f.form.component(f.form.alg().p_index(a));
        continue;
      }
      for (int b = 0; b < dim; ++b) t[static_cast<std::size_t>(a * dim + b)] = pair_component(f.form, a, b);
    }
    tables.push_back(std::move(t));
  }

  std::vector<int> perm(static_cast<std::size_t>(dim));
  std::iota(perm.begin(), perm.end(), 0);
  FormExpr sum;
  do {
    FormExpr product = FormExpr::constant(Scalar(term.coeff * levi_civita(perm)));
    std::size_t pos = 0;
    for (std::size_t k = 0; k < term.factors.size() && !product.is_zero(); ++k) {
      const int arity = term.factors[k].arity;
      const std::size_t idx = arity == 1 ? static_cast<std::size_t>(perm[pos])
                                         : static_cast<std::size_t>(perm[pos] * dim + perm[pos + 1]);
      pos += static_cast<std::size_t>(arity);
      const FormExpr& c = tables[k][idx];
      product = c.is_zero() ? FormExpr() : wedge(product, c);
    }
    sum += product;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

std::string epsilon_latex(const EpsilonTerm& term, int dim) {
  std::ostringstream os;
  if (term.coeff == -1) {
    os << "-";
  } else if (term.coeff != 1) {
    os << (term.coeff < 0 ? "-" : "");
    const Rational a = abs(term.coeff);
    if (a.get_den() == 1) os << a.get_num().get_str();
    else os << "\\frac{" << a.get_num().get_str() << "}{" << a.get_den().get_str() << "}";
  }
  os << "\\epsilon_{";
  for (int i = 0; i < dim; ++i) os << index_name(i, dim);
  os << "}";
  int slot = 0;
  for (const auto& f : term.factors) {
    os << f.latex << "^{";
    for (int k = 0; k < f.arity; ++k) os << index_name(slot++, dim);
    os << "}";
  }
  return os.str();
}

GravityFields::GravityFields(int n) : GravityFields(lorentz_connection(build_poincare(n)), translation_form(build_poincare(n)), coset_element(build_poincare(n))) {}

GravityFields::GravityFields(const LieForm& omega_, const LieForm& e_, const CosetElement& z_)
    : algebra(omega_.algebra()),
      tensor(invariant_tensor(*omega_.algebra())),
      omega(omega_),
      e(e_),
      a(e_ + omega_),
      z(z_),
      curvature(gwzw::curvature(omega_)),
      torsion(cov_d(e_, omega_)),
      dphi(cov_d(z_.phi, omega_)) {}

bool DerivationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const RouteCheck& c) { return c.pass(); });
}

const RouteResult* DerivationReport::route(const std::string& name) const {
  for (const auto& r : routes)
    if (r.name == name) return &r;
  return nullptr;
}

void add_check(DerivationReport& report, std::string label, const FormExpr& lhs, const FormExpr& rhs) {
  report.checks.push_back({std::move(label), lhs - rhs});
}

std::optional<Rational> proportionality(const FormExpr& x, const FormExpr& y) {
  if (y.is_zero()) return std::nullopt;
  const auto& [key, cy] = *y.terms().begin();
  auto it = x.terms().find(key);
  if (it == x.terms().end()) return x.is_zero() ? std::optional<Rational>(0) : std::nullopt;
  Rational c = it->second / cy;
  if (x == Scalar(c) * y) return c;
  return std::nullopt;
}

namespace {

EpsilonTerm curvature_term(const GravityFields& f, EpsFactor last) {
  EpsilonTerm t;
  for (int k = 0; k < f.algebra->n(); ++k) t.factors.push_back(eps_pair("R", f.curvature));
  t.factors.push_back(std::move(last));
  return t;
}

void require_n(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("unsupported n = " + std::to_string(n) + " (expected 1..3)");
}

}  // namespace

EpsilonTerm topological_action_term(const GravityFields& f) {
  EpsilonTerm t;
  t.factors.push_back(eps_vector("\\phi", f.z.phi));
  for (int k = 0; k < f.algebra->n(); ++k) t.factors.push_back(eps_pair("R", f.curvature));
  return t;
}

FormExpr topological_action_integrand(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  GravityFields f(n);
  return epsilon_contract(topological_action_term(f), f.algebra->dim());
}

FormExpr cs_gravity_lagrangian(int n) {
  require_n(n);
  GravityFields f(n);
  const int dim = f.algebra->dim();
  const FormExpr bulk = epsilon_contract(curvature_term(f, eps_vector("e", f.e)), dim);
  const Scalar t = Scalar::param(Param::t);
  const LieForm r_t = ext_d(f.omega) + t * (Scalar(Rational(1, 2)) * bracket(f.omega, f.omega));
  std::vector<LieForm> args(static_cast<std::size_t>(n - 1), r_t);
  args.push_back(f.omega);
  args.push_back(f.e);
  Scalar weight(1);
  for (int k = 0; k < n; ++k) weight *= t;
  const FormExpr inner = integrate_param(weight * trace(args, f.tensor), Param::t, 0, 1);
  return bulk - Scalar(n * (n + 1)) * ext_d(inner);
}

DerivationReport cs_gravity_report(int n) {
  require_n(n);
  GravityFields f(n);
  const int dim = f.algebra->dim();
  DerivationReport rep;
  rep.target = "Chern-Simons gravity Lagrangian Q(e + w), n = " + std::to_string(n);
  rep.n = n;

  const FormExpr formula = cs_gravity_lagrangian(n);
  rep.steps.push_back("formula: eps R^n e - n(n+1) d int_0^1 dt t^n <R_t^(n-1) w e>");
  const FormExpr q_a_w = transgression(f.a, f.omega, f.tensor);
  const FormExpr q_w = chern_simons(f.omega, f.tensor);
  const FormExpr q_2n = b2n(f.a, f.omega, f.tensor);
  const FormExpr tri = q_a_w + q_w + ext_d(q_2n);
  rep.steps.push_back("triangle: Q(A, w) + Q(w, 0) + d Q_2n(A, w, 0)");
  const FormExpr direct = chern_simons(f.a, f.tensor);
  rep.steps.push_back("direct: (n+1) int_0^1 dt <A F_t^n>");

  rep.routes = {{"formula", formula}, {"triangle", tri}, {"direct", direct}};
  add_check(rep, "formula = direct", formula, direct);
  add_check(rep, "triangle = direct", tri, direct);
  add_check(rep, "Q(w, 0) = 0", q_w, FormExpr());

  EpsilonTerm bulk = curvature_term(f, eps_vector("e", f.e));
  add_check(rep, "Q(A, w) = eps R^n e", q_a_w, epsilon_contract(bulk, dim));
  EpsilonTerm rrt = curvature_term(f, eps_vector("T", f.torsion));
  add_check(rep, "dQ = eps R^n T", ext_d(direct), epsilon_contract(rrt, dim));

  if (n == 1) {
    EpsilonTerm boundary{Rational(1, 2), {eps_pair("\\omega", f.omega), eps_vector("e", f.e)}};
    const FormExpr closed = epsilon_contract(bulk, dim) - ext_d(epsilon_contract(boundary, dim));
    add_check(rep, "closed form eps R e - 1/2 d[eps w e]", direct, closed);
  }

  rep.boundary_integrand = formula;
  std::ostringstream latex;
  latex << epsilon_latex(bulk, dim) << " - " << n * (n + 1) << "\\,d\\int_0^1 dt\\, t^{" << n << "}\\langle ";
  if (n > 1) latex << "R_t^{" << n - 1 << "}";
  latex << "\\omega e\\rangle";
  rep.boundary_latex = epsilon_latex(bulk, dim);
  rep.result_latex = latex.str();
  return rep;
}

DerivationReport gwzw_reduce_3d(const LieForm& omega, const LieForm& e, const CosetElement& z) {
  if (omega.alg().n() != 1) throw std::invalid_argument("gwzw_reduce_3d needs n = 1 fields");
  GravityFields f(omega, e, z);
  const int dim = f.algebra->dim();
  DerivationReport rep;
  rep.target = "Q3(A^z, A), n = 1";
  rep.n = 1;

  const LieForm az = dress(f.a, z);
  const LieForm v = maurer_cartan(z);
  const FormExpr direct = transgression(az, f.a, f.tensor);
  const FormExpr wz = wz_term(v, f.tensor);
  const FormExpr va = trace({v, f.a}, f.tensor);
  const FormExpr aza = trace({az, f.a}, f.tensor);
  const FormExpr combo = wz - ext_d(va) - ext_d(aza);
  rep.steps.push_back("direct: 2 int_0^1 dt <theta F_t>, theta = A^z - A");
  rep.steps.push_back("coset: -1/3 <V^3> - d<V A> - d<A^z A>");

  EpsilonTerm boundary = curvature_term(f, eps_vector("\\phi", z.phi));
  const FormExpr bnd = epsilon_contract(boundary, dim);
  const FormExpr target = ext_d(bnd);

  rep.routes = {{"direct", direct}, {"coset", combo}, {"target", target}};
  add_check(rep, "coset WZ term vanishes", wz, FormExpr());
  add_check(rep, "direct = coset", direct, combo);
  add_check(rep, "direct = d(eps R phi)", direct, target);
  EpsilonTerm w_dphi{Rational(-1, 2), {eps_pair("\\omega", f.omega), eps_vector("D\\phi", f.dphi)}};
  add_check(rep, "<A^z A> = -1/2 eps w Dphi", aza, epsilon_contract(w_dphi, dim));

  rep.boundary_integrand = bnd;
  rep.boundary_latex = epsilon_latex(boundary, dim);
  rep.result_latex = "d\\left(" + rep.boundary_latex + "\\right)";
  rep.relating_constant = proportionality(bnd, epsilon_contract(topological_action_term(f), dim));
  return rep;
}

DerivationReport gwzw_reduce_3d() {
  GravityFields f(1);
  return gwzw_reduce_3d(f.omega, f.e, f.z);
}

DerivationReport gwzw_reduce(int n, GwzwRoute route) {
  require_n(n);
  GravityFields f(n);
  const int dim = f.algebra->dim();
  DerivationReport rep;
  rep.target = "Q(A^z, A), n = " + std::to_string(n);
  rep.n = n;

  const LieForm az = dress(f.a, f.z);
  EpsilonTerm rdphi = curvature_term(f, eps_vector("D\\phi", f.dphi));
  EpsilonTerm rphi = curvature_term(f, eps_vector("\\phi", f.z.phi));
  const FormExpr target = epsilon_contract(rdphi, dim);
  const FormExpr bnd = epsilon_contract(rphi, dim);
  rep.routes.push_back({"target", target});
  rep.routes.push_back({"exact", ext_d(bnd)});
  add_check(rep, "eps R^n Dphi = d(eps R^n phi)", target, ext_d(bnd));

  if (route != GwzwRoute::homotopy) {
    rep.checks.push_back({"theta = Dphi.P", lie_residual(az - f.a, f.dphi)});
    const FormExpr direct = transgression(az, f.a, f.tensor);
    rep.steps.push_back("direct: (n+1) int_0^1 dt <theta F_t^n>");
    rep.routes.push_back({"direct", direct});
    add_check(rep, "direct = eps R^n Dphi", direct, target);
  }

  if (route != GwzwRoute::direct) {
    const LieForm mc = left_maurer_cartan(f.z);
    const FormExpr q_mc = chern_simons(mc, f.tensor);
    add_check(rep, "coset WZ term vanishes", wz_term(mc, f.tensor), FormExpr());
    add_check(rep, "Q(g^-1 dg) = 0", q_mc, FormExpr());

    const FormExpr alpha = alpha2n(f.a, f.z, f.tensor);
    const FormExpr d_alpha = ext_d(alpha);
    add_check(rep, "d alpha = Q(A^z) - Q(A) - Q(g^-1 dg)", d_alpha,
              chern_simons(az, f.tensor) - chern_simons(f.a, f.tensor) - q_mc);
    rep.steps.push_back("alpha_2n = k01 Q(A_t, F_t) over the gauge homotopy g^-1 dg -> A^z");

    const FormExpr b = b2n(az, f.a, f.tensor);
    const Scalar t = Scalar::param(Param::t);
    const LieForm r_t = ext_d(f.omega) + t * (Scalar(Rational(1, 2)) * bracket(f.omega, f.omega));
    std::vector<LieForm> args{f.dphi, f.omega};
    Scalar weight(1);
    for (int k = 0; k < n - 1; ++k) args.push_back(r_t);
    for (int k = 0; k < n; ++k) weight *= t;
    const FormExpr channel = Scalar(n * (n + 1)) * integrate_param(weight * trace(args, f.tensor), Param::t, 0, 1);
    add_check(rep, "B_2n = n(n+1) int t^n <Dphi w R_t^(n-1)>", b, channel);
    rep.steps.push_back("B_2n: only the <Dphi w (t R_t)^(n-1)> channel survives");

    const FormExpr homotopy = d_alpha - ext_d(b) + q_mc;
    rep.routes.push_back({"homotopy", homotopy});
    add_check(rep, "d alpha - d B = eps R^n Dphi", homotopy, target);
    if (route == GwzwRoute::all) add_check(rep, "direct = d alpha - d B", rep.route("direct")->value, homotopy);
  }

  rep.boundary_integrand = bnd;
  rep.boundary_latex = epsilon_latex(rphi, dim);
  rep.result_latex = "d\\left(" + rep.boundary_latex + "\\right)";
  rep.relating_constant = proportionality(bnd, epsilon_contract(topological_action_term(f), dim));
  return rep;
}

}  // namespace gwzw
