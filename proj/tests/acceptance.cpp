// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "gwzw/coset.hpp"
#include "gwzw/gravity.hpp"
#include "gwzw/homotopy.hpp"
#include "gwzw/io.hpp"
#include "gwzw/jet.hpp"
#include "gwzw/suite.hpp"
#include "support.hpp"

using namespace gwzw;

namespace {

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<bool(std::ostream&)> body;
};

bool note(std::ostream& log, bool ok, const std::string& what) {
  log << "    " << (ok ? "ok   " : "FAIL ") << what << "\n";
  return ok;
}

bool c1(std::ostream& log) {
  const auto rep = gwzw_reduce_3d();
  bool ok = note(log, rep.pass(), "3d report checks");
  for (const char* r : {"direct", "coset", "target"}) ok &= note(log, rep.route(r) != nullptr, std::string("route ") + r);
  if (!ok) return false;
  ok &= note(log, rep.route("direct")->value == rep.route("coset")->value, "direct = coset combination");
  ok &= note(log, rep.route("direct")->value == rep.route("target")->value, "direct = d(eps R phi)");
  ok &= note(log, rep.boundary_latex == "\\epsilon_{abc}R^{ab}\\phi^{c}", "boundary " + rep.boundary_latex);
  return ok;
}

bool c2(std::ostream& log) {
  const auto rep = gwzw_reduce(2);
  bool ok = note(log, rep.pass(), "5d report checks");
  const auto* direct = rep.route("direct");
  const auto* homotopy = rep.route("homotopy");
  const auto* target = rep.route("target");
  if (!direct || !homotopy || !target) return note(log, false, "routes present");
  ok &= note(log, direct->value == homotopy->value, "direct = homotopy");
  ok &= note(log, direct->value == target->value, "direct = target");
  const ParseContext ctx{2, nullptr};
  ok &= note(log, rep.boundary_integrand == parse_expr("eps[a,b,c,d,f]*R[a,b]^R[c,d]^phi[f]", ctx), "boundary " + rep.boundary_latex);
  return ok;
}

bool c3(std::ostream& log) {
  bool ok = true;
  for (int n : {1, 2}) {
    GravityFields f(n);
    ok &= note(log, cs_gravity_lagrangian(n) == chern_simons(f.a, f.tensor), "L(n=" + std::to_string(n) + ") = Q(e+w)");
    ok &= note(log, cs_gravity_report(n).pass(), "report n=" + std::to_string(n));
  }
  const FormExpr closed = parse_expr("eps[a,b,c]*R[a,b]^e[c] - 1/2*d(eps[a,b,c]*w[a,b]^e[c])");
  ok &= note(log, cs_gravity_lagrangian(1) == closed, "n=1 closed form");
  return ok;
}

bool c4(std::ostream& log) {
  bool ok = true;
  for (int n : {1, 2}) {
    const std::string tag = " n=" + std::to_string(n);
    GravityFields f(n);
    ok &= note(log, cartan_check(power_word(n + 1), scaling_family(f.a), f.tensor).pass(), "Cartan <F^(n+1)> scaling" + tag);
    const auto gauge = gauge_family(f.a, f.z);
    ok &= note(log, cartan_check(power_word(n + 1), gauge, f.tensor).pass(), "Cartan <F^(n+1)> gauge" + tag);
    ok &= note(log, cartan_check(chern_simons_word(n), gauge, f.tensor).pass(), "Cartan CS word gauge" + tag);
    const std::vector<LieForm> fs(static_cast<std::size_t>(n + 1), curvature(f.a));
    const FormExpr lhs = ext_d(chern_simons(f.a, f.tensor)), rhs = trace(fs, f.tensor);
    if (n == 1) ok &= note(log, lhs == rhs, "Chern-Weil symbolic" + tag);
    const auto rep = check_identity(lhs, rhs, 5, default_base_dim(n));
    ok &= note(log, rep.pass() && rep.passed >= 5, "Chern-Weil oracle" + tag + ", " + std::to_string(rep.passed) + " seeds");
  }
  return ok;
}

bool c5(std::ostream& log) {
  const Rational expected[] = {Rational(-1, 3), Rational(1, 10), Rational(-1, 35), Rational(1, 126)};
  bool ok = true;
  for (int n = 1; n <= 4; ++n) {
    const Rational a = wz_coefficient(n), b = wz_coefficient_beta(n);
    ok &= note(log, a == expected[n - 1] && b == a, "n=" + std::to_string(n) + ": " + a.get_str() + " / " + b.get_str());
  }
  return ok;
}

bool c6(std::ostream& log) {
  bool ok = true;
  for (int n : {1, 2}) {
    auto alg = build_poincare(n);
    const LieForm w = lorentz_connection(alg), e = translation_form(alg);
    ok &= note(log, dress(e + w, coset_element(alg)) == e + cov_d(coset_scalar(alg), w) + w, "Poincare V = e + Dphi, W = w, n=" + std::to_string(n));
  }
  for (int order : {0, 1, 2}) {
    const auto cmp = compare_ads_dressing(1, order);
    const std::string tag = " through m^" + std::to_string(2 * order);
    ok &= note(log, cmp.matches_d_variant || cmp.matches_covariant_variant, "AdS series" + tag);
    ok &= note(log, cmp.limit_matches_poincare, "m -> 0 limit" + tag);
    log << "    info d-variant " << cmp.matches_d_variant << ", D-variant " << cmp.matches_covariant_variant
        << ", coincide " << cmp.variants_coincide << "\n";
    for (const auto& s : cmp.notes) log << "    note " << s << "\n";
  }
  return ok;
}

bool c7(std::ostream& log) {
  bool ok = true;
  for (int n : {1, 2}) {
    const std::string tag = " n=" + std::to_string(n);
    auto p = build_poincare(n);
    auto a = build_ads(n);
    ok &= note(log, check_jacobi(*p).pass(), "Jacobi Poincare" + tag);
    ok &= note(log, check_jacobi(*a).pass(), "Jacobi AdS" + tag);
    const auto t = invariant_tensor(n);
    ok &= note(log, check_invariance(t, *p).pass(), "tensor invariant under Poincare" + tag);
    const auto ads = check_invariance(t, *a);
    ok &= note(log, !ads.pass(), "tensor fails AdS invariance at order m^2" + tag + " (violations: " +
                                     std::to_string(ads.violations.size()) + " of " + std::to_string(ads.checks) + ")");
  }
  return ok;
}

bool c8(std::ostream& log) {
  bool ok = true;
  for (int n : {1, 2}) {
    const int N = default_base_dim(n);
    for (const auto& id : identity_catalog(n)) {
      const auto rep = check_identity(id.lhs, id.rhs, 5, N);
      ok &= note(log, rep.pass() && rep.passed >= 5, id.name);
    }
  }
  GravityFields f(1);
  const std::vector<LieForm> fs(2, curvature(f.a));
  const auto bad = check_identity(ext_d(chern_simons(f.a, f.tensor)), Scalar(2) * trace(fs, f.tensor), 5, 4);
  ok &= note(log, !bad.pass() && bad.witness.has_value(), "corrupted Chern-Weil rejected");
  if (bad.witness) log << "    witness " << bad.witness->str(4) << "\n";
  return ok;
}

bool c9(std::ostream& log) {
  bool ok = true;
  for (int n : {1, 2}) {
    auto alg = build_poincare(n);
    ok &= note(log, wz_term(maurer_cartan(coset_element(alg)), invariant_tensor(n)).is_zero(), "Q(V, 0) WZ part = 0, n=" + std::to_string(n));
  }
  return ok;
}

bool c10(std::ostream& log) {
  gwzw::testing::Gen g(2026);
  int good = 0;
  for (int i = 0; i < 100; ++i) {
    const FormExpr x = g.mixed(3, 5);
    const auto j = emit_json(x);
    if (parse_json(nlohmann::json::parse(j.dump())) == x && emit_json(parse_json(j)).dump() == j.dump()) ++good;
  }
  bool ok = note(log, good == 100, std::to_string(good) + "/100 JSON round-trips");
  ok &= note(log, report_json(gwzw_reduce(1)).dump() == report_json(gwzw_reduce(1)).dump(), "report output repeatable");
  ok &= note(log, emit_latex(gwzw_reduce(2).boundary_integrand) == emit_latex(gwzw_reduce(2).boundary_integrand), "latex repeatable");
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "3d gWZW reduction", 1, c1},
      {2, "5d gWZW reduction", 60, c2},
      {3, "Chern-Simons gravity Lagrangian", 10, c3},
      {4, "Cartan homotopy and Chern-Weil", 30, c4},
      {5, "WZ coefficients", 1, c5},
      {6, "coset dressing", 10, c6},
      {7, "registry axioms", 5, c7},
      {8, "oracle cross-check", 60, c8},
      {9, "coset WZ vanishing", 1, c9},
      {10, "round-trips", 5, c10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    std::ostringstream log;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.body(log);
    } catch (const std::exception& e) {
      log << "    exception: " << e.what() << "\n";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs < c.budget_s;
    if (!in_budget) log << "    over budget\n";
    ok = ok && in_budget;
    if (!ok) ++failed;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << secs << " s, budget "
              << c.budget_s << " s)\n"
              << log.str();
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
