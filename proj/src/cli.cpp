#include "gwzw/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gwzw/io.hpp"
#include "gwzw/suite.hpp"

namespace gwzw {

namespace {

struct Options {
  std::string format = "text";
  int n = 1;
  std::string route = "all";
  std::string algebra = "poincare";
  int order = 2;
  std::vector<int> ns{1, 2};
  int seeds = 5;
  int trials = 1;
  std::uint64_t seed = 1;
  int base_dim = 0;
  std::string file;
  std::string k = "1";
  int max_n = 2;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational parse_k(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("--k expects a rational, got '" + text + "'");
  }
}

void check_n(int n, int max_n) {
  if (max_n < 1 || max_n > 3) throw UsageError("--max-n must be in 1..3");
  if (n < 1 || n > max_n) throw UsageError("--n must be in 1.." + std::to_string(max_n) + " (raise --max-n for larger n)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_report(const DerivationReport& rep, const Options& o, std::ostream& out) {
  const Rational k = parse_k(o.k);
  if (o.format == "json") {
    auto j = report_json(rep);
    j["action_constant"] = k.get_str();
    out << j.dump(2) << "\n";
  } else if (o.format == "latex") {
    out << report_latex(rep);
    if (!rep.boundary_latex.empty() && rep.relating_constant)
      out << "S = " << (k == 1 ? "" : k.get_str()) << "k\\int " << rep.boundary_latex << "\n";
  } else {
    out << report_text(rep);
    if (rep.relating_constant) out << "action: S = " << k.get_str() << " * int " << rep.boundary_latex << "\n";
  }
}

int derive_cs(const Options& o, std::ostream& out) {
  check_n(o.n, o.max_n);
  const auto rep = cs_gravity_report(o.n);
  print_report(rep, o, out);
  return rep.pass() ? kExitPass : kExitIdentityFailed;
}

int derive_gwzw(const Options& o, std::ostream& out) {
  check_n(o.n, o.max_n);
  GwzwRoute route = GwzwRoute::all;
  if (o.route == "direct") route = GwzwRoute::direct;
  else if (o.route == "eq44") route = GwzwRoute::homotopy;
  const auto rep = gwzw_reduce(o.n, route);
  print_report(rep, o, out);
  return rep.pass() ? kExitPass : kExitIdentityFailed;
}

std::string component_line(const std::string& label, const FormExpr& x, const std::string& format) {
  return label + " = " + (format == "latex" ? emit_latex(x) : emit_text(x)) + "\n";
}

int derive_coset(const Options& o, std::ostream& out) {
  check_n(o.n, o.max_n);
  if (o.order < 0 || o.order > 12) throw UsageError("--order must be in 0..12");
  if (o.algebra == "poincare") {
    auto alg = build_poincare(o.n);
    const LieForm a = translation_form(alg) + lorentz_connection(alg);
    const LieForm dressed = dress(a, coset_element(alg));
    const LieForm expected = translation_form(alg) + cov_d(coset_scalar(alg), lorentz_connection(alg)) + lorentz_connection(alg);
    const bool ok = dressed == expected;
    if (o.format == "json") {
      nlohmann::json comps = nlohmann::json::object();
      for (const auto& [g, c] : dressed.components()) comps[alg->generator(g).str()] = emit_json(c);
      out << nlohmann::json{{"algebra", "poincare"}, {"n", o.n}, {"components", comps}, {"matches_e_plus_Dphi", ok}}.dump(2) << "\n";
    } else {
      for (int a_ = 0; a_ < alg->dim(); ++a_)
        out << component_line("V^" + std::to_string(a_), dressed.component(alg->p_index(a_)), o.format);
      for (int a_ = 0; a_ < alg->dim(); ++a_)
        for (int b = a_ + 1; b < alg->dim(); ++b)
          out << component_line("W^" + std::to_string(a_) + std::to_string(b), dressed.component(alg->index_of(GeneratorId::J(a_, b))),
                                o.format);
      out << (ok ? "PASS" : "FAIL") << " V = e + Dphi, W = w\n";
    }
    return ok ? kExitPass : kExitIdentityFailed;
  }
  if (o.algebra != "ads") throw UsageError("--algebra must be poincare or ads");
  const auto cmp = compare_ads_dressing(o.n, o.order);
  const bool ok = (cmp.matches_d_variant || cmp.matches_covariant_variant) && cmp.limit_matches_poincare;
  if (o.format == "json") {
    nlohmann::json comps = nlohmann::json::object();
    for (const auto& [g, c] : cmp.engine.components()) comps[cmp.engine.alg().generator(g).str()] = emit_json(c);
    out << nlohmann::json{{"algebra", "ads"},
                          {"n", o.n},
                          {"order", o.order},
                          {"matches_d_variant", cmp.matches_d_variant},
                          {"matches_covariant_variant", cmp.matches_covariant_variant},
                          {"variants_coincide", cmp.variants_coincide},
                          {"limit_matches_poincare", cmp.limit_matches_poincare},
                          {"notes", cmp.notes},
                          {"components", comps}}
               .dump(2)
        << "\n";
  } else {
    const auto& alg = cmp.engine.alg();
    for (const auto& [g, c] : cmp.engine.components())
      out << component_line(alg.generator(g).str(), c, o.format);
    out << "series order: m^" << 2 * o.order << "\n";
    out << (cmp.matches_d_variant ? "PASS" : "FAIL") << " matches series with d(phi) in the last term\n";
    out << (cmp.matches_covariant_variant ? "PASS" : "FAIL") << " matches series with D(phi) in the last term\n";
    out << (cmp.limit_matches_poincare ? "PASS" : "FAIL") << " m -> 0 limit gives the Poincare dressing\n";
    for (const auto& note : cmp.notes) out << "note: " << note << "\n";
    out << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? kExitPass : kExitIdentityFailed;
}

int verify_all(const Options& o, std::ostream& out) {
  if (o.seeds < 1) throw UsageError("--seeds must be >= 1");
  if (o.trials < 1) throw UsageError("--trials must be >= 1");
  for (int n : o.ns) check_n(n, o.max_n);
  bool ok = true;
  nlohmann::json results = nlohmann::json::array();
  auto line = [&](bool pass, const std::string& what) {
    ok = ok && pass;
    results.push_back({{"check", what}, {"pass", pass}});
    if (o.format != "json") out << (pass ? "PASS " : "FAIL ") << what << "\n";
  };

  for (int n : o.ns) {
    const std::string tag = " (n=" + std::to_string(n) + ")";
    const auto p = build_poincare(n), ads = build_ads(n);
    line(check_jacobi(*p).pass(), "jacobi poincare" + tag);
    line(check_jacobi(*ads).pass(), "jacobi ads" + tag);
    const auto tensor = invariant_tensor(n);
    line(check_invariance(tensor, *p).pass(), "tensor invariance poincare" + tag);
    const auto ads_inv = check_invariance(tensor, *ads);
    if (o.format != "json")
      out << "info tensor invariance ads" << tag << ": " << (ads_inv.pass() ? "invariant" : "not invariant") << "\n";
    line(wz_coefficient(n) == wz_coefficient_beta(n), "wz coefficient closed form = beta integral" + tag);
    line(wz_term(maurer_cartan(coset_element(p)), tensor).is_zero(), "coset wz term vanishes" + tag);

    const int base_dim = o.base_dim > 0 ? o.base_dim : default_base_dim(n);
    for (const auto& id : identity_catalog(n)) {
      line(id.holds(), id.name + " [symbolic]");
      for (int s = 0; s < o.seeds; ++s) {
        const std::uint64_t first = (o.seed + static_cast<std::uint64_t>(s)) * 1000;
        const auto rep = check_identity(id.lhs, id.rhs, o.trials, base_dim, first);
        if (!rep.pass()) {
          line(false, id.name + " [oracle] " + rep.witness->str(base_dim));
          break;
        }
        if (s + 1 == o.seeds)
          line(true, id.name + " [oracle, " + std::to_string(o.seeds * o.trials) + " jets, N=" + std::to_string(base_dim) + "]");
      }
    }
  }
  if (o.format == "json") out << nlohmann::json{{"pass", ok}, {"checks", results}}.dump(2) << "\n";
  else out << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitPass : kExitIdentityFailed;
}

int eval_expr(const Options& o, std::ostream& out) {
  const std::string src = read_file(o.file);
  ParseContext ctx{o.n, nullptr};
  check_n(o.n, o.max_n);
  const auto eq = src.find("==");
  const int base_dim = o.base_dim > 0 ? o.base_dim : default_base_dim(o.n);
  if (eq == std::string::npos) {
    const FormExpr x = parse_expr(src, ctx);
    const ExteriorValue v = eval(x, JetAssignment(base_dim, o.seed));
    if (o.format == "json") {
      nlohmann::json coords = nlohmann::json::object();
      for (const auto& [m, c] : v.coords()) coords[std::to_string(m)] = c.get_str();
      out << nlohmann::json{{"expr", emit_json(x)}, {"seed", o.seed}, {"base_dim", base_dim}, {"value", coords}}.dump(2) << "\n";
    } else {
      out << "expr: " << (o.format == "latex" ? emit_latex(x) : emit_text(x)) << "\n";
      out << "value: " << v.str() << "\n";
    }
    return kExitPass;
  }
  const FormExpr lhs = parse_expr(std::string_view(src).substr(0, eq), ctx);
  FormExpr rhs;
  try {
    rhs = parse_expr(std::string_view(src).substr(eq + 2), ctx);
  } catch (const ParseError& e) {
    throw ParseError(e.position() + eq + 2, e.detail());
  }
  const auto rep = check_identity(lhs, rhs, o.trials, base_dim, o.seed);
  const bool symbolic = lhs == rhs;
  if (o.format == "json") {
    out << nlohmann::json{{"symbolic", symbolic}, {"oracle", oracle_json(rep)}}.dump(2) << "\n";
  } else {
    out << (symbolic ? "PASS" : "FAIL") << " symbolic\n";
    out << (rep.pass() ? "PASS" : "FAIL") << " oracle, " << rep.passed << "/" << rep.trials << " jets, N=" << base_dim << "\n";
    if (rep.witness) out << "witness: " << rep.witness->str(base_dim) << "\n";
  }
  return symbolic && rep.pass() ? kExitPass : kExitIdentityFailed;
}

int algebra_check(const Options& o, std::ostream& out) {
  const auto alg = parse_algebra(read_file(o.file));
  const auto jac = check_jacobi(*alg);
  const auto inv = check_invariance(invariant_tensor(alg->n()), *alg);
  if (o.format == "json") {
    out << nlohmann::json{{"name", alg->name()},
                          {"n", alg->n()},
                          {"jacobi", {{"triples", jac.triples_checked}, {"violations", jac.violations.size()}, {"pass", jac.pass()}}},
                          {"invariance", {{"checks", inv.checks}, {"violations", inv.violations.size()}, {"pass", inv.pass()}}}}
               .dump(2)
        << "\n";
  } else {
    out << "algebra " << alg->name() << ", n = " << alg->n() << "\n";
    out << (jac.pass() ? "PASS" : "FAIL") << " jacobi: " << jac.triples_checked << " triples, " << jac.violations.size() << " violations\n";
    for (std::size_t i = 0; i < jac.violations.size() && i < 5; ++i) {
      const auto& v = jac.violations[i];
      out << "  [" << alg->generator(v.i).str() << ", " << alg->generator(v.j).str() << ", " << alg->generator(v.k).str() << "]\n";
    }
    out << "info tensor invariance: " << inv.violations.size() << " violations in " << inv.checks << " checks\n";
  }
  return jac.pass() ? kExitPass : kExitIdentityFailed;
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact symbolic derivations for Chern-Simons gravity and its gauged WZW reduction", "gwzw"};
  app.require_subcommand(1);
  auto format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "latex", "json"}));
    c->add_option("--max-n", o.max_n, "Largest accepted n (runtime guard, at most 3)");
  };

  auto* derive = app.add_subcommand("derive", "Run a derivation pipeline");
  derive->require_subcommand(1);
  auto* cs = derive->add_subcommand("cs", "Chern-Simons gravity Lagrangian");
  cs->add_option("--n", o.n, "Dimension parameter (D = 2n+1)");
  format(cs);
  auto* gw = derive->add_subcommand("gwzw", "Gauged WZW reduction to the boundary");
  gw->add_option("--n", o.n, "Dimension parameter (D = 2n+1)");
  gw->add_option("--route", o.route, "Routes to compute")->check(CLI::IsMember({"all", "direct", "eq44"}));
  gw->add_option("--k", o.k, "Overall action constant");
  format(gw);
  auto* co = derive->add_subcommand("coset", "Nonlinear coset dressing");
  co->add_option("--algebra", o.algebra, "poincare or ads")->check(CLI::IsMember({"poincare", "ads"}));
  co->add_option("--order", o.order, "m^2 series order for ads");
  co->add_option("--n", o.n, "Dimension parameter");
  format(co);

  auto* verify = app.add_subcommand("verify", "Check identities symbolically and with the jet oracle");
  verify->require_subcommand(1);
  auto* all = verify->add_subcommand("all", "All identities");
  all->add_option("--n", o.ns, "Comma-separated n values")->delimiter(',');
  all->add_option("--seeds", o.seeds, "Number of oracle seeds");
  all->add_option("--trials", o.trials, "Jet samples per seed");
  all->add_option("--seed", o.seed, "First seed");
  all->add_option("--base-dim", o.base_dim, "Base dimension N (default 2n+2)");
  format(all);

  auto* ev = app.add_subcommand("eval", "Evaluate an expression, or check `lhs == rhs`, on random jets");
  ev->add_option("--expr", o.file, "Expression file")->required();
  ev->add_option("--seed", o.seed, "Seed");
  ev->add_option("--base-dim", o.base_dim, "Base dimension N (default 2n+2)");
  ev->add_option("--n", o.n, "Index range 0..2n");
  ev->add_option("--trials", o.trials, "Seeds to try for identities");
  format(ev);

  auto* alg = app.add_subcommand("algebra", "Algebra definition files");
  alg->require_subcommand(1);
  auto* check = alg->add_subcommand("check", "Jacobi check of an algebra file");
  check->add_option("file", o.file, "Algebra file")->required();
  format(check);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (cs->parsed()) return derive_cs(o, out);
    if (gw->parsed()) return derive_gwzw(o, out);
    if (co->parsed()) return derive_coset(o, out);
    if (all->parsed()) return verify_all(o, out);
    if (ev->parsed()) return eval_expr(o, out);
    if (check->parsed()) return algebra_check(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error at " << e.what() << "\n";
    return kExitUsage;
  } catch (const OracleError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const AlgebraError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace gwzw
