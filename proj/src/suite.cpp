#include "gwzw/suite.hpp"

namespace gwzw {

namespace {

void add_report(std::vector<NamedIdentity>& out, const DerivationReport& rep, const std::string& prefix,
                const std::vector<std::pair<std::string, std::string>>& pairs) {
  for (const auto& [a, b] : pairs) {
    const RouteResult* x = rep.route(a);
    const RouteResult* y = rep.route(b);
    if (!x || !y) throw std::logic_error("missing route " + a + " or " + b);
    out.push_back({prefix + ": " + a + " = " + b, x->value, y->value});
  }
}

}  // namespace

std::vector<NamedIdentity> identity_catalog(int n) {
  std::vector<NamedIdentity> out;
  const std::string tag = " (n=" + std::to_string(n) + ")";

  add_report(out, gwzw_reduce(n), "gwzw" + tag, {{"direct", "target"}, {"homotopy", "target"}, {"target", "exact"}});
  if (n == 1) add_report(out, gwzw_reduce_3d(), "gwzw 3d", {{"direct", "coset"}, {"direct", "target"}});
  add_report(out, cs_gravity_report(n), "cs gravity" + tag, {{"formula", "direct"}, {"triangle", "direct"}});

  GravityFields f(n);
  const auto family = gauge_family(f.a, f.z);
  for (const auto& [label, words] : {std::pair<std::string, WordSum>{"<F^(n+1)>", power_word(n + 1)},
                                     std::pair<std::string, WordSum>{"Q(A_t, F_t)", chern_simons_word(n)}}) {
    const CartanReport c = cartan_check(words, family, f.tensor);
    out.push_back({"cartan " + label + tag, c.lhs, c.k01_d + c.d_k01});
  }
  const CartanReport scaled = cartan_check(power_word(n + 1), scaling_family(f.a), f.tensor);
  out.push_back({"cartan <F^(n+1)> scaling family" + tag, scaled.lhs, scaled.k01_d + scaled.d_k01});

  std::vector<LieForm> fs(static_cast<std::size_t>(n + 1), curvature(f.a));
  out.push_back({"chern-weil dQ(A) = <F^(n+1)>" + tag, ext_d(chern_simons(f.a, f.tensor)), trace(fs, f.tensor)});
  return out;
}

}  // namespace gwzw
