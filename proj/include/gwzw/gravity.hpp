#pragma once

#include <string>
#include <vector>

#include "gwzw/coset.hpp"
#include "gwzw/homotopy.hpp"

namespace gwzw {

/// One factor of an ε contraction: a Lorentz- or translation-valued form
/// read with upper indices (pair components X^{ab}, vector components X^a).
struct EpsFactor {
  std::string latex;
  LieForm form;
  int arity;  // 2 for J-valued, 1 for P-valued
};

EpsFactor eps_pair(std::string latex, LieForm form);
EpsFactor eps_vector(std::string latex, LieForm form);

/// coeff · ε_{a1…aD} X1^{…} X2^{…} …, indices handed out left to right.
struct EpsilonTerm {
  Rational coeff = 1;
  std::vector<EpsFactor> factors;
};

/// Sums over all index permutations. The factor arities must add up to D.
FormExpr epsilon_contract(const EpsilonTerm& term, int dim);
/// e.g. \epsilon_{abc}R^{ab}e^{c}; a_{1}…a_{D} index names above D = 3.
std::string epsilon_latex(const EpsilonTerm& term, int dim);

/// Standard n-dimensional Poincaré field content A = e + ω, z = e^{φ·P}.
struct GravityFields {
  AlgebraPtr algebra;
  InvariantTensor tensor;
  LieForm omega, e, a;
  CosetElement z;
  LieForm curvature;  // R = dω + ½[ω, ω]
  LieForm torsion;    // T = De
  LieForm dphi;       // Dφ

  explicit GravityFields(int n);
  GravityFields(const LieForm& omega, const LieForm& e, const CosetElement& z);
};

struct RouteResult {
  std::string name;
  FormExpr value;
};

struct RouteCheck {
  std::string label;
  FormExpr residual;
  bool pass() const { return residual.is_zero(); }
};

struct DerivationReport {
  std::string target;
  int n = 0;
  std::vector<RouteResult> routes;
  std::vector<RouteCheck> checks;
  std::vector<std::string> steps;
  /// LaTeX of the derived result, e.g. d(\epsilon_{abc}R^{ab}\phi^{c}).
  std::string result_latex;
  /// The emitted integrand, with its ε-structure rendered in LaTeX.
  FormExpr boundary_integrand;
  std::string boundary_latex;
  /// boundary_integrand = relating_constant · topological_action_integrand(n), when set.
  std::optional<Rational> relating_constant;

  bool pass() const;
  const RouteResult* route(const std::string& name) const;
};

/// Adds a check comparing two expressions.
void add_check(DerivationReport& report, std::string label, const FormExpr& lhs, const FormExpr& rhs);

/// ε R…R e − n(n+1) d∫_0^1 dt tⁿ ⟨R_t^{n−1} ω e⟩, R_t = dω + t ω².
FormExpr cs_gravity_lagrangian(int n);
/// The Lagrangian three ways: the closed formula, the triangle route
/// Q(A, ω) + Q(ω) + dQ_{2n}(A, ω), and chern_simons(e + ω).
DerivationReport cs_gravity_report(int n);

/// Q₃(A^z, A) for n = 1: direct transgression against the coset combination
/// Q₃(𝒱) − d⟨𝒱A⟩ − d⟨A^z A⟩, and the boundary term d(ε_{abc}R^{ab}φ^c).
DerivationReport gwzw_reduce_3d(const LieForm& omega, const LieForm& e, const CosetElement& z);
DerivationReport gwzw_reduce_3d();

enum class GwzwRoute { all, direct, homotopy };

/// Q_{2n+1}(A^z, A) by (i) direct transgression, (ii) dα_{2n} − dB_{2n}, and
/// (iii) ε R…R Dφ = d(ε R…R φ).
DerivationReport gwzw_reduce(int n, GwzwRoute route = GwzwRoute::all);

/// ε_{a1…a(2n+1)} φ^{a1} R^{a2a3}…R^{a(2n)a(2n+1)}.
FormExpr topological_action_integrand(int n);
EpsilonTerm topological_action_term(const GravityFields& fields);

/// The rational c with x = c·y, if one exists (y ≠ 0).
std::optional<Rational> proportionality(const FormExpr& x, const FormExpr& y);

}  // namespace gwzw
