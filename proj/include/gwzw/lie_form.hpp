#pragma once

#include <map>
#include <span>
#include <vector>

#include "gwzw/form_expr.hpp"
#include "gwzw/lie_algebra.hpp"

namespace gwzw {

/// A degree-p form valued in a Lie algebra: one FormExpr per generator.
/// For Lorentz-valued forms written ½ω^{ab}J_{ab}, the component stored on
/// J_{ab} (a<b) is ω^{ab} itself.
class LieForm {
 public:
  LieForm() = default;
  LieForm(AlgebraPtr algebra, int degree) : algebra_(std::move(algebra)), degree_(degree) {}

  const AlgebraPtr& algebra() const { return algebra_; }
  const LieAlgebra& alg() const { return *algebra_; }
  int degree() const { return degree_; }
  const std::map<int, FormExpr>& components() const { return components_; }
  /// Component on generator i (zero if absent).
  FormExpr component(int i) const;
  const FormExpr* find(int i) const;
  void set(int i, FormExpr value);
  void add(int i, const FormExpr& value);
  bool is_zero() const { return components_.empty(); }

  LieForm& operator+=(const LieForm& o);
  LieForm& operator-=(const LieForm& o);
  LieForm& operator*=(const Scalar& c);
  friend LieForm operator+(LieForm a, const LieForm& b) { return a += b; }
  friend LieForm operator-(LieForm a, const LieForm& b) { return a -= b; }
  friend LieForm operator*(const Scalar& c, LieForm a) { return a *= c; }
  LieForm operator-() const;
  friend bool operator==(const LieForm& a, const LieForm& b);

  LieForm& truncate_m2(int order);
  /// Keeps only components on the given generators.
  LieForm restricted(std::span<const int> generators) const;

  std::string str() const;

 private:
  AlgebraPtr algebra_;
  int degree_ = 0;
  std::map<int, FormExpr> components_;
};

/// Graded bracket [x, y] = Σ x^G ∧ y^H [T_G, T_H].
LieForm bracket(const LieForm& x, const LieForm& y);
/// Componentwise exterior derivative.
LieForm ext_d(const LieForm& x);
/// F = dA + ½[A, A].
LieForm curvature(const LieForm& a);
/// Dx = dx + [ω, x].
LieForm cov_d(const LieForm& x, const LieForm& omega);
/// Σ over generator tuples of (x1^{G1} ∧ … ∧ xr^{Gr}) ⟨T_G1 … T_Gr⟩.
FormExpr trace(std::span<const LieForm> args, const InvariantTensor& tensor);
FormExpr trace(std::initializer_list<LieForm> args, const InvariantTensor& tensor);
/// e^{ad_{−φ·P}} x, truncated at m^{2K} for deformed algebras.
LieForm dress_adjoint(const LieForm& x, const LieForm& phi, int order = kExact);

LieForm integrate_param(const LieForm& x, Param p, const Rational& lo, const Rational& hi);
LieForm substitute_param(const LieForm& x, Param p, const Rational& value);

// Standard fields.

/// ½ ω^{ab} J_{ab} from a two-index field symbol (ω by default).
LieForm lorentz_connection(const AlgebraPtr& algebra, Field f = Field::w);
/// e^a P_a from a one-index 1-form symbol.
LieForm translation_form(const AlgebraPtr& algebra, Field f = Field::e);
/// φ^a P_a, a 0-form.
LieForm coset_scalar(const AlgebraPtr& algebra);
/// Lifts a per-index FormExpr vector v^a to v^a P_a.
LieForm translation_valued(const AlgebraPtr& algebra, int degree, const std::vector<FormExpr>& comps);

}  // namespace gwzw
