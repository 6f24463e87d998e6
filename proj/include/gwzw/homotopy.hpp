#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gwzw/coset.hpp"
#include "gwzw/lie_form.hpp"

namespace gwzw {

/// Straight-line family A_t = A0 + t(A1 − A0) with curvature F_t = dA_t + ½[A_t, A_t].
class HomotopyFamily {
 public:
  HomotopyFamily(LieForm a0, LieForm a1);

  const LieForm& a0() const { return a0_; }
  const LieForm& a1() const { return a1_; }
  /// θ = ∂_t A_t = A1 − A0.
  const LieForm& theta() const { return theta_; }
  const LieForm& a_t() const { return a_t_; }
  const LieForm& f_t() const { return f_t_; }

 private:
  LieForm a0_, a1_, theta_, a_t_, f_t_;
};

/// Family A_t = tA used by the Chern–Simons form.
HomotopyFamily scaling_family(const LieForm& a);
/// Gauge homotopy from g⁻¹dg (t = 0) to A^g (t = 1).
HomotopyFamily gauge_family(const LieForm& a, const CosetElement& z);

// ---------------------------------------------------------------------------
// Structural trace words. Slots are Lie-valued polynomials in the family
// symbols A_t, F_t, θ = ∂_tA_t and fixed forms, built from nested brackets;
// products of odd forms inside a trace are bracket-reduced (X² = ½[X, X]).

enum class SlotKind { A, F, Theta, Fixed, Bracket };

struct SlotNode;
using Slot = std::shared_ptr<const SlotNode>;

struct SlotNode {
  SlotKind kind;
  int degree;
  LieForm fixed;  // SlotKind::Fixed
  Slot lhs, rhs;  // SlotKind::Bracket
};

Slot slot_a();
Slot slot_f();
Slot slot_theta();
Slot slot_fixed(LieForm x);
Slot slot_bracket(Slot x, Slot y);
std::string slot_str(const Slot& s);

struct TraceWord {
  Scalar coeff;
  std::vector<Slot> slots;
  /// Number of dt factors (pulled to the far left). Words with dt > 1 vanish.
  int dt = 0;
};

using WordSum = std::vector<TraceWord>;

std::string words_str(const WordSum& words);

/// ⟨F_t^{r}⟩.
WordSum power_word(int rank);
/// ⟨A_t F_t⟩-style word with explicit slots.
WordSum word(std::vector<Slot> slots, Scalar coeff = Scalar(1));
/// Q_{2n+1}(A_t, F_t) = (n+1)∫_0^1 ds ⟨A_t (sF_t + (s²−s)A_t²)^n⟩, s integrated.
WordSum chern_simons_word(int n);

/// Homotopy derivation with dt pulled to the left: A_t ↦ 0, F_t ↦ θ, sign
/// (−1)^(degree of the slots to the left of the replaced one).
WordSum lt_apply(const WordSum& words);
/// Structural exterior derivative: dA = F − ½[A,A], dF = −[A,F]; fixed
/// forms and θ are differentiated through the family.
WordSum d_words(const WordSum& words, const HomotopyFamily& family);

/// Expands words to components over a family. Slot values are memoized.
class WordExpander {
 public:
  WordExpander(const HomotopyFamily& family, const InvariantTensor& tensor) : family_(family), tensor_(tensor) {}

  const LieForm& slot_value(const Slot& s);
  /// Expands all words carrying exactly `dt` dt-factors.
  FormExpr expand(const WordSum& words, int dt = 0);

 private:
  const HomotopyFamily& family_;
  const InvariantTensor& tensor_;
  std::map<const SlotNode*, LieForm> cache_;
};

/// k₀₁ = ∫_0^1 l_t: applies lt_apply, expands, integrates t over [0, 1].
FormExpr k01(const WordSum& words, const HomotopyFamily& family, const InvariantTensor& tensor);
/// S(A_t, F_t) expanded at a fixed t.
FormExpr evaluate_at(const WordSum& words, const HomotopyFamily& family, const InvariantTensor& tensor, const Rational& t);

struct CartanReport {
  FormExpr lhs;     // S(A1,F1) − S(A0,F0)
  FormExpr k01_d;   // k01 dS
  FormExpr d_k01;   // d k01 S
  FormExpr residual;
  bool pass() const { return residual.is_zero(); }
};

/// S(A1,F1) − S(A0,F0) = (k01 d + d k01) S.
CartanReport cartan_check(const WordSum& s, const HomotopyFamily& family, const InvariantTensor& tensor);

struct IdentityCheck {
  FormExpr lhs, rhs, residual;
  bool pass() const { return residual.is_zero(); }
};

IdentityCheck make_check(FormExpr lhs, FormExpr rhs);

/// Local form of the homotopy formula before t-integration:
/// l_t dS + d l_t S = ∂_t S, with l_t acting after dt is moved to the left.
IdentityCheck derivation_check(const WordSum& s, const HomotopyFamily& family, const InvariantTensor& tensor);

// ---------------------------------------------------------------------------
// Builders. The degree n is the tensor rank minus one.

/// Q_{2n+1}(A, F) = (n+1)∫_0^1 dt ⟨A F_t^n⟩, A_t = tA.
FormExpr chern_simons(const LieForm& a, const InvariantTensor& tensor);
/// Q_{2n+1}(A1, A0) = (n+1)∫_0^1 dt ⟨θ F_t^n⟩.
FormExpr transgression(const LieForm& a1, const LieForm& a0, const InvariantTensor& tensor);
/// B_{2n}(A1, A0) = n(n+1)∫_0^1 dt ∫_0^t ds ⟨θ A0 F_st^{n−1}⟩, A_st = tA0 + sθ.
FormExpr b2n(const LieForm& a1, const LieForm& a0, const InvariantTensor& tensor);
/// α_{2n} = k₀₁ Q_{2n+1}(A_t^g, F_t^g) over the gauge homotopy.
FormExpr alpha2n(const LieForm& a, const CosetElement& z, const InvariantTensor& tensor);

/// (−1)ⁿ n!(n+1)!/(2n+1)!
Rational wz_coefficient(int n);
/// (n+1)(−1)ⁿ ∫_0^1 tⁿ(1−t)ⁿ dt, by polynomial integration.
Rational wz_coefficient_beta(int n);
/// Q_{2n+1}(𝒱, 0) = c_n ⟨𝒱 (𝒱²)ⁿ⟩ with 𝒱² = ½[𝒱, 𝒱].
FormExpr wz_term(const LieForm& v, const InvariantTensor& tensor);
/// Q_{2n+1}(𝒱, 0) = (n+1)∫_0^1 dt ⟨𝒱 F̂_tⁿ⟩ with F̂_t = (t² − t)𝒱².
FormExpr wz_term_direct(const LieForm& v, const InvariantTensor& tensor);

struct TriangleResult {
  FormExpr q_a_abar;   // Q(A, Ā)
  FormExpr q_abar;     // Q(Ā, 0)
  FormExpr q_2n;       // Q_{2n}(A, Ā, 0)
  FormExpr q_a;        // Q(A, 0)
  FormExpr residual;   // Q(A) − Q(A,Ā) − Q(Ā) − dQ_{2n}
  bool pass() const { return residual.is_zero(); }
};

TriangleResult triangle(const LieForm& a, const LieForm& abar, const InvariantTensor& tensor);

}  // namespace gwzw
