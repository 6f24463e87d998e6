#pragma once

#include <string>
#include <vector>

#include "gwzw/lie_form.hpp"

namespace gwzw {

/// Coset representative g = e^{+φ·P}. `order` is the m² truncation used for
/// algebras whose adjoint action on the coset does not terminate.
struct CosetElement {
  LieForm phi;
  int order = kExact;
};

/// φ^a P_a over the translation directions of `algebra`.
CosetElement coset_element(const AlgebraPtr& algebra, int order = kExact);

/// A^g = g⁻¹ A g + g⁻¹ dg.
LieForm dress(const LieForm& a, const CosetElement& z);
/// 𝒱 = dg g⁻¹.
LieForm maurer_cartan(const CosetElement& z);
/// g⁻¹ dg, the flat endpoint of the gauge homotopy.
LieForm left_maurer_cartan(const CosetElement& z);

struct DressedCurvature {
  LieForm via_connection;  // curvature(dress(A, z))
  LieForm via_adjoint;     // g⁻¹ F g
  bool agree() const { return via_connection == via_adjoint; }
};

DressedCurvature dressed_curvature(const LieForm& a, const CosetElement& z);

/// Which one-form multiplies φ^c in the last term of the nonlinear vielbein series.
enum class LastTermVariant { d, covariant };

/// The nonlinear fields V^a P_a + ½ W^{ab} J_{ab} assembled term by term from
/// the Taylor series of cosh x, sinh x / x and (cosh x − 1)/x², x² = m² φ²,
/// for A = e + ω. Independent of `dress`.
LieForm ads_nonlinear_reference(const AlgebraPtr& ads, int order, LastTermVariant variant);

struct AdsSeriesComparison {
  int order = 0;
  bool matches_d_variant = false;
  bool matches_covariant_variant = false;
  /// The two variants differ by φ_c ω^c_d φ^d, which vanishes identically.
  bool variants_coincide = false;
  bool limit_matches_poincare = false;
  LieForm engine;
  std::vector<std::string> notes;
};

AdsSeriesComparison compare_ads_dressing(int n, int order);

}  // namespace gwzw
