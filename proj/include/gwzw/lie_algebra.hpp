#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gwzw/scalar.hpp"

namespace gwzw {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generator label with its Lorentz indices, e.g. J[0,1] or P[2].
/// J-type (two-index) generators keep their pair ordered first < second.
struct GeneratorId {
  std::string kind;
  std::vector<int> indices;

  static GeneratorId J(int a, int b);
  static GeneratorId P(int a);
  std::string str() const;
  friend auto operator<=>(const GeneratorId&, const GeneratorId&) = default;
};

/// Sparse linear combination of generators (by index into the algebra).
using GenCombination = std::map<int, Scalar>;

class LieAlgebra {
 public:
  LieAlgebra(std::string name, int n, std::vector<GeneratorId> generators, bool deformed);

  const std::string& name() const { return name_; }
  /// Dimension parameter: indices run over 0..2n.
  int n() const { return n_; }
  int dim() const { return 2 * n_ + 1; }
  bool deformed() const { return deformed_; }
  std::size_t size() const { return generators_.size(); }
  const std::vector<GeneratorId>& generators() const { return generators_; }
  const GeneratorId& generator(int i) const { return generators_.at(static_cast<std::size_t>(i)); }

  std::optional<int> find(const GeneratorId& g) const;
  int index_of(const GeneratorId& g) const;
  /// Index and sign of J_{ab} resolved to the a<b basis; nullopt for a == b.
  std::optional<std::pair<int, int>> j_index(int a, int b) const;
  int p_index(int a) const;

  const GenCombination& bracket(int i, int j) const { return table_[static_cast<std::size_t>(i) * size() + static_cast<std::size_t>(j)]; }
  /// Sets [T_i, T_j] = value and [T_j, T_i] = −value.
  void set_bracket(int i, int j, const GenCombination& value);

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b);

 private:
  std::string name_;
  int n_;
  bool deformed_;
  std::vector<GeneratorId> generators_;
  std::map<GeneratorId, int> lookup_;
  std::vector<GenCombination> table_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// iso(2n,1): Lorentz J_{ab}, translations P_a, [P,P] = 0.
AlgebraPtr build_poincare(int n);
/// AdS: as Poincaré but [P_a, P_b] = m² J_{ab} with m² a symbolic deformation.
AlgebraPtr build_ads(int n);
/// m → 0 limit of a deformed algebra.
AlgebraPtr contract(const LieAlgebra& deformed);

/// The bracket table with the [J,J] row exactly as printed in the source
/// derivation. It violates Jacobi against the [J,P] row; kept only as a
/// negative control for check_jacobi.
AlgebraPtr build_poincare_literal_jj(int n);

struct JacobiViolation {
  int i, j, k;
  GenCombination residual;
};

struct JacobiReport {
  std::size_t triples_checked = 0;
  std::vector<std::pair<int, int>> antisymmetry_violations;
  std::vector<JacobiViolation> violations;
  bool pass() const { return violations.empty() && antisymmetry_violations.empty(); }
};

JacobiReport check_jacobi(const LieAlgebra& algebra);

/// Totally symmetric rank-r tensor on the generators, keyed by sorted index tuples.
class InvariantTensor {
 public:
  explicit InvariantTensor(int rank) : rank_(rank) {}

  int rank() const { return rank_; }
  const std::map<std::vector<int>, Rational>& entries() const { return entries_; }
  Rational value(std::vector<int> slots) const;
  /// Stores the entry for the slot multiset; rejects a conflicting value.
  void set(std::vector<int> slots, const Rational& v);

 private:
  int rank_;
  std::map<std::vector<int>, Rational> entries_;
};

/// ⟨J_{a1a2}…J_{a(2n−1)a(2n)} P_{a(2n+1)}⟩ = 2ⁿ/(n+1) ε_{a1…a(2n+1)}, ε_{01…2n} = +1.
InvariantTensor invariant_tensor(const LieAlgebra& algebra);
InvariantTensor invariant_tensor(int n);

struct InvarianceViolation {
  std::vector<int> slots;
  int adjoint;
  Scalar residual;
};

struct InvarianceReport {
  std::size_t checks = 0;
  std::vector<InvarianceViolation> violations;
  /// Lowest power of m² among the nonzero residuals, if any.
  std::optional<int> lowest_m2_order;
  bool pass() const { return violations.empty(); }
};

InvarianceReport check_invariance(const InvariantTensor& tensor, const LieAlgebra& algebra);

/// Reductive split into a subalgebra (X_i) and coset directions (Y_l).
struct CosetSplit {
  std::vector<int> subalgebra;
  std::vector<int> coset;
};

/// Lorentz subalgebra J and translations P.
CosetSplit lorentz_split(const LieAlgebra& algebra);
/// Disjointness, covering, and [X_i, Y_l] ⊂ span(Y).
bool is_reductive(const CosetSplit& split, const LieAlgebra& algebra);

/// Levi-Civita symbol for a permutation of 0..D−1 given as a sequence.
int levi_civita(const std::vector<int>& indices);

}  // namespace gwzw
