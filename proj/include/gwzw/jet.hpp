#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwzw/form_expr.hpp"

namespace gwzw {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element of the exterior algebra over dx^0 … dx^{N−1}: sparse rational
/// coordinates keyed by the bitmask of the basis monomial.
class ExteriorValue {
 public:
  using Coords = std::map<std::uint32_t, Rational>;

  ExteriorValue() = default;
  explicit ExteriorValue(int base_dim) : base_dim_(base_dim) {}
  static ExteriorValue scalar(int base_dim, const Rational& c);

  int base_dim() const { return base_dim_; }
  const Coords& coords() const { return coords_; }
  Rational coord(std::uint32_t mask) const;
  void add(std::uint32_t mask, const Rational& c);
  bool is_zero() const { return coords_.empty(); }

  ExteriorValue& operator+=(const ExteriorValue& o);
  ExteriorValue& operator*=(const Rational& c);
  friend bool operator==(const ExteriorValue& a, const ExteriorValue& b) { return a.coords_ == b.coords_; }
  std::string str() const;

 private:
  int base_dim_ = 0;
  Coords coords_;
};

/// Sign of dx^I ∧ dx^J in canonical order, 0 if they overlap.
int basis_wedge_sign(std::uint32_t i, std::uint32_t j);
ExteriorValue wedge(const ExteriorValue& a, const ExteriorValue& b);

/// First-order jets of every field component at a point of an N-dimensional
/// base, sampled from rationals p/q with |p| ≤ 9, 1 ≤ q ≤ 5. Samples are
/// drawn lazily per (seed, field component), so the assignment does not
/// depend on evaluation order. Parameters t, s, m² get sampled values too.
class JetAssignment {
 public:
  struct Jet {
    Rational value;                  // 0-forms
    std::vector<Rational> gradient;  // 0-forms: ∂_μ φ
    std::vector<Rational> comps;     // 1-forms: ω_μ
    std::vector<Rational> jacobian;  // 1-forms: ∂_ν ω_μ at ν·N + μ
  };

  JetAssignment(int base_dim, std::uint64_t seed);

  int base_dim() const { return base_dim_; }
  std::uint64_t seed() const { return seed_; }
  const Jet& jet(const Atom& field_atom) const;
  const Rational& param(Param p) const { return params_[static_cast<int>(p)]; }
  /// Value of an atom: fields from their jets, d-atoms from derivatives.
  ExteriorValue eval_atom(const Atom& a) const;

 private:
  int base_dim_;
  std::uint64_t seed_;
  Rational params_[3];
  mutable std::map<std::uint32_t, Jet> jets_;
};

/// Pre-samples jets for the given atoms (d-atoms map to their fields).
JetAssignment assign_jets(const std::vector<Atom>& atoms, int base_dim, std::uint64_t seed);

/// Exact evaluation; throws OracleError when the form degree exceeds N.
ExteriorValue eval(const FormExpr& x, const JetAssignment& jets);

struct OracleWitness {
  std::uint64_t seed;
  std::uint32_t mask;
  Rational lhs, rhs;
  std::string str(int base_dim) const;
};

struct OracleReport {
  int base_dim = 0;
  int trials = 0;
  int passed = 0;
  std::optional<OracleWitness> witness;  // first failing coordinate
  bool pass() const { return trials > 0 && passed == trials; }
};

/// Evaluates both sides at `trials` seeds starting from `first_seed`.
OracleReport check_identity(const FormExpr& lhs, const FormExpr& rhs, int trials, int base_dim,
                            std::uint64_t first_seed = 1);

/// Default base dimension 2n + 2.
inline int default_base_dim(int n) { return 2 * n + 2; }

}  // namespace gwzw
