#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gwzw/scalar.hpp"

namespace gwzw {

/// Atomic field symbols. The declaration order is the canonical ordering rank.
///   w   : spin connection ω^{ab}, 1-form, antisymmetric index pair
///   e   : vielbein e^a, 1-form
///   phi : coset scalar φ^a, 0-form
///   u   : second antisymmetric 1-form (independent connection for generic checks)
///   f   : second vector 1-form
enum class Field : std::uint8_t { w = 0, e = 1, phi = 2, u = 3, f = 4 };

inline constexpr int kFieldCount = 5;

struct FieldInfo {
  std::string_view name;
  std::string_view latex;
  int degree;
  int arity;
};

const FieldInfo& field_info(Field f);
std::optional<Field> field_from_name(std::string_view name);

/// A field component or its exterior derivative, packed so that the integer
/// order is lexicographic on (field rank, index tuple, is_d). Two-index
/// fields always store their pair with first < second.
class Atom {
 public:
  Atom() = default;
  Atom(Field f, int i0, int i1 = 0, bool is_d = false);

  Field field() const { return static_cast<Field>(code_ >> 24); }
  int index(int k) const { return static_cast<int>((code_ >> (k == 0 ? 16 : 8)) & 0xFFu); }
  bool is_d() const { return (code_ & 1u) != 0; }
  int degree() const { return field_info(field()).degree + (is_d() ? 1 : 0); }
  bool odd() const { return (degree() & 1) != 0; }
  Atom d() const;
  std::uint32_t code() const { return code_; }

  friend auto operator<=>(const Atom&, const Atom&) = default;

 private:
  std::uint32_t code_ = 0;
};

/// Canonically ordered wedge word. Never contains a repeated odd atom.
using Monomial = std::vector<Atom>;

int degree_of(const Monomial& m);

/// Sorts a wedge word into canonical order, applying the graded
/// transposition sign. Returns 0 if the word vanishes, else ±1.
int canonicalize(Monomial& word);

/// Graded product of two canonical words: returns the sign (0 if zero)
/// and writes the canonical product into `out`.
int wedge_words(const Monomial& a, const Monomial& b, Monomial& out);

/// Sparse exact linear combination of (parameter monomial × wedge word).
class FormExpr {
 public:
  struct Key {
    Monomial mono;
    ParamExp params;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  using Terms = std::map<Key, Rational>;

  FormExpr() = default;
  static FormExpr constant(const Scalar& c);
  static FormExpr atom(const Atom& a, const Scalar& c = Scalar(1));
  /// Component of a field with sign resolution: for two-index fields,
  /// (a,b) with a > b returns −(b,a) and a == b returns 0.
  static FormExpr field(Field f, int a, int b = 0);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int m2_order() const { return m2_order_; }
  FormExpr& truncate_m2(int order);

  /// Degree if all terms share one, nullopt for mixed sums. Zero has degree 0.
  std::optional<int> degree() const;
  bool is_homogeneous() const { return degree().has_value(); }
  bool depends_on(Param p) const;

  void add_term(const Monomial& mono, const ParamExp& params, const Rational& c);

  FormExpr& operator+=(const FormExpr& o);
  FormExpr& operator-=(const FormExpr& o);
  FormExpr& operator*=(const Scalar& c);
  FormExpr operator-() const;
  friend FormExpr operator+(FormExpr a, const FormExpr& b) { return a += b; }
  friend FormExpr operator-(FormExpr a, const FormExpr& b) { return a -= b; }
  friend FormExpr operator*(const Scalar& c, FormExpr a) { return a *= c; }
  friend FormExpr operator*(FormExpr a, const Scalar& c) { return a *= c; }
  friend bool operator==(const FormExpr& a, const FormExpr& b) { return a.terms_ == b.terms_; }

  /// Coefficient of a monomial as a parameter polynomial.
  Scalar coefficient(const Monomial& mono) const;
  std::string str() const;

 private:
  Terms terms_;
  int m2_order_ = kExact;
};

FormExpr wedge(const FormExpr& a, const FormExpr& b);
FormExpr wedge(std::span<const FormExpr> factors);

/// Exterior derivative with the graded Leibniz rule; d of a d-atom is zero.
FormExpr ext_d(const FormExpr& x);

/// ∫_lo^hi d(param) applied to every coefficient.
FormExpr integrate_param(const FormExpr& x, Param param, const Rational& lower, const Rational& upper);
/// ∫_0^{outer} d(inner): the inner parameter is eliminated and replaced by powers of `outer`.
FormExpr integrate_param_to(const FormExpr& x, Param inner, Param outer);
FormExpr substitute_param(const FormExpr& x, Param param, const Rational& value);
FormExpr derivative_param(const FormExpr& x, Param param);

/// Minkowski metric with signature (−,+,…,+).
inline int eta(int a) { return a == 0 ? -1 : 1; }

/// η_{ab} φ^a φ^b over D index values.
FormExpr phi_squared(int dim);

enum class SeriesKind { cosh, sinh_over_x, cosh_minus_one_over_x2 };

/// Taylor series of cosh x, sinh x / x or (cosh x − 1)/x² with x² = m² φ²,
/// as a 0-form truncated after m^{2K}.
FormExpr series_in_m2(SeriesKind kind, int dim, int order);
/// The rational Taylor coefficient of (m²φ²)^k in the given series.
Rational series_coefficient(SeriesKind kind, int k);

}  // namespace gwzw
