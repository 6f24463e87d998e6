#pragma once

#include <gmpxx.h>

#include <array>
#include <climits>
#include <compare>
#include <cstdint>
#include <map>
#include <string>

namespace gwzw {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// Parameter symbols that may appear in coefficients: the homotopy
/// parameters t and s, and the AdS deformation m².
enum class Param : std::uint8_t { t = 0, s = 1, m2 = 2 };

const char* param_name(Param p);

/// Exponents of (t, s, m²) in a coefficient monomial.
struct ParamExp {
  std::array<std::uint8_t, 3> e{0, 0, 0};

  std::uint8_t operator[](Param p) const { return e[static_cast<int>(p)]; }
  std::uint8_t& operator[](Param p) { return e[static_cast<int>(p)]; }
  bool is_one() const { return e[0] == 0 && e[1] == 0 && e[2] == 0; }

  friend ParamExp operator+(ParamExp a, const ParamExp& b) {
    for (int i = 0; i < 3; ++i) a.e[i] = static_cast<std::uint8_t>(a.e[i] + b.e[i]);
    return a;
  }
  friend auto operator<=>(const ParamExp&, const ParamExp&) = default;
};

/// Truncation order meaning "no truncation".
inline constexpr int kExact = INT_MAX;

/// Exact rational polynomial in t, s and m². The m² dependence may be a
/// truncated series: terms with m² power above `m2_order` are dropped, and
/// a product keeps the smaller order of its operands.
class Scalar {
 public:
  using Terms = std::map<ParamExp, Rational>;

  Scalar() = default;
  Scalar(const Rational& q);  // NOLINT(google-explicit-constructor)
  Scalar(long q) : Scalar(Rational(q)) {}  // NOLINT(google-explicit-constructor)
  Scalar(int q) : Scalar(Rational(q)) {}   // NOLINT(google-explicit-constructor)

  static Scalar param(Param p, int power = 1);
  static Scalar monomial(const Rational& c, ParamExp exp);

  const Terms& terms() const { return terms_; }
  int m2_order() const { return m2_order_; }
  Scalar& truncate_m2(int order);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// The coefficient of the parameter-free term.
  Rational constant() const;
  bool depends_on(Param p) const;
  int degree_in(Param p) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar operator-() const;
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

  /// Substitutes p = value.
  Scalar substitute(Param p, const Rational& value) const;
  /// ∫_lo^hi dp, exact.
  Scalar integrate(Param p, const Rational& lo, const Rational& hi) const;
  Scalar derivative(Param p) const;

  std::string str() const;

 private:
  void add_term(const ParamExp& e, const Rational& c);

  Terms terms_;
  int m2_order_ = kExact;
};

}  // namespace gwzw
