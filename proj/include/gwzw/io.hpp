#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gwzw/gravity.hpp"
#include "gwzw/jet.hpp"

namespace gwzw {

/// Syntax, index-range and type errors, with a byte offset into the source.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

/// Index-range errors are parse errors too, but callers may want to tell them apart.
class IndexRangeError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Dimension and algebra the surface language is read against.
struct ParseContext {
  int n = 1;
  AlgebraPtr algebra;  // defaults to build_poincare(n)
};

/// Expression language:
///
///   expr     := ['+'|'-'] product (('+'|'-') product)*
///   product  := primary (('^'|'*') primary)*
///   primary  := INT ['/' INT] | t | s | m2 | '(' expr ')' | d '(' expr ')'
///             | w[i,j] | e[i] | phi[i] | u[i,j] | f[i]
///             | R[i,j] | T[i] | Dphi[i]          curvature, torsion, Dφ components
///             | eps[i1,…,iD] | eta[i,j]
///             | tr '(' lie, … ')'                ⟨…⟩ with the invariant tensor
///   lie      := W | E | Phi | A | F | R | T | DPhi | expr * J[i,j] | expr * P[i]
///             | '[' lie ',' lie ']' | sums and scalar multiples of these
///
/// Indices are integers 0..2n or letters. A letter occurring twice in one
/// product is summed over 0..2n; a letter left unpaired is an error.
FormExpr parse_expr(std::string_view src, const ParseContext& ctx = {});
/// Same grammar; the result must be Lie-valued.
LieForm parse_lie_expr(std::string_view src, const ParseContext& ctx = {});

std::string emit_text(const FormExpr& x);
std::string emit_latex(const FormExpr& x);

inline constexpr const char* kExprSchema = "formexpr/1";
inline constexpr const char* kReportSchema = "gwzw-report/1";

nlohmann::json emit_json(const FormExpr& x);
/// Inverse of emit_json; throws ParseError (position 0) on malformed input.
FormExpr parse_json(const nlohmann::json& j);

nlohmann::json report_json(const DerivationReport& r);
std::string report_text(const DerivationReport& r);
std::string report_latex(const DerivationReport& r);

nlohmann::json oracle_json(const OracleReport& r);

/// Algebra definition files: one bracket per line, `[J[0,1], P[1]] = P[0]`,
/// right-hand sides are rational (optionally m2-weighted) combinations of
/// generators. Optional headers `name: …` and `n: …`; `#` starts a comment.
/// Unlisted brackets are zero.
AlgebraPtr parse_algebra(std::string_view text);
std::string emit_algebra(const LieAlgebra& algebra);

}  // namespace gwzw
