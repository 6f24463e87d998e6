#include "gwzw/lie_form.hpp"

#include <algorithm>
#include <sstream>

namespace gwzw {

FormExpr LieForm::component(int i) const {
  auto it = components_.find(i);
  return it == components_.end() ? FormExpr{} : it->second;
}

const FormExpr* LieForm::find(int i) const {
  auto it = components_.find(i);
  return it == components_.end() ? nullptr : &it->second;
}

void LieForm::set(int i, FormExpr value) {
  if (value.is_zero()) {
    components_.erase(i);
    return;
  }
  components_[i] = std::move(value);
}

void LieForm::add(int i, const FormExpr& value) {
  if (value.is_zero()) return;
  auto [it, inserted] = components_.try_emplace(i, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) components_.erase(it);
  }
}

static void require_same(const LieForm& a, const LieForm& b) {
  if (a.algebra() != b.algebra() && !(a.alg() == b.alg()))
    throw AlgebraError("Lie forms over different algebras");
}

LieForm& LieForm::operator+=(const LieForm& o) {
  require_same(*this, o);
  for (const auto& [g, c] : o.components_) add(g, c);
  return *this;
}

LieForm& LieForm::operator-=(const LieForm& o) {
  require_same(*this, o);
  for (const auto& [g, c] : o.components_) add(g, -c);
  return *this;
}

LieForm& LieForm::operator*=(const Scalar& c) {
  for (auto it = components_.begin(); it != components_.end();) {
    it->second *= c;
    it = it->second.is_zero() ? components_.erase(it) : std::next(it);
  }
  return *this;
}

LieForm LieForm::operator-() const {
  LieForm r = *this;
  for (auto& [g, c] : r.components_) c = -c;
  return r;
}

bool operator==(const LieForm& a, const LieForm& b) {
  return a.degree_ == b.degree_ && a.components_ == b.components_;
}

LieForm& LieForm::truncate_m2(int order) {
  for (auto it = components_.begin(); it != components_.end();) {
    it->second.truncate_m2(order);
    it = it->second.is_zero() ? components_.erase(it) : std::next(it);
  }
  return *this;
}

LieForm LieForm::restricted(std::span<const int> generators) const {
  LieForm r(algebra_, degree_);
  for (int g : generators)
    if (auto* c = find(g)) r.set(g, *c);
  return r;
}

std::string LieForm::str() const {
  if (components_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : components_) {
    os << (first ? "" : " + ") << "(" << c.str() << ")*" << alg().generator(g).str();
    first = false;
  }
  return os.str();
}

LieForm bracket(const LieForm& x, const LieForm& y) {
  require_same(x, y);
  LieForm r(x.algebra(), x.degree() + y.degree());
  const auto& alg = x.alg();
  for (const auto& [g, xg] : x.components()) {
    for (const auto& [h, yh] : y.components()) {
      const auto& gh = alg.bracket(g, h);
      if (gh.empty()) continue;
      const FormExpr prod = wedge(xg, yh);
      if (prod.is_zero()) continue;
      for (const auto& [k, c] : gh) r.add(k, c * prod);
    }
  }
  return r;
}

LieForm ext_d(const LieForm& x) {
  LieForm r(x.algebra(), x.degree() + 1);
  for (const auto& [g, c] : x.components()) r.set(g, ext_d(c));
  return r;
}

LieForm curvature(const LieForm& a) {
  if (a.degree() != 1) throw AlgebraError("curvature requires a 1-form connection");
  LieForm half = bracket(a, a);
  half *= Scalar(Rational(1, 2));
  return ext_d(a) + half;
}

LieForm cov_d(const LieForm& x, const LieForm& omega) {
  if (omega.degree() != 1) throw AlgebraError("covariant derivative needs a 1-form connection");
  return ext_d(x) + bracket(omega, x);
}

FormExpr trace(std::span<const LieForm> args, const InvariantTensor& tensor) {
  if (static_cast<int>(args.size()) != tensor.rank())
    throw AlgebraError("trace: " + std::to_string(args.size()) + " arguments for a rank " +
                       std::to_string(tensor.rank()) + " tensor");
  for (std::size_t i = 1; i < args.size(); ++i) require_same(args[0], args[i]);
  FormExpr result;
  std::vector<const FormExpr*> factors(args.size());
  for (const auto& [key, value] : tensor.entries()) {
    std::vector<int> perm = key;  // sorted: enumerate distinct orderings
    do {
      bool present = true;
      for (std::size_t k = 0; k < args.size() && present; ++k) {
        factors[k] = args[k].find(perm[k]);
        present = factors[k] != nullptr;
      }
      if (!present) continue;
      FormExpr prod = *factors[0];
      for (std::size_t k = 1; k < factors.size() && !prod.is_zero(); ++k) prod = wedge(prod, *factors[k]);
      prod *= Scalar(value);
      result += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return result;
}

FormExpr trace(std::initializer_list<LieForm> args, const InvariantTensor& tensor) {
  return trace(std::span<const LieForm>(args.begin(), args.size()), tensor);
}

LieForm dress_adjoint(const LieForm& x, const LieForm& phi, int order) {
  if (phi.degree() != 0) throw AlgebraError("dressing scalar must be a 0-form");
  for (const auto& [g, c] : phi.components())
    if (phi.alg().generator(g).kind != "P") throw AlgebraError("dressing scalar must be translation-valued");
  LieForm result = x;
  result.truncate_m2(order);
  LieForm minus_phi = -phi;
  minus_phi.truncate_m2(order);
  LieForm term = result;
  // Each ad step raises the φ-degree by one, so the loop ends once the
  // bracket vanishes (nilpotent case) or drops past the m² truncation.
  for (int k = 1; k < 64; ++k) {
    term = bracket(minus_phi, term);
    term *= Scalar(Rational(1, k));
    term.truncate_m2(order);
    if (term.is_zero()) return result;
    result += term;
  }
  throw AlgebraError("adjoint series did not terminate; pass a finite m2 order for deformed algebras");
}

LieForm integrate_param(const LieForm& x, Param p, const Rational& lo, const Rational& hi) {
  LieForm r(x.algebra(), x.degree());
  for (const auto& [g, c] : x.components()) r.set(g, integrate_param(c, p, lo, hi));
  return r;
}

LieForm substitute_param(const LieForm& x, Param p, const Rational& value) {
  LieForm r(x.algebra(), x.degree());
  for (const auto& [g, c] : x.components()) r.set(g, substitute_param(c, p, value));
  return r;
}

LieForm lorentz_connection(const AlgebraPtr& algebra, Field f) {
  if (field_info(f).arity != 2) throw AlgebraError("Lorentz connection needs a two-index field");
  LieForm r(algebra, field_info(f).degree);
  const int dim = algebra->dim();
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) r.set(algebra->index_of(GeneratorId::J(a, b)), FormExpr::field(f, a, b));
  return r;
}

LieForm translation_form(const AlgebraPtr& algebra, Field f) {
  if (field_info(f).arity != 1) throw AlgebraError("translation form needs a one-index field");
  LieForm r(algebra, field_info(f).degree);
  for (int a = 0; a < algebra->dim(); ++a) r.set(algebra->p_index(a), FormExpr::field(f, a));
  return r;
}

LieForm coset_scalar(const AlgebraPtr& algebra) { return translation_form(algebra, Field::phi); }

LieForm translation_valued(const AlgebraPtr& algebra, int degree, const std::vector<FormExpr>& comps) {
  LieForm r(algebra, degree);
  for (std::size_t a = 0; a < comps.size(); ++a) r.set(algebra->p_index(static_cast<int>(a)), comps[a]);
  return r;
}

}  // namespace gwzw
