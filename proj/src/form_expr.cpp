#include "gwzw/form_expr.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace gwzw {

namespace {

constexpr std::array<FieldInfo, kFieldCount> kFields{{
    {"w", "\\omega", 1, 2},
    {"e", "e", 1, 1},
    {"phi", "\\phi", 0, 1},
    {"u", "u", 1, 2},
    {"f", "f", 1, 1},
}};

}  // namespace

const FieldInfo& field_info(Field f) { return kFields[static_cast<std::size_t>(f)]; }

std::optional<Field> field_from_name(std::string_view name) {
  for (int i = 0; i < kFieldCount; ++i)
    if (kFields[static_cast<std::size_t>(i)].name == name) return static_cast<Field>(i);
  return std::nullopt;
}

Atom::Atom(Field f, int i0, int i1, bool is_d) {
  const auto& info = field_info(f);
  if (i0 < 0 || i0 > 0xFF || i1 < 0 || i1 > 0xFF) throw std::out_of_range("atom index out of range");
  if (info.arity == 2 && i0 >= i1) throw std::invalid_argument("two-index atom requires i0 < i1");
  if (info.arity == 1) i1 = 0;
  code_ = (static_cast<std::uint32_t>(f) << 24) | (static_cast<std::uint32_t>(i0) << 16) |
          (static_cast<std::uint32_t>(i1) << 8) | (is_d ? 1u : 0u);
}

Atom Atom::d() const {
  if (is_d()) throw std::logic_error("d-atoms are never differentiated");
  Atom r = *this;
  r.code_ |= 1u;
  return r;
}

int degree_of(const Monomial& m) {
  int d = 0;
  for (const auto& a : m) d += a.degree();
  return d;
}

int canonicalize(Monomial& word) {
  int sign = 1;
  for (std::size_t i = 1; i < word.size(); ++i) {
    Atom cur = word[i];
    std::size_t j = i;
    while (j > 0 && cur < word[j - 1]) {
      if (cur.odd() && word[j - 1].odd()) sign = -sign;
      word[j] = word[j - 1];
      --j;
    }
    word[j] = cur;
  }
  for (std::size_t i = 1; i < word.size(); ++i)
    if (word[i] == word[i - 1] && word[i].odd()) return 0;
  return sign;
}

int wedge_words(const Monomial& a, const Monomial& b, Monomial& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  int odd_left_in_a = 0;
  for (const auto& x : a) odd_left_in_a += x.odd() ? 1 : 0;
  int sign = 1;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j] && a[i].odd()) return 0;
    if (b[j] < a[i]) {
      if (b[j].odd() && (odd_left_in_a & 1)) sign = -sign;
      out.push_back(b[j++]);
    } else {
      if (a[i].odd()) --odd_left_in_a;
      out.push_back(a[i++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return sign;
}

FormExpr FormExpr::constant(const Scalar& c) {
  FormExpr r;
  for (const auto& [e, q] : c.terms()) r.add_term({}, e, q);
  r.m2_order_ = c.m2_order();
  return r;
}

FormExpr FormExpr::atom(const Atom& a, const Scalar& c) {
  FormExpr r;
  for (const auto& [e, q] : c.terms()) r.add_term({a}, e, q);
  r.m2_order_ = c.m2_order();
  return r;
}

FormExpr FormExpr::field(Field f, int a, int b) {
  if (field_info(f).arity == 1) return atom(Atom(f, a));
  if (a == b) return {};
  if (a < b) return atom(Atom(f, a, b));
  return atom(Atom(f, b, a), Scalar(-1));
}

FormExpr& FormExpr::truncate_m2(int order) {
  m2_order_ = std::min(m2_order_, order);
  std::erase_if(terms_, [&](const auto& kv) { return kv.first.params[Param::m2] > m2_order_; });
  return *this;
}

std::optional<int> FormExpr::degree() const {
  if (terms_.empty()) return 0;
  int d = degree_of(terms_.begin()->first.mono);
  for (const auto& [k, c] : terms_)
    if (degree_of(k.mono) != d) return std::nullopt;
  return d;
}

bool FormExpr::depends_on(Param p) const {
  for (const auto& [k, c] : terms_)
    if (k.params[p] != 0) return true;
  return false;
}

void FormExpr::add_term(const Monomial& mono, const ParamExp& params, const Rational& c) {
  if (c == 0 || params[Param::m2] > m2_order_) return;
  auto [it, inserted] = terms_.try_emplace(Key{mono, params}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

FormExpr& FormExpr::operator+=(const FormExpr& o) {
  truncate_m2(o.m2_order_);
  for (const auto& [k, c] : o.terms_) add_term(k.mono, k.params, c);
  return *this;
}

FormExpr& FormExpr::operator-=(const FormExpr& o) {
  truncate_m2(o.m2_order_);
  for (const auto& [k, c] : o.terms_) add_term(k.mono, k.params, -c);
  return *this;
}

FormExpr& FormExpr::operator*=(const Scalar& c) {
  if (c.is_constant()) {
    const Rational q = c.constant();
    if (q == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, v] : terms_) v *= q;
    return *this;
  }
  FormExpr r;
  r.m2_order_ = std::min(m2_order_, c.m2_order());
  for (const auto& [k, v] : terms_)
    for (const auto& [e, q] : c.terms()) r.add_term(k.mono, k.params + e, v * q);
  *this = std::move(r);
  return *this;
}

FormExpr FormExpr::operator-() const {
  FormExpr r = *this;
  for (auto& [k, v] : r.terms_) v = -v;
  return r;
}

Scalar FormExpr::coefficient(const Monomial& mono) const {
  Scalar s;
  for (auto it = terms_.lower_bound(Key{mono, ParamExp{}}); it != terms_.end() && it->first.mono == mono; ++it)
    s += Scalar::monomial(it->second, it->first.params);
  return s;
}

std::string FormExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    std::string factors = abs(c) == 1 && !(k.mono.empty() && k.params.is_one()) ? "" : Rational(abs(c)).get_str();
    auto append = [&](const std::string& f) { factors += (factors.empty() ? "" : "*") + f; };
    for (Param p : {Param::t, Param::s, Param::m2})
      for (int i = 0; i < k.params[p]; ++i) append(std::string(param_name(p)));
    std::string word;
    for (const auto& a : k.mono) {
      const auto& info = field_info(a.field());
      std::string s(info.name);
      s += "[" + std::to_string(a.index(0));
      if (info.arity == 2) s += "," + std::to_string(a.index(1));
      s += "]";
      if (a.is_d()) s = "d(" + s + ")";
      word += (word.empty() ? "" : "^") + s;
    }
    if (!word.empty()) append(word);
    os << factors;
  }
  return os.str();
}

FormExpr wedge(const FormExpr& a, const FormExpr& b) {
  FormExpr r;
  r.truncate_m2(std::min(a.m2_order(), b.m2_order()));
  Monomial out;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      ParamExp p = ka.params + kb.params;
      if (p[Param::m2] > r.m2_order()) continue;
      int sign = wedge_words(ka.mono, kb.mono, out);
      if (sign == 0) continue;
      Rational c = ca * cb;
      if (sign < 0) c = -c;
      r.add_term(out, p, c);
    }
  }
  return r;
}

FormExpr wedge(std::span<const FormExpr> factors) {
  if (factors.empty()) return FormExpr::constant(Scalar(1));
  FormExpr r = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) {
    if (r.is_zero()) return r;
    r = wedge(r, factors[i]);
  }
  return r;
}

FormExpr ext_d(const FormExpr& x) {
  FormExpr r;
  r.truncate_m2(x.m2_order());
  for (const auto& [k, c] : x.terms()) {
    int left_degree = 0;
    for (std::size_t i = 0; i < k.mono.size(); ++i) {
      const Atom a = k.mono[i];
      if (!a.is_d()) {
        Monomial word = k.mono;
        word[i] = a.d();
        int sign = canonicalize(word);
        if (sign != 0) {
          if (left_degree & 1) sign = -sign;
          r.add_term(word, k.params, sign > 0 ? c : Rational(-c));
        }
      }
      left_degree += a.degree();
    }
  }
  return r;
}

FormExpr integrate_param(const FormExpr& x, Param param, const Rational& lower, const Rational& upper) {
  if (param == Param::m2) throw std::invalid_argument("cannot integrate over the deformation parameter m2");
  FormExpr r;
  r.truncate_m2(x.m2_order());
  for (const auto& [k, c] : x.terms()) {
    const int n = k.params[param] + 1;
    Rational hi = 1, lo = 1;
    for (int i = 0; i < n; ++i) {
      hi *= upper;
      lo *= lower;
    }
    ParamExp p = k.params;
    p[param] = 0;
    r.add_term(k.mono, p, c * (hi - lo) / n);
  }
  return r;
}

FormExpr integrate_param_to(const FormExpr& x, Param inner, Param outer) {
  if (inner == outer) throw std::invalid_argument("nested integration needs distinct parameters");
  if (inner == Param::m2 || outer == Param::m2)
    throw std::invalid_argument("cannot integrate over the deformation parameter m2");
  FormExpr r;
  r.truncate_m2(x.m2_order());
  for (const auto& [k, c] : x.terms()) {
    const int n = k.params[inner] + 1;
    ParamExp p = k.params;
    p[inner] = 0;
    p[outer] = static_cast<std::uint8_t>(p[outer] + n);
    r.add_term(k.mono, p, c / n);
  }
  return r;
}

FormExpr substitute_param(const FormExpr& x, Param param, const Rational& value) {
  FormExpr r;
  r.truncate_m2(param == Param::m2 ? kExact : x.m2_order());
  for (const auto& [k, c] : x.terms()) {
    Rational f = c;
    for (int i = 0; i < k.params[param]; ++i) f *= value;
    ParamExp p = k.params;
    p[param] = 0;
    r.add_term(k.mono, p, f);
  }
  return r;
}

FormExpr derivative_param(const FormExpr& x, Param param) {
  FormExpr r;
  r.truncate_m2(x.m2_order());
  for (const auto& [k, c] : x.terms()) {
    if (k.params[param] == 0) continue;
    ParamExp p = k.params;
    p[param] = static_cast<std::uint8_t>(p[param] - 1);
    r.add_term(k.mono, p, c * k.params[param]);
  }
  return r;
}

FormExpr phi_squared(int dim) {
  FormExpr r;
  for (int a = 0; a < dim; ++a) r += Scalar(eta(a)) * wedge(FormExpr::field(Field::phi, a), FormExpr::field(Field::phi, a));
  return r;
}

Rational series_coefficient(SeriesKind kind, int k) {
  // cosh: 1/(2k)!, sinh x/x: 1/(2k+1)!, (cosh x − 1)/x²: 1/(2k+2)!
  const int base = kind == SeriesKind::cosh ? 2 * k : kind == SeriesKind::sinh_over_x ? 2 * k + 1 : 2 * k + 2;
  mpz_class fact = 1;
  for (int i = 2; i <= base; ++i) fact *= i;
  return Rational(mpz_class(1), fact);
}

FormExpr series_in_m2(SeriesKind kind, int dim, int order) {
  if (order < 0) throw std::invalid_argument("series order must be non-negative");
  const FormExpr phi2 = phi_squared(dim);
  FormExpr power = FormExpr::constant(Scalar(1));
  FormExpr r;
  for (int k = 0; k <= order; ++k) {
    r += Scalar::monomial(series_coefficient(kind, k), [&] {
           ParamExp e;
           e[Param::m2] = static_cast<std::uint8_t>(k);
           return e;
         }()) * power;
    power = wedge(power, phi2);
  }
  r.truncate_m2(order);
  return r;
}

}  // namespace gwzw
