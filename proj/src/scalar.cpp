#include "gwzw/scalar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gwzw {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  auto slash = text.find('/');
  auto digits_ok = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    return std::all_of(text.begin() + static_cast<long>(from), text.begin() + static_cast<long>(to),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  std::size_t num_end = slash == std::string::npos ? text.size() : slash;
  if (!digits_ok(start, num_end) || (slash != std::string::npos && !digits_ok(slash + 1, text.size())))
    throw std::invalid_argument("malformed rational literal '" + text + "'");
  Rational q;
  if (q.set_str(text[0] == '+' ? text.substr(1) : text, 10) != 0)
    throw std::invalid_argument("malformed rational literal '" + text + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

const char* param_name(Param p) {
  switch (p) {
    case Param::t: return "t";
    case Param::s: return "s";
    case Param::m2: return "m2";
  }
  return "?";
}

Scalar::Scalar(const Rational& q) {
  if (q != 0) terms_.emplace(ParamExp{}, q);
}

Scalar Scalar::param(Param p, int power) {
  ParamExp e;
  e[p] = static_cast<std::uint8_t>(power);
  return monomial(1, e);
}

Scalar Scalar::monomial(const Rational& c, ParamExp exp) {
  Scalar r;
  r.add_term(exp, c);
  return r;
}

void Scalar::add_term(const ParamExp& e, const Rational& c) {
  if (c == 0 || e[Param::m2] > m2_order_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Scalar& Scalar::truncate_m2(int order) {
  m2_order_ = std::min(m2_order_, order);
  std::erase_if(terms_, [&](const auto& kv) { return kv.first[Param::m2] > m2_order_; });
  return *this;
}

bool Scalar::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Scalar::constant() const {
  auto it = terms_.find(ParamExp{});
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Scalar::depends_on(Param p) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& kv) { return kv.first[p] != 0; });
}

int Scalar::degree_in(Param p) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max<int>(d, e[p]);
  return d;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  truncate_m2(o.m2_order_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  truncate_m2(o.m2_order_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  Scalar r;
  r.m2_order_ = std::min(m2_order_, o.m2_order_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) r.add_term(ea + eb, ca * cb);
  *this = std::move(r);
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Scalar Scalar::substitute(Param p, const Rational& value) const {
  Scalar r;
  r.m2_order_ = p == Param::m2 ? kExact : m2_order_;
  for (const auto& [e, c] : terms_) {
    Rational f = c;
    for (int k = 0; k < e[p]; ++k) f *= value;
    ParamExp ne = e;
    ne[p] = 0;
    r.add_term(ne, f);
  }
  return r;
}

Scalar Scalar::integrate(Param p, const Rational& lo, const Rational& hi) const {
  if (p == Param::m2) throw std::invalid_argument("cannot integrate over the deformation parameter m2");
  Scalar r;
  r.m2_order_ = m2_order_;
  for (const auto& [e, c] : terms_) {
    const int k = e[p] + 1;
    Rational hik = 1, lok = 1;
    for (int i = 0; i < k; ++i) {
      hik *= hi;
      lok *= lo;
    }
    ParamExp ne = e;
    ne[p] = 0;
    r.add_term(ne, c * (hik - lok) / k);
  }
  return r;
}

Scalar Scalar::derivative(Param p) const {
  Scalar r;
  r.m2_order_ = m2_order_;
  for (const auto& [e, c] : terms_) {
    if (e[p] == 0) continue;
    ParamExp ne = e;
    ne[p] = static_cast<std::uint8_t>(e[p] - 1);
    r.add_term(ne, c * e[p]);
  }
  return r;
}

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational a = abs(c);
    std::string factors = (e.is_one() || a != 1) ? a.get_str() : "";
    for (Param p : {Param::t, Param::s, Param::m2})
      for (int k = 0; k < e[p]; ++k) factors += (factors.empty() ? "" : "*") + std::string(param_name(p));
    os << factors;
  }
  return os.str();
}

}  // namespace gwzw
