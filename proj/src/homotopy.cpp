#include "gwzw/homotopy.hpp"

#include <sstream>

namespace gwzw {

HomotopyFamily::HomotopyFamily(LieForm a0, LieForm a1) : a0_(std::move(a0)), a1_(std::move(a1)) {
  if (a0_.degree() != 1 || a1_.degree() != 1) throw AlgebraError("homotopy endpoints must be 1-forms");
  theta_ = a1_ - a0_;
  a_t_ = a0_ + Scalar::param(Param::t) * theta_;
  f_t_ = curvature(a_t_);
}

HomotopyFamily scaling_family(const LieForm& a) { return HomotopyFamily(LieForm(a.algebra(), 1), a); }

HomotopyFamily gauge_family(const LieForm& a, const CosetElement& z) {
  return HomotopyFamily(left_maurer_cartan(z), dress(a, z));
}

// ---------------------------------------------------------------------------

namespace {

const Slot& leaf(SlotKind kind, int degree) {
  static const Slot a = std::make_shared<const SlotNode>(SlotNode{SlotKind::A, 1, {}, nullptr, nullptr});
  static const Slot f = std::make_shared<const SlotNode>(SlotNode{SlotKind::F, 2, {}, nullptr, nullptr});
  static const Slot th = std::make_shared<const SlotNode>(SlotNode{SlotKind::Theta, 1, {}, nullptr, nullptr});
  (void)degree;
  return kind == SlotKind::A ? a : kind == SlotKind::F ? f : th;
}

using SlotSum = std::vector<std::pair<Scalar, Slot>>;

SlotSum bracket_sums(const SlotSum& x, const SlotSum& y) {
  SlotSum r;
  for (const auto& [cx, sx] : x)
    for (const auto& [cy, sy] : y) r.emplace_back(cx * cy, slot_bracket(sx, sy));
  return r;
}

SlotSum d_slot(const Slot& s, const HomotopyFamily& family) {
  switch (s->kind) {
    case SlotKind::A:
      return {{Scalar(1), slot_f()}, {Scalar(Rational(-1, 2)), slot_bracket(slot_a(), slot_a())}};
    case SlotKind::F:
      return {{Scalar(-1), slot_bracket(slot_a(), slot_f())}};
    case SlotKind::Theta:
      return {{Scalar(1), slot_fixed(ext_d(family.theta()))}};
    case SlotKind::Fixed:
      return {{Scalar(1), slot_fixed(ext_d(s->fixed))}};
    case SlotKind::Bracket: {
      SlotSum r = bracket_sums(d_slot(s->lhs, family), {{Scalar(1), s->rhs}});
      const Scalar sign((s->lhs->degree & 1) ? -1 : 1);
      for (auto& [c, x] : bracket_sums({{sign, s->lhs}}, d_slot(s->rhs, family))) r.emplace_back(c, x);
      return r;
    }
  }
  return {};
}

SlotSum lt_slot(const Slot& s) {
  switch (s->kind) {
    case SlotKind::F:
      return {{Scalar(1), slot_theta()}};
    case SlotKind::Bracket: {
      SlotSum r = bracket_sums(lt_slot(s->lhs), {{Scalar(1), s->rhs}});
      const Scalar sign((s->lhs->degree & 1) ? -1 : 1);
      for (auto& [c, x] : bracket_sums({{sign, s->lhs}}, lt_slot(s->rhs))) r.emplace_back(c, x);
      return r;
    }
    default:
      return {};
  }
}

}  // namespace

Slot slot_a() { return leaf(SlotKind::A, 1); }
Slot slot_f() { return leaf(SlotKind::F, 2); }
Slot slot_theta() { return leaf(SlotKind::Theta, 1); }

Slot slot_fixed(LieForm x) {
  const int deg = x.degree();
  return std::make_shared<const SlotNode>(SlotNode{SlotKind::Fixed, deg, std::move(x), nullptr, nullptr});
}

Slot slot_bracket(Slot x, Slot y) {
  const int deg = x->degree + y->degree;
  return std::make_shared<const SlotNode>(SlotNode{SlotKind::Bracket, deg, {}, std::move(x), std::move(y)});
}

std::string slot_str(const Slot& s) {
  switch (s->kind) {
    case SlotKind::A: return "A";
    case SlotKind::F: return "F";
    case SlotKind::Theta: return "theta";
    case SlotKind::Fixed: return "X" + std::to_string(s->degree);
    case SlotKind::Bracket: return "[" + slot_str(s->lhs) + "," + slot_str(s->rhs) + "]";
  }
  return "?";
}

std::string words_str(const WordSum& words) {
  if (words.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& w = words[i];
    os << (i ? " + " : "") << "(" << w.coeff.str() << ")" << (w.dt ? "dt" : "") << "<";
    for (std::size_t k = 0; k < w.slots.size(); ++k) os << (k ? "," : "") << slot_str(w.slots[k]);
    os << ">";
  }
  return os.str();
}

WordSum power_word(int rank) { return {TraceWord{Scalar(1), std::vector<Slot>(static_cast<std::size_t>(rank), slot_f()), 0}}; }

WordSum word(std::vector<Slot> slots, Scalar coeff) { return {TraceWord{std::move(coeff), std::move(slots), 0}}; }

WordSum chern_simons_word(int n) {
  WordSum out;
  const Scalar s = Scalar::param(Param::s);
  const Scalar half_s2_minus_s = Scalar(Rational(1, 2)) * (s * s - s);
  const Slot aa = slot_bracket(slot_a(), slot_a());
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    TraceWord w{Scalar(n + 1), {slot_a()}, 0};
    for (int k = 0; k < n; ++k) {
      const bool quad = (mask >> k) & 1u;
      w.slots.push_back(quad ? aa : slot_f());
      w.coeff *= quad ? half_s2_minus_s : s;
    }
    w.coeff = w.coeff.integrate(Param::s, 0, 1);
    if (!w.coeff.is_zero()) out.push_back(std::move(w));
  }
  return out;
}

WordSum lt_apply(const WordSum& words) {
  WordSum out;
  for (const auto& w : words) {
    if (w.dt != 0) continue;
    int left = 0;
    for (std::size_t i = 0; i < w.slots.size(); ++i) {
      for (const auto& [c, x] : lt_slot(w.slots[i])) {
        TraceWord nw = w;
        nw.slots[i] = x;
        nw.coeff = (left & 1) ? -(w.coeff * c) : w.coeff * c;
        nw.dt = 1;
        out.push_back(std::move(nw));
      }
      left += w.slots[i]->degree;
    }
  }
  return out;
}

WordSum d_words(const WordSum& words, const HomotopyFamily& family) {
  WordSum out;
  for (const auto& w : words) {
    int left = w.dt;  // d anticommutes with each dt on the left
    for (std::size_t i = 0; i < w.slots.size(); ++i) {
      for (const auto& [c, x] : d_slot(w.slots[i], family)) {
        TraceWord nw = w;
        nw.slots[i] = x;
        nw.coeff = (left & 1) ? -(w.coeff * c) : w.coeff * c;
        out.push_back(std::move(nw));
      }
      left += w.slots[i]->degree;
    }
  }
  return out;
}

const LieForm& WordExpander::slot_value(const Slot& s) {
  switch (s->kind) {
    case SlotKind::A: return family_.a_t();
    case SlotKind::F: return family_.f_t();
    case SlotKind::Theta: return family_.theta();
    case SlotKind::Fixed: return s->fixed;
    case SlotKind::Bracket: break;
  }
  auto it = cache_.find(s.get());
  if (it != cache_.end()) return it->second;
  LieForm v = bracket(slot_value(s->lhs), slot_value(s->rhs));
  return cache_.emplace(s.get(), std::move(v)).first->second;
}

FormExpr WordExpander::expand(const WordSum& words, int dt) {
  FormExpr out;
  std::vector<LieForm> args;
  for (const auto& w : words) {
    if (w.dt != dt) continue;
    args.clear();
    for (const auto& s : w.slots) args.push_back(slot_value(s));
    out += w.coeff * trace(args, tensor_);
  }
  return out;
}

FormExpr k01(const WordSum& words, const HomotopyFamily& family, const InvariantTensor& tensor) {
  WordExpander ex(family, tensor);
  return integrate_param(ex.expand(lt_apply(words), 1), Param::t, 0, 1);
}

FormExpr evaluate_at(const WordSum& words, const HomotopyFamily& family, const InvariantTensor& tensor,
                     const Rational& t) {
  WordExpander ex(family, tensor);
  return substitute_param(ex.expand(words, 0), Param::t, t);
}

IdentityCheck make_check(FormExpr lhs, FormExpr rhs) {
  FormExpr residual = lhs - rhs;
  return {std::move(lhs), std::move(rhs), std::move(residual)};
}

CartanReport cartan_check(const WordSum& s, const HomotopyFamily& family, const InvariantTensor& tensor) {
  for (const auto& w : s)
    if (w.coeff.depends_on(Param::t)) throw AlgebraError("cartan_check: word coefficients must not depend on t");
  CartanReport r;
  r.lhs = evaluate_at(s, family, tensor, 1) - evaluate_at(s, family, tensor, 0);
  r.k01_d = k01(d_words(s, family), family, tensor);
  r.d_k01 = ext_d(k01(s, family, tensor));
  r.residual = r.lhs - r.k01_d - r.d_k01;
  return r;
}

IdentityCheck derivation_check(const WordSum& s, const HomotopyFamily& family, const InvariantTensor& tensor) {
  WordExpander ex(family, tensor);
  FormExpr lhs = ex.expand(lt_apply(d_words(s, family)), 1) + ext_d(ex.expand(lt_apply(s), 1));
  FormExpr rhs = derivative_param(ex.expand(s, 0), Param::t);
  return make_check(std::move(lhs), std::move(rhs));
}

// ---------------------------------------------------------------------------

namespace {

int degree_param(const InvariantTensor& tensor) {
  if (tensor.rank() < 2) throw AlgebraError("builders need a tensor of rank >= 2");
  return tensor.rank() - 1;
}

}  // namespace

FormExpr chern_simons(const LieForm& a, const InvariantTensor& tensor) {
  const int n = degree_param(tensor);
  const LieForm f_t = curvature(Scalar::param(Param::t) * a);
  std::vector<LieForm> args{a};
  for (int k = 0; k < n; ++k) args.push_back(f_t);
  return Scalar(n + 1) * integrate_param(trace(args, tensor), Param::t, 0, 1);
}

FormExpr transgression(const LieForm& a1, const LieForm& a0, const InvariantTensor& tensor) {
  const int n = degree_param(tensor);
  HomotopyFamily family(a0, a1);
  std::vector<LieForm> args{family.theta()};
  for (int k = 0; k < n; ++k) args.push_back(family.f_t());
  return Scalar(n + 1) * integrate_param(trace(args, tensor), Param::t, 0, 1);
}

FormExpr b2n(const LieForm& a1, const LieForm& a0, const InvariantTensor& tensor) {
  const int n = degree_param(tensor);
  const LieForm theta = a1 - a0;
  const LieForm a_st = Scalar::param(Param::t) * a0 + Scalar::param(Param::s) * theta;
  std::vector<LieForm> args{theta, a0};
  if (n > 1) {
    const LieForm f_st = curvature(a_st);
    for (int k = 0; k < n - 1; ++k) args.push_back(f_st);
  }
  FormExpr inner = integrate_param_to(trace(args, tensor), Param::s, Param::t);
  return Scalar(n * (n + 1)) * integrate_param(inner, Param::t, 0, 1);
}

FormExpr alpha2n(const LieForm& a, const CosetElement& z, const InvariantTensor& tensor) {
  const int n = degree_param(tensor);
  return k01(chern_simons_word(n), gauge_family(a, z), tensor);
}

Rational wz_coefficient(int n) {
  mpz_class num = 1, den = 1;
  for (int i = 2; i <= n; ++i) num *= i;
  for (int i = 2; i <= n + 1; ++i) num *= i;
  for (int i = 2; i <= 2 * n + 1; ++i) den *= i;
  Rational q(num, den);
  q.canonicalize();
  return (n & 1) ? Rational(-q) : q;
}

Rational wz_coefficient_beta(int n) {
  const Scalar t = Scalar::param(Param::t);
  Scalar integrand(1);
  for (int k = 0; k < n; ++k) integrand *= t * (Scalar(1) - t);
  Rational sign = (n & 1) ? -1 : 1;
  return sign * (n + 1) * integrand.integrate(Param::t, 0, 1).constant();
}

FormExpr wz_term(const LieForm& v, const InvariantTensor& tensor) {
  const int n = degree_param(tensor);
  const LieForm v2 = Scalar(Rational(1, 2)) * bracket(v, v);
  std::vector<LieForm> args{v};
  for (int k = 0; k < n; ++k) args.push_back(v2);
  return Scalar(wz_coefficient(n)) * trace(args, tensor);
}

FormExpr wz_term_direct(const LieForm& v, const InvariantTensor& tensor) {
  const int n = degree_param(tensor);
  const Scalar t = Scalar::param(Param::t);
  const LieForm f_hat = (t * t - t) * (Scalar(Rational(1, 2)) * bracket(v, v));
  std::vector<LieForm> args{v};
  for (int k = 0; k < n; ++k) args.push_back(f_hat);
  return Scalar(n + 1) * integrate_param(trace(args, tensor), Param::t, 0, 1);
}

TriangleResult triangle(const LieForm& a, const LieForm& abar, const InvariantTensor& tensor) {
  TriangleResult r;
  r.q_a_abar = transgression(a, abar, tensor);
  r.q_abar = chern_simons(abar, tensor);
  r.q_2n = b2n(a, abar, tensor);
  r.q_a = chern_simons(a, tensor);
  r.residual = r.q_a - r.q_a_abar - r.q_abar - ext_d(r.q_2n);
  return r;
}

}  // namespace gwzw
