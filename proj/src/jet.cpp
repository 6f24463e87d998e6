#include "gwzw/jet.hpp"

#include <bit>
#include <random>
#include <sstream>

namespace gwzw {

ExteriorValue ExteriorValue::scalar(int base_dim, const Rational& c) {
  ExteriorValue v(base_dim);
  v.add(0, c);
  return v;
}

Rational ExteriorValue::coord(std::uint32_t mask) const {
  auto it = coords_.find(mask);
  return it == coords_.end() ? Rational(0) : it->second;
}

void ExteriorValue::add(std::uint32_t mask, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = coords_.emplace(mask, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) coords_.erase(it);
}

ExteriorValue& ExteriorValue::operator+=(const ExteriorValue& o) {
  for (const auto& [m, c] : o.coords_) add(m, c);
  return *this;
}

ExteriorValue& ExteriorValue::operator*=(const Rational& c) {
  if (c == 0) {
    coords_.clear();
    return *this;
  }
  for (auto& [m, v] : coords_) v *= c;
  return *this;
}

std::string ExteriorValue::str() const {
  if (coords_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : coords_) {
    os << (first ? "" : " + ") << c.get_str();
    first = false;
    for (int i = 0; i < base_dim_; ++i)
      if (m & (1u << i)) os << " dx" << i;
  }
  return os.str();
}

int basis_wedge_sign(std::uint32_t i, std::uint32_t j) {
  if (i & j) return 0;
  // Count pairs (a in I, b in J) with a > b: each needs one transposition.
  int swaps = 0;
  for (std::uint32_t rest = j; rest; rest &= rest - 1) {
    const std::uint32_t bit = rest & (~rest + 1);
    swaps += std::popcount(i & ~((bit << 1) - 1));
  }
  return (swaps & 1) ? -1 : 1;
}

ExteriorValue wedge(const ExteriorValue& a, const ExteriorValue& b) {
  ExteriorValue r(std::max(a.base_dim(), b.base_dim()));
  for (const auto& [ma, ca] : a.coords())
    for (const auto& [mb, cb] : b.coords()) {
      const int s = basis_wedge_sign(ma, mb);
      if (s == 0) continue;
      Rational c = ca * cb;
      r.add(ma | mb, s < 0 ? Rational(-c) : c);
    }
  return r;
}

namespace {

Rational sample(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

constexpr std::uint64_t kParamStream = 0xFFFF'FFFF'0000'0000ull;

}  // namespace

JetAssignment::JetAssignment(int base_dim, std::uint64_t seed) : base_dim_(base_dim), seed_(seed) {
  if (base_dim < 1 || base_dim > 24) throw OracleError("base dimension must be in 1..24");
  auto rng = rng_for(seed, kParamStream);
  for (auto& p : params_) p = sample(rng);
}

const JetAssignment::Jet& JetAssignment::jet(const Atom& field_atom) const {
  const Atom base(field_atom.field(), field_atom.index(0), field_atom.index(1), false);
  auto it = jets_.find(base.code());
  if (it != jets_.end()) return it->second;
  auto rng = rng_for(seed_, base.code());
  Jet j;
  const auto n = static_cast<std::size_t>(base_dim_);
  if (base.degree() == 0) {
    j.value = sample(rng);
    for (std::size_t k = 0; k < n; ++k) j.gradient.push_back(sample(rng));
  } else {
    for (std::size_t k = 0; k < n; ++k) j.comps.push_back(sample(rng));
    for (std::size_t k = 0; k < n * n; ++k) j.jacobian.push_back(sample(rng));
  }
  return jets_.emplace(base.code(), std::move(j)).first->second;
}

ExteriorValue JetAssignment::eval_atom(const Atom& a) const {
  const Jet& j = jet(a);
  ExteriorValue v(base_dim_);
  const int degree = field_info(a.field()).degree;
  if (degree == 0 && !a.is_d()) {
    v.add(0, j.value);
  } else if (degree == 0) {
    for (int mu = 0; mu < base_dim_; ++mu) v.add(1u << mu, j.gradient[static_cast<std::size_t>(mu)]);
  } else if (!a.is_d()) {
    for (int mu = 0; mu < base_dim_; ++mu) v.add(1u << mu, j.comps[static_cast<std::size_t>(mu)]);
  } else {
    // dω = ∂_ν ω_μ dx^ν ∧ dx^μ
    for (int nu = 0; nu < base_dim_; ++nu)
      for (int mu = 0; mu < base_dim_; ++mu) {
        if (mu == nu) continue;
        const Rational& c = j.jacobian[static_cast<std::size_t>(nu * base_dim_ + mu)];
        v.add((1u << nu) | (1u << mu), nu < mu ? c : Rational(-c));
      }
  }
  return v;
}

JetAssignment assign_jets(const std::vector<Atom>& atoms, int base_dim, std::uint64_t seed) {
  JetAssignment j(base_dim, seed);
  for (const auto& a : atoms) j.jet(a);
  return j;
}

ExteriorValue eval(const FormExpr& x, const JetAssignment& jets) {
  const int n = jets.base_dim();
  if (auto deg = x.degree(); deg && *deg > n)
    throw OracleError("form of degree " + std::to_string(*deg) + " needs a base of dimension >= " + std::to_string(*deg));
  ExteriorValue sum(n);
  for (const auto& [key, c] : x.terms()) {
    if (degree_of(key.mono) > n)
      throw OracleError("term of degree " + std::to_string(degree_of(key.mono)) + " exceeds base dimension " + std::to_string(n));
    Rational coeff = c;
    for (Param p : {Param::t, Param::s, Param::m2})
      for (int k = 0; k < key.params[p]; ++k) coeff *= jets.param(p);
    ExteriorValue term = ExteriorValue::scalar(n, coeff);
    for (const auto& a : key.mono) {
      term = wedge(term, jets.eval_atom(a));
      if (term.is_zero()) break;
    }
    sum += term;
  }
  return sum;
}

std::string OracleWitness::str(int base_dim) const {
  std::ostringstream os;
  os << "seed " << seed << ", coordinate";
  if (mask == 0) os << " 1";
  for (int i = 0; i < base_dim; ++i)
    if (mask & (1u << i)) os << " dx" << i;
  os << ": lhs " << lhs.get_str() << " != rhs " << rhs.get_str();
  return os.str();
}

OracleReport check_identity(const FormExpr& lhs, const FormExpr& rhs, int trials, int base_dim, std::uint64_t first_seed) {
  OracleReport r;
  r.base_dim = base_dim;
  r.trials = trials;
  for (int k = 0; k < trials; ++k) {
    const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(k);
    JetAssignment jets(base_dim, seed);
    const ExteriorValue l = eval(lhs, jets);
    const ExteriorValue rv = eval(rhs, jets);
    if (l == rv) {
      ++r.passed;
      continue;
    }
    if (r.witness) continue;
    ExteriorValue diff = rv;
    diff *= Rational(-1);
    diff += l;
    const std::uint32_t mask = diff.coords().begin()->first;
    r.witness = OracleWitness{seed, mask, l.coord(mask), rv.coord(mask)};
  }
  return r;
}

}  // namespace gwzw
