#include "gwzw/lie_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gwzw/form_expr.hpp"

namespace gwzw {

GeneratorId GeneratorId::J(int a, int b) {
  if (a >= b) throw AlgebraError("J generator requires first index < second");
  return {"J", {a, b}};
}

GeneratorId GeneratorId::P(int a) { return {"P", {a}}; }

std::string GeneratorId::str() const {
  std::string s = kind + "[";
  for (std::size_t i = 0; i < indices.size(); ++i) s += (i ? "," : "") + std::to_string(indices[i]);
  return s + "]";
}

LieAlgebra::LieAlgebra(std::string name, int n, std::vector<GeneratorId> generators, bool deformed)
    : name_(std::move(name)), n_(n), deformed_(deformed), generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.kind == "J" && (g.indices.size() != 2 || g.indices[0] >= g.indices[1]))
      throw AlgebraError("malformed J generator " + g.str());
    if (g.kind == "P" && g.indices.size() != 1) throw AlgebraError("malformed P generator " + g.str());
    for (int idx : g.indices)
      if (n_ > 0 && (idx < 0 || idx >= dim())) throw AlgebraError("generator index out of range: " + g.str());
    if (!lookup_.emplace(g, static_cast<int>(i)).second) throw AlgebraError("duplicate generator " + g.str());
  }
  table_.resize(generators_.size() * generators_.size());
}

std::optional<int> LieAlgebra::find(const GeneratorId& g) const {
  auto it = lookup_.find(g);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

int LieAlgebra::index_of(const GeneratorId& g) const {
  auto i = find(g);
  if (!i) throw AlgebraError("generator " + g.str() + " not in algebra " + name_);
  return *i;
}

std::optional<std::pair<int, int>> LieAlgebra::j_index(int a, int b) const {
  if (a == b) return std::nullopt;
  if (a < b) return std::pair{index_of(GeneratorId::J(a, b)), 1};
  return std::pair{index_of(GeneratorId::J(b, a)), -1};
}

int LieAlgebra::p_index(int a) const { return index_of(GeneratorId::P(a)); }

void LieAlgebra::set_bracket(int i, int j, const GenCombination& value) {
  const auto n = size();
  GenCombination neg;
  for (const auto& [k, c] : value)
    if (!c.is_zero()) neg[k] = -c;
  GenCombination pos;
  for (const auto& [k, c] : value)
    if (!c.is_zero()) pos[k] = c;
  table_[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = pos;
  table_[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i)] = neg;
}

bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
  return a.n_ == b.n_ && a.generators_ == b.generators_ && a.table_ == b.table_;
}

namespace {

std::vector<GeneratorId> lorentz_and_translations(int n) {
  const int dim = 2 * n + 1;
  std::vector<GeneratorId> gens;
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) gens.push_back(GeneratorId::J(a, b));
  for (int a = 0; a < dim; ++a) gens.push_back(GeneratorId::P(a));
  return gens;
}

void accumulate(GenCombination& r, int idx, const Scalar& c) {
  if (c.is_zero()) return;
  auto& slot = r[idx];
  slot += c;
  if (slot.is_zero()) r.erase(idx);
}

void add_j(GenCombination& r, const LieAlgebra& alg, int a, int b, const Scalar& c) {
  if (auto j = alg.j_index(a, b)) accumulate(r, j->first, j->second > 0 ? c : -c);
}

/// Fills the iso/so bracket table. `jj_sign` = +1 gives the Jacobi-consistent
/// Lorentz row [J_ab, J_cd] = η_bc J_ad − η_ac J_bd + η_ad J_bc − η_bd J_ac.
void fill_table(LieAlgebra& alg, bool deformed, int jj_sign) {
  const int dim = alg.dim();
  for (int a = 0; a < dim; ++a) {
    for (int b = a + 1; b < dim; ++b) {
      const int jab = alg.index_of(GeneratorId::J(a, b));
      for (int c = 0; c < dim; ++c) {
        for (int d = c + 1; d < dim; ++d) {
          const int jcd = alg.index_of(GeneratorId::J(c, d));
          if (jcd <= jab) continue;
          GenCombination r;
          if (b == c) add_j(r, alg, a, d, Scalar(jj_sign * eta(b)));
          if (a == c) add_j(r, alg, b, d, Scalar(-jj_sign * eta(a)));
          if (a == d) add_j(r, alg, b, c, Scalar(jj_sign * eta(a)));
          if (b == d) add_j(r, alg, a, c, Scalar(-jj_sign * eta(b)));
          alg.set_bracket(jab, jcd, r);
        }
      }
      // [J_ab, P_c] = η_bc P_a − η_ac P_b
      for (int c = 0; c < dim; ++c) {
        GenCombination r;
        if (b == c) accumulate(r, alg.p_index(a), Scalar(eta(b)));
        if (a == c) accumulate(r, alg.p_index(b), Scalar(-eta(a)));
        alg.set_bracket(jab, alg.p_index(c), r);
      }
    }
  }
  if (deformed) {
    // [P_a, P_b] = m² J_ab
    for (int a = 0; a < dim; ++a)
      for (int b = a + 1; b < dim; ++b) {
        GenCombination r;
        add_j(r, alg, a, b, Scalar::param(Param::m2));
        alg.set_bracket(alg.p_index(a), alg.p_index(b), r);
      }
  }
}

AlgebraPtr build_family(const std::string& name, int n, bool deformed, int jj_sign) {
  if (n < 1) throw AlgebraError("dimension parameter n must be >= 1");
  auto alg = std::make_shared<LieAlgebra>(name, n, lorentz_and_translations(n), deformed);
  fill_table(*alg, deformed, jj_sign);
  return alg;
}

}  // namespace

AlgebraPtr build_poincare(int n) { return build_family("poincare", n, false, 1); }

AlgebraPtr build_ads(int n) { return build_family("ads", n, true, 1); }

AlgebraPtr build_poincare_literal_jj(int n) { return build_family("poincare-literal", n, false, -1); }

AlgebraPtr contract(const LieAlgebra& deformed) {
  if (!deformed.deformed()) throw AlgebraError("contract: algebra '" + deformed.name() + "' carries no m2 deformation");
  std::string name = deformed.name() == "ads" ? "poincare" : deformed.name() + "-contracted";
  auto out = std::make_shared<LieAlgebra>(name, deformed.n(), deformed.generators(), false);
  const int size = static_cast<int>(deformed.size());
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) {
      GenCombination r;
      for (const auto& [k, c] : deformed.bracket(i, j)) accumulate(r, k, c.substitute(Param::m2, 0));
      out->set_bracket(i, j, r);
    }
  return out;
}

JacobiReport check_jacobi(const LieAlgebra& algebra) {
  JacobiReport report;
  const int size = static_cast<int>(algebra.size());
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      const auto& ij = algebra.bracket(i, j);
      const auto& ji = algebra.bracket(j, i);
      bool ok = ij.size() == ji.size();
      for (const auto& [k, c] : ij) {
        auto it = ji.find(k);
        ok = ok && it != ji.end() && (it->second + c).is_zero();
      }
      if (!ok && i < j) report.antisymmetry_violations.emplace_back(i, j);
    }
  auto bracket_comb = [&](const GenCombination& x, int k) {
    GenCombination r;
    for (const auto& [g, c] : x)
      for (const auto& [h, d] : algebra.bracket(g, k)) accumulate(r, h, c * d);
    return r;
  };
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j)
      for (int k = j + 1; k < size; ++k) {
        ++report.triples_checked;
        GenCombination r;
        for (const auto& [a, b, c] : {std::tuple{i, j, k}, std::tuple{j, k, i}, std::tuple{k, i, j}})
          for (const auto& [g, v] : bracket_comb(algebra.bracket(a, b), c)) accumulate(r, g, v);
        if (!r.empty()) report.violations.push_back({i, j, k, r});
      }
  return report;
}

Rational InvariantTensor::value(std::vector<int> slots) const {
  std::sort(slots.begin(), slots.end());
  auto it = entries_.find(slots);
  return it == entries_.end() ? Rational(0) : it->second;
}

void InvariantTensor::set(std::vector<int> slots, const Rational& v) {
  if (static_cast<int>(slots.size()) != rank_) throw AlgebraError("tensor entry has wrong rank");
  std::sort(slots.begin(), slots.end());
  auto [it, inserted] = entries_.emplace(slots, v);
  if (!inserted && it->second != v) throw AlgebraError("inconsistent symmetric tensor entry");
  if (v == 0) entries_.erase(it);
}

int levi_civita(const std::vector<int>& indices) {
  std::vector<int> p = indices;
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (p[i] != static_cast<int>(i)) {
      if (p[i] < 0 || p[i] >= static_cast<int>(p.size()) || p[static_cast<std::size_t>(p[i])] == p[i]) return 0;
      std::swap(p[i], p[static_cast<std::size_t>(p[i])]);
      sign = -sign;
    }
  }
  return sign;
}

InvariantTensor invariant_tensor(int n) { return invariant_tensor(*build_poincare(n)); }

InvariantTensor invariant_tensor(const LieAlgebra& algebra) {
  const int n = algebra.n();
  const int dim = algebra.dim();
  InvariantTensor tensor(n + 1);
  Rational coeff(1 << n, n + 1);
  coeff.canonicalize();
  std::vector<int> perm(static_cast<std::size_t>(dim));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int sign = levi_civita(perm);
    std::vector<int> slots;
    for (int q = 0; q < n; ++q) {
      auto j = algebra.j_index(perm[static_cast<std::size_t>(2 * q)], perm[static_cast<std::size_t>(2 * q + 1)]);
      slots.push_back(j->first);
      sign *= j->second;
    }
    slots.push_back(algebra.p_index(perm.back()));
    tensor.set(slots, coeff * sign);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return tensor;
}

InvarianceReport check_invariance(const InvariantTensor& tensor, const LieAlgebra& algebra) {
  if (tensor.rank() < 2) throw AlgebraError("invariance check needs rank >= 2");
  InvarianceReport report;
  const int size = static_cast<int>(algebra.size());
  const int rank = tensor.rank();
  std::vector<int> slots(static_cast<std::size_t>(rank), 0);
  // Enumerate multisets (non-decreasing tuples).
  while (true) {
    for (int a = 0; a < size; ++a) {
      ++report.checks;
      Scalar total;
      for (int j = 0; j < rank; ++j) {
        for (const auto& [k, c] : algebra.bracket(a, slots[static_cast<std::size_t>(j)])) {
          auto t = slots;
          t[static_cast<std::size_t>(j)] = k;
          const Rational v = tensor.value(t);
          if (v != 0) total += c * Scalar(v);
        }
      }
      if (!total.is_zero()) {
        int lowest = INT_MAX;
        for (const auto& [e, c] : total.terms()) lowest = std::min<int>(lowest, e[Param::m2]);
        report.lowest_m2_order = std::min(report.lowest_m2_order.value_or(INT_MAX), lowest);
        report.violations.push_back({slots, a, total});
      }
    }
    int pos = rank - 1;
    while (pos >= 0 && slots[static_cast<std::size_t>(pos)] == size - 1) --pos;
    if (pos < 0) break;
    const int v = slots[static_cast<std::size_t>(pos)] + 1;
    for (int j = pos; j < rank; ++j) slots[static_cast<std::size_t>(j)] = v;
  }
  return report;
}

CosetSplit lorentz_split(const LieAlgebra& algebra) {
  CosetSplit split;
  for (int i = 0; i < static_cast<int>(algebra.size()); ++i)
    (algebra.generator(i).kind == "P" ? split.coset : split.subalgebra).push_back(i);
  return split;
}

bool is_reductive(const CosetSplit& split, const LieAlgebra& algebra) {
  std::set<int> sub(split.subalgebra.begin(), split.subalgebra.end());
  std::set<int> cos(split.coset.begin(), split.coset.end());
  if (sub.size() != split.subalgebra.size() || cos.size() != split.coset.size()) return false;
  if (sub.size() + cos.size() != algebra.size()) return false;
  for (int i : sub)
    if (cos.count(i)) return false;
  for (int x : sub)
    for (int y : cos)
      for (const auto& [k, c] : algebra.bracket(x, y))
        if (!cos.count(k)) return false;
  return true;
}

}  // namespace gwzw
