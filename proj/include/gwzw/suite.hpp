#pragma once

#include <string>
#include <vector>

#include "gwzw/gravity.hpp"

namespace gwzw {

/// A symbolic identity lhs = rhs produced by one of the pipelines.
struct NamedIdentity {
  std::string name;
  FormExpr lhs, rhs;
  bool holds() const { return lhs == rhs; }
};

/// Every identity behind the reductions, the Chern–Simons Lagrangian and
/// the homotopy formula at a given n.
std::vector<NamedIdentity> identity_catalog(int n);

}  // namespace gwzw
