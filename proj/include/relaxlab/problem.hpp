#pragma once

#include "relaxlab/expr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace relaxlab {

/// inf f0 subject to every constraint <= 0. A family-indexed constraint
/// stands for countably many (one per k); scalar constraints are single.
/// A problem with no family-indexed constraint has a finite family.
struct Problem {
  std::string name;
  Expr objective;
  std::vector<Expr> constraints;
  std::vector<std::string> scalars;
  /// Optional known Slater point, tried before the LP search.
  std::optional<Point> slater_point;

  bool finite_family() const;
  /// f = sup over all constraints (max of scalar ones and sups of families).
  Expr sup_constraints() const;
};

enum class Variant { PStar2, P1, P2, P3, PInf, PConcave };

const char* to_string(Variant v);
/// Accepts pstar2, p1, p2, p3, pinf, pc (case-insensitive).
Variant parse_variant(const std::string& s);

struct Relaxation {
  Variant variant = Variant::PStar2;
  Expr objective;
  std::vector<Expr> constraints;
  Region region = Region::whole();
  std::vector<std::string> provenance;
  std::vector<std::string> caveats;
};

}  // namespace relaxlab
