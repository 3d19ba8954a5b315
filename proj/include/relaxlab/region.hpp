#pragma once

#include "relaxlab/point.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace relaxlab {

/// Name used for the tail value inside region inequalities.
inline constexpr const char* kTailVar = "@tail";

/// sum_v coeffs[v] * v + constant <= 0, over scalar names and kTailVar.
struct LinearIneq {
  std::map<std::string, Rat> coeffs;
  Rat constant{0};

  Rat lhs(const Point& p) const;
  friend bool operator==(const LinearIneq&, const LinearIneq&) = default;
};

struct CoordBox {
  std::size_t index = 1;
  std::optional<Rat> lo, hi;
  friend bool operator==(const CoordBox&, const CoordBox&) = default;
};

/// Polyhedral region over scalars and the tail value. When tail_free is
/// false the region only admits points with tail 0 (a primal-side set);
/// closure in the bidual frees the tail.
struct Region {
  std::vector<LinearIneq> ineqs;
  bool tail_free = false;
  std::vector<CoordBox> boxes;

  static Region whole(bool tail_free = true) { Region r; r.tail_free = tail_free; return r; }

  bool contains(const Point& p) const;
  bool is_whole() const { return ineqs.empty() && boxes.empty() && tail_free; }
  Region intersect(const Region& o) const;
  /// Closure in the bidual: same inequalities, tail freed.
  Region closure() const;
  std::string describe() const;

  friend bool operator==(const Region&, const Region&) = default;
};

}  // namespace relaxlab
