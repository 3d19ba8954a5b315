#pragma once

#include "relaxlab/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace relaxlab {

/// min c.x subject to a_i.x <= b_i, all variables free.
struct LinearProgram {
  struct Row {
    std::vector<std::pair<std::size_t, Rat>> coeffs;
    Rat rhs;
  };
  std::size_t num_vars = 0;
  std::vector<Rat> cost;
  std::vector<Row> rows;
};

struct LpSolution {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Rat value;
  std::vector<Rat> x;
  /// Nonnegative multiplier per row: c + A^T duals = 0 and value = -b.duals.
  std::vector<Rat> duals;
};

/// Two-phase dense simplex over exact rationals with Bland's rule.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace relaxlab
