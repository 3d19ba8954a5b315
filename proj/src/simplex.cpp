#include "relaxlab/simplex.hpp"

#include <stdexcept>

namespace relaxlab {

namespace {

// Tableau over columns [p (n) | q (n) | slack (m) | artificial (a)] where the
// original variable is x = p - q. Row i reads sum_j T[i][j] col_j = rhs[i].
struct Tableau {
  std::size_t m = 0, cols = 0;
  std::vector<std::vector<mpq_class>> t;
  std::vector<mpq_class> rhs;
  std::vector<std::size_t> basis;
  std::vector<bool> barred;

  void pivot(std::size_t r, std::size_t c, std::vector<mpq_class>& obj, mpq_class& obj_rhs) {
    mpq_class inv = 1 / t[r][c];
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(t[r][j]) != 0) t[r][j] *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || sgn(t[i][c]) == 0) continue;
      mpq_class f = t[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        if (sgn(t[r][j]) != 0) t[i][j] -= f * t[r][j];
      rhs[i] -= f * rhs[r];
    }
    if (sgn(obj[c]) != 0) {
      mpq_class f = obj[c];
      for (std::size_t j = 0; j < cols; ++j)
        if (sgn(t[r][j]) != 0) obj[j] -= f * t[r][j];
      obj_rhs -= f * rhs[r];
    }
    basis[r] = c;
  }

  /// Minimizes with reduced costs `obj` (objective value is -obj_rhs).
  /// Returns false when unbounded.
  bool run(std::vector<mpq_class>& obj, mpq_class& obj_rhs) {
    for (;;) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j)
        if (!barred[j] && sgn(obj[j]) < 0) {
          enter = j;
          break;
        }
      if (enter == cols) return true;
      std::size_t leave = m;
      mpq_class best;
      for (std::size_t i = 0; i < m; ++i) {
        if (sgn(t[i][enter]) <= 0) continue;
        mpq_class ratio = rhs[i] / t[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter, obj, obj_rhs);
    }
  }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars, m = lp.rows.size();
  if (lp.cost.size() != n) throw std::invalid_argument("solve_lp: cost vector size mismatch");
  std::vector<bool> flipped(m);
  std::size_t num_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    flipped[i] = lp.rows[i].rhs.sign() < 0;
    if (flipped[i]) ++num_art;
  }
  Tableau tb;
  tb.m = m;
  tb.cols = 2 * n + m + num_art;
  tb.t.assign(m, std::vector<mpq_class>(tb.cols));
  tb.rhs.resize(m);
  tb.basis.resize(m);
  tb.barred.assign(tb.cols, false);
  std::size_t art = 2 * n + m;
  for (std::size_t i = 0; i < m; ++i) {
    mpq_class s = flipped[i] ? -1 : 1;
    for (const auto& [j, a] : lp.rows[i].coeffs) {
      if (j >= n) throw std::invalid_argument("solve_lp: variable index out of range");
      tb.t[i][j] += s * a.raw();
      tb.t[i][n + j] -= s * a.raw();
    }
    tb.t[i][2 * n + i] = s;
    tb.rhs[i] = s * lp.rows[i].rhs.raw();
    if (flipped[i]) {
      tb.t[i][art] = 1;
      tb.basis[i] = art++;
    } else {
      tb.basis[i] = 2 * n + i;
    }
  }

  LpSolution out;
  // Phase 1: minimize the sum of artificials.
  if (num_art > 0) {
    std::vector<mpq_class> obj(tb.cols);
    mpq_class obj_rhs = 0;
    for (std::size_t j = 2 * n + m; j < tb.cols; ++j) obj[j] = 1;
    for (std::size_t i = 0; i < m; ++i)
      if (flipped[i]) {
        for (std::size_t j = 0; j < tb.cols; ++j) obj[j] -= tb.t[i][j];
        obj_rhs -= tb.rhs[i];
      }
    tb.run(obj, obj_rhs);
    if (sgn(obj_rhs) != 0) {
      out.status = LpSolution::Status::Infeasible;
      return out;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (tb.basis[i] < 2 * n + m) continue;
      for (std::size_t j = 0; j < 2 * n + m; ++j)
        if (sgn(tb.t[i][j]) != 0) {
          tb.pivot(i, j, obj, obj_rhs);
          break;
        }
    }
    for (std::size_t j = 2 * n + m; j < tb.cols; ++j) tb.barred[j] = true;
  }

  // Phase 2.
  std::vector<mpq_class> obj(tb.cols);
  mpq_class obj_rhs = 0;
  for (std::size_t j = 0; j < n; ++j) {
    obj[j] = lp.cost[j].raw();
    obj[n + j] = -lp.cost[j].raw();
  }
  for (std::size_t i = 0; i < m; ++i) {
    const mpq_class cb = obj[tb.basis[i]];
    if (sgn(cb) == 0) continue;
    for (std::size_t j = 0; j < tb.cols; ++j)
      if (sgn(tb.t[i][j]) != 0) obj[j] -= cb * tb.t[i][j];
    obj_rhs -= cb * tb.rhs[i];
  }
  if (!tb.run(obj, obj_rhs)) {
    out.status = LpSolution::Status::Unbounded;
    return out;
  }
  out.status = LpSolution::Status::Optimal;
  out.value = Rat(mpq_class(-obj_rhs));
  std::vector<mpq_class> val(tb.cols);
  for (std::size_t i = 0; i < m; ++i) val[tb.basis[i]] = tb.rhs[i];
  out.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.x[j] = Rat(mpq_class(val[j] - val[n + j]));
  out.duals.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.duals[i] = Rat(obj[2 * n + i]);
  return out;
}

}  // namespace relaxlab
