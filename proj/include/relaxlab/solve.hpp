#pragma once

#include "relaxlab/problem.hpp"
#include "relaxlab/simplex.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace relaxlab {

/// An expression left the piecewise-linear fragment the reducer handles.
struct ReductionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// constant + sum coef[j] * v_j over program variables.
struct LinForm {
  std::map<std::size_t, Rat> coef;
  Rat constant{0};
};

enum class RowKind { Aux, Member, BlockEnd, BlockLimit, BlockRecession, Vanishing, ScalarConstraint, Region, HardSeries, Pin, Extra };

struct RowTag {
  RowKind kind = RowKind::Aux;
  /// Index into the source constraint list, or -1.
  int constraint = -1;
  std::size_t k = 0;
};

/// Input to the reducer: minimize objective subject to constraints <= 0 over
/// the region, in the given space.
struct ProgramSource {
  Space space = Space::Primal;
  Expr objective;
  std::vector<Expr> constraints;
  Region region = Region::whole();
  /// Pin the block value to 0 so that every solution is a genuine point.
  bool pin_block = false;
};

ProgramSource source_of(const Problem& p);
ProgramSource source_of(const Relaxation& r);

/// Finite linear program equivalent to the source over its model.
///
/// Variables are x_1..x_N (N the collapse index), the block value u, the
/// scalars and epigraph auxiliaries. Members k > N see coordinate u. On the
/// bidual side u is the tail. On the primal side the block x_{N+1..m} = u is
/// followed by zeros and the value is the limit m -> infinity, which adds
/// "vanishing" rows for the zero tail.
struct FinitProgram {
  Space space = Space::Primal;
  std::size_t collapse_index = 1;
  std::vector<std::string> var_names;
  std::map<std::string, std::size_t> scalar_index;
  std::size_t block_var = 0;
  LinForm objective;
  std::vector<LinForm> rows;  // each row reads form <= 0
  std::vector<RowTag> tags;
  /// False when the block restriction may lose value (families with
  /// geometric tails, or series weights with different tail ratios).
  bool exact = true;
  std::vector<std::string> caveats;

  LinearProgram to_lp() const;
  /// Primal: prefix x_1..x_N with tail 0. Bidual: prefix plus tail u.
  Point point_from(const std::vector<Rat>& x) const;
};

FinitProgram reduce(const ProgramSource& src);
FinitProgram reduce(const Problem& p);
FinitProgram reduce(const Relaxation& r);

struct SolveResult {
  ExtReal value;
  /// Empty when a primal infimum is only approached (nonzero block value).
  std::optional<Point> argmin;
  /// Value of the block coordinate u at the optimum.
  Rat block_value;
  std::vector<Rat> duals;
  bool exact = true;
  std::vector<std::string> caveats;
};

SolveResult solve_value(const FinitProgram& fp);
ExtReal value_of(const Problem& p);
ExtReal value_of(const Relaxation& r);

struct SlaterCertificate {
  Point point;
  Rat margin;
  bool reinforced = false;
  std::optional<Pattern> weights;
  /// "hint" when the problem's stored point certified, "lp" otherwise.
  std::string origin;
};

struct SlaterNotFound {
  /// inf of the (weighted) constraint supremum over dom f0, capped below at -1.
  ExtReal best;
};

using SlaterResult = std::variant<SlaterCertificate, SlaterNotFound>;

SlaterResult check_slater(const Problem& p, bool reinforced = false, const std::optional<Pattern>& weights = {});

/// h(alpha) = inf max{f0 - alpha, f}.
ExtReal performance_value(const Problem& p, const Rat& alpha);
bool certify_value(const Problem& p, const Rat& alpha);

struct ValueSearch {
  Rat lp_value;
  /// Final dyadic bracket of the bisection on h (h(lo) > 0 >= h(hi)).
  Rat lo, hi;
  int iterations = 0;
  bool agrees = false;
};

/// mu = v(P) by LP, cross-checked by 60 dyadic bisection steps on h.
ValueSearch find_value(const Problem& p);

struct ConstraintMultiplier {
  std::size_t constraint = 0;
  bool family = false;
  Pattern lambda;
  Pattern lambda_hat;
  Rat lambda_inf{0};
};

struct MultiplierRecord {
  /// Combined view: the single family's multipliers, or for a finite family
  /// the scalar constraints' multipliers as a prefix.
  Pattern lambda;
  Pattern lambda_hat;
  Rat lambda_inf{0};
  ExtReal penalized_value;      // inf f0 + sum lambda_k f_k^+ + lambda_inf f_inf
  ExtReal penalized_value_hat;  // inf f0 + sum lambda_hat_k f_k^+
  std::vector<ConstraintMultiplier> per_constraint;
};

struct MultiplierMismatch : std::runtime_error {
  MultiplierMismatch(const std::string& what, ExtReal expected, ExtReal got)
      : std::runtime_error(what + ": v(P) = " + expected.str() + ", penalized = " + got.str()),
        expected(std::move(expected)),
        got(std::move(got)) {}
  ExtReal expected, got;
};

MultiplierRecord recover_multipliers(const Problem& p);

/// f0 + sum_k lambda_k f_k^+ (+ lambda_inf f_inf unless `hat`), as an expression.
Expr penalized_objective(const Problem& p, const std::vector<ConstraintMultiplier>& ms, bool hat);

}  // namespace relaxlab
