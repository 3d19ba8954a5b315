#pragma once

#include "relaxlab/expr.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace relaxlab::oracle {

/// Beyond the sampled range f is +inf, or continues along the end segments.
enum class Extension { Infinite, Affine };

/// Samples of a function of one variable; +inf is an explicit flag.
struct Grid {
  std::vector<double> x;
  std::vector<double> v;
  std::vector<bool> inf;
  Extension ext = Extension::Infinite;

  static Grid sample(const std::vector<double>& xs, const std::function<double(double)>& f,
                     Extension ext = Extension::Infinite);
  static Grid uniform(double lo, double hi, std::size_t n, const std::function<double(double)>& f,
                      Extension ext = Extension::Infinite);
  /// Checks the invariants; throws std::invalid_argument.
  void check() const;
  bool finite(std::size_t i) const { return !inf[i]; }
  /// Value of the piecewise-linear interpolant with the grid's extension.
  double at(double t, bool* is_inf = nullptr) const;
  /// Largest value change between adjacent finite samples.
  double modulus() const;
};

/// f*(s) = sup_x s x - f(x) of the interpolant, at each dual abscissa.
Grid llt_conjugate(const Grid& f, const std::vector<double>& dual);
/// f** on the abscissae of f (the lower convex envelope of the samples).
Grid llt_biconjugate(const Grid& f);

struct DualValues {
  double vP;  // inf f + g over the interpolants (+inf if disjoint)
  double vD;  // sup_s -f*(s) - g*(-s)
  double gap() const { return vP - vD; }
};

DualValues fenchel_dual_value(const Grid& f, const Grid& g);

/// The variable a slice runs along: a scalar name or "x<j>" for coordinate j.
struct GridSpec {
  std::string var;
  Rat lo, hi;
  std::size_t samples = 129;
  /// Member index for family expressions.
  std::optional<std::size_t> member;
};

struct CrossCheck {
  double max_deviation = 0;
  double modulus = 0;
  bool agrees = false;
  Grid sampled, oracle_envelope;
  std::vector<double> structured;
};

/// Compares the sampled biconjugate of a slice of e with the structured one.
/// `base` fixes every other variable (tail 0).
CrossCheck cross_check(const Expr& e, const Point& base, const GridSpec& spec);

}  // namespace relaxlab::oracle
