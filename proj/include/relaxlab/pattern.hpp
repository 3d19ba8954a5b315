#pragma once

#include "relaxlab/ext_real.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace relaxlab {

struct DivergentSeries : std::domain_error {
  using std::domain_error::domain_error;
};

/// A rational sequence indexed from k = 1: an explicit prefix (k = 1..n0)
/// followed by either a constant tail c or a geometric tail a * ratio^k.
///
/// Geometric tails are kept normalized: ratio > 0, ratio != 1 and a != 0.
/// A ratio above one is allowed (growing coefficients such as 2^k); such a
/// pattern is not summable.
class Pattern {
public:
  enum class TailKind { Constant, Geometric };

  Pattern() = default;
  static Pattern constant(Rat c, std::vector<Rat> prefix = {});
  static Pattern geometric(Rat a, Rat ratio, std::vector<Rat> prefix = {});
  /// e_j: 1 at index j (1-based), 0 elsewhere.
  static Pattern unit(std::size_t j);
  /// w_k = 2^{-k}.
  static Pattern halves() { return geometric(Rat(1), Rat(1, 2)); }

  const std::vector<Rat>& prefix() const { return prefix_; }
  /// Stabilization index n0: value(k) follows the tail formula for k > n0.
  std::size_t n0() const { return prefix_.size(); }
  TailKind tail_kind() const { return kind_; }
  bool is_constant_tail() const { return kind_ == TailKind::Constant; }
  /// Constant tail value, or the geometric coefficient a.
  const Rat& tail_coeff() const { return coeff_; }
  /// 1 for constant tails.
  const Rat& ratio() const { return ratio_; }

  Rat value(std::size_t k) const;
  /// lim_k value(k) (infinite for growing geometric tails).
  ExtReal limit() const;

  bool summable() const;
  bool bounded() const;
  bool nonnegative() const;
  bool positive() const;

  /// Sum over k > n, exact. Throws DivergentSeries for non-summable tails.
  Rat tail_sum(std::size_t n) const;

  Pattern operator*(const Pattern& o) const;
  Pattern scaled(const Rat& r) const;
  Pattern abs() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

private:
  std::vector<Rat> prefix_;
  TailKind kind_ = TailKind::Constant;
  Rat coeff_{0};
  Rat ratio_{1};
};

/// Sum_{k > n} w_k; divergence is an error.
inline Rat tail_sum(const Pattern& w, std::size_t n) { return w.tail_sum(n); }

/// Sum_{k >= from} coeff * ratio^k as an extended real (diverges to +-inf
/// when ratio >= 1 and coeff != 0).
ExtReal geometric_tail(const Rat& coeff, const Rat& ratio, std::size_t from);

}  // namespace relaxlab
