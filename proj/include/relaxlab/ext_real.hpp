#pragma once

#include "relaxlab/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace relaxlab {

/// Raised when an evaluation hits (+inf) + (-inf). Valid convex evaluations
/// never produce it, so seeing one indicates a construction bug.
struct UndefinedSum : std::logic_error {
  UndefinedSum() : std::logic_error("(+inf) + (-inf) is undefined") {}
};

/// Extended real line with convex-analysis conventions: 0 * (+inf) = +inf.
class ExtReal {
public:
  enum class Kind { MinusInf, Finite, PlusInf };

  ExtReal() = default;
  ExtReal(Rat v) : kind_(Kind::Finite), v_(std::move(v)) {}  // NOLINT
  ExtReal(long v) : ExtReal(Rat(v)) {}                       // NOLINT
  ExtReal(int v) : ExtReal(Rat(v)) {}                        // NOLINT

  static ExtReal plus_inf() { ExtReal e; e.kind_ = Kind::PlusInf; return e; }
  static ExtReal minus_inf() { ExtReal e; e.kind_ = Kind::MinusInf; return e; }
  /// "p/q", "+inf", "-inf" (also "inf").
  static ExtReal parse(const std::string& s);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_plus_inf() const { return kind_ == Kind::PlusInf; }
  bool is_minus_inf() const { return kind_ == Kind::MinusInf; }
  const Rat& value() const;
  std::string str() const;
  double to_double() const;

  ExtReal operator-() const;
  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }
  ExtReal& operator+=(const ExtReal& o) { return *this = *this + o; }

  /// Nonnegative scalar multiple; 0 * (+inf) = +inf and 0 * (-inf) = 0.
  ExtReal scaled(const Rat& r) const;

  friend bool operator==(const ExtReal& a, const ExtReal& b);
  friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b);

  friend std::ostream& operator<<(std::ostream& os, const ExtReal& e) { return os << e.str(); }

private:
  Kind kind_ = Kind::Finite;
  Rat v_;
};

inline ExtReal max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }
inline ExtReal min(const ExtReal& a, const ExtReal& b) { return b < a ? b : a; }

}  // namespace relaxlab
