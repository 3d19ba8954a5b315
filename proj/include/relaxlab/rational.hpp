#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relaxlab {

/// Exact rational number. Always canonical (lowest terms, positive
/// denominator). Division by zero throws; there is no rational infinity.
class Rat {
public:
  Rat() = default;
  Rat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Parses "p", "-p", "p/q". Decimal points and exponents are rejected.
  static Rat parse(std::string_view text);

  const mpq_class& raw() const { return v_; }
  std::string str() const;
  double to_double() const { return v_.get_d(); }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rat abs() const { return Rat(mpq_class(::abs(v_))); }
  Rat operator-() const { return Rat(mpq_class(-v_)); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// base^e for integer e (negative exponents allowed for nonzero base).
  static Rat pow(const Rat& base, long e);
  /// 2^e as an exact dyadic.
  static Rat pow2(long e) { return pow(Rat(2), e); }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
  mpq_class v_{0};
};

inline Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace relaxlab

template <>
struct std::hash<relaxlab::Rat> {
  size_t operator()(const relaxlab::Rat& r) const { return std::hash<std::string>{}(r.str()); }
};
