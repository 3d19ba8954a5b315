#pragma once

#include "relaxlab/expr.hpp"

#include <random>

namespace testsupport {

using namespace relaxlab;

inline Rat R(long n, long d = 1) { return Rat(n, d); }

/// Small deterministic generator helpers shared by the property tests.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
  bool coin() { return integer(0, 1) == 1; }
  Rat rat(long lo, long hi, long den = 4) { return Rat(integer(lo * den, hi * den), den); }
  template <class T>
  const T& pick(const std::vector<T>& xs) { return xs[static_cast<std::size_t>(integer(0, static_cast<long>(xs.size()) - 1))]; }

  Pattern pattern(bool nonneg, bool summable) {
    std::vector<Rat> pre;
    long n = integer(0, 3);
    for (long i = 0; i < n; ++i) pre.push_back(nonneg ? rat(0, 2) : rat(-2, 2));
    if (summable || coin()) {
      Rat a = nonneg ? rat(1, 2) : rat(-2, 2);
      if (a.is_zero()) a = Rat(1);
      return Pattern::geometric(a, pick<Rat>({R(1, 2), R(1, 3), R(3, 4)}), pre);
    }
    return Pattern::constant(nonneg ? rat(0, 2) : rat(-2, 2), pre);
  }

  Point point(Space s, const std::vector<std::string>& scalars, std::size_t max_len = 5) {
    std::vector<Rat> pre;
    long n = integer(0, static_cast<long>(max_len));
    for (long i = 0; i < n; ++i) pre.push_back(rat(-3, 3));
    std::map<std::string, Rat> sc;
    for (const auto& name : scalars) sc[name] = rat(-3, 3);
    if (s == Space::Primal) return Point::primal(pre, sc);
    return Point::bidual(pre, rat(-3, 3), sc);
  }
};

}  // namespace testsupport
