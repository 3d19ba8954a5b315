#include "relaxlab/pattern.hpp"

#include <algorithm>

namespace relaxlab {

Pattern Pattern::constant(Rat c, std::vector<Rat> prefix) {
  Pattern p;
  p.prefix_ = std::move(prefix);
  p.kind_ = TailKind::Constant;
  p.coeff_ = std::move(c);
  p.ratio_ = Rat(1);
  return p;
}

Pattern Pattern::geometric(Rat a, Rat ratio, std::vector<Rat> prefix) {
  if (ratio.sign() <= 0) throw std::invalid_argument("geometric pattern needs ratio > 0, got " + ratio.str());
  if (a.is_zero()) return constant(Rat(0), std::move(prefix));
  if (ratio == Rat(1)) return constant(std::move(a), std::move(prefix));
  Pattern p;
  p.prefix_ = std::move(prefix);
  p.kind_ = TailKind::Geometric;
  p.coeff_ = std::move(a);
  p.ratio_ = std::move(ratio);
  return p;
}

Pattern Pattern::unit(std::size_t j) {
  if (j == 0) throw std::invalid_argument("Pattern::unit: indices start at 1");
  std::vector<Rat> pre(j, Rat(0));
  pre[j - 1] = Rat(1);
  return constant(Rat(0), std::move(pre));
}

Rat Pattern::value(std::size_t k) const {
  if (k == 0) throw std::out_of_range("Pattern::value: indices start at 1");
  if (k <= prefix_.size()) return prefix_[k - 1];
  if (kind_ == TailKind::Constant) return coeff_;
  return coeff_ * Rat::pow(ratio_, static_cast<long>(k));
}

ExtReal Pattern::limit() const {
  if (kind_ == TailKind::Constant) return coeff_;
  if (ratio_ < Rat(1)) return Rat(0);
  return coeff_.sign() > 0 ? ExtReal::plus_inf() : ExtReal::minus_inf();
}

bool Pattern::summable() const {
  return kind_ == TailKind::Constant ? coeff_.is_zero() : ratio_ < Rat(1);
}

bool Pattern::bounded() const { return kind_ == TailKind::Constant || ratio_ < Rat(1); }

bool Pattern::nonnegative() const {
  return coeff_.sign() >= 0 && std::all_of(prefix_.begin(), prefix_.end(), [](const Rat& r) { return r.sign() >= 0; });
}

bool Pattern::positive() const {
  return coeff_.sign() > 0 && std::all_of(prefix_.begin(), prefix_.end(), [](const Rat& r) { return r.sign() > 0; });
}

ExtReal geometric_tail(const Rat& coeff, const Rat& ratio, std::size_t from) {
  if (coeff.is_zero()) return Rat(0);
  if (ratio >= Rat(1)) return coeff.sign() > 0 ? ExtReal::plus_inf() : ExtReal::minus_inf();
  return coeff * Rat::pow(ratio, static_cast<long>(from)) / (Rat(1) - ratio);
}

Rat Pattern::tail_sum(std::size_t n) const {
  if (!summable()) throw DivergentSeries("tail_sum: pattern tail is not summable");
  Rat s(0);
  for (std::size_t k = n + 1; k <= prefix_.size(); ++k) s += prefix_[k - 1];
  if (kind_ == TailKind::Geometric) s += geometric_tail(coeff_, ratio_, std::max(n, prefix_.size()) + 1).value();
  return s;
}

Pattern Pattern::operator*(const Pattern& o) const {
  std::size_t n = std::max(n0(), o.n0());
  std::vector<Rat> pre;
  pre.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) pre.push_back(value(k) * o.value(k));
  Rat a = coeff_ * o.coeff_;
  Rat r = ratio_ * o.ratio_;
  if (kind_ == TailKind::Constant && o.kind_ == TailKind::Constant) return constant(a, std::move(pre));
  return geometric(a, r, std::move(pre));
}

Pattern Pattern::scaled(const Rat& r) const { return *this * constant(r); }

Pattern Pattern::abs() const {
  std::vector<Rat> pre;
  for (const auto& v : prefix_) pre.push_back(v.abs());
  Pattern p = *this;
  p.prefix_ = std::move(pre);
  p.coeff_ = coeff_.abs();
  return p;
}

}  // namespace relaxlab
