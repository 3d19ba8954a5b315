#include "relaxlab/ext_real.hpp"

#include <limits>

namespace relaxlab {

ExtReal ExtReal::parse(const std::string& s) {
  if (s == "+inf" || s == "inf") return plus_inf();
  if (s == "-inf") return minus_inf();
  return ExtReal(Rat::parse(s));
}

const Rat& ExtReal::value() const {
  if (!is_finite()) throw std::logic_error("ExtReal::value on infinite value " + str());
  return v_;
}

std::string ExtReal::str() const {
  switch (kind_) {
    case Kind::PlusInf: return "+inf";
    case Kind::MinusInf: return "-inf";
    default: return v_.str();
  }
}

double ExtReal::to_double() const {
  switch (kind_) {
    case Kind::PlusInf: return std::numeric_limits<double>::infinity();
    case Kind::MinusInf: return -std::numeric_limits<double>::infinity();
    default: return v_.to_double();
  }
}

ExtReal ExtReal::operator-() const {
  switch (kind_) {
    case Kind::PlusInf: return minus_inf();
    case Kind::MinusInf: return plus_inf();
    default: return ExtReal(-v_);
  }
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  using K = ExtReal::Kind;
  if ((a.kind_ == K::PlusInf && b.kind_ == K::MinusInf) || (a.kind_ == K::MinusInf && b.kind_ == K::PlusInf))
    throw UndefinedSum();
  if (a.kind_ != K::Finite) return a;
  if (b.kind_ != K::Finite) return b;
  return ExtReal(a.v_ + b.v_);
}

ExtReal ExtReal::scaled(const Rat& r) const {
  if (r.sign() < 0) throw std::invalid_argument("ExtReal::scaled: negative factor " + r.str());
  if (kind_ == Kind::PlusInf) return *this;
  if (kind_ == Kind::MinusInf) return r.is_zero() ? ExtReal(0) : *this;
  return ExtReal(v_ * r);
}

bool operator==(const ExtReal& a, const ExtReal& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != ExtReal::Kind::Finite || a.v_ == b.v_;
}

std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  if (a.kind_ != ExtReal::Kind::Finite) return std::strong_ordering::equal;
  return a.v_ <=> b.v_;
}

}  // namespace relaxlab
