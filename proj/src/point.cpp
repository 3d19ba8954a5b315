#include "relaxlab/point.hpp"
#include "relaxlab/region.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace relaxlab {

const char* to_string(Space s) { return s == Space::Primal ? "primal" : "bidual"; }

Point Point::primal(std::vector<Rat> prefix, std::map<std::string, Rat> scalars) {
  Point p;
  p.space_ = Space::Primal;
  p.prefix_ = std::move(prefix);
  p.scalars_ = std::move(scalars);
  return p;
}

Point Point::bidual(std::vector<Rat> prefix, Rat tail, std::map<std::string, Rat> scalars) {
  Point p;
  p.space_ = Space::Bidual;
  p.prefix_ = std::move(prefix);
  p.tail_ = std::move(tail);
  p.scalars_ = std::move(scalars);
  return p;
}

const Rat& Point::coord(std::size_t k) const {
  if (k == 0) throw std::out_of_range("Point::coord: indices start at 1");
  return k <= prefix_.size() ? prefix_[k - 1] : tail_;
}

Rat Point::scalar(const std::string& name) const {
  auto it = scalars_.find(name);
  return it == scalars_.end() ? Rat(0) : it->second;
}

Point Point::embed() const {
  if (space_ != Space::Primal) throw std::invalid_argument("embed: point is already bidual");
  return bidual(prefix_, Rat(0), scalars_);
}

Point Point::mix(const Rat& t, const Point& a, const Point& b) {
  if (a.space_ != b.space_) throw std::invalid_argument("mix: points live in different spaces");
  std::size_t n = std::max(a.prefix_.size(), b.prefix_.size());
  std::vector<Rat> pre;
  for (std::size_t k = 1; k <= n; ++k) pre.push_back(t * a.coord(k) + (Rat(1) - t) * b.coord(k));
  std::map<std::string, Rat> sc;
  for (const auto& [name, _] : a.scalars_) sc[name] = t * a.scalar(name) + (Rat(1) - t) * b.scalar(name);
  for (const auto& [name, _] : b.scalars_) sc[name] = t * a.scalar(name) + (Rat(1) - t) * b.scalar(name);
  Point p;
  p.space_ = a.space_;
  p.prefix_ = std::move(pre);
  p.tail_ = t * a.tail_ + (Rat(1) - t) * b.tail_;
  p.scalars_ = std::move(sc);
  return p;
}

Rat LinearIneq::lhs(const Point& p) const {
  Rat s = constant;
  for (const auto& [name, c] : coeffs) s += c * (name == kTailVar ? p.tail() : p.scalar(name));
  return s;
}

bool Region::contains(const Point& p) const {
  if (!tail_free && !p.tail().is_zero()) return false;
  for (const auto& q : ineqs)
    if (q.lhs(p).sign() > 0) return false;
  for (const auto& b : boxes) {
    const Rat& v = p.coord(b.index);
    if ((b.lo && v < *b.lo) || (b.hi && v > *b.hi)) return false;
  }
  return true;
}

Region Region::intersect(const Region& o) const {
  Region r = *this;
  for (const auto& q : o.ineqs)
    if (std::find(r.ineqs.begin(), r.ineqs.end(), q) == r.ineqs.end()) r.ineqs.push_back(q);
  r.boxes.insert(r.boxes.end(), o.boxes.begin(), o.boxes.end());
  r.tail_free = tail_free && o.tail_free;
  return r;
}

Region Region::closure() const {
  Region r = *this;
  r.tail_free = true;
  return r;
}

std::string Region::describe() const {
  if (ineqs.empty() && boxes.empty()) return tail_free ? "whole space" : "tail = 0";
  std::ostringstream os;
  bool first = true;
  for (const auto& q : ineqs) {
    if (!first) os << ", ";
    first = false;
    bool any = false;
    for (const auto& [name, c] : q.coeffs) {
      if (c.is_zero()) continue;
      if (any) os << (c.sign() > 0 ? " + " : " - ");
      else if (c.sign() < 0) os << "-";
      Rat m = c.abs();
      if (m != Rat(1)) os << m << "*";
      os << (name == kTailVar ? "t" : name);
      any = true;
    }
    if (!any) os << "0";
    os << " <= " << -q.constant;
  }
  for (const auto& b : boxes) {
    if (!first) os << ", ";
    first = false;
    os << (b.lo ? b.lo->str() + " <= " : "") << "x" << b.index << (b.hi ? " <= " + b.hi->str() : "");
  }
  if (!tail_free) os << ", tail = 0";
  return os.str();
}

}  // namespace relaxlab
