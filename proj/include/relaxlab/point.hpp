#pragma once

#include "relaxlab/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace relaxlab {

/// Primal points model finitely supported elements of c0; bidual points model
/// eventually constant elements of l-infinity.
enum class Space { Primal, Bidual };

const char* to_string(Space s);

/// A point (x, scalars): coordinates x_1..x_n followed by a constant tail.
class Point {
public:
  Point() = default;
  static Point primal(std::vector<Rat> prefix, std::map<std::string, Rat> scalars = {});
  static Point bidual(std::vector<Rat> prefix, Rat tail, std::map<std::string, Rat> scalars = {});

  Space space() const { return space_; }
  const std::vector<Rat>& prefix() const { return prefix_; }
  const Rat& tail() const { return tail_; }
  const std::map<std::string, Rat>& scalars() const { return scalars_; }

  /// x_k for k >= 1.
  const Rat& coord(std::size_t k) const;
  /// Missing scalars read as zero.
  Rat scalar(const std::string& name) const;

  /// Canonical injection of a primal point into the bidual model.
  Point embed() const;
  /// t * a + (1 - t) * b; both points must live in the same space.
  static Point mix(const Rat& t, const Point& a, const Point& b);

  friend bool operator==(const Point&, const Point&) = default;

private:
  Space space_ = Space::Primal;
  std::vector<Rat> prefix_;
  Rat tail_{0};
  std::map<std::string, Rat> scalars_;
};

}  // namespace relaxlab
