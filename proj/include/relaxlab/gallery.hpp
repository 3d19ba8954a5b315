#pragma once

#include "relaxlab/problem.hpp"

#include <string>
#include <variant>
#include <vector>

namespace relaxlab {

/// Closed-form dual-ball example: for a query x* it reports the value of the
/// linear problem and of its biconjugate relaxation.
struct DualBallAnswer {
  ExtReal vP;
  ExtReal vPStar2;
  bool gap = false;
};

struct DualBallGallery {
  DualBallAnswer query(const Pattern& x_star) const;
};

using GalleryEntry = std::variant<Problem, DualBallGallery>;

/// Names: c0-gap, finite, reinforced, dual-ball.
GalleryEntry gallery(const std::string& name);
Problem gallery_problem(const std::string& name);
std::vector<std::string> gallery_names();

}  // namespace relaxlab
