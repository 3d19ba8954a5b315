#include "relaxlab/gallery.hpp"

#include <stdexcept>

namespace relaxlab {

namespace {

Problem c0_gap() {
  Problem p;
  p.name = "c0-gap";
  p.scalars = {"y"};
  p.objective = scalar("y") + series(Pattern::halves(), coord_abs(Pattern::constant(Rat(1))));
  p.constraints = {coord_abs(Pattern::constant(Rat(1))) + scalar("y", Rat(-1))};
  p.slater_point = Point::primal({}, {{"y", Rat(2)}});
  return p;
}

Problem finite() {
  Problem p;
  p.name = "finite";
  p.objective = coord_at(1);
  p.constraints = {coord_abs_at(1, Rat(1)) + tail_const(Rat(-1))};
  p.slater_point = Point::primal({Rat(1)});
  return p;
}

Problem reinforced() {
  Problem p;
  p.name = "reinforced";
  p.scalars = {"y"};
  p.objective = scalar("y");
  p.constraints = {coord_abs(Pattern::constant(Rat(1))) + scalar_family("y", Pattern::geometric(Rat(-1), Rat(2)))};
  p.slater_point = Point::primal({}, {{"y", Rat(1)}});
  return p;
}

}  // namespace

DualBallAnswer DualBallGallery::query(const Pattern& x) const {
  if (x.ratio() > Rat(1) && !x.tail_coeff().is_zero())
    return {ExtReal::minus_inf(), ExtReal::minus_inf(), false};
  const Rat tail_limit = x.limit().value();
  Rat norm = tail_limit.abs();
  // Geometric tails with ratio below 1 are largest at k = n0 + 1.
  for (std::size_t k = 1; k <= x.n0() + 1; ++k) norm = max(norm, x.value(k).abs());
  DualBallAnswer a;
  a.vP = norm <= Rat(1) ? ExtReal(0) : ExtReal::minus_inf();
  bool in_closure = norm <= Rat(1) && tail_limit.is_zero();
  a.vPStar2 = in_closure ? ExtReal(0) : ExtReal::minus_inf();
  a.gap = a.vP != a.vPStar2;
  return a;
}

std::vector<std::string> gallery_names() { return {"c0-gap", "finite", "reinforced", "dual-ball"}; }

GalleryEntry gallery(const std::string& name) {
  if (name == "dual-ball") return DualBallGallery{};
  return gallery_problem(name);
}

Problem gallery_problem(const std::string& name) {
  if (name == "c0-gap") return c0_gap();
  if (name == "finite") return finite();
  if (name == "reinforced") return reinforced();
  throw std::invalid_argument("unknown gallery '" + name + "' (known: c0-gap, finite, reinforced, dual-ball)");
}

}  // namespace relaxlab
