#include "doctest.h"
#include "relaxlab/gallery.hpp"
#include "relaxlab/relax.hpp"
#include "relaxlab/solve.hpp"
#include "support.hpp"

#include <variant>

using namespace relaxlab;
using testsupport::Gen;
using testsupport::R;

namespace {

Problem single(std::string name, Expr f0, std::vector<Expr> cs) {
  Problem p;
  p.name = std::move(name);
  p.objective = std::move(f0);
  p.constraints = std::move(cs);
  return p;
}

/// min over the grid x1 in [-3, 3] step 1/64 of max{x1 - alpha, |x1| - 1}.
Rat grid_h(const Rat& alpha) {
  Rat best(1000);
  for (long i = -192; i <= 192; ++i) {
    Rat x(i, 64);
    best = min(best, max(x - alpha, x.abs() - 1));
  }
  return best;
}

}  // namespace

TEST_CASE("reduce and solve the gap example") {
  Problem p = gallery_problem("c0-gap");
  FinitProgram fp = reduce(p);
  CHECK(fp.collapse_index == 1);
  CHECK(fp.exact);
  SolveResult r = solve_value(fp);
  CHECK(r.value == ExtReal(1));
  // Approached along prefix-one points, never attained.
  CHECK_FALSE(r.argmin);
  CHECK(r.block_value == R(1));
  for (std::size_t m : {4u, 16u, 64u}) {
    Point x = Point::primal(std::vector<Rat>(m, R(1)), {{"y", R(1)}});
    CHECK(eval(p.sup_constraints(), x) <= ExtReal(0));
    CHECK(eval(p.objective, x) == ExtReal(R(1) + Rat::pow(R(1, 2), static_cast<long>(m))));
  }

  SolveResult star = solve_value(reduce(build_relaxation(p, Variant::PStar2)));
  CHECK(star.value == ExtReal(0));
  REQUIRE(star.argmin);
  CHECK(star.argmin->scalar("y") == R(0));
  CHECK(star.argmin->tail() == R(1));
  CHECK(value_of(build_relaxation(p, Variant::PInf)) == ExtReal(1));
}

TEST_CASE("unconstrained linear objective is unbounded") {
  Problem p = single("lin", scalar("y"), {});
  p.scalars = {"y"};
  CHECK(value_of(p) == ExtReal::minus_inf());
  CHECK(value_of(single("inf", coord_at(1), {tail_const(R(1))})) == ExtReal::plus_inf());
}

TEST_CASE("LP duals close the duality gap") {
  Gen g(11);
  for (int trial = 0; trial < 30; ++trial) {
    Expr f0 = coord_abs_at(1, g.rat(-2, 2)) + coord_at(1, g.rat(-1, 1)) + coord_at(2, g.rat(-1, 1));
    Expr c = coord_abs_at(2, g.rat(-2, 2)) + coord_abs_at(1, g.rat(-2, 2)) + tail_const(-R(g.integer(1, 3)));
    FinitProgram fp = reduce(single("d", f0, {c}));
    LinearProgram lp = fp.to_lp();
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpSolution::Status::Optimal);
    // Dual objective: -sum y_i b_i.
    Rat dual(0);
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      CHECK(s.duals[i] >= R(0));
      dual -= s.duals[i] * lp.rows[i].rhs;
    }
    CHECK(dual == s.value);
  }
}

TEST_CASE("reduction agrees with a lattice search") {
  Gen g(5);
  for (int trial = 0; trial < 12; ++trial) {
    Rat a1 = g.rat(-2, 2, 2), a2 = g.rat(-2, 2, 2), w1 = g.rat(0, 2, 2), l1 = g.rat(-1, 1, 2), l2 = g.rat(-1, 1, 2);
    Rat c1(g.integer(-1, 1)), c2(g.integer(-1, 1)), rad(g.integer(1, 2));
    Expr f0 = add({scale(w1, coord_abs_at(1, a1)), coord_abs_at(2, a2), coord_at(1, l1), coord_at(2, l2)});
    Expr c = add({coord_abs_at(1, c1), coord_abs_at(2, c2), tail_const(-rad)});
    ExtReal exact = value_of(single("lat", f0, {c}));
    REQUIRE(exact.is_finite());
    const long den = 16;
    Rat best(1000);
    for (long i = -3 * den; i <= 3 * den; ++i)
      for (long j = -3 * den; j <= 3 * den; ++j) {
        Rat x1(i, den), x2(j, den);
        if ((x1 - c1).abs() + (x2 - c2).abs() > rad) continue;
        best = min(best, w1 * (x1 - a1).abs() + (x2 - a2).abs() + l1 * x1 + l2 * x2);
      }
    Rat lipschitz = w1 + 1 + l1.abs() + l2.abs();
    CHECK(exact.value() <= best);
    CHECK(exact.value() >= best - lipschitz * R(2, den));
  }
}

TEST_CASE("slater certificates") {
  Problem gap = gallery_problem("c0-gap");
  auto plain = check_slater(gap);
  REQUIRE(std::holds_alternative<SlaterCertificate>(plain));
  const auto& c = std::get<SlaterCertificate>(plain);
  CHECK(c.margin == R(1));
  CHECK(c.point.scalar("y") == R(2));
  CHECK(eval(gap.sup_constraints(), c.point) == ExtReal(-c.margin));

  gap.slater_point.reset();
  auto lp = check_slater(gap);
  REQUIRE(std::holds_alternative<SlaterCertificate>(lp));
  const auto& d = std::get<SlaterCertificate>(lp);
  CHECK(d.origin == "lp");
  CHECK(eval(gap.sup_constraints(), d.point) == ExtReal(-d.margin));

  auto weak = check_slater(gallery_problem("c0-gap"), true, Pattern::halves());
  REQUIRE(std::holds_alternative<SlaterNotFound>(weak));
  CHECK(std::get<SlaterNotFound>(weak).best == ExtReal(0));

  Problem rf = gallery_problem("reinforced");
  auto strong = check_slater(rf, true, Pattern::halves());
  REQUIRE(std::holds_alternative<SlaterCertificate>(strong));
  CHECK(std::get<SlaterCertificate>(strong).margin == R(1, 2));
  CHECK(std::get<SlaterCertificate>(strong).point.scalar("y") == R(1));
  rf.slater_point.reset();
  auto found = check_slater(rf, true, Pattern::halves());
  REQUIRE(std::holds_alternative<SlaterCertificate>(found));
  CHECK(std::get<SlaterCertificate>(found).margin > R(0));

  CHECK_THROWS_AS(check_slater(rf, true, Pattern::constant(1)), std::invalid_argument);
  CHECK_THROWS_AS(check_slater(rf, true), std::invalid_argument);
}

TEST_CASE("value certification") {
  Problem p = single("abs", coord_at(1), {coord_abs_at(1, R(0)) + tail_const(R(-1))});
  CHECK(grid_h(R(-1)) == R(0));
  CHECK(grid_h(R(0)) < R(0));
  CHECK(certify_value(p, R(-1)));
  CHECK_FALSE(certify_value(p, R(0)));
  CHECK(performance_value(p, R(0)) == ExtReal(grid_h(R(0))));
  CHECK(certify_value(gallery_problem("c0-gap"), R(1)));

  for (const auto& name : {"c0-gap", "finite", "reinforced"}) {
    Problem q = gallery_problem(name);
    ValueSearch s = find_value(q);
    CHECK(s.agrees);
    CHECK(s.iterations == 60);
    Rat mu = s.lp_value;
    CHECK(performance_value(q, mu) == ExtReal(0));
    CHECK(performance_value(q, mu - 1) > ExtReal(0));
    CHECK(performance_value(q, mu + 1) < ExtReal(0));
    ExtReal prev = ExtReal::plus_inf();
    for (long i = -8; i <= 8; ++i) {
      ExtReal h = performance_value(q, mu + R(i, 4));
      CHECK(h <= prev);
      prev = h;
    }
  }
  CHECK_THROWS_AS(find_value(single("inf", coord_at(1), {tail_const(R(1))})), std::domain_error);
}

TEST_CASE("multiplier recovery") {
  MultiplierRecord gap = recover_multipliers(gallery_problem("c0-gap"));
  CHECK(gap.lambda_inf == R(1));
  CHECK(gap.penalized_value == ExtReal(1));
  CHECK(gap.penalized_value_hat == ExtReal(1));
  CHECK(gap.lambda.summable());
  CHECK(gap.lambda.nonnegative());
  CHECK(gap.lambda_hat.bounded());

  MultiplierRecord one = recover_multipliers(single("abs", coord_at(1), {coord_abs_at(1, R(0)) + tail_const(R(-1))}));
  CHECK(one.lambda_hat.value(1) == R(1));
  CHECK(one.penalized_value == ExtReal(-1));

  Problem idle = single("idle", coord_abs_at(1, R(2)), {tail_const(R(-1))});
  MultiplierRecord none = recover_multipliers(idle);
  CHECK(none.lambda.value(1) == R(0));
  CHECK(none.lambda_inf == R(0));
  CHECK(none.penalized_value == ExtReal(0));

  CHECK_THROWS_AS(recover_multipliers(gallery_problem("reinforced")), ReductionError);
}
