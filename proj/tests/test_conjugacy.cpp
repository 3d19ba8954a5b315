#include "doctest.h"
#include "relaxlab/conjugacy.hpp"
#include "support.hpp"

using namespace relaxlab;
using testsupport::Gen;
using testsupport::R;

namespace {

Expr fk() { return coord_abs(Pattern::constant(1)) + scalar("y", -1); }
Expr f0() { return scalar("y") + series(Pattern::halves(), coord_abs(Pattern::constant(1))); }

/// Independent evaluation of max{sup_k |z_k - 1|, 1} - y on an eventually constant z.
ExtReal gap_sup_formula(const Point& z) {
  Rat m(1);
  for (const auto& v : z.prefix()) m = max(m, (v - 1).abs());
  m = max(m, (z.tail() - 1).abs());
  return ExtReal(m - z.scalar("y"));
}

}  // namespace

TEST_CASE("f_infinity") {
  auto fi = f_infinity(fk());
  REQUIRE(fi.has_value());
  CHECK(to_string(*fi) == "(1 - y)");
  for (long y = -3; y <= 3; ++y) CHECK(eval(*fi, Point::primal({}, {{"y", y}})) == ExtReal(R(1) - y));
  CHECK_FALSE(f_infinity(scalar("y")).has_value());

  Expr lin = coord_lin(Pattern::halves());
  auto fl = f_infinity(lin);
  Gen g(3);
  for (int trial = 0; trial < 10; ++trial) {
    Point p = g.point(Space::Primal, {});
    CHECK(eval(*fl, p) == ExtReal(0));
    CHECK(eval(lin, p, 64).value().abs() < Rat::pow(R(1, 2), 60));
  }
}

TEST_CASE("upper sums") {
  CHECK(eval(upper_sum(coord_abs(Pattern::constant(1)), Pattern::halves()), Point::primal({})) == ExtReal(1));
  Expr s = upper_sum(positive_part(fk()), Pattern::constant(1));
  CHECK(eval(s, Point::primal({R(1), R(1)}, {{"y", R(1, 2)}})) == ExtReal::plus_inf());
  CHECK(eval(s, Point::primal({R(1), R(1)}, {{"y", 1}})) == ExtReal(0));
  CHECK(eval(upper_sum(constant(Pattern::constant(0)), Pattern::constant(5)), Point::primal({R(2)})) == ExtReal(0));
  CHECK_THROWS_AS(upper_sum(fk(), Pattern::constant(1)), ConstructionError);
}

TEST_CASE("biconjugates of the gap example") {
  auto bk = biconjugate(fk());
  CHECK(bk.expr.space() == Space::Bidual);
  CHECK(to_string(bk.expr) == "(|x_k - 1| - y)");
  CHECK(bk.rules.size() >= 1);
  auto b0 = biconjugate(f0());
  CHECK(to_string(b0.expr) == to_string(f0()));
  auto bi = biconjugate(*f_infinity(fk()));
  CHECK(eval(bi.expr, Point::bidual({}, 7, {{"y", 3}})) == ExtReal(-2));

  auto bs = biconjugate_sup(fk());
  CHECK(std::find(bs.rules.begin(), bs.rules.end(), Rule::SupFormula) != bs.rules.end());
  Gen g(99);
  for (int trial = 0; trial < 100; ++trial) {
    Point z = g.point(Space::Bidual, {"y"});
    CHECK(eval(bs.expr, z) == gap_sup_formula(z));
  }
  auto plain = biconjugate_sup(coord_abs(Pattern::constant(1)));
  CHECK(eval(plain.expr, Point::bidual({}, 1)) == ExtReal(1));
}

TEST_CASE("refusals name the subtree") {
  Expr div = series(Pattern::constant(1), positive_part(fk()));
  try {
    biconjugate(div);
    FAIL("expected refusal");
  } catch (const RefusalError& e) {
    CHECK(e.subtree.find("sum_k") != std::string::npos);
  }
  Expr grow = coord_abs(Pattern::constant(1)) + scalar_family("y", Pattern::geometric(R(-1), R(2)));
  CHECK_THROWS_AS(biconjugate_sup(grow), RefusalError);
}

TEST_CASE("positive part commutes with biconjugation") {
  CHECK(eval(positive_part(fk()), Point::primal({R(1)}, {{"y", 2}}), 1) == ExtReal(0));
  CHECK(eval(positive_part(tail_const(R(-3))), Point::primal({})) == ExtReal(0));
  Expr lhs = biconjugate(positive_part(fk())).expr;
  Expr rhs = positive_part(biconjugate(fk()).expr);
  CHECK(eval(lhs, Point::bidual({}, 1, {{"y", 0}}), 3) == ExtReal(0));
  Gen g(4);
  for (int trial = 0; trial < 20; ++trial) {
    Point z = g.point(Space::Bidual, {"y"});
    for (std::size_t k = 1; k <= 8; ++k) CHECK(eval(lhs, z, k) == eval(rhs, z, k));
  }
}

TEST_CASE("domain closures") {
  CHECK(dom_closure(sup(fk())).is_whole());
  Region r = dom_closure(upper_sum(positive_part(fk()), Pattern::constant(1)));
  CHECK(r.tail_free);
  CHECK(r.describe() == "-y <= -1");
  for (long yn = -8; yn <= 8; ++yn) {
    Rat y(yn, 4);
    CHECK(r.contains(Point::bidual({}, 5, {{"y", y}})) == (y >= R(1)));
    // Partial sums of the primal series diverge exactly when y < 1.
    Point p = Point::primal({R(1)}, {{"y", y}});
    Rat partial(0);
    for (std::size_t k = 1; k <= 50; ++k)
      partial += eval(positive_part(fk()), p, k).value();
    CHECK((partial > R(10)) == (y < R(1) && y <= R(4, 5)));
  }
  CHECK(dom_closure(coord_abs_at(2, R(3))).is_whole());
  Expr grow = coord_abs(Pattern::constant(1)) + scalar_family("y", Pattern::geometric(R(-1), R(2)));
  CHECK(dom_closure(sup(grow)).describe() == "-y <= 0");
}

TEST_CASE("minorization, extension and sandwich properties") {
  Gen g(17);
  for (int trial = 0; trial < 80; ++trial) {
    Expr fam = add({coord_abs(Pattern::constant(g.rat(-2, 2), {g.rat(-2, 2)}), Pattern::constant(g.rat(0, 2))),
                    scalar("y", g.rat(-1, 1)), constant(Pattern::constant(g.rat(-2, 2)))});
    Expr e = add({series(Pattern::halves(), fam), sup(fam), pos(scalar("y", g.rat(-1, 1)))});
    Expr b = biconjugate(e).expr;
    Expr bs = biconjugate_sup(fam).expr;
    Expr bm = sup(biconjugate(fam).expr);
    for (int j = 0; j < 5; ++j) {
      Point p = g.point(Space::Primal, {"y"});
      CHECK(eval(b, p.embed()) <= eval(e, p));
      CHECK(eval(b, p.embed()) == eval(e, p));
      CHECK(eval(bm, p.embed()) <= eval(bs, p.embed()));
      CHECK(eval(bs, p.embed()) <= eval(sup(fam), p));
    }
  }
}
