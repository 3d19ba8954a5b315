#include "doctest.h"
#include "relaxlab/gallery.hpp"
#include "relaxlab/report.hpp"
#include "support.hpp"

using namespace relaxlab;
using testsupport::Gen;
using testsupport::R;

namespace {

const char* kGapDocument = R"({
  "name": "c0-gap",
  "scalars": ["y"],
  "objective": {"add": [
    {"scalar": {"name": "y"}},
    {"series": {"weights": {"tail": {"geometric": {"a": "1", "ratio": "1/2"}}},
                "term": {"coord_abs": {"center": {"tail": {"constant": "1"}}}}}}
  ]},
  "constraints": [
    {"add": [{"coord_abs": {"center": {"tail": {"constant": "1"}}}}, {"scalar": {"name": "y", "coeff": "-1"}}]}
  ],
  "slater_point": {"prefix": [], "scalars": {"y": "2"}}
})";

}  // namespace

TEST_CASE("parse the gap document") {
  Problem p = parse_problem_text(kGapDocument);
  CHECK(structurally_equal(p, gallery_problem("c0-gap")));
  CHECK(value_of(p) == ExtReal(1));
}

TEST_CASE("round trip every gallery") {
  for (const auto& name : {"c0-gap", "finite", "reinforced"}) {
    Problem p = gallery_problem(name);
    Json doc = problem_to_json(p);
    Problem q = parse_problem(doc);
    CHECK(structurally_equal(p, q));
    CHECK(problem_to_json(q).dump() == doc.dump());
  }
}

TEST_CASE("round trip generated expressions") {
  Gen g(17);
  for (int trial = 0; trial < 50; ++trial) {
    // One geometric ratio per family: the weight carries it, the rest is constant.
    Pattern center = Pattern::constant(g.rat(-2, 2), {g.rat(-2, 2)});
    Pattern coeff = Pattern::constant(g.rat(-2, 2), {g.rat(-2, 2), g.rat(-2, 2)});
    Pattern weight = Pattern::geometric(g.rat(1, 2), R(1, 2), {g.rat(0, 2)});
    Expr fam = coord_abs(center, weight) + scalar_family("y", coeff);
    std::vector<Expr> parts{scalar("y", g.rat(-2, 2)), series(Pattern::constant(0, {g.rat(0, 2), g.rat(0, 2)}), fam), sup(fam)};
    if (g.coin()) parts.push_back(pos(coord_abs_at(static_cast<std::size_t>(g.integer(1, 4)), g.rat(-2, 2))));
    if (g.coin()) parts.push_back(scale(g.rat(0, 3), max({scalar("y"), tail_const(g.rat(-2, 2))})));
    Expr e = add(parts);
    Expr back = expr_from_json(expr_to_json(e), "");
    CHECK(structurally_equal(e, back));
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_problem_text("{"), ParseError);
  try {
    parse_problem_text(R"({"objective": {"scale": {"factor": "-1", "expr": {"scalar": {"name": "y"}}}}})");
    FAIL("negative scale accepted");
  } catch (const ParseError& e) {
    CHECK(e.path == "/objective/scale");
  }
  try {
    parse_problem_text(R"j({"objective": {"tail_const": "sqrt(2)"}})j");
    FAIL("irrational literal accepted");
  } catch (const ParseError& e) {
    CHECK(e.path == "/objective/tail_const");
  }
  CHECK_THROWS_AS(parse_problem_text(R"({"objective": {"tail_const": 0.5}})"), ParseError);
  try {
    parse_problem_text(R"({"objective": {"add": [{"scalar": {"name": "y"}}, {"wat": 1}]}})");
    FAIL("unknown node accepted");
  } catch (const ParseError& e) {
    CHECK(e.path == "/objective/add/1");
  }
  CHECK_THROWS_AS(parse_problem_text(R"({"objective": {"coord_lin": {"coeff": {"tail": {"constant": "1"}}}}})"), ParseError);
}

TEST_CASE("empty constraint list") {
  Problem p = parse_problem_text(R"({"objective": {"abs_at": {"index": 2, "center": "3"}}, "constraints": []})");
  CHECK(p.constraints.empty());
  CHECK(p.finite_family());
  Relaxation r = build_relaxation(p, Variant::PInf);
  CHECK(r.constraints.empty());
  CHECK(r.region.is_whole());
  CHECK(value_of(r) == ExtReal(0));
}

TEST_CASE("gallery reports") {
  GapReport gap = run_report(gallery_problem("c0-gap"));
  const std::map<std::string, ExtReal> expected{{"P", ExtReal(1)},  {"PStar2", ExtReal(0)}, {"P1", ExtReal(1)},
                                                {"P2", ExtReal(1)}, {"P3", ExtReal(0)},     {"PInf", ExtReal(1)}};
  for (const auto& [name, v] : expected) {
    const VariantRow* row = gap.row(name);
    REQUIRE(row);
    REQUIRE(row->value);
    CHECK(*row->value == v);
  }
  CHECK(gap.row("PConcave")->refusal);
  REQUIRE(gap.chain);
  CHECK(gap.chain->certified_equal);

  GapReport fin = run_report(gallery_problem("finite"));
  CHECK(*fin.row("P")->value == ExtReal(0));
  CHECK(*fin.row("PStar2")->value == ExtReal(0));

  GapReport rf = run_report(gallery_problem("reinforced"));
  CHECK(*rf.row("P")->value == ExtReal(0));
  CHECK(*rf.row("P3")->value == ExtReal(0));
  CHECK(rf.row("PInf")->refusal);

  Json j = report_to_json(gap);
  CHECK(j["values"]["P"] == "1");
  CHECK(j["values"]["PStar2"] == "0");
  CHECK(j["chain"]["certified_equal"] == true);
  CHECK(report_to_json(run_report(gallery_problem("c0-gap"))).dump() == j.dump());
  CHECK(report_to_text(gap).find("certified v(D) = v(D') = 1") != std::string::npos);
}
