#include "relaxlab/gallery.hpp"
#include "relaxlab/oracle.hpp"
#include "relaxlab/report.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

using namespace relaxlab;

namespace {

enum Exit { kOk = 0, kParse = 2, kRefusal = 3, kInternal = 4 };

struct Options {
  std::string format = "human";
  std::string file;
  std::string variant = "pinf";
  std::string variants;
  bool reinforced = false;
  std::string weights;
  std::string alpha;
  std::string name;
  std::string query;
  std::string var;
  std::string range;
  std::size_t samples = 129;
  std::string expr = "objective";
  std::size_t member = 0;
};

bool json_out(const Options& o) { return o.format == "json"; }

void emit(const Options& o, const Json& j, const std::string& text) {
  if (json_out(o))
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

/// A file path, or gallery:NAME for a built-in problem.
Problem load(const std::string& file) {
  if (file.rfind("gallery:", 0) == 0) return gallery_problem(file.substr(8));
  return load_problem(file);
}

/// A JSON pattern, or one of the shorthands halves, ones.
Pattern pattern_arg(const std::string& text, const std::string& what) {
  if (text == "halves") return Pattern::halves();
  if (text == "ones") return Pattern::constant(Rat(1));
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error&) {
    throw ParseError(what, "expected a JSON pattern or one of halves, ones");
  }
  return pattern_from_json(j, what);
}

int cmd_solve(const Options& o) {
  Problem p = load(o.file);
  SolveResult r = solve_value(reduce(p));
  Json j = {{"problem", p.name}, {"values", {{"P", ext_to_json(r.value)}}}};
  std::string where = r.argmin ? point_summary(*r.argmin) : "not attained";
  j["argmin"] = r.argmin ? point_to_json(*r.argmin) : Json(nullptr);
  j["caveats"] = r.caveats;
  std::ostringstream os;
  os << "v(P) = " << r.value.str() << "  [" << where << "]\n";
  for (const auto& c : r.caveats) os << "caveat: " << c << "\n";
  emit(o, j, os.str());
  return kOk;
}

int cmd_relax(const Options& o) {
  Problem p = load(o.file);
  Relaxation r = build_relaxation(p, parse_variant(o.variant));
  ExtReal v = value_of(r);
  Json cs = Json::array();
  for (const auto& c : r.constraints) cs.push_back(to_string(c));
  Json j = {{"problem", p.name},
            {"variant", to_string(r.variant)},
            {"objective", to_string(r.objective)},
            {"constraints", cs},
            {"region", r.region.is_whole() ? "whole space" : r.region.describe()},
            {"values", {{to_string(r.variant), ext_to_json(v)}}},
            {"provenance", r.provenance},
            {"caveats", r.caveats}};
  std::ostringstream os;
  os << to_string(r.variant) << ": inf " << to_string(r.objective) << "\n";
  for (const auto& c : r.constraints) os << "  s.t. " << to_string(c) << " <= 0\n";
  if (!r.region.is_whole()) os << "  over " << r.region.describe() << "\n";
  os << "value " << v.str() << "\n";
  for (const auto& c : r.caveats) os << "caveat: " << c << "\n";
  emit(o, j, os.str());
  return kOk;
}

int cmd_report(const Options& o) {
  Problem p = load(o.file);
  std::vector<Variant> vs = all_variants();
  if (!o.variants.empty()) {
    vs.clear();
    std::stringstream ss(o.variants);
    for (std::string item; std::getline(ss, item, ',');) vs.push_back(parse_variant(item));
  }
  GapReport r = run_report(p, vs);
  emit(o, report_to_json(r), report_to_text(r));
  return kOk;
}

int cmd_slater(const Options& o) {
  Problem p = load(o.file);
  std::optional<Pattern> w;
  if (!o.weights.empty()) w = pattern_arg(o.weights, "--weights");
  SlaterResult s = check_slater(p, o.reinforced, w);
  Json j;
  std::ostringstream os;
  if (const auto* c = std::get_if<SlaterCertificate>(&s)) {
    j = {{"found", true}, {"reinforced", c->reinforced}, {"point", point_to_json(c->point)},
         {"margin", rat_to_json(c->margin)}, {"origin", c->origin}};
    os << (c->reinforced ? "reinforced " : "") << "slater point " << point_summary(c->point) << ", margin "
       << c->margin.str() << "\n";
  } else {
    const auto& n = std::get<SlaterNotFound>(s);
    j = {{"found", false}, {"reinforced", o.reinforced}, {"best", ext_to_json(n.best)}};
    os << "no slater point: infimum of the constraint supremum is " << n.best.str() << "\n";
  }
  emit(o, j, os.str());
  return kOk;
}

int cmd_certify(const Options& o) {
  Problem p = load(o.file);
  Rat alpha = rat_from_json(Json(o.alpha), "--alpha");
  ExtReal h = performance_value(p, alpha);
  bool ok = h == ExtReal(0);
  Json j = {{"alpha", rat_to_json(alpha)}, {"h", ext_to_json(h)}, {"certified", ok}};
  std::ostringstream os;
  os << "h(" << alpha.str() << ") = " << h.str() << ": " << (ok ? "alpha is the optimal value" : "alpha is not the optimal value")
     << "\n";
  emit(o, j, os.str());
  return kOk;
}

int cmd_multipliers(const Options& o) {
  Problem p = load(o.file);
  MultiplierRecord m = recover_multipliers(p);
  Json per = Json::array();
  for (const auto& c : m.per_constraint)
    per.push_back({{"constraint", c.constraint},
                   {"family", c.family},
                   {"lambda", pattern_to_json(c.lambda)},
                   {"lambda_hat", pattern_to_json(c.lambda_hat)},
                   {"lambda_inf", rat_to_json(c.lambda_inf)}});
  Json j = {{"lambda", pattern_to_json(m.lambda)},
            {"lambda_hat", pattern_to_json(m.lambda_hat)},
            {"lambda_inf", rat_to_json(m.lambda_inf)},
            {"penalized_value", ext_to_json(m.penalized_value)},
            {"penalized_value_hat", ext_to_json(m.penalized_value_hat)},
            {"per_constraint", per}};
  std::ostringstream os;
  os << "lambda     = " << pattern_to_json(m.lambda).dump() << "\n"
     << "lambda_hat = " << pattern_to_json(m.lambda_hat).dump() << "\n"
     << "lambda_inf = " << m.lambda_inf.str() << "\n"
     << "penalized values " << m.penalized_value.str() << ", " << m.penalized_value_hat.str() << "\n";
  emit(o, j, os.str());
  return kOk;
}

int cmd_gallery(const Options& o) {
  GalleryEntry g = gallery(o.name);
  if (const auto* p = std::get_if<Problem>(&g)) {
    std::ostringstream os;
    os << p->name << ": inf " << to_string(p->objective) << "\n";
    for (const auto& c : p->constraints) os << "  s.t. " << to_string(c) << " <= 0\n";
    emit(o, problem_to_json(*p), os.str());
    return kOk;
  }
  if (o.query.empty()) throw ParseError("--query", "the dual-ball gallery needs a query pattern");
  DualBallAnswer a = std::get<DualBallGallery>(g).query(pattern_arg(o.query, "--query"));
  Json j = {{"values", {{"P", ext_to_json(a.vP)}, {"PStar2", ext_to_json(a.vPStar2)}}}, {"gap", a.gap}};
  std::ostringstream os;
  os << "v(P) = " << a.vP.str() << ", v(P**) = " << a.vPStar2.str() << (a.gap ? "  (gap)" : "") << "\n";
  emit(o, j, os.str());
  return kOk;
}

int cmd_oracle(const Options& o) {
  Problem p = load(o.file);
  Expr e = p.objective;
  if (o.expr != "objective") {
    if (o.expr.rfind("constraint:", 0) != 0) throw ParseError("--expr", "expected objective or constraint:N");
    e = p.constraints.at(std::stoul(o.expr.substr(11)));
  }
  auto colon = o.range.find(':');
  if (colon == std::string::npos) throw ParseError("--range", "expected LO:HI");
  oracle::GridSpec spec{o.var, rat_from_json(Json(o.range.substr(0, colon)), "--range"),
                        rat_from_json(Json(o.range.substr(colon + 1)), "--range"), o.samples, std::nullopt};
  if (e.is_family()) spec.member = o.member == 0 ? 1 : o.member;
  Point base = p.slater_point ? *p.slater_point : Point::primal({});
  oracle::CrossCheck c = oracle::cross_check(e, base, spec);
  Json j = {{"max_deviation", c.max_deviation}, {"modulus", c.modulus}, {"agrees", c.agrees}};
  std::ostringstream os;
  os << "max deviation " << c.max_deviation << " (grid modulus " << c.modulus << "): "
     << (c.agrees ? "agrees" : "DISAGREES") << "\n";
  emit(o, j, os.str());
  return c.agrees ? kOk : kInternal;
}

int fail(int code, const std::string& kind, const std::string& msg) {
  std::cerr << "relaxlab: " << kind << ": " << msg << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact relaxations and duality gaps for countably constrained convex programs"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"human", "json"}));

  auto* solve = app.add_subcommand("solve", "Optimal value of the problem");
  solve->add_option("file", o.file, "Problem file or gallery:NAME")->required();
  auto* relax = app.add_subcommand("relax", "Build and solve one relaxation");
  relax->add_option("file", o.file)->required();
  relax->add_option("--variant", o.variant, "pstar2|p1|p2|p3|pinf|pc");
  auto* report = app.add_subcommand("report", "Values of all relaxations with the duality chain");
  report->add_option("file", o.file)->required();
  report->add_option("--variants", o.variants, "Comma-separated variant list");
  auto* slater = app.add_subcommand("slater", "Search for a Slater point");
  slater->add_option("file", o.file)->required();
  slater->add_flag("--reinforced", o.reinforced);
  slater->add_option("--weights", o.weights, "Pattern (JSON) or halves");
  auto* certify = app.add_subcommand("certify", "Check whether alpha is the optimal value");
  certify->add_option("file", o.file)->required();
  certify->add_option("--alpha", o.alpha, "Rational p/q")->required();
  auto* mult = app.add_subcommand("multipliers", "Recover Lagrange multipliers");
  mult->add_option("file", o.file)->required();
  auto* gal = app.add_subcommand("gallery", "Print a built-in example");
  gal->add_option("name", o.name, "c0-gap|finite|reinforced|dual-ball")->required();
  gal->add_option("--query", o.query, "Query pattern for dual-ball");
  auto* orc = app.add_subcommand("oracle", "Cross-check a one-variable slice with the numeric oracle");
  orc->add_option("file", o.file)->required();
  orc->add_option("--var", o.var, "Scalar name or xJ")->required();
  orc->add_option("--range", o.range, "LO:HI")->required();
  orc->add_option("--samples", o.samples);
  orc->add_option("--expr", o.expr, "objective or constraint:N");
  orc->add_option("--member", o.member, "Member index for family constraints");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*solve) return cmd_solve(o);
    if (*relax) return cmd_relax(o);
    if (*report) return cmd_report(o);
    if (*slater) return cmd_slater(o);
    if (*certify) return cmd_certify(o);
    if (*mult) return cmd_multipliers(o);
    if (*gal) return cmd_gallery(o);
    if (*orc) return cmd_oracle(o);
  } catch (const RefusalError& e) {
    return fail(kRefusal, "refused", e.what());
  } catch (const ReductionError& e) {
    return fail(kRefusal, "refused", e.what());
  } catch (const InternalError& e) {
    return fail(kInternal, "internal error", e.what());
  } catch (const MultiplierMismatch& e) {
    return fail(kInternal, "internal error", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kParse, "invalid input", e.what());
  } catch (const std::domain_error& e) {
    return fail(kParse, "invalid input", e.what());
  } catch (const std::out_of_range& e) {
    return fail(kParse, "invalid input", e.what());
  } catch (const std::exception& e) {
    return fail(kInternal, "internal error", e.what());
  }
  return kOk;
}
