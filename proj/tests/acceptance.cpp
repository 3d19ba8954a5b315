// Acceptance suite: one pass/fail line per criterion. Exact criteria use
// rational equality; oracle criteria use the tolerances stated per line.
#include "relaxlab/gallery.hpp"
#include "relaxlab/oracle.hpp"
#include "relaxlab/relax.hpp"
#include "generators.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

using namespace relaxlab;
using namespace testsupport;

namespace {

constexpr int kZeroGap = 100, kSlaterFree = 50, kFinite = 25, kCertify = 10, kMultipliers = 25;
constexpr double kTol = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<Problem> zero_gap_instances() {
  Gen g(2024);
  std::vector<Problem> out;
  for (int i = 0; i < kZeroGap; ++i) out.push_back(zero_gap_problem(g, i));
  return out;
}

ExtReal v(const Problem& p, Variant var) { return value_of(build_relaxation(p, var)); }

Outcome gap_values() {
  Problem p = gallery_problem("c0-gap");
  std::ostringstream os;
  const std::vector<std::pair<Variant, long>> expected{{Variant::PStar2, 0}, {Variant::PInf, 1}, {Variant::P1, 1},
                                                       {Variant::P2, 1},     {Variant::P3, 0}};
  bool ok = value_of(p) == ExtReal(1);
  os << "P=" << value_of(p).str();
  for (auto [var, want] : expected) {
    ExtReal got = v(p, var);
    ok = ok && got == ExtReal(Rat(want));
    os << " " << to_string(var) << "=" << got.str();
  }
  bool reinforced_fails = std::holds_alternative<SlaterNotFound>(check_slater(p, true, Pattern::halves()));
  os << "; reinforced slater with 2^-k " << (reinforced_fails ? "fails" : "holds");
  return {ok && reinforced_fails, os.str()};
}

Outcome zero_gap(const std::vector<Problem>& ps) {
  int bad = 0;
  for (const auto& p : ps) {
    ExtReal vp = value_of(p);
    bool ok = vp.is_finite() && std::holds_alternative<SlaterCertificate>(check_slater(p)) &&
              v(p, Variant::PInf) == vp && v(p, Variant::P1) == vp && v(p, Variant::P2) == vp;
    bad += !ok;
  }
  return {bad == 0, std::to_string(ps.size()) + " instances, " + std::to_string(bad) + " mismatches"};
}

Outcome weak_chains(const std::vector<Problem>& ps) {
  std::vector<Problem> all = ps;
  Gen g(77);
  for (int i = 0; i < kSlaterFree; ++i) all.push_back(slater_free_problem(g, i));
  int bad = 0, gaps = 0;
  for (const auto& p : all) {
    ExtReal vp = value_of(p), inf = v(p, Variant::PInf), p1 = v(p, Variant::P1), p2 = v(p, Variant::P2);
    ExtReal star = v(p, Variant::PStar2), p3 = v(p, Variant::P3);
    bool ok = inf <= p1 && p1 <= vp && inf <= p2 && p2 <= vp && star <= vp && p3 <= vp;
    bad += !ok;
    gaps += star < vp;
  }
  return {bad == 0, std::to_string(all.size()) + " instances (" + std::to_string(kSlaterFree) + " without Slater), " +
                        std::to_string(bad) + " violations, " + std::to_string(gaps) + " with v(P**) < v(P)"};
}

Outcome finite_collapse() {
  Gen g(31);
  int bad = 0;
  for (int i = 0; i < kFinite; ++i) {
    Problem p = finite_problem(g, i);
    Relaxation inf = build_relaxation(p, Variant::PInf), star = build_relaxation(p, Variant::PStar2);
    bool same_shape = inf.constraints.size() == star.constraints.size() && inf.region.is_whole();
    bool ok = std::holds_alternative<SlaterCertificate>(check_slater(p)) && same_shape &&
              value_of(p) == value_of(star) && value_of(inf) == value_of(star);
    bad += !ok;
  }
  return {bad == 0, std::to_string(kFinite) + " instances, " + std::to_string(bad) + " mismatches"};
}

Outcome reinforced() {
  Problem p = gallery_problem("reinforced");
  ExtReal vp = value_of(p), p3 = v(p, Variant::P3);
  auto s = check_slater(p, true, Pattern::halves());
  const auto* c = std::get_if<SlaterCertificate>(&s);
  bool ok = vp == ExtReal(0) && p3 == ExtReal(0) && c && c->margin == Rat(1, 2) && c->point.scalar("y") == Rat(1) &&
            c->point.prefix().empty();
  std::ostringstream os;
  os << "P=" << vp.str() << " P3=" << p3.str() << ", margin " << (c ? c->margin.str() : "none") << " at y = "
     << (c ? c->point.scalar("y").str() : "-");
  return {ok, os.str()};
}

Outcome scalar_characterization(const std::vector<Problem>& ps) {
  std::vector<Problem> cases{gallery_problem("c0-gap")};
  cases.insert(cases.end(), ps.begin(), ps.begin() + kCertify);
  int bad = 0;
  for (const auto& p : cases) {
    ValueSearch s = find_value(p);
    Rat mu = s.lp_value;
    bool ok = s.agrees && s.iterations == 60 && certify_value(p, mu) && !certify_value(p, mu + 1) &&
              !certify_value(p, mu - 1);
    bad += !ok;
  }
  return {bad == 0, std::to_string(cases.size()) + " instances, bisection bracket within 2^-55, " + std::to_string(bad) +
                        " failures"};
}

Outcome multipliers(const std::vector<Problem>& ps) {
  std::vector<Problem> cases{gallery_problem("c0-gap"), gallery_problem("finite")};
  cases.insert(cases.end(), ps.begin(), ps.begin() + kMultipliers);
  int bad = 0;
  for (const auto& p : cases) {
    try {
      MultiplierRecord m = recover_multipliers(p);
      ExtReal vp = value_of(p);
      bool ok = m.penalized_value == vp && m.penalized_value_hat == vp && m.lambda.summable() &&
                m.lambda.nonnegative() && m.lambda_hat.bounded() && m.lambda_inf >= Rat(0);
      bad += !ok;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  return {bad == 0, std::to_string(cases.size()) +
                        " problems (reinforced gallery excluded: growing family pattern), " + std::to_string(bad) +
                        " failures"};
}

Outcome sup_formula() {
  Expr fam = gallery_problem("c0-gap").constraints[0];
  Expr formula = biconjugate_sup(fam).expr;
  Expr primal_sup = sup(fam);
  Gen g(99);
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    Point z = g.point(Space::Bidual, {"y"}, 6);
    Rat closed(1);
    for (const auto& c : z.prefix()) closed = max(closed, (c - 1).abs());
    closed = max(closed, (z.tail() - 1).abs());
    closed -= z.scalar("y");
    ExtReal f = eval(formula, z);
    bool ok = f == ExtReal(closed);
    // Truncations (z_1..z_m, 0, ...) converge weak-star to z.
    const std::size_t len = z.prefix().size();
    for (std::size_t m = 0; m <= len + 3; ++m) {
      std::vector<Rat> pre;
      for (std::size_t k = 1; k <= m; ++k) pre.push_back(z.coord(k));
      ExtReal approx = eval(primal_sup, Point::primal(pre, z.scalars()));
      ok = ok && approx <= f;
      if (m == len + 1) ok = ok && approx == f;
    }
    bad += !ok;
  }
  return {bad == 0, "100 bidual points, " + std::to_string(bad) + " mismatches"};
}

Outcome oracle_suite() {
  using namespace oracle;
  Gen g(5);
  std::ostringstream os;
  bool ok = true;

  double worst_fy = 0;
  std::size_t pairs = 0;
  for (int t = 0; t < 10; ++t) {
    Grid f = Grid::uniform(-3, 3, 100, [&, a = g.rat(-2, 2).to_double(), b = g.rat(0, 2).to_double()](double x) {
      return std::min((x - a) * (x - a), b * std::abs(x) + 1);
    });
    std::vector<double> ss(10);
    for (std::size_t i = 0; i < ss.size(); ++i) ss[i] = -5 + static_cast<double>(i);
    Grid fc = llt_conjugate(f, ss);
    for (std::size_t i = 0; i < ss.size(); ++i)
      for (std::size_t j = 0; j < f.x.size(); ++j, ++pairs) worst_fy = std::max(worst_fy, f.x[j] * ss[i] - f.v[j] - fc.v[i]);
  }
  ok = ok && worst_fy <= kTol && pairs >= 10000;
  os << "fenchel-young " << pairs << " pairs";

  double worst_moreau = 0;
  for (int t = 0; t < 20; ++t) {
    double a = g.rat(1, 3).to_double(), c = g.rat(-1, 1).to_double(), w = g.rat(0, 2).to_double();
    Grid f = Grid::uniform(-3, 3, 97, [&](double x) { return a * (x - c) * (x - c) + w * std::abs(x); });
    Grid fb = llt_biconjugate(f);
    for (std::size_t i = 0; i < f.x.size(); ++i) worst_moreau = std::max(worst_moreau, std::abs(fb.v[i] - f.v[i]));
  }
  ok = ok && worst_moreau <= kTol;

  Grid well = Grid::uniform(-2, 2, 81, [](double x) { return std::min((x + 1) * (x + 1), (x - 1) * (x - 1)); });
  Grid env = llt_biconjugate(well);
  double worst_hull = 0;
  for (std::size_t i = 0; i < well.x.size(); ++i) {
    double best = well.v[i];
    for (std::size_t a = 0; a <= i; ++a)
      for (std::size_t b = i; b < well.x.size(); ++b) {
        if (a == b) continue;
        double lam = (well.x[i] - well.x[a]) / (well.x[b] - well.x[a]);
        best = std::min(best, well.v[a] + lam * (well.v[b] - well.v[a]));
      }
    worst_hull = std::max(worst_hull, std::abs(env.v[i] - best));
  }
  ok = ok && worst_hull <= kTol;

  bool duality = true;
  for (int t = 0; t < 20; ++t) {
    double a = g.rat(1, 3).to_double(), c = g.rat(-1, 1).to_double(), w = g.rat(0, 2).to_double(), d = g.rat(-1, 1).to_double();
    Grid f = Grid::uniform(-3, 3, 121, [&](double x) { return a * (x - c) * (x - c); });
    Grid h = Grid::uniform(-3, 3, 121, [&](double x) { return w * std::abs(x - d) + x / 2; });
    DualValues dv = fenchel_dual_value(f, h);
    duality = duality && dv.gap() >= -kTol && dv.gap() <= 2 * std::max(f.modulus(), h.modulus());
  }
  ok = ok && duality;

  Problem p = gallery_problem("c0-gap");
  Expr fam = p.constraints[0];
  struct Slice {
    Expr e;
    std::optional<std::size_t> member;
    std::string var;
    Point base;
  };
  const Point y2 = Point::primal({}, {{"y", Rat(2)}});
  std::vector<Slice> slices{{p.objective, std::nullopt, "x1", Point::primal({}, {{"y", Rat(0)}})},
                            {p.objective, std::nullopt, "x3", Point::primal({Rat(1)}, {{"y", Rat(1)}})},
                            {p.objective, std::nullopt, "y", Point::primal({Rat(1), Rat(-1)})},
                            {fam, 1, "x1", y2},
                            {fam, 3, "x3", y2},
                            {fam, 2, "y", Point::primal({Rat(0), Rat(3)})},
                            {sup(fam), std::nullopt, "x1", y2},
                            {sup(fam), std::nullopt, "y", Point::primal({Rat(2)})},
                            {pos(coord_abs_at(1, Rat(1)) + tail_const(Rat(-2))), std::nullopt, "x1", Point::primal({})}};
  double worst_slice = 0;
  bool slices_ok = true;
  for (const auto& s : slices) {
    CrossCheck c = cross_check(s.e, s.base, GridSpec{s.var, Rat(-3), Rat(3), 193, s.member});
    slices_ok = slices_ok && c.max_deviation <= c.modulus + kTol;
    worst_slice = std::max(worst_slice, c.max_deviation);
  }
  ok = ok && slices_ok;
  os << " (worst slack " << worst_fy << "), moreau " << worst_moreau << ", double-well " << worst_hull
     << ", strong duality on 20 pairs " << (duality ? "ok" : "FAILED") << ", " << slices.size()
     << " slices worst deviation " << worst_slice;
  return {ok, os.str()};
}

Outcome dual_ball() {
  DualBallGallery g;
  DualBallAnswer ones = g.query(Pattern::constant(Rat(1)));
  bool ok = ones.vP == ExtReal(0) && ones.vPStar2 == ExtReal::minus_inf() && ones.gap;
  Gen gen(12);
  int inside_bad = 0, outside_bad = 0;
  for (int i = 0; i < 20; ++i) {
    std::vector<Rat> pre;
    for (long k = gen.integer(1, 6); k > 0; --k) pre.push_back(gen.rat(-1, 1, 8));
    DualBallAnswer a = g.query(Pattern::constant(Rat(0), pre));
    inside_bad += !(a.vP == ExtReal(0) && a.vPStar2 == ExtReal(0) && !a.gap);
    std::vector<Rat> big = pre;
    big[static_cast<std::size_t>(gen.integer(0, static_cast<long>(big.size()) - 1))] =
        (gen.coin() ? Rat(1) : Rat(-1)) * (Rat(1) + gen.rat(1, 3, 8));
    Pattern outside = gen.coin() ? Pattern::constant(Rat(0), big) : Pattern::constant(gen.rat(-1, 1, 8), big);
    DualBallAnswer b = g.query(outside);
    outside_bad += !(b.vP == ExtReal::minus_inf() && b.vPStar2 == ExtReal::minus_inf());
  }
  ok = ok && inside_bad == 0 && outside_bad == 0;
  return {ok, "1_N -> (" + ones.vP.str() + ", " + ones.vPStar2.str() + ") gap; 20 inside, " + std::to_string(inside_bad) +
                  " wrong; 20 outside, " + std::to_string(outside_bad) + " wrong"};
}

Outcome chain_certification(const std::vector<Problem>& ps) {
  int bad = 0;
  for (const auto& p : ps) {
    ChainReport c = duality_chain_report(p);
    bad += !(c.certified_equal && c.dual_lo == c.vP && c.dual_hi == c.vP);
  }
  ChainReport s = duality_chain_report(gallery_problem("c0-gap"), true);
  bool sub = !s.certified_equal && s.dual_lo == ExtReal(0) && s.dual_hi == ExtReal(1);
  return {bad == 0 && sub, std::to_string(ps.size()) + " certified (" + std::to_string(bad) +
                               " not); c0-gap with PStar2 lower bound -> [" + s.dual_lo.str() + ", " +
                               s.dual_hi.str() + "] " + (s.certified_equal ? "certified" : "not certified")};
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();
  const std::vector<Problem> zg = zero_gap_instances();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"c0-gap values exact", gap_values},
      {"zero gap under Slater and continuity", [&] { return zero_gap(zg); }},
      {"weak-duality chains", [&] { return weak_chains(zg); }},
      {"finite-family collapse", finite_collapse},
      {"reinforced gallery", reinforced},
      {"scalar characterization of the value", [&] { return scalar_characterization(zg); }},
      {"multiplier recovery", [&] { return multipliers(zg); }},
      {"supremum biconjugate formula", sup_formula},
      {"numeric oracle suite", oracle_suite},
      {"dual-ball gallery", dual_ball},
      {"duality-chain certification", [&] { return chain_certification(zg); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.detail << "\n";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed in "
            << secs << " s\n";
  return failed == 0 ? 0 : 1;
}
