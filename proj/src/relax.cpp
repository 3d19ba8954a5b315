#include "relaxlab/relax.hpp"

#include <algorithm>

namespace relaxlab {

namespace {

Relaxation base(const Problem& p, Variant v) {
  Relaxation r;
  r.variant = v;
  auto obj = biconjugate(p.objective);
  r.objective = obj.expr;
  for (Rule rule : obj.rules) r.provenance.push_back(std::string("objective: ") + to_string(rule));
  for (std::size_t j = 0; j < p.constraints.size(); ++j) {
    auto c = biconjugate(p.constraints[j]);
    r.constraints.push_back(c.expr);
    for (Rule rule : c.rules) r.provenance.push_back("constraint " + std::to_string(j) + ": " + to_string(rule));
  }
  return r;
}

void add_f_infinity(const Problem& p, Relaxation& r) {
  for (std::size_t j = 0; j < p.constraints.size(); ++j) {
    auto fi = f_infinity(p.constraints[j]);
    if (!fi) continue;
    auto b = biconjugate(*fi);
    r.constraints.push_back(b.expr);
    r.provenance.push_back("f_inf of constraint " + std::to_string(j) + " appended");
  }
}

Region sup_domain_closure(const Problem& p) {
  if (p.constraints.empty()) return Region::whole();
  return dom_closure(p.sup_constraints());
}

}  // namespace

Relaxation build_relaxation(const Problem& p, Variant v) {
  if (v == Variant::PConcave) return build_concave_relaxation(p);
  Relaxation r = base(p, v);
  switch (v) {
    case Variant::PStar2: break;
    case Variant::PInf:
      add_f_infinity(p, r);
      r.region = sup_domain_closure(p);
      break;
    case Variant::P1:
      add_f_infinity(p, r);
      // dom f** of a certified supremum is already w**-closed in the model.
      r.region = sup_domain_closure(p);
      r.caveats.push_back("dom f** coincides with its closure in the eventually constant model");
      break;
    case Variant::P2: {
      if (!p.constraints.empty()) {
        std::vector<Expr> terms;
        for (const auto& c : p.constraints)
          terms.push_back(c.is_family() ? upper_sum(positive_part(c), Pattern::constant(1)) : positive_part(c));
        r.region = dom_closure(add(terms));
      }
      break;
    }
    case Variant::P3: r.region = sup_domain_closure(p); break;
    case Variant::PConcave: break;
  }
  if (!r.region.is_whole()) r.provenance.push_back("region: " + r.region.describe());
  return r;
}

namespace {

using MemberEval = std::function<ExtReal(std::size_t, const Point&)>;

std::vector<Point> sample_points(const std::set<std::string>& scalars, const SampleBudget& b) {
  std::vector<std::map<std::string, Rat>> scalar_sets{{}};
  for (const auto& name : scalars) {
    std::vector<std::map<std::string, Rat>> next;
    for (const auto& base : scalar_sets)
      for (const auto& v : b.scalar_values) {
        auto m = base;
        m[name] = v;
        next.push_back(std::move(m));
      }
    scalar_sets = std::move(next);
  }
  std::vector<std::vector<Rat>> coords{{}};
  for (std::size_t j = 1; j <= b.coord_span; ++j)
    for (const auto& v : b.coord_values) {
      std::vector<Rat> x(j, Rat(0));
      x[j - 1] = v;
      coords.push_back(std::move(x));
    }
  std::vector<Point> out;
  for (const auto& s : scalar_sets)
    for (const auto& x : coords) out.push_back(Point::primal(x, s));
  return out;
}

ConcaveVerdict refute(std::size_t count, const MemberEval& f, const std::vector<Point>& pts, const SampleBudget& b) {
  std::vector<std::vector<ExtReal>> table(count);
  for (std::size_t i = 0; i < count; ++i)
    for (const auto& p : pts) table[i].push_back(f(i, p));
  std::vector<std::size_t> pool = b.pair_pool;
  if (pool.empty())
    for (std::size_t i = 0; i < count; ++i) pool.push_back(i);
  for (std::size_t a = 0; a < pool.size(); ++a)
    for (std::size_t c = a + 1; c < pool.size(); ++c)
      for (const auto& w : b.weights) {
        std::size_t i = pool[a], j = pool[c];
        ConcaveWitness wit{i, j, w, {}};
        bool every_candidate_fails = true;
        for (std::size_t t = 0; t < count && every_candidate_fails; ++t) {
          bool violated = false;
          for (std::size_t q = 0; q < pts.size() && !violated; ++q) {
            ExtReal combo = table[i][q].scaled(w) + table[j][q].scaled(Rat(1) - w);
            if (table[t][q] < combo) {
              violated = true;
              wit.violations.emplace_back(t, pts[q]);
            }
          }
          every_candidate_fails = violated;
        }
        if (every_candidate_fails) return ConcaveVerdict{true, wit, "every sampled member lies below the combination somewhere"};
      }
  return ConcaveVerdict{false, std::nullopt, "not disproved on the sample budget (this is not a proof)"};
}

}  // namespace

ConcaveVerdict is_concave_like(const Expr& family, const SampleBudget& budget) {
  if (!family.is_family()) return is_concave_like(std::vector<Expr>{family}, budget);
  auto pts = sample_points(scalar_names(family), budget);
  // Past the sample span and the stabilization index all members coincide
  // on the sample points, so one extra member stands for the whole tail.
  std::size_t count = std::max(budget.max_members, std::max(budget.coord_span, family.node().n0) + 1);
  Expr fam = family.with_space(Space::Primal);
  return refute(count, [&](std::size_t i, const Point& p) { return eval(fam, p, i + 1); }, pts, budget);
}

ConcaveVerdict is_concave_like(const std::vector<Expr>& members, const SampleBudget& budget) {
  std::set<std::string> names;
  for (const auto& m : members) {
    if (m.is_family()) throw std::invalid_argument("is_concave_like: explicit members must be scalar expressions");
    names.merge(scalar_names(m));
  }
  auto pts = sample_points(names, budget);
  return refute(members.size(), [&](std::size_t i, const Point& p) { return eval(members[i], p); }, pts, budget);
}

Relaxation build_concave_relaxation(const Problem& p, const SampleBudget& budget) {
  for (std::size_t j = 0; j < p.constraints.size(); ++j) {
    if (!p.constraints[j].is_family()) continue;
    auto verdict = is_concave_like(p.constraints[j], budget);
    if (verdict.disproved) {
      const auto& w = *verdict.witness;
      std::string where = "members " + std::to_string(w.i + 1) + "," + std::to_string(w.j + 1) + " weight " +
                          w.weight.str();
      throw RefusalError("constraint family is not concave-like", where);
    }
  }
  if (!p.constraints.empty() && !validate(p.sup_constraints()).continuous_everywhere)
    throw RefusalError("concave-like relaxation needs a continuous supremum", to_string(p.sup_constraints()));
  Relaxation r = base(p, Variant::PConcave);
  r.region = sup_domain_closure(p);
  r.caveats.push_back("concave-like property not disproved on samples; this is not a proof");
  return r;
}

ChainReport duality_chain_report(const Problem& p, bool use_pstar2) {
  ChainReport rep;
  rep.vP = value_of(p);
  rep.lower_variant = use_pstar2 ? Variant::PStar2 : Variant::PInf;
  try {
    rep.vLower = value_of(build_relaxation(p, rep.lower_variant));
  } catch (const RefusalError& e) {
    rep.caveats.push_back(std::string("PInf refused (") + e.what() + "); PStar2 used as lower bound");
    rep.lower_variant = Variant::PStar2;
    rep.vLower = value_of(build_relaxation(p, Variant::PStar2));
  }
  if (rep.vP < rep.vLower) throw std::logic_error("chain violated: relaxation value exceeds v(P)");
  auto s = check_slater(p);
  if (auto* c = std::get_if<SlaterCertificate>(&s)) rep.slater = *c;
  rep.continuity = p.constraints.empty() || validate(p.sup_constraints()).continuous_everywhere;
  rep.certified_equal =
      rep.slater && rep.continuity && rep.lower_variant == Variant::PInf && rep.vP == rep.vLower;
  rep.dual_lo = rep.certified_equal ? rep.vP : rep.vLower;
  rep.dual_hi = rep.vP;
  if (!reduce(p).exact) rep.caveats.push_back("model infimum: block-model reduction is not exact for this input");
  return rep;
}

}  // namespace relaxlab
