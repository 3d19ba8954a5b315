#include "relaxlab/solve.hpp"

#include "relaxlab/conjugacy.hpp"

#include <set>

namespace relaxlab {

namespace {

const Rat kOne(1);

std::vector<Expr> weighted_constraints(const Problem& p, const std::optional<Pattern>& weights) {
  std::vector<Expr> out;
  for (const auto& c : p.constraints) out.push_back(weights && c.is_family() ? scale_family(*weights, c) : c);
  return out;
}

Expr sup_of(const std::vector<Expr>& cs) {
  std::vector<Expr> parts;
  for (const auto& c : cs) parts.push_back(c.is_family() ? sup(c) : c);
  return max(parts);
}

/// sum_{k <= n} |x_k| + sum |s| over the named scalars.
Expr l1_norm(std::size_t n, const std::set<std::string>& scalars) {
  std::vector<Expr> terms{series(Pattern::constant(0, std::vector<Rat>(n, kOne)), coord_abs(Pattern::constant(0)))};
  for (const auto& s : scalars) terms.push_back(max({scalar(s), scalar(s, Rat(-1))}));
  return add(terms);
}

std::set<std::string> all_scalars(const Problem& p) {
  std::set<std::string> names(p.scalars.begin(), p.scalars.end());
  names.merge(scalar_names(p.objective));
  for (const auto& c : p.constraints) names.merge(scalar_names(c));
  return names;
}

Problem unconstrained(const Problem& p, Expr objective) {
  Problem q;
  q.name = p.name + "/penalized";
  q.objective = std::move(objective);
  q.scalars = p.scalars;
  return q;
}

}  // namespace

SlaterResult check_slater(const Problem& p, bool reinforced, const std::optional<Pattern>& weights) {
  if (reinforced) {
    if (!weights) throw std::invalid_argument("reinforced Slater check needs weights");
    if (!weights->summable() || !weights->positive())
      throw std::invalid_argument("reinforced Slater weights must be summable and entrywise positive");
  }
  const std::optional<Pattern> w = reinforced ? weights : std::nullopt;
  if (p.constraints.empty()) {
    Point zero = Point::primal({});
    return SlaterCertificate{zero, kOne, reinforced, w, "vacuous"};
  }
  std::vector<Expr> cs = weighted_constraints(p, w);
  Expr f = sup_of(cs);

  if (p.slater_point) {
    ExtReal v = eval(f, *p.slater_point);
    if (v < ExtReal(0) && eval(p.objective, *p.slater_point).is_finite())
      return SlaterCertificate{*p.slater_point, -v.value(), reinforced, w, "hint"};
  }

  ProgramSource src;
  src.space = Space::Primal;
  src.region = Region::whole(false);
  src.pin_block = true;
  src.objective = max({f, tail_const(Rat(-1))});
  // 0 * f0 keeps only the domain of f0.
  src.constraints = {scale(Rat(0), p.objective)};
  SolveResult first = solve_value(reduce(src));
  if (!(first.value < ExtReal(0))) return SlaterNotFound{first.value};

  // Canonical point: smallest l1 norm among the minimizers.
  FinitProgram probe = reduce(src);
  ProgramSource canon = src;
  canon.objective = l1_norm(probe.collapse_index, all_scalars(p));
  canon.constraints.push_back(add({src.objective, tail_const(-first.value.value())}));
  SolveResult second = solve_value(reduce(canon));
  const Point& pt = second.argmin ? *second.argmin : *first.argmin;
  ExtReal v = eval(f, pt);
  if (!(v < ExtReal(0))) throw std::logic_error("slater search: LP point does not re-evaluate below 0");
  return SlaterCertificate{pt, -v.value(), reinforced, w, "lp"};
}

ExtReal performance_value(const Problem& p, const Rat& alpha) {
  std::vector<Expr> parts{add({p.objective, tail_const(-alpha)})};
  if (!p.constraints.empty()) parts.push_back(p.sup_constraints());
  ProgramSource src;
  src.space = Space::Primal;
  src.region = Region::whole(false);
  src.objective = max(parts);
  return solve_value(reduce(src)).value;
}

bool certify_value(const Problem& p, const Rat& alpha) { return performance_value(p, alpha) == ExtReal(0); }

ValueSearch find_value(const Problem& p) {
  ExtReal mu = value_of(p);
  if (mu.is_plus_inf()) throw std::domain_error("value search: problem is infeasible (v = +inf)");
  if (mu.is_minus_inf()) throw std::domain_error("value search: problem is unbounded (v = -inf)");
  ValueSearch out;
  out.lp_value = mu.value();
  auto positive = [&](const Rat& a) { return performance_value(p, a) > ExtReal(0); };
  // Integer bracket lo < hi with h(lo) > 0 >= h(hi).
  Rat lo, hi;
  if (positive(Rat(0))) {
    lo = Rat(0);
    hi = Rat(1);
    while (positive(hi)) {
      lo = hi;
      hi = hi * Rat(2);
    }
  } else {
    hi = Rat(0);
    lo = Rat(-1);
    while (!positive(lo)) {
      hi = lo;
      lo = lo * Rat(2);
    }
  }
  while (hi - lo > kOne) {
    mpz_class half = (hi - lo).num() / 2;
    Rat mid = lo + Rat(half.get_si());
    if (positive(mid)) lo = mid;
    else hi = mid;
  }
  for (int i = 0; i < 60; ++i) {
    Rat mid = (lo + hi) / Rat(2);
    if (positive(mid)) lo = mid;
    else hi = mid;
    ++out.iterations;
  }
  out.lo = lo;
  out.hi = hi;
  Rat tol = Rat::pow(Rat(1, 2), 55);
  out.agrees = lo <= out.lp_value && out.lp_value <= hi && (hi - out.lp_value) <= tol && (out.lp_value - lo) <= tol;
  return out;
}

Expr penalized_objective(const Problem& p, const std::vector<ConstraintMultiplier>& ms, bool hat) {
  std::vector<Expr> terms{p.objective};
  for (const auto& m : ms) {
    const Expr& c = p.constraints.at(m.constraint);
    const Pattern& l = hat ? m.lambda_hat : m.lambda;
    if (!m.family) {
      Rat d = l.value(1);
      if (!d.is_zero()) terms.push_back(scale(d, pos(c)));
      continue;
    }
    terms.push_back(series(l, pos(c)));
    if (!hat && m.lambda_inf.sign() > 0) terms.push_back(scale(m.lambda_inf, *f_infinity(c)));
  }
  return add(terms);
}

MultiplierRecord recover_multipliers(const Problem& p) {
  for (const auto& c : p.constraints)
    if (c.is_family() && c.node().ratio != kOne)
      throw ReductionError("multiplier recovery needs families with eventually constant patterns");
  FinitProgram fp = reduce(p);
  SolveResult sol = solve_value(fp);
  if (!sol.value.is_finite()) throw std::domain_error("multiplier recovery needs a finite value, got " + sol.value.str());
  const std::size_t N = fp.collapse_index;

  struct Raw {
    std::vector<Rat> prefix;
    Rat block{0}, vanish{0}, scalar{0};
  };
  std::vector<Raw> raw(p.constraints.size());
  for (auto& r : raw) r.prefix.assign(N, Rat(0));
  for (std::size_t i = 0; i < fp.rows.size(); ++i) {
    const RowTag& t = fp.tags[i];
    if (t.constraint < 0) continue;
    Raw& r = raw[static_cast<std::size_t>(t.constraint)];
    const Rat& d = sol.duals[i];
    switch (t.kind) {
      case RowKind::Member: r.prefix[t.k - 1] += d; break;
      case RowKind::BlockEnd:
      case RowKind::BlockLimit:
      case RowKind::BlockRecession: r.block += d; break;
      case RowKind::Vanishing: r.vanish += d; break;
      case RowKind::ScalarConstraint: r.scalar += d; break;
      default: break;
    }
  }

  // The block multiplier is either spread over k > N (an l1 tail of mass
  // mu_b) or moved onto f_inf; the first form that validates is kept.
  auto build = [&](bool spread) {
    std::vector<ConstraintMultiplier> ms;
    for (std::size_t j = 0; j < p.constraints.size(); ++j) {
      const Raw& r = raw[j];
      ConstraintMultiplier m;
      m.constraint = j;
      m.family = p.constraints[j].is_family();
      if (!m.family) {
        m.lambda = Pattern::constant(0, {r.scalar});
        m.lambda_hat = m.lambda;
      } else {
        Rat tail_mass = spread ? r.block : Rat(0);
        m.lambda = tail_mass.is_zero() ? Pattern::constant(0, r.prefix)
                                       : Pattern::geometric(tail_mass * Rat::pow2(static_cast<long>(N)), Rat(1, 2), r.prefix);
        m.lambda_inf = r.vanish + (spread ? Rat(0) : r.block);
        m.lambda_hat = Pattern::constant(r.block + r.vanish, r.prefix);
      }
      ms.push_back(std::move(m));
    }
    return ms;
  };

  MultiplierRecord rec;
  ExtReal last;
  bool found = false;
  for (bool spread : {true, false}) {
    auto ms = build(spread);
    ExtReal v = value_of(unconstrained(p, penalized_objective(p, ms, false)));
    last = v;
    if (v == sol.value) {
      rec.per_constraint = std::move(ms);
      rec.penalized_value = v;
      found = true;
      break;
    }
  }
  if (!found) throw MultiplierMismatch("penalized form with lambda and lambda_inf", sol.value, last);
  rec.penalized_value_hat = value_of(unconstrained(p, penalized_objective(p, rec.per_constraint, true)));
  if (rec.penalized_value_hat != sol.value)
    throw MultiplierMismatch("penalized form with lambda_hat", sol.value, rec.penalized_value_hat);

  std::vector<Rat> scalars;
  const ConstraintMultiplier* fam = nullptr;
  for (const auto& m : rec.per_constraint) {
    if (m.family && !fam) fam = &m;
    if (!m.family) scalars.push_back(m.lambda.value(1));
  }
  if (fam) {
    rec.lambda = fam->lambda;
    rec.lambda_hat = fam->lambda_hat;
    rec.lambda_inf = fam->lambda_inf;
  } else {
    rec.lambda = Pattern::constant(0, scalars);
    rec.lambda_hat = rec.lambda;
  }
  return rec;
}

}  // namespace relaxlab
