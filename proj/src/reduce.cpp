#include "relaxlab/solve.hpp"

#include <algorithm>
#include <set>

namespace relaxlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const Rat kOne(1);

std::string render(const NodePtr& n) { return to_string(Expr(n, Space::Primal)); }

LinForm lf_const(const Rat& c) { return LinForm{{}, c}; }
LinForm lf_var(std::size_t j, const Rat& c = Rat(1)) {
  LinForm f;
  if (!c.is_zero()) f.coef[j] = c;
  return f;
}
void lf_add_to(LinForm& acc, const LinForm& x, const Rat& s = Rat(1)) {
  if (s.is_zero()) return;
  acc.constant += s * x.constant;
  for (const auto& [j, c] : x.coef) {
    Rat v = acc.coef[j] + s * c;
    if (v.is_zero()) acc.coef.erase(j);
    else acc.coef[j] = v;
  }
}
LinForm lf_sub(LinForm a, const LinForm& b) {
  lf_add_to(a, b, Rat(-1));
  return a;
}
LinForm lf_scale(const LinForm& x, const Rat& s) {
  LinForm r;
  lf_add_to(r, x, s);
  return r;
}

std::pair<Rat, Rat> split_tail(const Pattern& p) {
  if (p.is_constant_tail()) return {p.tail_coeff(), Rat(0)};
  return {Rat(0), p.tail_coeff()};
}

/// Where a family member is evaluated.
struct Ctx {
  enum class Mode { At, Tail, Rec } mode = Mode::At;
  std::size_t k = 1;
  Rat s{0};
  /// Coordinate variable; nullopt means the coordinate is 0.
  std::optional<std::size_t> coord;
};

std::size_t collect_n0(const Node& n) {
  std::size_t m = n.arity == Arity::Family ? n.n0 : 0;
  std::visit(overloaded{
                 [&](const node::Add& a) { for (const auto& c : a.terms) m = std::max(m, collect_n0(*c)); },
                 [&](const node::Max& a) { for (const auto& c : a.terms) m = std::max(m, collect_n0(*c)); },
                 [&](const node::ScaleNonneg& a) { m = std::max(m, collect_n0(*a.child)); },
                 [&](const node::Pos& a) { m = std::max(m, collect_n0(*a.child)); },
                 [&](const node::Series& a) { m = std::max({m, a.weights.n0(), collect_n0(*a.term)}); },
                 [&](const node::Sup& a) { m = std::max(m, collect_n0(*a.family)); },
                 [&](const node::LimSup& a) { m = std::max(m, collect_n0(*a.family)); },
                 [&](const node::Indicator& a) {
                   for (const auto& b : a.region.boxes) m = std::max(m, b.index);
                 },
                 [&](const auto&) {},
             },
             n.v);
  return m;
}

/// True when the member depends on s_k = ratio^k.
bool s_dependent(const Node& n) {
  return std::visit(overloaded{
                        [](const node::CoordAbs& a) { return !a.center.is_constant_tail() || !a.weight.is_constant_tail(); },
                        [](const node::CoordLin& a) { return !a.coeff.is_constant_tail(); },
                        [](const node::ScalarFamily& a) { return !a.coeff.is_constant_tail(); },
                        [](const node::Const& a) { return !a.value.is_constant_tail(); },
                        [](const node::Add& a) {
                          return std::any_of(a.terms.begin(), a.terms.end(), [](const NodePtr& c) { return s_dependent(*c); });
                        },
                        [](const node::Max& a) {
                          return std::any_of(a.terms.begin(), a.terms.end(), [](const NodePtr& c) { return s_dependent(*c); });
                        },
                        [](const node::ScaleNonneg& a) { return s_dependent(*a.child); },
                        [](const node::Pos& a) { return s_dependent(*a.child); },
                        [](const auto&) { return false; },
                    },
                    n.v);
}

/// Member = F(u, 0) + s * rec(u) exactly.
bool separable(const Node& n) {
  return std::visit(overloaded{
                        [](const node::CoordAbs& a) { return a.center.is_constant_tail(); },
                        [](const node::Add& a) {
                          return std::all_of(a.terms.begin(), a.terms.end(), [](const NodePtr& c) { return separable(*c); });
                        },
                        [](const node::ScaleNonneg& a) { return separable(*a.child); },
                        [&](const node::Max&) { return !s_dependent(n); },
                        [&](const node::Pos&) { return !s_dependent(n); },
                        [](const auto&) { return true; },
                    },
                    n.v);
}

class Lowerer {
public:
  Lowerer(const ProgramSource& src) : src_(src) {
    fp_.space = src.space;
    std::size_t n = collect_n0(src.objective.node());
    for (const auto& c : src.constraints) n = std::max(n, collect_n0(c.node()));
    for (const auto& b : src.region.boxes) n = std::max(n, b.index);
    N_ = std::max<std::size_t>(1, n);
    fp_.collapse_index = N_;
    for (std::size_t k = 1; k <= N_; ++k) new_var("x" + std::to_string(k));
    fp_.block_var = new_var(src.space == Space::Bidual ? "t" : "u");
    std::set<std::string> names = scalar_names(src.objective);
    for (const auto& c : src.constraints) names.merge(scalar_names(c));
    for (const auto& q : src.region.ineqs)
      for (const auto& [name, _] : q.coeffs)
        if (name != kTailVar) names.insert(name);
    for (const auto& name : names) fp_.scalar_index[name] = new_var(name);
  }

  FinitProgram run() {
    if (src_.pin_block) {
      row(lf_var(fp_.block_var), {RowKind::Pin});
      row(lf_var(fp_.block_var, Rat(-1)), {RowKind::Pin});
    }
    region_rows(src_.region);
    fp_.objective = lower_scalar(src_.objective.root());
    for (std::size_t j = 0; j < src_.constraints.size(); ++j) {
      const Expr& c = src_.constraints[j];
      if (c.is_family()) {
        family_rows(c.root(), lf_const(0), static_cast<int>(j));
      } else {
        row(lower_scalar(c.root()), {RowKind::ScalarConstraint, static_cast<int>(j)});
      }
    }
    bool ratio_free = std::all_of(family_ratios_.begin(), family_ratios_.end(), [](const Rat& r) { return r == kOne; });
    if (!ratio_free || weight_ratios_.size() > 1) {
      fp_.exact = false;
      fp_.caveats.push_back("block-model infimum: value is exact over points whose coordinates beyond index " +
                            std::to_string(N_) + " share one value");
    }
    return std::move(fp_);
  }

private:
  const ProgramSource& src_;
  FinitProgram fp_;
  std::size_t N_ = 1;
  std::set<Rat> family_ratios_;
  std::set<Rat> weight_ratios_;

  bool primal() const { return fp_.space == Space::Primal; }

  std::size_t new_var(std::string name) {
    fp_.var_names.push_back(std::move(name));
    return fp_.var_names.size() - 1;
  }

  void row(LinForm f, RowTag tag) {
    // Constant rows are dropped when satisfied; a violated one is kept so the
    // program comes out infeasible.
    if (f.coef.empty() && f.constant.sign() <= 0) return;
    fp_.rows.push_back(std::move(f));
    fp_.tags.push_back(tag);
  }

  std::size_t aux() { return new_var("e" + std::to_string(fp_.var_names.size())); }

  LinForm abs_of(const LinForm& x) {
    if (x.coef.empty()) return lf_const(x.constant.abs());
    std::size_t a = aux();
    row(lf_sub(x, lf_var(a)), {});
    row(lf_sub(lf_scale(x, Rat(-1)), lf_var(a)), {});
    return lf_var(a);
  }

  LinForm max_of(const std::vector<LinForm>& xs) {
    if (xs.size() == 1) return xs[0];
    std::size_t a = aux();
    for (const auto& x : xs) row(lf_sub(x, lf_var(a)), {});
    return lf_var(a);
  }

  LinForm tail_value() const { return primal() ? lf_const(0) : lf_var(fp_.block_var); }

  LinForm coord_form(const Ctx& ctx) const { return ctx.coord ? lf_var(*ctx.coord) : lf_const(0); }

  void region_rows(const Region& r) {
    for (const auto& q : r.ineqs) {
      LinForm f = lf_const(q.constant);
      for (const auto& [name, c] : q.coeffs) {
        if (name == kTailVar) {
          lf_add_to(f, tail_value(), c);
        } else {
          lf_add_to(f, lf_var(fp_.scalar_index.at(name)), c);
        }
      }
      row(f, {RowKind::Region});
    }
    if (!r.tail_free && !primal()) {
      row(lf_var(fp_.block_var), {RowKind::Region});
      row(lf_var(fp_.block_var, Rat(-1)), {RowKind::Region});
    }
    for (const auto& b : r.boxes) {
      std::vector<LinForm> coords;
      if (b.index <= N_) coords.push_back(lf_var(b.index - 1));
      else {
        coords.push_back(lf_var(fp_.block_var));
        if (primal()) coords.push_back(lf_const(0));
      }
      for (const auto& x : coords) {
        if (b.lo) row(lf_sub(lf_const(*b.lo), x), {RowKind::Region});
        if (b.hi) row(lf_sub(x, lf_const(*b.hi)), {RowKind::Region});
      }
    }
  }

  Rat pattern_at(const Pattern& p, const Ctx& ctx) const {
    if (ctx.mode == Ctx::Mode::At) return p.value(ctx.k);
    auto [c0, c1] = split_tail(p);
    if (ctx.mode == Ctx::Mode::Rec) return c1;
    return c0 + c1 * ctx.s;
  }

  LinForm lower_member(const NodePtr& n, const Ctx& ctx) {
    if (n->arity == Arity::Scalar) return ctx.mode == Ctx::Mode::Rec ? lf_const(0) : lower_scalar(n);
    const bool rec = ctx.mode == Ctx::Mode::Rec;
    return std::visit(
        overloaded{
            [&](const node::CoordAbs& a) -> LinForm {
              if (rec) {
                auto [c0, c1] = split_tail(a.center);
                auto [w0, w1] = split_tail(a.weight);
                if (!c1.is_zero()) return lf_const(c1.abs() * w0);
                if (!w1.is_zero()) return lf_scale(abs_of(lf_sub(coord_form(ctx), lf_const(c0))), w1);
                return lf_const(0);
              }
              Rat w = pattern_at(a.weight, ctx);
              if (w.is_zero()) return lf_const(0);
              return lf_scale(abs_of(lf_sub(coord_form(ctx), lf_const(pattern_at(a.center, ctx)))), w);
            },
            [&](const node::CoordLin& a) { return lf_scale(coord_form(ctx), pattern_at(a.coeff, ctx)); },
            [&](const node::ScalarFamily& a) {
              return lf_var(fp_.scalar_index.at(a.name), pattern_at(a.coeff, ctx));
            },
            [&](const node::Const& a) { return lf_const(pattern_at(a.value, ctx)); },
            [&](const node::Add& a) {
              LinForm acc;
              for (const auto& c : a.terms) lf_add_to(acc, lower_member(c, ctx));
              return acc;
            },
            [&](const node::ScaleNonneg& a) { return lf_scale(lower_member(a.child, ctx), a.factor); },
            [&](const node::Max& a) {
              std::vector<LinForm> xs;
              for (const auto& c : a.terms) xs.push_back(lower_member(c, ctx));
              return max_of(xs);
            },
            [&](const node::Pos& a) { return max_of({lower_member(a.child, ctx), lf_const(0)}); },
            [&](const auto&) -> LinForm { throw ReductionError("unsupported family node: " + render(n)); },
        },
        n->v);
  }

  /// Rows for member_k <= bound for every k (as an infimum over the model).
  void family_rows(const NodePtr& fam, const LinForm& bound, int constraint) {
    const Rat& rho = fam->ratio;
    family_ratios_.insert(rho);
    for (std::size_t k = 1; k <= N_; ++k)
      row(lf_sub(lower_member(fam, {Ctx::Mode::At, k, Rat(0), k - 1}), bound), {RowKind::Member, constraint, k});
    const std::size_t u = fp_.block_var;
    const Rat s_end = Rat::pow(rho, static_cast<long>(N_ + 1));
    if (rho == kOne) {
      row(lf_sub(lower_member(fam, {Ctx::Mode::Tail, 0, Rat(0), u}), bound), {RowKind::BlockEnd, constraint});
    } else {
      row(lf_sub(lower_member(fam, {Ctx::Mode::Tail, 0, s_end, u}), bound), {RowKind::BlockEnd, constraint});
      if (rho < kOne)
        row(lf_sub(lower_member(fam, {Ctx::Mode::Tail, 0, Rat(0), u}), bound), {RowKind::BlockLimit, constraint});
      else
        row(lower_member(fam, {Ctx::Mode::Rec, 0, Rat(0), u}), {RowKind::BlockRecession, constraint});
    }
    if (!primal()) return;
    if (rho <= kOne)
      row(lf_sub(lower_member(fam, {Ctx::Mode::Tail, 0, Rat(0), std::nullopt}), bound), {RowKind::Vanishing, constraint});
    else
      row(lower_member(fam, {Ctx::Mode::Rec, 0, Rat(0), std::nullopt}), {RowKind::Vanishing, constraint});
  }

  LinForm lower_series(const NodePtr& n, const node::Series& a) {
    const NodePtr& term = a.term;
    const Pattern& w = a.weights;
    const Rat& rho = term->ratio;
    LinForm acc;
    for (std::size_t k = 1; k <= N_; ++k) {
      Rat wk = w.value(k);
      if (!wk.is_zero()) lf_add_to(acc, lower_member(term, {Ctx::Mode::At, k, Rat(0), k - 1}), wk);
    }
    if (w.is_constant_tail() && w.tail_coeff().is_zero()) return acc;
    const std::size_t u = fp_.block_var;
    if (w.summable()) {
      weight_ratios_.insert(w.ratio());
      family_ratios_.insert(rho);
      Rat W = w.tail_sum(N_);
      lf_add_to(acc, lower_member(term, {Ctx::Mode::Tail, 0, Rat(0), u}), W);
      if (rho != kOne && s_dependent(*term)) {
        if (!separable(*term)) throw ReductionError("series tail is not separable in the geometric ratio: " + render(n));
        auto [c0, c1] = split_tail(w);
        ExtReal Ws = geometric_tail(c0 + c1, w.ratio() * rho, N_ + 1);
        if (!Ws.is_finite()) throw ReductionError("series tail grows without bound: " + render(n));
        lf_add_to(acc, lower_member(term, {Ctx::Mode::Rec, 0, Rat(0), u}), Ws.value());
      }
      return acc;
    }
    // Non-summable nonnegative weights over a nonnegative term: finite only
    // when the eventual terms vanish.
    if (rho != kOne) throw ReductionError("divergent series over a geometric family: " + render(n));
    row(lower_member(term, {Ctx::Mode::Tail, 0, Rat(0), u}), {RowKind::HardSeries});
    if (primal()) row(lower_member(term, {Ctx::Mode::Tail, 0, Rat(0), std::nullopt}), {RowKind::HardSeries});
    return acc;
  }

  LinForm lower_scalar(const NodePtr& n) {
    return std::visit(
        overloaded{
            [&](const node::ScalarTerm& a) { return lf_var(fp_.scalar_index.at(a.name), a.coeff); },
            [&](const node::TailConst& a) { return lf_const(a.value); },
            [&](const node::Add& a) {
              LinForm acc;
              for (const auto& c : a.terms) lf_add_to(acc, lower_scalar(c));
              return acc;
            },
            [&](const node::ScaleNonneg& a) { return lf_scale(lower_scalar(a.child), a.factor); },
            [&](const node::Max& a) {
              std::vector<LinForm> xs;
              for (const auto& c : a.terms) xs.push_back(lower_scalar(c));
              return max_of(xs);
            },
            [&](const node::Pos& a) { return max_of({lower_scalar(a.child), lf_const(0)}); },
            [&](const node::Indicator& a) {
              region_rows(a.region);
              return lf_const(0);
            },
            [&](const node::Series& a) { return lower_series(n, a); },
            [&](const node::Sup& a) {
              LinForm e = lf_var(aux());
              family_rows(a.family, e, -1);
              return e;
            },
            [&](const node::LimSup& a) {
              if (a.family->ratio > kOne) throw ReductionError("limsup over a growing family: " + render(n));
              family_ratios_.insert(a.family->ratio);
              std::optional<std::size_t> c;
              if (!primal()) c = fp_.block_var;
              return lower_member(a.family, {Ctx::Mode::Tail, 0, Rat(0), c});
            },
            [&](const auto&) -> LinForm { throw ReductionError("unsupported scalar node: " + render(n)); },
        },
        n->v);
  }
};

}  // namespace

ProgramSource source_of(const Problem& p) {
  ProgramSource s;
  s.space = Space::Primal;
  s.objective = p.objective;
  s.constraints = p.constraints;
  s.region = Region::whole(false);
  return s;
}

ProgramSource source_of(const Relaxation& r) {
  ProgramSource s;
  s.space = Space::Bidual;
  s.objective = r.objective;
  s.constraints = r.constraints;
  s.region = r.region;
  return s;
}

FinitProgram reduce(const ProgramSource& src) {
  if (src.objective.is_family()) throw ReductionError("objective must be scalar");
  if (src.objective.space() != src.space) throw ReductionError("objective lives in the wrong space");
  return Lowerer(src).run();
}

FinitProgram reduce(const Problem& p) { return reduce(source_of(p)); }
FinitProgram reduce(const Relaxation& r) { return reduce(source_of(r)); }

LinearProgram FinitProgram::to_lp() const {
  LinearProgram lp;
  lp.num_vars = var_names.size();
  lp.cost.assign(lp.num_vars, Rat(0));
  for (const auto& [j, c] : objective.coef) lp.cost[j] = c;
  for (const auto& f : rows) {
    LinearProgram::Row r;
    for (const auto& [j, c] : f.coef) r.coeffs.emplace_back(j, c);
    r.rhs = -f.constant;
    lp.rows.push_back(std::move(r));
  }
  return lp;
}

Point FinitProgram::point_from(const std::vector<Rat>& x) const {
  std::vector<Rat> prefix(x.begin(), x.begin() + static_cast<long>(collapse_index));
  std::map<std::string, Rat> sc;
  for (const auto& [name, j] : scalar_index) sc[name] = x[j];
  if (space == Space::Primal) return Point::primal(prefix, sc);
  return Point::bidual(prefix, x[block_var], sc);
}

SolveResult solve_value(const FinitProgram& fp) {
  SolveResult r;
  r.exact = fp.exact;
  r.caveats = fp.caveats;
  LpSolution s = solve_lp(fp.to_lp());
  switch (s.status) {
    case LpSolution::Status::Infeasible: r.value = ExtReal::plus_inf(); return r;
    case LpSolution::Status::Unbounded: r.value = ExtReal::minus_inf(); return r;
    case LpSolution::Status::Optimal: break;
  }
  r.value = s.value + fp.objective.constant;
  r.block_value = s.x[fp.block_var];
  // A nonzero primal block is a limit of ever longer prefixes: not attained.
  if (fp.space == Space::Bidual || r.block_value.is_zero()) r.argmin = fp.point_from(s.x);
  r.duals = std::move(s.duals);
  return r;
}

ExtReal value_of(const Problem& p) { return solve_value(reduce(p)).value; }
ExtReal value_of(const Relaxation& r) { return solve_value(reduce(r)).value; }

}  // namespace relaxlab
