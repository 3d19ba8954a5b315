#include "relaxlab/conjugacy.hpp"

#include <algorithm>

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

NodePtr leaf(NodeVariant v) { return detail::make(std::move(v), {}); }

std::vector<const Node*> raw(const std::vector<NodePtr>& xs) {
  std::vector<const Node*> out;
  for (const auto& c : xs) out.push_back(c.get());
  return out;
}

Rat finite_limit(const Pattern& p) { return p.limit().value(); }

/// Member formula at primal coordinates 0 and patterns at their limits.
NodePtr substitute_limit(const NodePtr& n) {
  if (n->arity == Arity::Scalar) return n;
  return std::visit(
      overloaded{
          [&](const node::CoordAbs& a) {
            return leaf(node::TailConst{finite_limit(a.center).abs() * finite_limit(a.weight)});
          },
          [&](const node::CoordLin&) { return leaf(node::TailConst{Rat(0)}); },
          [&](const node::ScalarFamily& a) { return leaf(node::ScalarTerm{a.name, finite_limit(a.coeff)}); },
          [&](const node::Const& a) { return leaf(node::TailConst{finite_limit(a.value)}); },
          [&](const node::Add& a) {
            std::vector<NodePtr> xs;
            for (const auto& c : a.terms) xs.push_back(substitute_limit(c));
            return detail::make(node::Add{xs}, raw(xs));
          },
          [&](const node::Max& a) {
            std::vector<NodePtr> xs;
            for (const auto& c : a.terms) xs.push_back(substitute_limit(c));
            return detail::make(node::Max{xs}, raw(xs));
          },
          [&](const node::ScaleNonneg& a) {
            auto c = substitute_limit(a.child);
            return detail::make(node::ScaleNonneg{a.factor, c}, {c.get()});
          },
          [&](const node::Pos& a) {
            auto c = substitute_limit(a.child);
            return detail::make(node::Pos{c}, {c.get()});
          },
          [&](const auto&) -> NodePtr { throw std::logic_error("substitute_limit: unexpected node"); },
      },
      n->v);
}

/// Same family with every coordinate replaced by 0 (the primal tail).
NodePtr drop_coordinates(const NodePtr& n) {
  if (n->arity == Arity::Scalar) return n;
  return std::visit(
      overloaded{
          [&](const node::CoordAbs& a) { return leaf(node::Const{a.center.abs() * a.weight}); },
          [&](const node::CoordLin&) { return leaf(node::Const{Pattern::constant(0)}); },
          [&](const node::Add& a) {
            std::vector<NodePtr> xs;
            for (const auto& c : a.terms) xs.push_back(drop_coordinates(c));
            return detail::make(node::Add{xs}, raw(xs));
          },
          [&](const node::Max& a) {
            std::vector<NodePtr> xs;
            for (const auto& c : a.terms) xs.push_back(drop_coordinates(c));
            return detail::make(node::Max{xs}, raw(xs));
          },
          [&](const node::ScaleNonneg& a) {
            auto c = drop_coordinates(a.child);
            return detail::make(node::ScaleNonneg{a.factor, c}, {c.get()});
          },
          [&](const node::Pos& a) {
            auto c = drop_coordinates(a.child);
            return detail::make(node::Pos{c}, {c.get()});
          },
          [&](const auto&) { return n; },
      },
      n->v);
}

NodePtr f_infinity_node(const NodePtr& fam) {
  if (fam->ratio <= kOne) return substitute_limit(fam);
  auto body = drop_coordinates(fam);
  return detail::make(node::LimSup{body}, {body.get()});
}

// ---------------------------------------------------------------------------
// Biconjugate rewrite

struct Rewriter {
  std::vector<Rule> rules;

  void note(Rule r) {
    if (std::find(rules.begin(), rules.end(), r) == rules.end()) rules.push_back(r);
  }

  std::size_t count_infinite(const std::vector<NodePtr>& xs) {
    return static_cast<std::size_t>(
        std::count_if(xs.begin(), xs.end(), [](const NodePtr& c) { return !detail::finite_everywhere(*c); }));
  }

  NodePtr run(const NodePtr& n) {
    return std::visit(
        overloaded{
            [&](const node::Add& a) {
              if (count_infinite(a.terms) > 1)
                throw RefusalError("sum rule needs all but one term continuous", render(n));
              note(Rule::SumRule);
              std::vector<NodePtr> xs;
              for (const auto& c : a.terms) xs.push_back(run(c));
              return detail::make(node::Add{xs}, raw(xs));
            },
            [&](const node::Max& a) {
              if (count_infinite(a.terms) > 1)
                throw RefusalError("max rule needs all but one term continuous", render(n));
              note(Rule::MaxRule);
              std::vector<NodePtr> xs;
              for (const auto& c : a.terms) xs.push_back(run(c));
              return detail::make(node::Max{xs}, raw(xs));
            },
            [&](const node::Pos& a) {
              note(Rule::MaxRule);
              auto c = run(a.child);
              return detail::make(node::Pos{c}, {c.get()});
            },
            [&](const node::ScaleNonneg& a) {
              auto c = run(a.child);
              return detail::make(node::ScaleNonneg{a.factor, c}, {c.get()});
            },
            [&](const node::Series& a) {
              if (!a.weights.summable() || a.term->ratio > kOne || !detail::finite_everywhere(*a.term))
                throw RefusalError("upper-sum rule needs summable weights and bounded finite terms", render(n));
              note(Rule::UpperSumRule);
              auto c = run(a.term);
              return detail::make(node::Series{a.weights, c}, {c.get()});
            },
            [&](const node::Sup& a) {
              if (!detail::finite_everywhere(*n))
                throw RefusalError("supremum formula needs a finite (hence continuous) supremum", render(n));
              note(Rule::SupFormula);
              auto members = run(a.family);
              auto s = detail::make(node::Sup{members}, {members.get()});
              auto tail = run(f_infinity_node(a.family));
              return detail::make(node::Max{{s, tail}}, {s.get(), tail.get()});
            },
            [&](const node::LimSup& a) {
              if (a.family->ratio > kOne || !detail::finite_everywhere(*a.family))
                throw RefusalError("limsup of an unbounded family is not certifiable", render(n));
              note(Rule::MoreauExtend);
              return run(substitute_limit(a.family));
            },
            [&](const node::Indicator& a) {
              note(Rule::IndicatorClosure);
              return leaf(node::Indicator{a.region.closure()});
            },
            [&](const auto&) {
              note(Rule::MoreauExtend);
              return n;
            },
        },
        n->v);
  }
};

// ---------------------------------------------------------------------------
// Max-affine expansion of a family at primal coordinates 0: member k equals
// max_i (A_i + B_i s_k) with A_i, B_i affine in the scalars.

struct Piece {
  LinearIneq a, b;
};

constexpr std::size_t kPieceLimit = 4096;

LinearIneq form_const(const Rat& c) { return LinearIneq{{}, c}; }
LinearIneq form_var(const std::string& name, const Rat& c) {
  LinearIneq f;
  if (!c.is_zero()) f.coeffs[name] = c;
  return f;
}
LinearIneq form_add(const LinearIneq& x, const LinearIneq& y) {
  LinearIneq r = x;
  r.constant += y.constant;
  for (const auto& [name, c] : y.coeffs) {
    Rat v = r.coeffs[name] + c;
    if (v.is_zero()) r.coeffs.erase(name);
    else r.coeffs[name] = v;
  }
  return r;
}
LinearIneq form_scale(const LinearIneq& x, const Rat& s) {
  if (s.is_zero()) return form_const(Rat(0));
  LinearIneq r = x;
  r.constant *= s;
  for (auto& [name, c] : r.coeffs) c *= s;
  return r;
}

std::vector<Piece> pieces(const NodePtr& n) {
  auto pair_split = [](const Pattern& p) -> std::pair<Rat, Rat> {
    if (p.is_constant_tail()) return {p.tail_coeff(), Rat(0)};
    return {Rat(0), p.tail_coeff()};
  };
  auto dedupe = [&](std::vector<Piece> ps) {
    std::vector<Piece> out;
    for (auto& p : ps)
      if (std::none_of(out.begin(), out.end(), [&](const Piece& q) { return q.a == p.a && q.b == p.b; }))
        out.push_back(std::move(p));
    if (out.size() > kPieceLimit) throw RefusalError("domain expansion too large", render(n));
    return out;
  };
  return std::visit(
      overloaded{
          [&](const node::CoordAbs& a) -> std::vector<Piece> {
            auto [c0, c1] = pair_split(a.center);
            auto [w0, w1] = pair_split(a.weight);
            if (c1.is_zero()) return {{form_const(c0.abs() * w0), form_const(c0.abs() * w1)}};
            return {{form_const(c0 * w0), form_const(c1 * w0)}, {form_const(-c0 * w0), form_const(-c1 * w0)}};
          },
          [&](const node::CoordLin&) -> std::vector<Piece> { return {{form_const(0), form_const(0)}}; },
          [&](const node::ScalarTerm& a) -> std::vector<Piece> { return {{form_var(a.name, a.coeff), form_const(0)}}; },
          [&](const node::ScalarFamily& a) -> std::vector<Piece> {
            auto [c0, c1] = pair_split(a.coeff);
            return {{form_var(a.name, c0), form_var(a.name, c1)}};
          },
          [&](const node::Const& a) -> std::vector<Piece> {
            auto [c0, c1] = pair_split(a.value);
            return {{form_const(c0), form_const(c1)}};
          },
          [&](const node::TailConst& a) -> std::vector<Piece> { return {{form_const(a.value), form_const(0)}}; },
          [&](const node::Add& a) {
            std::vector<Piece> acc{{form_const(0), form_const(0)}};
            for (const auto& c : a.terms) {
              std::vector<Piece> next;
              for (const auto& p : acc)
                for (const auto& q : pieces(c)) next.push_back({form_add(p.a, q.a), form_add(p.b, q.b)});
              acc = dedupe(std::move(next));
            }
            return acc;
          },
          [&](const node::Max& a) {
            std::vector<Piece> acc;
            for (const auto& c : a.terms)
              for (auto& p : pieces(c)) acc.push_back(std::move(p));
            return dedupe(std::move(acc));
          },
          [&](const node::Pos& a) {
            auto acc = pieces(a.child);
            acc.push_back({form_const(0), form_const(0)});
            return dedupe(std::move(acc));
          },
          [&](const node::ScaleNonneg& a) {
            auto acc = pieces(a.child);
            for (auto& p : acc) p = {form_scale(p.a, a.factor), form_scale(p.b, a.factor)};
            return dedupe(std::move(acc));
          },
          [&](const auto&) -> std::vector<Piece> {
            throw RefusalError("domain of this subterm is not representable", render(n));
          },
      },
      n->v);
}

void add_ineq(Region& r, const LinearIneq& q) {
  if (q.coeffs.empty()) {
    if (q.constant.sign() <= 0) return;
    // Constant positive left-hand side: the empty set.
    LinearIneq never{{}, Rat(1)};
    if (std::find(r.ineqs.begin(), r.ineqs.end(), never) == r.ineqs.end()) r.ineqs.push_back(never);
    return;
  }
  if (std::find(r.ineqs.begin(), r.ineqs.end(), q) == r.ineqs.end()) r.ineqs.push_back(q);
}

Region domain(const NodePtr& n) {
  if (detail::finite_everywhere(*n)) return Region::whole(false);
  return std::visit(
      overloaded{
          [&](const node::Indicator& a) {
            Region r = a.region;
            r.tail_free = false;
            return r;
          },
          [&](const node::Add& a) {
            Region r = Region::whole(false);
            for (const auto& c : a.terms) r = r.intersect(domain(c));
            return r;
          },
          [&](const node::Max& a) {
            Region r = Region::whole(false);
            for (const auto& c : a.terms) r = r.intersect(domain(c));
            return r;
          },
          [&](const node::Pos& a) { return domain(a.child); },
          [&](const node::ScaleNonneg& a) { return domain(a.child); },
          [&](const node::Series& a) {
            const Node& t = *a.term;
            if (!detail::finite_everywhere(t))
              throw RefusalError("series over a family with infinite members", render(n));
            bool ok = t.ratio == kOne || (t.ratio < kOne && a.weights.ratio() <= kOne);
            if (a.weights.summable() || !ok)
              throw RefusalError("domain of this upper sum is not representable", render(n));
            // Eventual terms must vanish: every affine piece at s = 0 is <= 0.
            Region r = Region::whole(false);
            for (const auto& p : pieces(a.term)) add_ineq(r, p.a);
            return r;
          },
          [&](const node::Sup& a) {
            Region r = Region::whole(false);
            for (const auto& p : pieces(a.family)) add_ineq(r, p.b);
            return r;
          },
          [&](const node::LimSup& a) {
            Region r = Region::whole(false);
            for (const auto& p : pieces(a.family)) add_ineq(r, p.b);
            return r;
          },
          [&](const auto&) -> Region { throw RefusalError("domain of this subterm is not representable", render(n)); },
      },
      n->v);
}

}  // namespace

const char* to_string(Rule r) {
  switch (r) {
    case Rule::MoreauExtend: return "MoreauExtend";
    case Rule::SumRule: return "SumRule";
    case Rule::MaxRule: return "MaxRule";
    case Rule::UpperSumRule: return "UpperSumRule";
    case Rule::SupFormula: return "SupFormula";
    case Rule::IndicatorClosure: return "IndicatorClosure";
  }
  return "?";
}

std::optional<Expr> f_infinity(const Expr& fam) {
  if (!fam.is_family()) return std::nullopt;
  return Expr(f_infinity_node(fam.root()), fam.space());
}

Expr upper_sum(const Expr& fam, const Pattern& w) { return series(w, fam); }

BiconjugateResult biconjugate(const Expr& e) {
  if (e.space() != Space::Primal) throw RefusalError("biconjugate expects a primal expression", to_string(e));
  Rewriter rw;
  NodePtr out = rw.run(e.root());
  return BiconjugateResult{Expr(out, Space::Bidual), rw.rules, validate(e)};
}

BiconjugateResult biconjugate_sup(const Expr& fam) {
  if (!fam.is_family()) return biconjugate(fam);
  Expr s = sup(fam);
  BiconjugateResult r = biconjugate(s);
  Region dom = dom_closure(s);
  if (!dom.is_whole()) {
    r.expr = add({r.expr, indicator(dom).with_space(Space::Bidual)});
    r.rules.push_back(Rule::IndicatorClosure);
  }
  return r;
}

Expr positive_part(const Expr& e) { return pos(e); }

Region primal_domain(const Expr& e) { return domain(e.root()); }

Region dom_closure(const Expr& e) { return primal_domain(e).closure(); }

}  // namespace relaxlab
