#include "relaxlab/expr.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace relaxlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const Rat kOne(1);

/// Non-unit geometric ratio shared by the given patterns; at most one is allowed.
Rat merge_ratio(const Rat& a, const Rat& b) {
  if (a == kOne) return b;
  if (b == kOne || a == b) return a;
  throw ConstructionError("family mixes geometric tail ratios " + a.str() + " and " + b.str() +
                          "; a family tail may carry a single geometric ratio");
}

std::pair<Rat, Rat> split_tail(const Pattern& p) {
  if (p.is_constant_tail()) return {p.tail_coeff(), Rat(0)};
  return {Rat(0), p.tail_coeff()};
}

Space combined_space(const std::vector<Expr>& xs) {
  if (xs.empty()) return Space::Primal;
  Space s = xs.front().space();
  for (const auto& e : xs)
    if (e.space() != s) throw ConstructionError("cannot combine primal and bidual expressions");
  return s;
}

std::vector<const Node*> raw(const std::vector<Expr>& xs) {
  std::vector<const Node*> out;
  for (const auto& e : xs) out.push_back(&e.node());
  return out;
}

std::vector<NodePtr> roots(const std::vector<Expr>& xs) {
  std::vector<NodePtr> out;
  for (const auto& e : xs) out.push_back(e.root());
  return out;
}

}  // namespace

namespace detail {

NodePtr make(NodeVariant v, const std::vector<const Node*>& children) {
  auto n = std::make_shared<Node>();
  bool any_family = false;
  for (const Node* c : children) {
    if (c->arity == Arity::Family) {
      any_family = true;
      n->n0 = std::max(n->n0, c->n0);
      n->ratio = merge_ratio(n->ratio, c->ratio);
    }
  }
  std::visit(
      overloaded{
          [&](const node::CoordAbs& a) {
            if (!a.weight.nonnegative()) throw ConstructionError("coord_abs: weight pattern must be nonnegative");
            if (!a.center.is_constant_tail() && !a.weight.is_constant_tail())
              throw ConstructionError("coord_abs: center and weight cannot both have geometric tails");
            n->arity = Arity::Family;
            n->n0 = std::max(a.center.n0(), a.weight.n0());
            n->ratio = merge_ratio(a.center.ratio(), a.weight.ratio());
            n->nonneg = true;
          },
          [&](const node::CoordLin& a) {
            n->arity = Arity::Family;
            n->n0 = a.coeff.n0();
            n->ratio = a.coeff.ratio();
            n->affine = true;
          },
          [&](const node::ScalarTerm& a) {
            if (a.name.empty() || a.name == kTailVar) throw ConstructionError("invalid scalar name '" + a.name + "'");
            n->affine = true;
            n->nonneg = a.coeff.is_zero();
          },
          [&](const node::ScalarFamily& a) {
            if (a.name.empty() || a.name == kTailVar) throw ConstructionError("invalid scalar name '" + a.name + "'");
            n->arity = Arity::Family;
            n->n0 = a.coeff.n0();
            n->ratio = a.coeff.ratio();
            n->affine = true;
          },
          [&](const node::Const& a) {
            n->arity = Arity::Family;
            n->n0 = a.value.n0();
            n->ratio = a.value.ratio();
            n->affine = true;
            n->nonneg = a.value.nonnegative();
          },
          [&](const node::TailConst& a) {
            n->affine = true;
            n->nonneg = a.value.sign() >= 0;
          },
          [&](const node::Add&) {
            if (children.empty()) throw ConstructionError("add: empty term list");
            n->arity = any_family ? Arity::Family : Arity::Scalar;
            n->nonneg = std::all_of(children.begin(), children.end(), [](const Node* c) { return c->nonneg; });
            n->affine = std::all_of(children.begin(), children.end(), [](const Node* c) { return c->affine; });
          },
          [&](const node::ScaleNonneg& a) {
            if (a.factor.sign() < 0)
              throw ConstructionError("scale: negative factor " + a.factor.str() + " breaks convexity");
            n->arity = children[0]->arity;
            n->nonneg = children[0]->nonneg;
            n->affine = children[0]->affine;
          },
          [&](const node::Max&) {
            if (children.empty()) throw ConstructionError("max: empty term list");
            n->arity = any_family ? Arity::Family : Arity::Scalar;
            n->nonneg = std::any_of(children.begin(), children.end(), [](const Node* c) { return c->nonneg; });
            n->affine = children.size() == 1 && children[0]->affine;
          },
          [&](const node::Series& a) {
            const Node* t = children[0];
            if (t->arity != Arity::Family) throw ConstructionError("series: term must be family-indexed");
            if (!a.weights.nonnegative() && !t->affine)
              throw ConstructionError("series: signed weights are only allowed with affine terms");
            if (!a.weights.summable() && !(t->nonneg && a.weights.nonnegative()))
              throw ConstructionError("series: non-summable weights need a certified nonnegative term");
            n->arity = Arity::Scalar;
            n->n0 = 0;
            n->ratio = kOne;
            n->nonneg = a.weights.nonnegative() && t->nonneg;
          },
          [&](const node::Sup&) {
            if (children[0]->arity != Arity::Family) throw ConstructionError("sup: argument must be family-indexed");
            n->arity = Arity::Scalar;
            n->n0 = 0;
            n->ratio = kOne;
            n->nonneg = children[0]->nonneg;
          },
          [&](const node::LimSup&) {
            if (children[0]->arity != Arity::Family)
              throw ConstructionError("limsup: argument must be family-indexed");
            n->arity = Arity::Scalar;
            n->n0 = 0;
            n->ratio = kOne;
            n->nonneg = children[0]->nonneg;
          },
          [&](const node::Pos&) {
            n->arity = children[0]->arity;
            n->nonneg = true;
          },
          [&](const node::Indicator&) { n->nonneg = true; },
      },
      v);
  n->v = std::move(v);
  return n;
}

}  // namespace detail

Expr coord_abs(Pattern center, Pattern weight) {
  return Expr(detail::make(node::CoordAbs{std::move(center), std::move(weight)}, {}), Space::Primal);
}
Expr coord_lin(Pattern coeff) { return Expr(detail::make(node::CoordLin{std::move(coeff)}, {}), Space::Primal); }
Expr scalar(std::string name, Rat coeff) {
  return Expr(detail::make(node::ScalarTerm{std::move(name), std::move(coeff)}, {}), Space::Primal);
}
Expr scalar_family(std::string name, Pattern coeff) {
  return Expr(detail::make(node::ScalarFamily{std::move(name), std::move(coeff)}, {}), Space::Primal);
}
Expr constant(Pattern value) { return Expr(detail::make(node::Const{std::move(value)}, {}), Space::Primal); }
Expr tail_const(Rat value) { return Expr(detail::make(node::TailConst{std::move(value)}, {}), Space::Primal); }

Expr add(std::vector<Expr> terms) {
  Space s = combined_space(terms);
  if (terms.size() == 1) return terms[0];
  return Expr(detail::make(node::Add{roots(terms)}, raw(terms)), s);
}

Expr scale(Rat factor, Expr child) {
  return Expr(detail::make(node::ScaleNonneg{std::move(factor), child.root()}, {&child.node()}), child.space());
}

Expr max(std::vector<Expr> terms) {
  Space s = combined_space(terms);
  if (terms.size() == 1) return terms[0];
  return Expr(detail::make(node::Max{roots(terms)}, raw(terms)), s);
}

Expr series(Pattern weights, Expr term) {
  return Expr(detail::make(node::Series{std::move(weights), term.root()}, {&term.node()}), term.space());
}
Expr sup(Expr family) { return Expr(detail::make(node::Sup{family.root()}, {&family.node()}), family.space()); }
Expr limsup(Expr family) {
  return Expr(detail::make(node::LimSup{family.root()}, {&family.node()}), family.space());
}
Expr pos(Expr child) { return Expr(detail::make(node::Pos{child.root()}, {&child.node()}), child.space()); }
Expr indicator(Region region) { return Expr(detail::make(node::Indicator{std::move(region)}, {}), Space::Primal); }

Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }

Expr coord_at(std::size_t j, Rat coeff) { return series(Pattern::unit(j), coord_lin(Pattern::constant(coeff))); }
Expr coord_abs_at(std::size_t j, Rat center) {
  return series(Pattern::unit(j), coord_abs(Pattern::constant(std::move(center))));
}

namespace {

NodePtr scale_family_node(const Pattern& alpha, const NodePtr& n) {
  auto leaf = [](NodeVariant v) { return detail::make(std::move(v), {}); };
  auto map_children = [&](const std::vector<NodePtr>& xs) {
    std::vector<NodePtr> out;
    for (const auto& c : xs) out.push_back(scale_family_node(alpha, c));
    return out;
  };
  auto raw_children = [](const std::vector<NodePtr>& xs) {
    std::vector<const Node*> out;
    for (const auto& c : xs) out.push_back(c.get());
    return out;
  };
  if (n->arity == Arity::Scalar && !n->affine) {
    if (alpha.n0() == 0 && alpha.is_constant_tail()) {
      Rat c = alpha.tail_coeff();
      return detail::make(node::ScaleNonneg{c, n}, {n.get()});
    }
    throw ConstructionError("scale_family: a k-independent nonlinear subterm cannot carry a varying weight");
  }
  return std::visit(
      overloaded{
          [&](const node::CoordAbs& a) { return leaf(node::CoordAbs{a.center, a.weight * alpha}); },
          [&](const node::CoordLin& a) { return leaf(node::CoordLin{a.coeff * alpha}); },
          [&](const node::ScalarTerm& a) { return leaf(node::ScalarFamily{a.name, alpha.scaled(a.coeff)}); },
          [&](const node::ScalarFamily& a) { return leaf(node::ScalarFamily{a.name, a.coeff * alpha}); },
          [&](const node::Const& a) { return leaf(node::Const{a.value * alpha}); },
          [&](const node::TailConst& a) { return leaf(node::Const{alpha.scaled(a.value)}); },
          [&](const node::Add& a) {
            auto xs = map_children(a.terms);
            return detail::make(node::Add{xs}, raw_children(xs));
          },
          [&](const node::ScaleNonneg& a) {
            auto c = scale_family_node(alpha, a.child);
            return detail::make(node::ScaleNonneg{a.factor, c}, {c.get()});
          },
          [&](const node::Max& a) {
            auto xs = map_children(a.terms);
            return detail::make(node::Max{xs}, raw_children(xs));
          },
          [&](const node::Pos& a) {
            auto c = scale_family_node(alpha, a.child);
            return detail::make(node::Pos{c}, {c.get()});
          },
          [&](const auto&) -> NodePtr {
            throw ConstructionError("scale_family: unsupported node inside a family");
          },
      },
      n->v);
}

}  // namespace

Expr scale_family(const Pattern& alpha, const Expr& family) {
  if (!alpha.nonnegative()) throw ConstructionError("scale_family: weights must be nonnegative");
  if (!family.is_family()) throw ConstructionError("scale_family: argument must be family-indexed");
  return Expr(scale_family_node(alpha, family.root()), family.space());
}

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

namespace {

int sgn(const Rat& r) { return r.sign(); }

Germ abs_germ(const Rat& a, const Rat& b, GermMode mode) {
  if (mode == GermMode::Zero) {
    if (sgn(a) != 0) return sgn(a) > 0 ? Germ{a, b} : Germ{-a, -b};
    return Germ{Rat(0), b.abs()};
  }
  if (sgn(b) != 0) return sgn(b) > 0 ? Germ{a, b} : Germ{-a, -b};
  return Germ{a.abs(), Rat(0)};
}

/// True when germ x eventually dominates germ y.
bool germ_greater(const Germ& x, const Germ& y, GermMode mode) {
  if (!x.alpha.is_finite() || !y.alpha.is_finite()) return x.alpha > y.alpha;
  if (mode == GermMode::Zero) {
    if (x.alpha != y.alpha) return x.alpha > y.alpha;
    return x.beta > y.beta;
  }
  if (x.beta != y.beta) return x.beta > y.beta;
  return x.alpha > y.alpha;
}

Germ germ_add(const Germ& x, const Germ& y) {
  ExtReal a = x.alpha + y.alpha;
  return Germ{a, a.is_finite() ? x.beta + y.beta : Rat(0)};
}

}  // namespace

Germ germ(const Node& n, const Point& p, const Rat& ratio, GermMode mode) {
  if (n.arity == Arity::Scalar) return Germ{eval_node(n, p, std::nullopt), Rat(0)};
  const Rat& t = p.tail();
  return std::visit(
      overloaded{
          [&](const node::CoordAbs& a) {
            auto [c0, c1] = split_tail(a.center);
            auto [w0, w1] = split_tail(a.weight);
            Germ g = abs_germ(t - c0, -c1, mode);
            if (!w1.is_zero()) return Germ{Rat(0), w1 * (t - c0).abs()};
            return Germ{g.alpha.scaled(w0), g.beta * w0};
          },
          [&](const node::CoordLin& a) {
            auto [c0, c1] = split_tail(a.coeff);
            return Germ{t * c0, t * c1};
          },
          [&](const node::ScalarFamily& a) {
            auto [c0, c1] = split_tail(a.coeff);
            Rat y = p.scalar(a.name);
            return Germ{y * c0, y * c1};
          },
          [&](const node::Const& a) {
            auto [c0, c1] = split_tail(a.value);
            return Germ{c0, c1};
          },
          [&](const node::Add& a) {
            Germ g{Rat(0), Rat(0)};
            for (const auto& c : a.terms) g = germ_add(g, germ(*c, p, ratio, mode));
            return g;
          },
          [&](const node::ScaleNonneg& a) {
            Germ g = germ(*a.child, p, ratio, mode);
            return Germ{g.alpha.scaled(a.factor), g.alpha.is_finite() ? g.beta * a.factor : Rat(0)};
          },
          [&](const node::Max& a) {
            Germ best = germ(*a.terms[0], p, ratio, mode);
            for (std::size_t i = 1; i < a.terms.size(); ++i) {
              Germ g = germ(*a.terms[i], p, ratio, mode);
              if (germ_greater(g, best, mode)) best = g;
            }
            return best;
          },
          [&](const node::Pos& a) {
            Germ g = germ(*a.child, p, ratio, mode);
            Germ zero{Rat(0), Rat(0)};
            return germ_greater(g, zero, mode) ? g : zero;
          },
          [&](const auto&) -> Germ { throw std::logic_error("germ: unexpected family node"); },
      },
      n.v);
}

ExtReal germ_limit(const Germ& g, GermMode mode) {
  if (mode == GermMode::Zero || !g.alpha.is_finite()) return g.alpha;
  if (g.beta.sign() > 0) return ExtReal::plus_inf();
  if (g.beta.sign() < 0) return ExtReal::minus_inf();
  return g.alpha;
}

namespace {

GermMode mode_for(const Rat& ratio) { return ratio < kOne ? GermMode::Zero : GermMode::Infinity; }

std::size_t collapse_index(const Node& fam, const Point& p) { return std::max(fam.n0, p.prefix().size()); }

ExtReal limit_of(const Node& fam, const Point& p, std::size_t K) {
  if (fam.ratio == kOne) return eval_node(fam, p, K + 1);
  GermMode m = mode_for(fam.ratio);
  return germ_limit(germ(fam, p, fam.ratio, m), m);
}

ExtReal eval_sup(const Node& fam, const Point& p) {
  std::size_t K = collapse_index(fam, p);
  ExtReal best = ExtReal::minus_inf();
  for (std::size_t k = 1; k <= K + 1; ++k) best = max(best, eval_node(fam, p, k));
  return max(best, limit_of(fam, p, K));
}

ExtReal weighted(const Rat& w, const ExtReal& v) {
  if (w.sign() >= 0) return v.scaled(w);
  return ExtReal(w * v.value());
}

/// sum_{j >= from} sum_i coeff_i * ratio_i^j with divergence read as +-inf.
ExtReal exp_sum(const std::vector<std::pair<Rat, Rat>>& terms, std::size_t from) {
  std::map<Rat, Rat> by_ratio;
  for (const auto& [c, r] : terms) by_ratio[r] += c;
  const Rat* top = nullptr;
  int top_sign = 0;
  for (const auto& [r, c] : by_ratio) {
    if (r >= kOne && !c.is_zero()) {
      top = &r;
      top_sign = c.sign();
    }
  }
  if (top) return top_sign > 0 ? ExtReal::plus_inf() : ExtReal::minus_inf();
  Rat s(0);
  for (const auto& [r, c] : by_ratio) s += geometric_tail(c, r, from).value();
  return s;
}

constexpr std::size_t kRegimeSearchLimit = 100000;

ExtReal eval_series(const node::Series& s, const Node& fam, const Point& p) {
  std::size_t K = std::max({fam.n0, s.weights.n0(), p.prefix().size()});
  ExtReal acc(0);
  for (std::size_t k = 1; k <= K; ++k) acc += weighted(s.weights.value(k), eval_node(fam, p, k));
  GermMode mode = mode_for(fam.ratio);
  Germ g = fam.ratio == kOne ? Germ{eval_node(fam, p, K + 1), Rat(0)} : germ(fam, p, fam.ratio, mode);
  std::size_t k = K + 1;
  if (g.alpha.is_finite()) {
    for (;; ++k) {
      if (k - K > kRegimeSearchLimit) throw EvalError("series: tail regime not reached");
      ExtReal v = eval_node(fam, p, k);
      if (v == ExtReal(g.alpha.value() + g.beta * Rat::pow(fam.ratio, static_cast<long>(k)))) break;
      acc += weighted(s.weights.value(k), v);
    }
  }
  ExtReal tail;
  const Pattern& w = s.weights;
  if (!g.alpha.is_finite()) {
    bool zero_tail = w.is_constant_tail() && w.tail_coeff().is_zero();
    if (g.alpha.is_plus_inf()) tail = ExtReal::plus_inf();
    else tail = zero_tail ? ExtReal(0) : ExtReal::minus_inf();
  } else {
    const Rat& a = g.alpha.value();
    const Rat& rw = w.ratio();
    const Rat& cw = w.tail_coeff();
    tail = exp_sum({{cw * a, rw}, {cw * g.beta, rw * fam.ratio}}, k);
  }
  return acc + tail;
}

}  // namespace

ExtReal eval_node(const Node& n, const Point& p, std::optional<std::size_t> k) {
  if (n.arity == Arity::Family && !k) throw EvalError("family-indexed expression evaluated without an index");
  return std::visit(
      overloaded{
          [&](const node::CoordAbs& a) -> ExtReal {
            return ExtReal((p.coord(*k) - a.center.value(*k)).abs() * a.weight.value(*k));
          },
          [&](const node::CoordLin& a) -> ExtReal { return ExtReal(a.coeff.value(*k) * p.coord(*k)); },
          [&](const node::ScalarTerm& a) -> ExtReal { return ExtReal(a.coeff * p.scalar(a.name)); },
          [&](const node::ScalarFamily& a) -> ExtReal { return ExtReal(a.coeff.value(*k) * p.scalar(a.name)); },
          [&](const node::Const& a) -> ExtReal { return ExtReal(a.value.value(*k)); },
          [&](const node::TailConst& a) -> ExtReal { return ExtReal(a.value); },
          [&](const node::Add& a) {
            ExtReal s(0);
            for (const auto& c : a.terms) s += eval_node(*c, p, k);
            return s;
          },
          [&](const node::ScaleNonneg& a) { return eval_node(*a.child, p, k).scaled(a.factor); },
          [&](const node::Max& a) {
            ExtReal m = ExtReal::minus_inf();
            for (const auto& c : a.terms) m = max(m, eval_node(*c, p, k));
            return m;
          },
          [&](const node::Series& a) { return eval_series(a, *a.term, p); },
          [&](const node::Sup& a) { return eval_sup(*a.family, p); },
          [&](const node::LimSup& a) { return limit_of(*a.family, p, collapse_index(*a.family, p)); },
          [&](const node::Pos& a) { return max(eval_node(*a.child, p, k), ExtReal(0)); },
          [&](const node::Indicator& a) { return a.region.contains(p) ? ExtReal(0) : ExtReal::plus_inf(); },
      },
      n.v);
}

bool finite_everywhere(const Node& n) {
  return std::visit(
      overloaded{
          [&](const node::Add& a) {
            return std::all_of(a.terms.begin(), a.terms.end(), [](const NodePtr& c) { return finite_everywhere(*c); });
          },
          [&](const node::Max& a) {
            return std::all_of(a.terms.begin(), a.terms.end(), [](const NodePtr& c) { return finite_everywhere(*c); });
          },
          [&](const node::ScaleNonneg& a) { return finite_everywhere(*a.child); },
          [&](const node::Pos& a) { return finite_everywhere(*a.child); },
          [&](const node::Series& a) {
            return a.weights.summable() && a.term->ratio <= kOne && finite_everywhere(*a.term);
          },
          [&](const node::Sup& a) { return a.family->ratio <= kOne && finite_everywhere(*a.family); },
          [&](const node::LimSup& a) { return a.family->ratio <= kOne && finite_everywhere(*a.family); },
          [&](const node::Indicator&) { return false; },
          [&](const auto&) { return true; },
      },
      n.v);
}

bool may_be_minus_inf(const Node& n) {
  return std::visit(
      overloaded{
          [&](const node::Add& a) {
            return std::any_of(a.terms.begin(), a.terms.end(), [](const NodePtr& c) { return may_be_minus_inf(*c); });
          },
          [&](const node::Max& a) {
            return std::all_of(a.terms.begin(), a.terms.end(), [](const NodePtr& c) { return may_be_minus_inf(*c); });
          },
          [&](const node::ScaleNonneg& a) { return may_be_minus_inf(*a.child); },
          [&](const node::Series& a) {
            return (a.term->ratio > kOne && !a.term->nonneg) || may_be_minus_inf(*a.term);
          },
          [&](const node::Sup& a) { return may_be_minus_inf(*a.family); },
          [&](const node::LimSup& a) { return a.family->ratio > kOne || may_be_minus_inf(*a.family); },
          [&](const auto&) { return false; },
      },
      n.v);
}

}  // namespace detail

ExtReal eval(const Expr& e, const Point& p, std::optional<std::size_t> k) {
  if (e.space() != p.space())
    throw EvalError(std::string("space mismatch: ") + to_string(e.space()) + " expression at a " +
                    to_string(p.space()) + " point");
  if (k && *k == 0) throw EvalError("family index starts at 1");
  if (!e.is_family()) k.reset();
  return detail::eval_node(e.node(), p, k);
}

namespace {

void collect_names(const Node& n, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const node::ScalarTerm& a) { out.insert(a.name); },
                 [&](const node::ScalarFamily& a) { out.insert(a.name); },
                 [&](const node::Add& a) { for (const auto& c : a.terms) collect_names(*c, out); },
                 [&](const node::Max& a) { for (const auto& c : a.terms) collect_names(*c, out); },
                 [&](const node::ScaleNonneg& a) { collect_names(*a.child, out); },
                 [&](const node::Pos& a) { collect_names(*a.child, out); },
                 [&](const node::Series& a) { collect_names(*a.term, out); },
                 [&](const node::Sup& a) { collect_names(*a.family, out); },
                 [&](const node::LimSup& a) { collect_names(*a.family, out); },
                 [&](const node::Indicator& a) {
                   for (const auto& q : a.region.ineqs)
                     for (const auto& [name, _] : q.coeffs)
                       if (name != kTailVar) out.insert(name);
                 },
                 [&](const auto&) {},
             },
             n.v);
}

std::string convexity_rule(const Node& n) {
  return std::visit(overloaded{
                        [](const node::Add&) { return std::string("sum of convex terms"); },
                        [](const node::Max&) { return std::string("pointwise max of convex terms"); },
                        [](const node::ScaleNonneg&) { return std::string("nonnegative multiple"); },
                        [](const node::Series&) { return std::string("upper sum with nonnegative weights"); },
                        [](const node::Sup&) { return std::string("supremum of a convex family"); },
                        [](const node::LimSup&) { return std::string("limsup of an eventually stable family"); },
                        [](const node::Pos&) { return std::string("positive part (max with 0)"); },
                        [](const node::Indicator&) { return std::string("indicator of a polyhedral region"); },
                        [](const node::CoordAbs&) { return std::string("weighted absolute deviation"); },
                        [](const auto&) { return std::string("affine atom"); },
                    },
                    n.v);
}

}  // namespace

std::set<std::string> scalar_names(const Expr& e) {
  std::set<std::string> out;
  collect_names(e.node(), out);
  return out;
}

StructureReport validate(const Expr& e) {
  StructureReport r;
  r.convex = true;
  r.convexity_rule = convexity_rule(e.node());
  r.finite_everywhere = detail::finite_everywhere(e.node());
  r.continuous_everywhere = r.finite_everywhere;
  r.proper = !detail::may_be_minus_inf(e.node());
  r.nonnegative = e.node().nonneg;
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string pattern_str(const Pattern& p) {
  std::ostringstream os;
  std::string tail;
  if (p.is_constant_tail()) {
    tail = p.tail_coeff().str();
  } else {
    std::string r = "(" + p.ratio().str() + ")^k";
    if (p.ratio() == Rat(1, 2)) r = "2^-k";
    if (p.ratio() == Rat(2)) r = "2^k";
    tail = p.tail_coeff() == Rat(1) ? r : p.tail_coeff().str() + "*" + r;
  }
  if (p.n0() == 0) return tail;
  os << "[";
  for (std::size_t i = 0; i < p.n0(); ++i) os << (i ? "," : "") << p.prefix()[i];
  os << ";" << tail << "]";
  return os.str();
}

std::string render(const Node& n) {
  auto join = [](const std::vector<NodePtr>& xs, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + render(*xs[i]);
    return s;
  };
  return std::visit(
      overloaded{
          [&](const node::CoordAbs& a) {
            std::string w = (a.weight.n0() == 0 && a.weight.is_constant_tail() && a.weight.tail_coeff() == Rat(1))
                                ? ""
                                : pattern_str(a.weight) + "*";
            return w + "|x_k - " + pattern_str(a.center) + "|";
          },
          [&](const node::CoordLin& a) { return pattern_str(a.coeff) + "*x_k"; },
          [&](const node::ScalarTerm& a) {
            if (a.coeff == Rat(1)) return a.name;
            if (a.coeff == Rat(-1)) return "-" + a.name;
            return a.coeff.str() + "*" + a.name;
          },
          [&](const node::ScalarFamily& a) { return pattern_str(a.coeff) + "*" + a.name; },
          [&](const node::Const& a) { return pattern_str(a.value); },
          [&](const node::TailConst& a) { return a.value.str(); },
          [&](const node::Add& a) {
            std::string s;
            for (std::size_t i = 0; i < a.terms.size(); ++i) {
              std::string t = render(*a.terms[i]);
              if (i == 0) s = t;
              else if (t.rfind('-', 0) == 0) s += " - " + t.substr(1);
              else s += " + " + t;
            }
            return "(" + s + ")";
          },
          [&](const node::ScaleNonneg& a) { return a.factor.str() + "*" + render(*a.child); },
          [&](const node::Max& a) { return "max{" + join(a.terms, ", ") + "}"; },
          [&](const node::Series& a) { return "sum_k " + pattern_str(a.weights) + "*" + render(*a.term); },
          [&](const node::Sup& a) { return "sup_k " + render(*a.family); },
          [&](const node::LimSup& a) { return "limsup_k " + render(*a.family); },
          [&](const node::Pos& a) { return "(" + render(*a.child) + ")^+"; },
          [&](const node::Indicator& a) { return "I{" + a.region.describe() + "}"; },
      },
      n.v);
}

}  // namespace

std::string to_string(const Expr& e) { return render(e.node()); }

}  // namespace relaxlab
