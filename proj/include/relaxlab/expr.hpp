#pragma once

#include "relaxlab/ext_real.hpp"
#include "relaxlab/pattern.hpp"
#include "relaxlab/point.hpp"
#include "relaxlab/region.hpp"

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace relaxlab {

/// Rejected construction: the tree would not be convex, or it leaves the
/// computable fragment (for example mixed geometric ratios in one family).
struct ConstructionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EvalError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Family-indexed nodes depend on a free index k; scalar nodes do not.
enum class Arity { Scalar, Family };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

namespace node {
/// w_k * |x_k - c_k|. At most one of center/weight may have a geometric tail.
struct CoordAbs { Pattern center; Pattern weight; };
/// c_k * x_k
struct CoordLin { Pattern coeff; };
/// coeff * s for a named scalar s.
struct ScalarTerm { std::string name; Rat coeff; };
/// c_k * s (k-indexed coefficient on a scalar variable).
struct ScalarFamily { std::string name; Pattern coeff; };
/// d_k
struct Const { Pattern value; };
struct TailConst { Rat value; };
struct Add { std::vector<NodePtr> terms; };
struct ScaleNonneg { Rat factor; NodePtr child; };
struct Max { std::vector<NodePtr> terms; };
/// Upper sum: limsup_m sum_{k<=m} w_k * term_k.
struct Series { Pattern weights; NodePtr term; };
struct Sup { NodePtr family; };
struct LimSup { NodePtr family; };
struct Pos { NodePtr child; };
struct Indicator { Region region; };
}  // namespace node

using NodeVariant = std::variant<node::CoordAbs, node::CoordLin, node::ScalarTerm, node::ScalarFamily, node::Const,
                                 node::TailConst, node::Add, node::ScaleNonneg, node::Max, node::Series, node::Sup,
                                 node::LimSup, node::Pos, node::Indicator>;

struct Node {
  NodeVariant v;
  Arity arity = Arity::Scalar;
  /// Largest stabilization index over patterns owned by this family node.
  std::size_t n0 = 0;
  /// The single non-unit geometric ratio of the family tail, or 1.
  Rat ratio{1};
  /// Certified nonnegative by construction.
  bool nonneg = false;
  /// Affine in the variables (no |.|, max, sup, series or indicator).
  bool affine = false;
};

/// Convex expression over (coordinates, tail, scalars). Immutable; copying
/// shares the tree.
class Expr {
public:
  Expr() = default;
  Expr(NodePtr root, Space space) : root_(std::move(root)), space_(space) {}

  const NodePtr& root() const { return root_; }
  const Node& node() const { return *root_; }
  Space space() const { return space_; }
  Arity arity() const { return root_->arity; }
  bool is_family() const { return arity() == Arity::Family; }
  Expr with_space(Space s) const { return Expr(root_, s); }

  template <class T>
  const T* as() const { return std::get_if<T>(&root_->v); }

private:
  NodePtr root_;
  Space space_ = Space::Primal;
};

// Builders. All results live in the primal space unless stated otherwise;
// combining expressions from different spaces is a ConstructionError.
Expr coord_abs(Pattern center, Pattern weight = Pattern::constant(Rat(1)));
Expr coord_lin(Pattern coeff);
Expr scalar(std::string name, Rat coeff = Rat(1));
Expr scalar_family(std::string name, Pattern coeff);
Expr constant(Pattern value);
Expr tail_const(Rat value);
Expr add(std::vector<Expr> terms);
Expr scale(Rat factor, Expr child);
Expr max(std::vector<Expr> terms);
Expr series(Pattern weights, Expr term);
Expr sup(Expr family);
Expr limsup(Expr family);
Expr pos(Expr child);
Expr indicator(Region region);
/// alpha_k * f_k for a nonnegative pattern alpha, pushed down to the leaves.
Expr scale_family(const Pattern& alpha, const Expr& family);

/// The scalar x_j, built as sum_k e_j(k) x_k.
Expr coord_at(std::size_t j, Rat coeff = Rat(1));
/// |x_j - c|.
Expr coord_abs_at(std::size_t j, Rat center);

Expr operator+(const Expr& a, const Expr& b);

/// Exact value. Family expressions need an index k >= 1.
ExtReal eval(const Expr& e, const Point& p, std::optional<std::size_t> k = std::nullopt);

/// Scalar names referenced anywhere in the tree.
std::set<std::string> scalar_names(const Expr& e);

/// Structural certificate. convexity always holds; the witness names the rule.
struct StructureReport {
  bool convex = true;
  std::string convexity_rule;
  bool finite_everywhere = false;
  bool continuous_everywhere = false;
  /// No subtree can evaluate to -inf.
  bool proper = true;
  bool nonnegative = false;
};

StructureReport validate(const Expr& e);

/// Human-readable rendering (stable; used in reports).
std::string to_string(const Expr& e);

// Internals shared with the conjugacy and solve modules.
namespace detail {
NodePtr make(NodeVariant v, const std::vector<const Node*>& children);
/// For k greater than both the point prefix and the family stabilization
/// index, member k equals F(x_tail, s_k) with s_k = ratio^k. The germ is the
/// affine function alpha + beta * s that F coincides with for s near 0
/// (Zero) or for s large (Infinity).
enum class GermMode { Zero, Infinity };
struct Germ {
  ExtReal alpha;
  Rat beta;
};
Germ germ(const Node& n, const Point& p, const Rat& ratio, GermMode mode);
ExtReal germ_limit(const Germ& g, GermMode mode);
ExtReal eval_node(const Node& n, const Point& p, std::optional<std::size_t> k);
bool finite_everywhere(const Node& n);
bool may_be_minus_inf(const Node& n);
}  // namespace detail

}  // namespace relaxlab
