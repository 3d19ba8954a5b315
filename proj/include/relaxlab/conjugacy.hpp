#pragma once

#include "relaxlab/expr.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace relaxlab {

enum class Rule { MoreauExtend, SumRule, MaxRule, UpperSumRule, SupFormula, IndicatorClosure };

const char* to_string(Rule r);

/// A biconjugation precondition could not be certified from the tree.
/// `subtree` is the rendering of the offending node.
struct RefusalError : std::runtime_error {
  RefusalError(const std::string& reason, std::string where)
      : std::runtime_error(reason + " [at " + where + "]"), subtree(std::move(where)) {}
  std::string subtree;
};

struct BiconjugateResult {
  Expr expr;  // lives on bidual points
  std::vector<Rule> rules;
  StructureReport witness;
};

/// limsup_k f_k on primal points. A scalar argument stands for a finite
/// family, for which the limsup is the constant -inf; that case returns
/// nullopt.
std::optional<Expr> f_infinity(const Expr& fam);

/// Upper sum sum_k w_k fam_k (divergence reads as +inf).
Expr upper_sum(const Expr& fam, const Pattern& w);

/// Structural biconjugate of a scalar or family expression.
BiconjugateResult biconjugate(const Expr& e);

/// (sup_k f_k)** = max{sup_k f_k**, f_inf**} + I(cl dom).
BiconjugateResult biconjugate_sup(const Expr& fam);

/// max{e, 0}.
Expr positive_part(const Expr& e);

/// Domain of a primal expression as a region (tail pinned to 0).
Region primal_domain(const Expr& e);

/// Weak-star closure of the domain: the primal domain with the tail freed.
Region dom_closure(const Expr& e);

}  // namespace relaxlab
