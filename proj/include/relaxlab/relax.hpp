#pragma once

#include "relaxlab/conjugacy.hpp"
#include "relaxlab/problem.hpp"
#include "relaxlab/solve.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace relaxlab {

Relaxation build_relaxation(const Problem& p, Variant v);

/// Sample budget for the concave-like refuter.
struct SampleBudget {
  /// Family members examined (k = 1..max_members); ignored for explicit lists.
  std::size_t max_members = 6;
  /// Indices (0-based) allowed in sampled pairs; empty means all members.
  std::vector<std::size_t> pair_pool;
  std::vector<Rat> weights{Rat(1, 4), Rat(1, 2), Rat(3, 4)};
  /// Coordinates x_1..x_span are perturbed one at a time by these values.
  std::size_t coord_span = 3;
  std::vector<Rat> coord_values{Rat(-2), Rat(-1), Rat(1), Rat(2)};
  std::vector<Rat> scalar_values{Rat(-2), Rat(-1), Rat(0), Rat(1), Rat(2)};
};

struct ConcaveWitness {
  std::size_t i = 0, j = 0;  // members combined (0-based)
  Rat weight;                // on member i; member j gets 1 - weight
  /// For every candidate member, a point where it lies below the combination.
  std::vector<std::pair<std::size_t, Point>> violations;
};

struct ConcaveVerdict {
  bool disproved = false;
  std::optional<ConcaveWitness> witness;
  std::string note;
};

ConcaveVerdict is_concave_like(const Expr& family, const SampleBudget& budget = {});
ConcaveVerdict is_concave_like(const std::vector<Expr>& members, const SampleBudget& budget = {});

Relaxation build_concave_relaxation(const Problem& p, const SampleBudget& budget = {});

struct ChainReport {
  ExtReal vP;
  /// Value of the lower relaxation (PInf unless substituted or refused).
  ExtReal vLower;
  Variant lower_variant = Variant::PInf;
  bool certified_equal = false;
  /// Certified range for v(D) and v(D').
  ExtReal dual_lo, dual_hi;
  std::optional<SlaterCertificate> slater;
  bool continuity = false;
  std::vector<std::string> caveats;
};

/// With `use_pstar2` the plain biconjugate relaxation serves as lower bound.
ChainReport duality_chain_report(const Problem& p, bool use_pstar2 = false);

}  // namespace relaxlab
