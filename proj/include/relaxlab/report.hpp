#pragma once

#include "relaxlab/io.hpp"
#include "relaxlab/relax.hpp"

#include <optional>
#include <string>
#include <vector>

namespace relaxlab {

/// A printed inequality failed re-verification.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

struct VariantRow {
  std::string name;  // "P" or a variant tag
  std::optional<ExtReal> value;
  std::string argmin;
  std::string region;
  std::optional<std::string> refusal;
  std::vector<std::string> caveats;
};

struct GapReport {
  std::string problem;
  std::vector<VariantRow> rows;  // rows[0] is the primal problem
  SlaterResult slater;
  std::optional<ChainReport> chain;
  std::optional<std::string> chain_error;
  std::vector<std::string> caveats;

  const VariantRow* row(const std::string& name) const;
};

std::vector<Variant> all_variants();

GapReport run_report(const Problem& p, const std::vector<Variant>& variants = all_variants());

Json report_to_json(const GapReport& r);
std::string report_to_text(const GapReport& r);

std::string point_summary(const Point& p);

}  // namespace relaxlab
