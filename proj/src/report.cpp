#include "relaxlab/report.hpp"

#include <algorithm>
#include <sstream>

namespace relaxlab {

namespace {

VariantRow solved_row(std::string name, const FinitProgram& fp, const Region& region) {
  VariantRow row;
  row.name = std::move(name);
  SolveResult r = solve_value(fp);
  row.value = r.value;
  row.argmin = r.argmin ? point_summary(*r.argmin) : (r.value.is_finite() ? "approached, not attained" : "-");
  row.region = region.is_whole() ? "whole space" : region.describe();
  row.caveats = r.caveats;
  return row;
}

void add_unique(std::vector<std::string>& xs, const std::string& s) {
  if (std::find(xs.begin(), xs.end(), s) == xs.end()) xs.push_back(s);
}

/// The orderings that hold for every input: each relaxation is a lower
/// bound, and the variants nest by added constraints.
void verify(const GapReport& r) {
  auto value = [&](const std::string& n) -> std::optional<ExtReal> {
    const VariantRow* row = r.row(n);
    return row ? row->value : std::nullopt;
  };
  auto need = [&](const std::string& lo, const std::string& hi) {
    auto a = value(lo), b = value(hi);
    if (a && b && *b < *a)
      throw InternalError("report check failed: v(" + lo + ") = " + a->str() + " > v(" + hi + ") = " + b->str());
  };
  for (const auto& row : r.rows)
    if (row.name != "P") need(row.name, "P");
  need("PStar2", "P3");
  need("P3", "PInf");
  need("PStar2", "PInf");
  need("PInf", "P1");
  if (r.chain && r.chain->vP < r.chain->vLower) throw InternalError("report check failed: chain bounds out of order");
}

}  // namespace

const VariantRow* GapReport::row(const std::string& name) const {
  for (const auto& r : rows)
    if (r.name == name) return &r;
  return nullptr;
}

std::vector<Variant> all_variants() {
  return {Variant::PStar2, Variant::P1, Variant::P2, Variant::P3, Variant::PInf, Variant::PConcave};
}

std::string point_summary(const Point& p) {
  std::ostringstream os;
  os << "x = (";
  for (std::size_t i = 0; i < p.prefix().size(); ++i) os << (i ? ", " : "") << p.prefix()[i].str();
  if (p.space() == Space::Bidual)
    os << (p.prefix().empty() ? "" : ", ") << p.tail().str() << ", ...)";
  else
    os << (p.prefix().empty() ? "" : ", ") << "0, ...)";
  for (const auto& [name, v] : p.scalars()) os << ", " << name << " = " << v.str();
  return os.str();
}

GapReport run_report(const Problem& p, const std::vector<Variant>& variants) {
  GapReport rep;
  rep.problem = p.name;
  rep.rows.push_back(solved_row("P", reduce(p), Region::whole(false)));
  rep.rows.back().region = "finitely supported points";
  for (Variant v : variants) {
    try {
      Relaxation r = build_relaxation(p, v);
      VariantRow row = solved_row(to_string(v), reduce(r), r.region);
      for (const auto& c : r.caveats) row.caveats.push_back(c);
      rep.rows.push_back(std::move(row));
    } catch (const RefusalError& e) {
      rep.rows.push_back(VariantRow{to_string(v), std::nullopt, "-", "-", e.what(), {}});
    } catch (const ReductionError& e) {
      rep.rows.push_back(VariantRow{to_string(v), std::nullopt, "-", "-", e.what(), {}});
    }
  }
  rep.slater = check_slater(p);
  try {
    rep.chain = duality_chain_report(p);
  } catch (const RefusalError& e) {
    rep.chain_error = e.what();
  }
  for (const auto& row : rep.rows)
    for (const auto& c : row.caveats) add_unique(rep.caveats, row.name + ": " + c);
  if (rep.chain)
    for (const auto& c : rep.chain->caveats) add_unique(rep.caveats, "chain: " + c);
  verify(rep);
  return rep;
}

Json report_to_json(const GapReport& r) {
  Json j = Json::object();
  j["problem"] = r.problem;
  Json values = Json::object(), refusals = Json::object(), argmins = Json::object(), regions = Json::object();
  for (const auto& row : r.rows) {
    if (row.value) {
      values[row.name] = ext_to_json(*row.value);
      argmins[row.name] = row.argmin;
      regions[row.name] = row.region;
    } else {
      refusals[row.name] = *row.refusal;
    }
  }
  j["values"] = values;
  j["refusals"] = refusals;
  j["argmin"] = argmins;
  j["regions"] = regions;
  if (const auto* c = std::get_if<SlaterCertificate>(&r.slater))
    j["slater"] = {{"found", true}, {"point", point_to_json(c->point)}, {"margin", rat_to_json(c->margin)}, {"origin", c->origin}};
  else
    j["slater"] = {{"found", false}, {"best", ext_to_json(std::get<SlaterNotFound>(r.slater).best)}};
  if (r.chain) {
    const ChainReport& c = *r.chain;
    j["chain"] = {{"vP", ext_to_json(c.vP)},
                  {"vLower", ext_to_json(c.vLower)},
                  {"lower_variant", to_string(c.lower_variant)},
                  {"certified_equal", c.certified_equal},
                  {"dual_bounds", {ext_to_json(c.dual_lo), ext_to_json(c.dual_hi)}},
                  {"continuity", c.continuity}};
  } else {
    j["chain"] = {{"error", r.chain_error.value_or("")}};
  }
  j["caveats"] = r.caveats;
  return j;
}

std::string report_to_text(const GapReport& r) {
  std::ostringstream os;
  os << "problem " << r.problem << "\n";
  for (const auto& row : r.rows) {
    os << "  " << row.name << std::string(row.name.size() < 8 ? 8 - row.name.size() : 1, ' ');
    if (row.value)
      os << row.value->str() << "    [" << row.argmin << "; region: " << row.region << "]\n";
    else
      os << "refused: " << *row.refusal << "\n";
  }
  if (const auto* c = std::get_if<SlaterCertificate>(&r.slater))
    os << "slater: " << point_summary(c->point) << ", margin " << c->margin.str() << " (" << c->origin << ")\n";
  else
    os << "slater: not found (best " << std::get<SlaterNotFound>(r.slater).best.str() << ")\n";
  if (r.chain) {
    const ChainReport& c = *r.chain;
    os << "chain: v(P) = " << c.vP.str() << ", v(" << to_string(c.lower_variant) << ") = " << c.vLower.str();
    if (c.certified_equal)
      os << "; certified v(D) = v(D') = " << c.vP.str() << "\n";
    else
      os << "; v(D), v(D') in [" << c.dual_lo.str() << ", " << c.dual_hi.str() << "]\n";
  } else {
    os << "chain: " << *r.chain_error << "\n";
  }
  for (const auto& c : r.caveats) os << "caveat: " << c << "\n";
  return os.str();
}

}  // namespace relaxlab
