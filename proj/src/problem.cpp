#include "relaxlab/problem.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace relaxlab {

bool Problem::finite_family() const {
  return std::none_of(constraints.begin(), constraints.end(), [](const Expr& c) { return c.is_family(); });
}

Expr Problem::sup_constraints() const {
  if (constraints.empty()) throw std::invalid_argument("problem has no constraints");
  std::vector<Expr> parts;
  for (const auto& c : constraints) parts.push_back(c.is_family() ? sup(c) : c);
  return max(parts);
}

const char* to_string(Variant v) {
  switch (v) {
    case Variant::PStar2: return "PStar2";
    case Variant::P1: return "P1";
    case Variant::P2: return "P2";
    case Variant::P3: return "P3";
    case Variant::PInf: return "PInf";
    case Variant::PConcave: return "PConcave";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  std::string t;
  for (char c : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "pstar2") return Variant::PStar2;
  if (t == "p1") return Variant::P1;
  if (t == "p2") return Variant::P2;
  if (t == "p3") return Variant::P3;
  if (t == "pinf") return Variant::PInf;
  if (t == "pc" || t == "pconcave") return Variant::PConcave;
  throw std::invalid_argument("unknown variant '" + s + "'");
}

}  // namespace relaxlab
