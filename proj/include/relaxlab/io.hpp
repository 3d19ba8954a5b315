#pragma once

#include "relaxlab/problem.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>

namespace relaxlab {

using Json = nlohmann::ordered_json;

/// Schema violation; `path` locates the offending node (e.g. /objective/add/1).
struct ParseError : std::invalid_argument {
  ParseError(const std::string& path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path(path) {}
  std::string path;
};

Rat rat_from_json(const Json& j, const std::string& path);
Json rat_to_json(const Rat& r);
Pattern pattern_from_json(const Json& j, const std::string& path);
Json pattern_to_json(const Pattern& p);
Region region_from_json(const Json& j, const std::string& path);
Json region_to_json(const Region& r);
Point point_from_json(const Json& j, const std::string& path);
Json point_to_json(const Point& p);
Expr expr_from_json(const Json& j, const std::string& path);
Json expr_to_json(const Expr& e);
Json ext_to_json(const ExtReal& v);

Problem parse_problem(const Json& doc);
Problem parse_problem_text(const std::string& text);
Problem load_problem(const std::string& file);
Json problem_to_json(const Problem& p);

bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Problem& a, const Problem& b);

}  // namespace relaxlab
