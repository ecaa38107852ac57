#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace mkpi {

struct Check {
  std::string name;
  std::string computed;
  std::string expected;
  bool pass = false;

  friend bool operator==(const Check&, const Check&) = default;
};

struct Report {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::vector<Check> checks;
  double elapsed_ms = 0;

  bool all_pass() const;
  friend bool operator==(const Report&, const Report&) = default;
};

enum class Format { Json, Csv, Text };

Format parse_format(const std::string& s);
// CSV: when every check name has the form "key=value,key=value" with the
// same keys, those keys become leading columns; otherwise a name column.
std::string emit_report(const Report& r, Format f);
Report parse_report_json(const std::string& text);

}  // namespace mkpi
