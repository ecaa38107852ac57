#include "mkpi/report.hpp"

#include <sstream>
#include <stdexcept>

namespace mkpi {

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw std::invalid_argument("unknown format: " + s);
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// "n=3,r=1" -> {{"n","3"},{"r","1"}}; empty if the name has another shape.
std::vector<std::pair<std::string, std::string>> key_values(const std::string& name) {
  std::vector<std::pair<std::string, std::string>> kv;
  std::stringstream ss(name);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos || eq == 0) return {};
    kv.emplace_back(part.substr(0, eq), part.substr(eq + 1));
  }
  return kv;
}

std::string emit_csv(const Report& r) {
  std::vector<std::string> keys;
  bool tagged = !r.checks.empty();
  for (const auto& c : r.checks) {
    auto kv = key_values(c.name);
    std::vector<std::string> ks;
    for (auto& [k, v] : kv) ks.push_back(k);
    if (kv.empty() || (!keys.empty() && ks != keys)) {
      tagged = false;
      break;
    }
    keys = ks;
  }
  std::ostringstream os;
  if (tagged) {
    for (const auto& k : keys) os << csv_cell(k) << ',';
  } else {
    os << "name,";
  }
  os << "computed,expected,pass\n";
  for (const auto& c : r.checks) {
    if (tagged) {
      for (const auto& [k, v] : key_values(c.name)) os << csv_cell(v) << ',';
    } else {
      os << csv_cell(c.name) << ',';
    }
    os << csv_cell(c.computed) << ',' << csv_cell(c.expected) << ',' << (c.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string emit_text(const Report& r) {
  std::ostringstream os;
  os << r.command;
  if (!r.params.empty()) os << ' ' << r.params.dump();
  os << '\n';
  for (const auto& c : r.checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.computed;
    if (!c.expected.empty() && c.computed != c.expected) os << " (expected " << c.expected << ')';
    os << '\n';
  }
  os << (r.all_pass() ? "all checks passed" : "some checks failed") << " in " << r.elapsed_ms << " ms\n";
  return os.str();
}

}  // namespace

std::string emit_report(const Report& r, Format f) {
  switch (f) {
    case Format::Json: {
      nlohmann::json j;
      j["command"] = r.command;
      j["params"] = r.params;
      j["checks"] = nlohmann::json::array();
      for (const auto& c : r.checks)
        j["checks"].push_back({{"name", c.name}, {"computed", c.computed}, {"expected", c.expected}, {"pass", c.pass}});
      j["elapsed_ms"] = r.elapsed_ms;
      return j.dump(2) + "\n";
    }
    case Format::Csv:
      return emit_csv(r);
    case Format::Text:
      return emit_text(r);
  }
  return {};
}

Report parse_report_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Report r;
  r.command = j.at("command").get<std::string>();
  r.params = j.at("params");
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("name").get<std::string>(), c.at("computed").get<std::string>(),
                        c.at("expected").get<std::string>(), c.at("pass").get<bool>()});
  r.elapsed_ms = j.at("elapsed_ms").get<double>();
  return r;
}

}  // namespace mkpi
