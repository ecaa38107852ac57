#pragma once

#include "mkpi/report.hpp"

#include <string>
#include <vector>

namespace mkpi::cli {

struct Outcome {
  int exit_code = 0;  // 0 all checks pass, 1 some check fails, 2 usage error
  std::string out;    // the rendered report, or help text
  std::string err;
  Report report;
};

// argv without the program name.
Outcome execute(const std::vector<std::string>& args);

}  // namespace mkpi::cli
