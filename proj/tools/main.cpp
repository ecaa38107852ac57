#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  auto o = mkpi::cli::execute({argv + 1, argv + argc});
  std::cout << o.out;
  if (!o.out.empty() && o.out.back() != '\n') std::cout << '\n';
  std::cerr << o.err;
  return o.exit_code;
}
