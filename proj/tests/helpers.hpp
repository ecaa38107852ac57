#pragma once

#include "mkpi/matcore.hpp"

#include <random>

namespace testutil {

inline mkpi::Rational random_rational(std::mt19937_64& g) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  return mkpi::rat(num(g), den(g));
}

inline mkpi::MatElem random_matrix(int k, std::mt19937_64& g) {
  mkpi::MatElem x(k);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) x(i, j) = random_rational(g);
  return x;
}

inline mkpi::MatElem e(int k, int i, int j) { return mkpi::MatElem::unit(k, i, j); }

}  // namespace testutil
