#pragma once

#include "mkpi/endo.hpp"

#include <algorithm>

namespace testutil {

using mkpi::BasisIndexM;
using mkpi::Endo;
using mkpi::Rational;
using mkpi::phi_lin;
using mkpi::phi_unit;
using mkpi::h_general;

inline BasisIndexM ee_E(int k, int i, int j) { return BasisIndexM::E(k, i, j); }
inline BasisIndexM ee_H(int k, int i) { return BasisIndexM::H(k, i); }

// Closed form of the op-product E_ij E_rs, transcribed term by term; phi
// with an out-of-range h index or a diagonal e index is zero.
struct EEBuilder {
  int k;
  Endo out;
  bool valid_e(int a, int b) const { return a >= 1 && b >= 1 && a <= k && b <= k && a != b; }
  void ee(int sign, int a, int b, int c, int d) {
    if (valid_e(a, b) && valid_e(c, d)) out += Rational(sign) * phi_unit(ee_E(k, a, b), ee_E(k, c, d));
  }
  void eh(int sign, int a, int b, int c, int d) {  // phi_{e_ab, h_cd}
    if (valid_e(a, b) && valid_e(c, d)) out += Rational(sign) * phi_lin(ee_E(k, a, b), h_general(c, d, k));
  }
  void he(int sign, int l, int c, int d) {  // phi_{h_l, e_cd}
    if (l >= 1 && l <= k - 1 && valid_e(c, d)) out += Rational(sign) * phi_unit(ee_H(k, l), ee_E(k, c, d));
  }
  void hh(int sign, int l, int c, int d) {  // phi_{h_l, h_cd}
    if (l >= 1 && l <= k - 1) out += Rational(sign) * phi_lin(ee_H(k, l), h_general(c, d, k));
  }
};

inline mkpi::Endo formula_EE(int k, int i, int j, int r, int s, bool literal) {
  EEBuilder b{k, Endo(k)};
  auto d = [](int x, int y) { return x == y ? 1 : 0; };
  if (d(i, s)) {
    for (int l = 1; l <= k; ++l)
      if (l != i && l != j && l != r) b.ee(1, j, l, r, l);
    if (!d(j, r)) {
      b.eh(1, j, r, r, i);
      b.he(1, i - 1, r, j);
      b.he(-1, i, r, j);
      b.he(-1, j - 1, r, j);
      b.he(1, j, r, j);
    }
  }
  if (d(j, r)) {
    for (int l = 1; l <= k; ++l)
      if (l != i && l != j && l != s) b.ee(1, l, i, l, s);
    if (!d(i, s)) {
      b.eh(-1, s, i, j, s);
      b.he(-1, i - 1, i, s);
      b.he(1, i, i, s);
      b.he(1, j - 1, i, s);
      b.he(-1, j, i, s);
    }
  }
  if (d(i, s) && d(j, r)) {
    b.hh(1, i - 1, j, i);
    b.hh(-1, i, j, i);
    b.hh(-1, j - 1, j, i);
    b.hh(1, j, j, i);
  }
  if (literal) {
    if (d(j, i + 1)) {
      if (d(i, r - 1)) b.ee(1, i + 1, i, i + 1, s);
      if (d(i, r)) b.ee(-1, i + 1, i, i, s);
      if (d(i, s - 1)) b.ee(-1, i + 1, i, r, i + 1);
      if (d(i, s)) b.ee(1, i + 1, i, r, i);
    }
  } else {
    // phi_{e_ji, h_ij} times the h-part of E_rs, for any i != j
    int lo = std::min(i, j), hi = std::max(i, j) - 1, sign = i > j ? -1 : 1;
    auto in = [&](int l) { return l >= lo && l <= hi ? 1 : 0; };
    int c = sign * (in(r - 1) - in(r) - in(s - 1) + in(s));
    if (c != 0) b.ee(c, j, i, r, s);
  }
  if (!d(i, s) && !d(j, r)) {
    // printed with a plus sign; the cross terms of the two closed forms give minus
    int sign = literal ? 1 : -1;
    if (!d(i, r)) b.ee(sign, j, r, i, s);
    if (!d(j, s)) b.ee(sign, s, i, r, j);
  }
  return b.out;
}

}  // namespace testutil
