#pragma once

#include "mkpi/matcore.hpp"

#include <map>
#include <string>
#include <utility>

namespace mkpi {

// Element of End(M_k) in the matrix-unit basis phi_ab (a -> b, other basis
// elements -> 0).  Keys are (position of a, position of b) in M.
class Endo {
 public:
  using Key = std::pair<int, int>;

  Endo() = default;
  explicit Endo(int k) : k_(k) {}

  int size() const { return k_; }
  const std::map<Key, Rational>& coeffs() const { return c_; }
  Rational coeff(int a, int b) const;
  void add(int a, int b, const Rational& q);
  bool is_zero() const { return c_.empty(); }
  std::string str() const;

  Endo& operator+=(const Endo& o);
  Endo& operator-=(const Endo& o);
  Endo& operator*=(const Rational& q);
  friend Endo operator+(Endo a, const Endo& b) { return a += b; }
  friend Endo operator-(Endo a, const Endo& b) { return a -= b; }
  friend Endo operator*(const Rational& q, Endo a) { return a *= q; }
  friend bool operator==(const Endo& a, const Endo& b) { return a.k_ == b.k_ && a.c_ == b.c_; }

 private:
  int k_ = 0;
  std::map<Key, Rational> c_;
};

Endo phi_unit(const BasisIndexM& a, const BasisIndexM& b);
// phi_{a,b} with b given as a combination of basis elements.
Endo phi_lin(const BasisIndexM& a, const std::map<BasisIndexM, Rational>& b);
Endo endo_identity(int k);

// x^{op_mul(u,v)} = (x^u)^v: u acts first.
Endo op_mul(const Endo& u, const Endo& v);
MatElem apply_endo(const Endo& u, const MatElem& x);

// x -> [c, x]
Endo inner_derivation(const MatElem& c);
// ad_{e_ij} assembled term by term from its closed form in the basis of U.
Endo inner_derivation_E_formula(int i, int j, int k);

bool in_U(const Endo& u);

// Restriction of u to span(S) -> span(S) and to Q g -> Q g.
Endo block_S(const Endo& u);
Endo block_G(const Endo& u);

}  // namespace mkpi
