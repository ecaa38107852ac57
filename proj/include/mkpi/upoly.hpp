#pragma once

#include "mkpi/endo.hpp"
#include "mkpi/matcore.hpp"
#include "mkpi/pbw.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mkpi {

struct upoly_syntax_error : std::invalid_argument {
  upoly_syntax_error(const std::string& msg, std::size_t pos)
      : std::invalid_argument(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};
struct invalid_exponent : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct unsupported_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct missing_assignment : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// phi_ab with a, b both in S or both g; positions in M.
struct ExpIndex {
  int a = 0;
  int b = 0;

  static ExpIndex gg(int k) { return {k * k - 1, k * k - 1}; }
  bool is_g(int k) const { return a == k * k - 1; }

  friend bool operator==(const ExpIndex&, const ExpIndex&) = default;
  friend auto operator<=>(const ExpIndex&, const ExpIndex&) = default;
};

bool valid_exp(const ExpIndex& e, int k);
// All (k^2-1)^2 + 1 exponents, S pairs first.
std::vector<ExpIndex> all_exps(int k);

struct Factor {
  int var = 0;
  ExpIndex exp;

  friend bool operator==(const Factor&, const Factor&) = default;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

using UMonomial = std::vector<Factor>;

class UPoly {
 public:
  using Terms = std::map<UMonomial, Rational>;

  UPoly() = default;
  explicit UPoly(int k) : k_(k) {}
  static UPoly monomial(int k, UMonomial m, const Rational& q = 1);

  int size() const { return k_; }
  const Terms& terms() const { return t_; }
  void add(const UMonomial& m, const Rational& q);
  bool is_zero() const { return t_.empty(); }
  Rational coeff(const UMonomial& m) const;
  std::set<int> variables() const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const Rational& q);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const Rational& q, UPoly a) { return a *= q; }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.k_ == b.k_ && a.t_ == b.t_; }

 private:
  int k_ = 0;
  Terms t_;
};

// Concatenation product and commutator.
UPoly upoly_mul(const UPoly& f, const UPoly& g);
UPoly commutator(const UPoly& f, const UPoly& g);

// Grammar:  poly := term (('+'|'-') term)*;  term := [coeff ['*']] atom+;
// atom := 'x'INT '^[' exp '|' exp ']' | '[' poly ',' poly ']' | '(' poly ')'.
// The second slot may be a general h_ij, expanded by linearity.
UPoly parse_upoly(const std::string& text, int k);
std::string format_upoly(const UPoly& f);
std::string format_exp(const ExpIndex& e, int k);

// f^u: each exponent p of a length-n monomial becomes p * rep_phi(u_i) over
// the n-fold comultiplication of u.
UPoly act_on_upoly(const UPoly& f, const PBWElem& u);

// x_i -> x_{sigma(i)}^{exps[i]}; variables absent from the maps are fixed.
UPoly substitute_swap(const UPoly& f, const std::map<int, int>& sigma, const std::map<int, Endo>& exps);

MatElem evaluate(const UPoly& f, const std::map<int, MatElem>& assignment);

// Element of M_2 (x) M_k as a sum of e_ij (x) parts[(i,j)], i, j in {1,2}.
struct Tensor2k {
  int k = 0;
  std::map<std::pair<int, int>, MatElem> parts;

  static Tensor2k pure(int i, int j, const MatElem& m);
  bool is_zero() const;
  std::string str() const;
  friend bool operator==(const Tensor2k& a, const Tensor2k& b);
};
Tensor2k evaluate_tensor2k(const UPoly& f, const std::map<int, Tensor2k>& assignment);

bool is_multilinear(const UPoly& f);
// Vanishing at every tuple of basis elements.  Uses that x^{(a,b)} at a basis
// element t is delta(t,a) b, so each monomial is nonzero at one tuple only.
bool is_identity(const UPoly& f);
// The same verdict by evaluating at all (k^2)^n basis tuples.
bool is_identity_exhaustive(const UPoly& f);

struct ComponentKey {
  std::set<int> I;       // variables with exponent (g,g)
  std::map<int, int> a;  // remaining variables -> first index

  friend bool operator==(const ComponentKey&, const ComponentKey&) = default;
  friend auto operator<=>(const ComponentKey&, const ComponentKey&) = default;
};
std::map<ComponentKey, UPoly> decompose_components(const UPoly& f);

// Every ordering of x_1..x_n; x_1..x_r carry (g,g) and x_{r+1}..x_n carry
// (a, b) for all b in S.
std::vector<UMonomial> basis_P(int r, int n, int a, int k);

// Polynomial whose exponents are elements of U(L); each one is pushed
// through rep_phi and expanded in the phi_ab basis.
struct LTerm {
  Rational coeff;
  std::vector<std::pair<int, PBWElem>> factors;
};
UPoly push_through_rep(int k, const std::vector<LTerm>& terms);

// phi_gg(x^{a e12} y^{a e21}) against (1/k)(sum x^{a h_i} y^{a h_i} +
// sum x^{a h_i} y^{a h_{i+1}}), compared at all basis pairs.
bool gg_substitution_holds(int k, int a);

}  // namespace mkpi
