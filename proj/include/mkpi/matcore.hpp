#pragma once

#include "mkpi/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mkpi {

struct invalid_size : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct invalid_index : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Position in the ordered basis M of M_k:
//   H(1) < ... < H(k-1) < E(1,2) < E(1,3) < ... < E(k,k-1) < G.
// The first k^2-1 positions form S, so an S-index is also an M-index.
struct BasisIndexM {
  enum class Kind { H, E, G };

  int k = 0;
  int pos = 0;

  static BasisIndexM H(int k, int i);
  static BasisIndexM E(int k, int i, int j);
  static BasisIndexM G(int k);
  static BasisIndexM at(int k, int pos);

  Kind kind() const;
  int i() const;  // H: i;  E: row
  int j() const;  // E: column
  bool in_S() const { return pos < k * k - 1; }
  std::string name() const;  // "h1", "e12", "e10,3", "g"

  friend bool operator==(const BasisIndexM&, const BasisIndexM&) = default;
  friend auto operator<=>(const BasisIndexM&, const BasisIndexM&) = default;
};

inline int dim_M(int k) { return k * k; }
inline int dim_S(int k) { return k * k - 1; }

// Parses "g", "hI", "eIJ" or "eI,J" into a basis position.
BasisIndexM parse_basis_name(const std::string& s, int k);

class MatElem {
 public:
  MatElem() = default;
  explicit MatElem(int k);
  static MatElem identity(int k);
  static MatElem unit(int k, int i, int j);  // 1-based e_ij

  int size() const { return k_; }
  Rational& operator()(int i, int j) { return a_[(i - 1) * k_ + (j - 1)]; }
  const Rational& operator()(int i, int j) const { return a_[(i - 1) * k_ + (j - 1)]; }

  Rational trace() const;
  bool is_zero() const;
  std::string str() const;

  MatElem& operator+=(const MatElem& o);
  MatElem& operator-=(const MatElem& o);
  MatElem& operator*=(const Rational& c);
  friend MatElem operator+(MatElem a, const MatElem& b) { return a += b; }
  friend MatElem operator-(MatElem a, const MatElem& b) { return a -= b; }
  friend MatElem operator*(const Rational& c, MatElem a) { return a *= c; }
  friend bool operator==(const MatElem&, const MatElem&) = default;

 private:
  int k_ = 0;
  std::vector<Rational> a_;
};

MatElem assoc_mul(const MatElem& x, const MatElem& y);
MatElem lie_bracket(const MatElem& x, const MatElem& y);

// Matrix of a basis element.
MatElem basis_matrix(const BasisIndexM& a);
std::vector<std::pair<BasisIndexM, MatElem>> basis_m(int k);

// All k^2 coordinates of x in M, indexed by position.
std::vector<Rational> coords_M(const MatElem& x);
Rational mu_coeff(const MatElem& x, const BasisIndexM& a);
MatElem from_coords(int k, const std::vector<Rational>& c);

// h_ij = e_ii - e_jj in the h_l coordinates.
std::map<BasisIndexM, Rational> h_general(int i, int j, int k);

}  // namespace mkpi
