#pragma once

#include "mkpi/endo.hpp"
#include "mkpi/matcore.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mkpi {

// Exponent vector over the ordered S-basis; all zeros is the unit.
using Monomial = std::vector<std::uint8_t>;

int degree(const Monomial& m);

// Degree first; for equal degrees m1 < m2 iff the first nonzero entry of
// m1 - m2 is positive.
struct DeglexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class PBWElem {
 public:
  using Terms = std::map<Monomial, Rational, DeglexLess>;

  PBWElem() = default;
  explicit PBWElem(int k) : k_(k) {}
  static PBWElem scalar(int k, const Rational& q);
  static PBWElem one(int k) { return scalar(k, 1); }
  static PBWElem gen(int k, int s);  // S-position s
  static PBWElem gen(const BasisIndexM& a) { return gen(a.k, a.pos); }
  // Degree-1 element for a traceless matrix.
  static PBWElem from_matrix(const MatElem& c);

  int size() const { return k_; }
  const Terms& terms() const { return t_; }
  void add(const Monomial& m, const Rational& q);
  bool is_zero() const { return t_.empty(); }
  int degree() const;
  std::string str() const;

  PBWElem& operator+=(const PBWElem& o);
  PBWElem& operator-=(const PBWElem& o);
  PBWElem& operator*=(const Rational& q);
  friend PBWElem operator+(PBWElem a, const PBWElem& b) { return a += b; }
  friend PBWElem operator-(PBWElem a, const PBWElem& b) { return a -= b; }
  friend PBWElem operator*(const Rational& q, PBWElem a) { return a *= q; }
  friend bool operator==(const PBWElem& a, const PBWElem& b) { return a.k_ == b.k_ && a.t_ == b.t_; }

 private:
  int k_ = 0;
  Terms t_;
};

std::string monomial_str(const Monomial& m, int k);

// Product in U(sl_k) (not the opposite one).
PBWElem pbw_mul(const PBWElem& f, const PBWElem& g);
PBWElem pbw_pow(const PBWElem& f, int n);
// Product of generators in the given order, straightened.
PBWElem pbw_word(int k, const std::vector<int>& word);
// Word read in action order: the first letter acts first, i.e. the
// standard product of the letters in reverse.
PBWElem pbw_action_word(int k, const std::vector<int>& word);

// Text form: sums of products/powers of eI,J / eIJ / hI tokens, rational
// coefficients and parentheses.  In action order, "A B" means A acts first.
enum class ProductOrder { Standard, Action };
PBWElem parse_pbw(const std::string& text, int k, ProductOrder order);

class TensorElem {
 public:
  TensorElem() = default;
  TensorElem(int k, int n) : k_(k), n_(n) {}
  int size() const { return k_; }
  int factors() const { return n_; }
  const std::map<std::vector<Monomial>, Rational>& terms() const { return t_; }
  void add(const std::vector<Monomial>& m, const Rational& q);
  friend bool operator==(const TensorElem& a, const TensorElem& b) {
    return a.k_ == b.k_ && a.n_ == b.n_ && a.t_ == b.t_;
  }

 private:
  int k_ = 0, n_ = 0;
  std::map<std::vector<Monomial>, Rational> t_;
};

struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kComultiplyCap = 24;

// Iterated comultiplication into n tensor factors; degree * n <= 24.
TensorElem comultiply_iter(const PBWElem& f, int n);
// (Delta (x) id) applied to a two-factor tensor, and (id (x) Delta).
TensorElem comultiply_left(const TensorElem& t);
TensorElem comultiply_right(const TensorElem& t);

// Unital homomorphism U(L) -> End(M_k) extending c -> ad_c; a word
// e_{i1}...e_{im} maps to ad_{i1} o ... o ad_{im}, so in the opposite
// product it is op_mul(E_{im}, ..., E_{i1}).
Endo rep_phi(const PBWElem& f);
Endo rep_phi_monomial(int k, const Monomial& m);
Endo ad_generator(int k, int s);

// Casimir elements and eigenvalues on span(S).
PBWElem casimir_x(int i, int j, int k);
PBWElem casimir(int p, int k);
Rational casimir_eigenvalue_closed(int p, int k);
Rational casimir_eigenvalue_trace(int p, int k);
std::vector<Rational> casimir_trace_diagonal(int k);

struct KernelElements {
  std::map<int, PBWElem> z;        // 2 <= p <= k
  std::map<int, PBWElem> z_prime;  // 3 <= p <= k
  PBWElem z_total;
};
KernelElements kernel_elements(int k);
bool in_kernel(const PBWElem& f);

PBWElem preimage_rho(const BasisIndexM& a, const BasisIndexM& b);
// The vector c_{pq} of length k-1.
std::vector<Rational> c_vector(int p, int q, int k);
// Columns described for M(s), as a (k-1)x(k-1) matrix (1-based rows/cols
// stored 0-based).
std::vector<std::vector<Rational>> m_matrix(int s, int k);
bool verify_m_inverse(int s, int k);

struct EnvelopingDim {
  int dimension = 0;
  int degree = 0;                 // degree at which the span stopped growing
  std::vector<int> dims_by_degree;
};
EnvelopingDim enveloping_dim(int k, int degree_cap);

}  // namespace mkpi
