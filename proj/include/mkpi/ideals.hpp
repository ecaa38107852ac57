#pragma once

#include "mkpi/linalg.hpp"
#include "mkpi/report.hpp"
#include "mkpi/upoly.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace mkpi {

// Span of (rep_phi (x) rep_phi)(Delta(m)) over PBW monomials m, as elements
// of U (x) U in the phi basis.
struct DeltaImage {
  using Elem = std::map<std::pair<ExpIndex, ExpIndex>, Rational>;
  int k = 0;
  std::vector<Elem> basis;
  std::vector<int> dims_by_degree;
  int degree = 0;  // last degree that enlarged the span
};
DeltaImage stabilized_delta_image(int k, int cap);
bool delta_image_closed(const DeltaImage& d);

using GeneratorSet = std::vector<UPoly>;

// Multilinear degree-2 part of a T_U-ideal in x1, x2.  Substitutions only
// move first exponent indices and the action only moves second indices, so
// the part with first indices (a1, a2) is determined by a span of "patterns"
// (order, b1, b2) that depends only on whether a1 and a2 are g.
class ConsequenceSpace {
 public:
  explicit ConsequenceSpace(int k) : k_(k) {}
  int size() const { return k_; }

  // type index: 2 * [a1 is g] + [a2 is g]
  const RowEchelon& span(int type) const { return spans_[type]; }
  RowEchelon& span(int type) { return spans_[type]; }
  std::size_t dim(int type) const { return spans_[type].rank(); }

  bool contains(const UPoly& f) const;
  // Basis of the part with first indices (a1, a2).
  std::vector<UPoly> block_basis(int a1, int a2) const;
  std::vector<UPoly> basis() const;

 private:
  int k_;
  std::array<RowEchelon, 4> spans_;
};

// Pattern column (order, b1, b2); order 0 puts x1 first.
std::int64_t pattern_column(int k, int order, int b1, int b2);

ConsequenceSpace consequence_space(const GeneratorSet& g, int k);
ConsequenceSpace consequence_space_via_delta(const GeneratorSet& g, const DeltaImage& d);
std::vector<UPoly> consequences_deg2(const GeneratorSet& g, int k);
bool member_deg2(const UPoly& f, const GeneratorSet& g, int k);

struct DeductionStep {
  PBWElem exponent;
  std::vector<std::pair<Rational, int>> subtract;  // (c, ref): result -= c * R_ref
};
struct dangling_reference : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
// R_0 = start, R_i = act(R_{i-1}, exponent_i) - sum c R_ref; returns all R_i.
std::vector<UPoly> deduce_all(const UPoly& start, const std::vector<DeductionStep>& steps);
UPoly deduce(const UPoly& start, const std::vector<DeductionStep>& steps);

struct DeductionChain {
  std::string name;
  UPoly start;
  std::vector<DeductionStep> steps;
  UPoly result;  // the ending polynomial as printed
  UPoly target;  // what it reaches modulo J (equal to result when exact)
};
std::vector<DeductionChain> deduction_chains(int k);

// Four generators: x^{e12 e12} y^{e12 e}, the skew one, [x^g, y^g], [x^g, y^{e12}].
GeneratorSet u_generators(int k);
// The (L,U) generators; the last one only for k >= 3.
GeneratorSet lu_generators(int k);

struct NamedPoly {
  std::string family;
  UPoly poly;
};
// List L instantiated with first index e12 over all admissible indices.
std::vector<NamedPoly> list_L(int k);

std::vector<Check> verify_generators(int k);
std::vector<Check> minimality_witness(int k);
std::vector<Check> replay_chains(int k);
// Generator (2) of the differential identities with preimages as exponents,
// pushed through rep_phi; compared with the sum of the (L,U) generators.
std::vector<Check> differential_generator_check(int k);

}  // namespace mkpi
