#pragma once

#include "mkpi/linalg.hpp"
#include "mkpi/report.hpp"
#include "mkpi/upoly.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mkpi {

inline constexpr std::int64_t kRowGuard = 200000;
inline constexpr std::size_t kExactRowLimit = 20000;

struct guard_exceeded : std::runtime_error {
  guard_exceeded(const std::string& what, BigInt rows) : std::runtime_error(what), estimate(std::move(rows)) {}
  BigInt estimate;
};

struct CodimOptions {
  unsigned threads = 1;
  std::uint64_t seed = 20240601;
};

// n! (k^2-1)^(n-r): the number of rows of basis_P(r, n, a, k).
BigInt row_estimate(int r, int n, int k);
void check_guard(int r, int n, int k);

// Rows are monomials; columns are (basis tuple, output entry) pairs, created
// only for tuples at which some row is nonzero.
struct EvalColumn {
  std::vector<int> tuple;  // M-positions, one per variable
  int i = 0, j = 0;        // 1-based output entry

  friend auto operator<=>(const EvalColumn&, const EvalColumn&) = default;
};

struct EvalMatrix {
  int k = 0;
  std::vector<UMonomial> rows;
  std::vector<EvalColumn> columns;
  IntMatrix entries;  // entries scaled to integers row by row
};

EvalMatrix build_eval_matrix(const std::vector<UPoly>& rows, int k, const CodimOptions& opt = {});
EvalMatrix build_eval_matrix(const std::vector<UMonomial>& rows, int k, const CodimOptions& opt = {});

struct CodimCell {
  int r = 0, n = 0, k = 0;
  std::size_t rows = 0;
  RankResult rank;
};

CodimCell codim_cell(int r, int n, int k, int a, const CodimOptions& opt = {});
std::int64_t codim_rn(int r, int n, int k, const CodimOptions& opt = {});
// Three-case table: 1, k^2-1, k^2.
std::int64_t codim_rn_expected(int r, int n, int k);

BigInt codim_total(int n, int k, const CodimOptions& opt = {});
BigInt closed_form_codim(int n, int k);
BigInt genfun_coeff(int n, int k);

struct CocharRecord {
  int n = 0, r = 0;
  std::vector<int> lambda, mu;
  std::int64_t multiplicity = 0;

  friend bool operator==(const CocharRecord&, const CocharRecord&) = default;
};

struct CocharCertificate {
  std::vector<CocharRecord> records;  // certified one-row shapes
  std::vector<UPoly> witnesses;       // symmetrized highest-weight polynomials
  std::size_t witness_rank = 0;
  std::int64_t codim = 0;
  BigInt chi_coefficient;  // binom(n,r) (k^2-1)^(n-r) m
  bool certified = false;  // rank == codim, so every other shape has m = 0
};

// Two-variable words of the one-row multiplicity certificates, before symmetrization:
// each entry is an S-position, with the r copies of x^g in front.
std::vector<std::vector<int>> onerow_words(int r, int n, int k);
UPoly symmetrize_word(const std::vector<int>& word, int r, int a, int k);
CocharCertificate onerow_multiplicity(int r, int n, int k, const CodimOptions& opt = {});

}  // namespace mkpi
