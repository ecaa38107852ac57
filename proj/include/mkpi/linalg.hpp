#pragma once

#include "mkpi/rational.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace mkpi {

using SparseRow = std::map<std::int64_t, Rational>;

void axpy(SparseRow& y, const Rational& a, const SparseRow& x);  // y += a x

// Incrementally built row-echelon basis over Q; pivots are leading columns
// normalized to 1.
class RowEchelon {
 public:
  // Adds r if it is independent of the current rows; returns true if added.
  bool insert(SparseRow r);
  bool contains(SparseRow r) const;
  SparseRow reduce(SparseRow r) const;
  std::size_t rank() const { return rows_.size(); }
  const std::map<std::int64_t, SparseRow>& rows() const { return rows_; }

 private:
  std::map<std::int64_t, SparseRow> rows_;
};

using IntMatrix = std::vector<std::vector<BigInt>>;

// Fraction-free (Bareiss) elimination; the matrix is consumed.
std::size_t bareiss_rank(IntMatrix m);

// Rank over F_p for a prime p < 2^62.
std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p);

bool is_prime_u64(std::uint64_t n);
// Distinct random primes in [2^61, 2^62), deterministic for a given seed.
std::vector<std::uint64_t> random_primes(std::size_t count, std::uint64_t seed);

struct RankResult {
  std::size_t rank = 0;
  bool modular = false;            // true if decided by agreeing primes
  std::vector<std::uint64_t> primes;
};

// Exact rank for up to exact_row_limit rows; above that, rank modulo three
// seeded primes with agreement required (falls back to exact otherwise).
RankResult matrix_rank(const IntMatrix& m, std::size_t exact_row_limit, std::uint64_t seed);

// Scales a rational row to a primitive integer row.
std::vector<BigInt> integer_row(const std::vector<Rational>& r);

}  // namespace mkpi
