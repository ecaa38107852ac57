#include "mkpi/linalg.hpp"

#include <random>
#include <set>

namespace mkpi {

void axpy(SparseRow& y, const Rational& a, const SparseRow& x) {
  if (sgn(a) == 0) return;
  for (const auto& [c, q] : x) {
    auto [it, fresh] = y.try_emplace(c, a * q);
    if (!fresh) {
      it->second += a * q;
      if (sgn(it->second) == 0) y.erase(it);
    }
  }
}

SparseRow RowEchelon::reduce(SparseRow r) const {
  // only leading entries are cleared; enough for membership and insertion
  while (!r.empty()) {
    auto lead = r.begin();
    auto piv = rows_.find(lead->first);
    if (piv == rows_.end()) break;
    Rational f = -lead->second;
    axpy(r, f, piv->second);
  }
  return r;
}

bool RowEchelon::insert(SparseRow r) {
  r = reduce(std::move(r));
  if (r.empty()) return false;
  Rational inv = 1 / r.begin()->second;
  for (auto& kv : r) kv.second *= inv;
  std::int64_t c = r.begin()->first;
  rows_.emplace(c, std::move(r));
  return true;
}

bool RowEchelon::contains(SparseRow r) const { return reduce(std::move(r)).empty(); }

std::size_t bareiss_rank(IntMatrix m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    const auto& piv = m[rank];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      auto& row = m[r];
      for (std::size_t j = c + 1; j < cols; ++j) {
        row[j] = piv[c] * row[j] - row[c] * piv[j];
        mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
      }
      row[c] = 0;
    }
    prev = piv[c];
    ++rank;
  }
  return rank;
}

static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

static std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

static std::uint64_t reduce_mod(const BigInt& x, std::uint64_t p) {
  BigInt r;
  BigInt pp;
  mpz_import(pp.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
  std::uint64_t out = 0;
  if (r != 0) mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, r.get_mpz_t());
  return out;
}

std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = reduce_mod(m[r][c], p);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    std::uint64_t inv = powmod(a[rank][c], p - 2, p);
    for (std::size_t j = c; j < cols; ++j) a[rank][j] = mulmod(a[rank][j], inv, p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      std::uint64_t f = a[r][c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        std::uint64_t t = mulmod(f, a[rank][j], p);
        a[r][j] = a[r][j] >= t ? a[r][j] - t : a[r][j] + p - t;
      }
    }
    ++rank;
  }
  return rank;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

std::vector<std::uint64_t> random_primes(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t(1) << 61, (std::uint64_t(1) << 62) - 1);
  std::set<std::uint64_t> seen;
  std::vector<std::uint64_t> out;
  while (out.size() < count) {
    std::uint64_t c = dist(gen) | 1;
    while (!is_prime_u64(c)) c += 2;
    if (seen.insert(c).second) out.push_back(c);
  }
  return out;
}

RankResult matrix_rank(const IntMatrix& m, std::size_t exact_row_limit, std::uint64_t seed) {
  RankResult res;
  if (m.size() <= exact_row_limit) {
    res.rank = bareiss_rank(m);
    return res;
  }
  res.primes = random_primes(3, seed);
  std::vector<std::size_t> ranks;
  for (auto p : res.primes) ranks.push_back(rank_mod_p(m, p));
  if (ranks[0] == ranks[1] && ranks[1] == ranks[2]) {
    res.rank = ranks[0];
    res.modular = true;
  } else {
    res.rank = bareiss_rank(m);
  }
  return res;
}

std::vector<BigInt> integer_row(const std::vector<Rational>& r) {
  BigInt l = 1;
  for (const auto& q : r)
    if (sgn(q) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<BigInt> out(r.size());
  BigInt g = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    out[i] = r[i].get_num() * (l / r[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (g > 1)
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

}  // namespace mkpi
