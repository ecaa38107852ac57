#include "mkpi/codim.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <thread>

namespace mkpi {

BigInt row_estimate(int r, int n, int k) {
  BigInt rows = 1;
  for (int i = 2; i <= n; ++i) rows *= i;
  for (int i = 0; i < n - r; ++i) rows *= k * k - 1;
  return rows;
}

void check_guard(int r, int n, int k) {
  if (k < 2) throw invalid_size("k must be at least 2");
  if (n < 0 || r < 0 || r > n) throw std::invalid_argument("need 0 <= r <= n");
  BigInt rows = row_estimate(r, n, k);
  if (rows > kRowGuard)
    throw guard_exceeded("cell (r=" + std::to_string(r) + ", n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                             ") needs " + rows.get_str() + " rows, above the limit of " + std::to_string(kRowGuard),
                         rows);
}

namespace {

using IntMat = std::vector<std::int64_t>;

IntMat int_basis(int k, int pos) {
  MatElem m = basis_matrix(BasisIndexM::at(k, pos));
  IntMat out(k * k);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) out[(i - 1) * k + (j - 1)] = m(i, j).get_num().get_si();
  return out;
}

IntMat int_mul(const IntMat& x, const IntMat& y, int k) {
  IntMat z(k * k, 0);
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < k; ++l) {
      std::int64_t a = x[i * k + l];
      if (!a) continue;
      for (int j = 0; j < k; ++j) z[i * k + j] += a * y[l * k + j];
    }
  return z;
}

using Row = std::map<EvalColumn, Rational>;

// A multilinear monomial is nonzero only at the tuple of its first indices.
void add_monomial(Row& row, const UMonomial& m, const Rational& q, int k, const std::vector<IntMat>& basis) {
  int n = 0;
  for (const auto& f : m) n = std::max(n, f.var);
  std::vector<int> tuple(n, -1);
  for (const auto& f : m) {
    if (tuple[f.var - 1] != -1) throw unsupported_input("evaluation matrix rows must be multilinear");
    tuple[f.var - 1] = f.exp.a;
  }
  for (int v : tuple)
    if (v == -1) throw unsupported_input("variables must be 1..n without gaps");
  IntMat p = basis[k * k - 1];
  for (const auto& f : m) p = int_mul(p, basis[f.exp.b], k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (!p[i * k + j]) continue;
      Rational v = q * Rational(static_cast<long>(p[i * k + j]));
      auto [it, fresh] = row.emplace(EvalColumn{tuple, i + 1, j + 1}, v);
      if (!fresh) {
        it->second += v;
        if (is_zero(it->second)) row.erase(it);
      }
    }
}

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

EvalMatrix assemble(std::vector<Row>& rows, int k) {
  EvalMatrix em;
  em.k = k;
  std::map<EvalColumn, std::size_t> index;
  for (const auto& r : rows)
    for (const auto& [c, q] : r) index.emplace(c, 0);
  for (auto& [c, i] : index) {
    i = em.columns.size();
    em.columns.push_back(c);
  }
  em.entries.reserve(rows.size());
  for (auto& r : rows) {
    std::vector<Rational> dense(em.columns.size());
    for (const auto& [c, q] : r) dense[index[c]] = q;
    em.entries.push_back(integer_row(dense));
    Row().swap(r);
  }
  return em;
}

std::vector<IntMat> all_int_basis(int k) {
  std::vector<IntMat> b;
  for (int p = 0; p < k * k; ++p) b.push_back(int_basis(k, p));
  return b;
}

}  // namespace

EvalMatrix build_eval_matrix(const std::vector<UMonomial>& monomials, int k, const CodimOptions& opt) {
  auto basis = all_int_basis(k);
  std::vector<Row> rows(monomials.size());
  parallel_for(monomials.size(), opt.threads, [&](std::size_t i) { add_monomial(rows[i], monomials[i], 1, k, basis); });
  EvalMatrix em = assemble(rows, k);
  em.rows = monomials;
  return em;
}

EvalMatrix build_eval_matrix(const std::vector<UPoly>& polys, int k, const CodimOptions& opt) {
  auto basis = all_int_basis(k);
  std::vector<Row> rows(polys.size());
  parallel_for(polys.size(), opt.threads, [&](std::size_t i) {
    if (polys[i].size() != k) throw invalid_size("polynomial size differs from k");
    for (const auto& [m, q] : polys[i].terms()) add_monomial(rows[i], m, q, k, basis);
  });
  return assemble(rows, k);
}

CodimCell codim_cell(int r, int n, int k, int a, const CodimOptions& opt) {
  check_guard(r, n, k);
  CodimCell c{r, n, k, 0, {}};
  if (n == 0) {
    c.rank.rank = 1;
    return c;
  }
  EvalMatrix em = build_eval_matrix(basis_P(r, n, a, k), k, opt);
  c.rows = em.entries.size();
  c.rank = matrix_rank(em.entries, kExactRowLimit, opt.seed);
  return c;
}

std::int64_t codim_rn(int r, int n, int k, const CodimOptions& opt) {
  return static_cast<std::int64_t>(codim_cell(r, n, k, BasisIndexM::E(k, 1, 2).pos, opt).rank.rank);
}

std::int64_t codim_rn_expected(int r, int n, int k) {
  if (r == n) return 1;
  if (r == n - 1) return k * k - 1;
  return k * k;
}

namespace {

BigInt binom(int n, int r) {
  BigInt b;
  mpz_bin_uiui(b.get_mpz_t(), n, r);
  return b;
}

BigInt ipow(long base, int e) {
  BigInt b;
  mpz_ui_pow_ui(b.get_mpz_t(), base, e);
  return b;
}

}  // namespace

BigInt codim_total(int n, int k, const CodimOptions& opt) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  if (n == 0) return 1;
  for (int r = 0; r <= n; ++r) check_guard(r, n, k);
  BigInt total = 0;
  for (int r = 0; r <= n; ++r) total += binom(n, r) * ipow(k * k - 1, n - r) * codim_rn(r, n, k, opt);
  return total;
}

BigInt closed_form_codim(int n, int k) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  return ipow(k, 2 * (n + 1)) - BigInt(k * k - 1) * (n + 1);
}

BigInt genfun_coeff(int n, int k) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  // k^2/(1 - k^2 x) - (k^2-1)/(1-x)^2, expanded term by term.
  BigInt geo = k * k, ramp = 1;
  for (int i = 1; i <= n; ++i) {
    geo *= k * k;
    ramp += 1;
  }
  return geo - BigInt(k * k - 1) * ramp;
}

std::vector<std::vector<int>> onerow_words(int r, int n, int k) {
  check_guard(r, n, k);
  int s = n - r;
  if (s == 0) return {{}};
  if (s == 1) {
    std::vector<std::vector<int>> w;
    for (int b = 0; b < k * k - 1; ++b) w.push_back({b});
    return w;
  }
  auto E = [&](int i, int j) { return BasisIndexM::E(k, i, j).pos; };
  auto H = [&](int i) { return BasisIndexM::H(k, i).pos; };
  std::vector<std::vector<int>> w;
  if (k == 2) {
    auto alt = [&](int first, int len) {
      std::vector<int> v;
      for (int i = 0; i < len; ++i) v.push_back(i % 2 == 0 ? first : (first == E(1, 2) ? E(2, 1) : E(1, 2)));
      return v;
    };
    for (int first : {E(1, 2), E(2, 1)}) {
      std::vector<int> v{H(1)};
      auto tail = alt(first, s - 1);
      v.insert(v.end(), tail.begin(), tail.end());
      w.push_back(v);
    }
    for (int first : {E(1, 2), E(2, 1)}) w.push_back(alt(first, s));
    return w;
  }
  for (int i = 1; i <= k - 1; ++i)
    for (int j = 1; j <= k; ++j) {
      if (i == j) continue;
      std::vector<int> v(s - 1, H(i));
      v.push_back(E(i, j));
      w.push_back(v);
    }
  for (int l = 1; l <= k - 1; ++l) {
    std::vector<int> v(s - 1, H(k - 1));
    v.push_back(E(k, l));
    w.push_back(v);
  }
  for (int m = 1; m <= k - 1; ++m) w.push_back(std::vector<int>(s, H(m)));
  std::vector<int> p(s - 1, H(1));
  p.push_back(H(2));
  w.push_back(p);
  return w;
}

UPoly symmetrize_word(const std::vector<int>& word, int r, int a, int k) {
  int s = static_cast<int>(word.size());
  std::vector<int> gvars(r), svars(s);
  std::iota(gvars.begin(), gvars.end(), 1);
  std::iota(svars.begin(), svars.end(), r + 1);
  UPoly f(k);
  ExpIndex gg = ExpIndex::gg(k);
  do {
    std::vector<int> sv = svars;
    do {
      UMonomial m;
      for (int v : gvars) m.push_back({v, gg});
      for (int q = 0; q < s; ++q) m.push_back({sv[q], {a, word[q]}});
      f.add(m, 1);
    } while (std::next_permutation(sv.begin(), sv.end()));
  } while (std::next_permutation(gvars.begin(), gvars.end()));
  return f;
}

CocharCertificate onerow_multiplicity(int r, int n, int k, const CodimOptions& opt) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  check_guard(r, n, k);
  int a = BasisIndexM::E(k, 1, 2).pos;
  CocharCertificate c;
  for (const auto& w : onerow_words(r, n, k)) c.witnesses.push_back(symmetrize_word(w, r, a, k));
  EvalMatrix em = build_eval_matrix(c.witnesses, k, opt);
  c.witness_rank = matrix_rank(em.entries, kExactRowLimit, opt.seed).rank;
  c.codim = codim_rn(r, n, k, opt);
  std::vector<int> lambda = r ? std::vector<int>{r} : std::vector<int>{};
  std::vector<int> mu = n - r ? std::vector<int>{n - r} : std::vector<int>{};
  auto m = static_cast<std::int64_t>(c.witness_rank);
  c.records.push_back({n, r, lambda, mu, m});
  // One-row shapes have d_lambda = d_mu = 1, so m <= codim with equality
  // leaving no room for any other shape.
  c.certified = m == c.codim && static_cast<std::size_t>(m) == c.witnesses.size();
  c.chi_coefficient = binom(n, r) * ipow(k * k - 1, n - r) * m;
  return c;
}

}  // namespace mkpi
