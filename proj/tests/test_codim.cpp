#include "doctest.h"
#include "mkpi/codim.hpp"

using namespace mkpi;

namespace {

// Rank of the full evaluation table: every monomial at every basis tuple,
// all k^2 output entries.
std::size_t dense_rank(int r, int n, int k, int a) {
  auto basis = basis_m(k);
  std::size_t K = basis.size();
  std::size_t tuples = 1;
  for (int i = 0; i < n; ++i) tuples *= K;
  RowEchelon ech;
  for (const auto& m : basis_P(r, n, a, k)) {
    UPoly f = UPoly::monomial(k, m);
    SparseRow row;
    for (std::size_t t = 0; t < tuples; ++t) {
      std::map<int, MatElem> assign;
      std::size_t rest = t;
      for (int v = 1; v <= n; ++v) {
        assign[v] = basis[rest % K].second;
        rest /= K;
      }
      MatElem val = evaluate(f, assign);
      for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j)
          if (!is_zero(val(i, j))) row[static_cast<std::int64_t>(t * k * k + (i - 1) * k + (j - 1))] = val(i, j);
    }
    ech.insert(row);
  }
  return ech.rank();
}

int E(int k, int i, int j) { return BasisIndexM::E(k, i, j).pos; }

}  // namespace

TEST_CASE("cell ranks against a dense evaluation sweep") {
  for (auto [k, nmax] : {std::pair{2, 3}, std::pair{3, 2}})
    for (int n = 1; n <= nmax; ++n)
      for (int r = 0; r <= n; ++r) {
        CAPTURE(k);
        CAPTURE(n);
        CAPTURE(r);
        std::int64_t c = codim_rn(r, n, k);
        CHECK(static_cast<std::size_t>(c) == dense_rank(r, n, k, E(k, 1, 2)));
        CHECK(c == codim_rn_expected(r, n, k));
      }
}

TEST_CASE("sparse evaluation matrix matches evaluate()") {
  const int k = 2, n = 3, r = 1;
  auto mons = basis_P(r, n, E(k, 1, 2), k);
  EvalMatrix em = build_eval_matrix(mons, k);
  CHECK(em.rows.size() == mons.size());
  CHECK(em.columns.size() <= static_cast<std::size_t>(k * k));
  for (std::size_t i = 0; i < mons.size(); i += 7) {
    std::map<int, MatElem> assign;
    for (int v = 1; v <= n; ++v) assign[v] = basis_matrix(BasisIndexM::at(k, em.columns[0].tuple[v - 1]));
    MatElem val = evaluate(UPoly::monomial(k, mons[i]), assign);
    for (std::size_t c = 0; c < em.columns.size(); ++c)
      CHECK(em.entries[i][c] == val(em.columns[c].i, em.columns[c].j).get_num());
  }
}

TEST_CASE("known values for cells, totals and closed forms") {
  CHECK(codim_rn(3, 3, 2) == 1);
  CHECK(codim_rn(2, 3, 3) == 8);
  CHECK(codim_rn(0, 2, 2) == 4);
  CHECK(codim_total(1, 2) == 10);
  CHECK(codim_total(2, 2) == 55);
  CHECK(codim_total(1, 3) == 65);
  CHECK(closed_form_codim(5, 2) == 4078);
  CHECK(closed_form_codim(3, 3) == 6529);
  for (int k = 2; k <= 5; ++k) CHECK(closed_form_codim(1, k) == BigInt(k * k * k * k - 2 * (k * k - 1)));
  CHECK(genfun_coeff(1, 2) == 10);
  CHECK(genfun_coeff(0, 2) == 1);
  CHECK(codim_total(0, 2) == 1);
  for (int k = 2; k <= 4; ++k)
    for (int n = 1; n <= 6; ++n) CHECK(genfun_coeff(n, k) == closed_form_codim(n, k));
}

TEST_CASE("aggregated codimension equals the closed form") {
  for (int n = 1; n <= 4; ++n) CHECK(codim_total(n, 2) == closed_form_codim(n, 2));
  for (int n = 1; n <= 2; ++n) CHECK(codim_total(n, 3) == closed_form_codim(n, 3));
  // Growth towards k^2.
  BigInt c4 = codim_total(4, 2), c3 = codim_total(3, 2);
  double ratio = c4.get_d() / c3.get_d();
  CHECK(std::abs(ratio - 4.0) / 4.0 < 0.05);
}

TEST_CASE("rank does not depend on the first index") {
  for (auto [k, nmax] : {std::pair{2, 3}, std::pair{3, 2}})
    for (int n = 1; n <= nmax; ++n)
      for (int r = 0; r <= n; ++r) {
        auto base = codim_cell(r, n, k, E(k, 1, 2)).rank.rank;
        CHECK(codim_cell(r, n, k, E(k, 2, 1)).rank.rank == base);
        CHECK(codim_cell(r, n, k, BasisIndexM::H(k, 1).pos).rank.rank == base);
      }
}

TEST_CASE("thread count does not change the matrix") {
  auto mons = basis_P(1, 4, E(2, 1, 2), 2);
  EvalMatrix one = build_eval_matrix(mons, 2, {1, 7});
  EvalMatrix four = build_eval_matrix(mons, 2, {4, 7});
  CHECK(one.entries == four.entries);
  CHECK(one.columns == four.columns);
}

TEST_CASE("feasibility guard and rank strategy") {
  CHECK(row_estimate(0, 6, 2) == 524880);
  CHECK_THROWS_AS(codim_rn(0, 6, 2), guard_exceeded);
  try {
    check_guard(0, 6, 2);
  } catch (const guard_exceeded& e) {
    CHECK(e.estimate == 524880);
  }
  CHECK_NOTHROW(check_guard(1, 6, 2));
  CHECK_NOTHROW(check_guard(0, 4, 3));
  CHECK_THROWS_AS(check_guard(0, 5, 3), guard_exceeded);
  CHECK_THROWS_AS(codim_rn(3, 2, 2), std::invalid_argument);

  CodimCell big = codim_cell(0, 5, 2, E(2, 1, 2));
  CHECK(big.rows == 29160);
  CHECK(big.rank.modular);
  CHECK(big.rank.primes.size() == 3);
  CHECK(big.rank.rank == 4);
  CodimCell small = codim_cell(0, 4, 2, E(2, 1, 2));
  CHECK_FALSE(small.rank.modular);
}

TEST_CASE("one-row multiplicities") {
  auto cert = onerow_multiplicity(2, 2, 2);
  CHECK(cert.records.size() == 1);
  CHECK(cert.records[0].multiplicity == 1);
  CHECK(cert.records[0].lambda == std::vector<int>{2});
  CHECK(cert.records[0].mu.empty());
  CHECK(onerow_multiplicity(2, 3, 3).records[0].multiplicity == 8);
  CHECK(onerow_multiplicity(0, 2, 2).records[0].multiplicity == 4);
  for (auto [k, nmax] : {std::pair{2, 4}, std::pair{3, 3}})
    for (int n = 1; n <= nmax; ++n)
      for (int r = 0; r <= n; ++r) {
        CAPTURE(k);
        CAPTURE(n);
        CAPTURE(r);
        auto c = onerow_multiplicity(r, n, k);
        CHECK(c.certified);
        CHECK(c.records[0].multiplicity == codim_rn_expected(r, n, k));
        CHECK(c.codim == codim_rn_expected(r, n, k));
      }
  // Witness words for k = 2 as printed: h1 then alternating, and alternating.
  auto w = onerow_words(0, 3, 2);
  int h = BasisIndexM::H(2, 1).pos, a = E(2, 1, 2), b = E(2, 2, 1);
  CHECK(w == std::vector<std::vector<int>>{{h, a, b}, {h, b, a}, {a, b, a}, {b, a, b}});
  CHECK(onerow_words(0, 3, 3).size() == 9);
  // Symmetrizing over S_1 x S_2 gives two monomials.
  CHECK(symmetrize_word({a, b}, 1, a, 2).terms().size() == 2);
  CHECK(onerow_multiplicity(1, 3, 2).chi_coefficient == 3 * 9 * 4);
}
