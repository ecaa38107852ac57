#include "mkpi/ideals.hpp"

#include <deque>
#include <functional>
#include <sstream>

namespace mkpi {

namespace {

int type_of(int a, int k) { return a == k * k - 1 ? 1 : 0; }
int block_type(int a1, int a2, int k) { return 2 * type_of(a1, k) + type_of(a2, k); }

struct PatternCol {
  int order, b1, b2;
};

PatternCol decode(std::int64_t c, int k) {
  std::int64_t K = k * k;
  return {static_cast<int>(c / (K * K)), static_cast<int>((c / K) % K), static_cast<int>(c % K)};
}

void add_to(SparseRow& r, std::int64_t c, const Rational& q) {
  auto [it, fresh] = r.emplace(c, q);
  if (!fresh) {
    it->second += q;
    if (is_zero(it->second)) r.erase(it);
  }
}

// Splits a polynomial that is multilinear of degree 2 in x1, x2 by the first
// indices of x1 and x2.
std::map<std::pair<int, int>, SparseRow> split_patterns(const UPoly& f) {
  int k = f.size();
  std::map<std::pair<int, int>, SparseRow> out;
  for (const auto& [m, q] : f.terms()) {
    if (m.size() != 2) throw unsupported_input("expected a multilinear polynomial of degree 2 in x1, x2");
    int order;
    Factor f1, f2;
    if (m[0].var == 1 && m[1].var == 2) {
      order = 0, f1 = m[0], f2 = m[1];
    } else if (m[0].var == 2 && m[1].var == 1) {
      order = 1, f1 = m[1], f2 = m[0];
    } else {
      throw unsupported_input("expected a multilinear polynomial of degree 2 in x1, x2");
    }
    add_to(out[{f1.exp.a, f2.exp.a}], pattern_column(k, order, f1.exp.b, f2.exp.b), q);
  }
  return out;
}

SparseRow swap_pattern(const SparseRow& r, int k) {
  SparseRow out;
  for (const auto& [c, q] : r) {
    auto p = decode(c, k);
    out.emplace(pattern_column(k, 1 - p.order, p.b2, p.b1), q);
  }
  return out;
}

UPoly pattern_poly(const SparseRow& r, int a1, int a2, int k) {
  UPoly f(k);
  for (const auto& [c, q] : r) {
    auto p = decode(c, k);
    Factor x1{1, {a1, p.b1}}, x2{2, {a2, p.b2}};
    f.add(p.order == 0 ? UMonomial{x1, x2} : UMonomial{x2, x1}, q);
  }
  return f;
}

// Patterns reachable from one generator by substitutions: (type, pattern).
std::vector<std::pair<int, SparseRow>> sources(const GeneratorSet& gens, int k) {
  std::vector<std::pair<int, SparseRow>> out;
  for (const auto& f : gens) {
    if (f.is_zero()) continue;
    if (f.size() != k) throw invalid_size("generator size differs from k");
    for (const auto& [aa, row] : split_patterns(f)) {
      out.emplace_back(block_type(aa.first, aa.second, k), row);
      out.emplace_back(block_type(aa.second, aa.first, k), swap_pattern(row, k));
    }
  }
  return out;
}

using AdRows = std::vector<std::vector<std::vector<std::pair<int, Rational>>>>;

AdRows ad_rows(int k) {
  int K = k * k;
  AdRows rows(K - 1, std::vector<std::vector<std::pair<int, Rational>>>(K));
  for (int c = 0; c < K - 1; ++c) {
    Endo ad = ad_generator(k, c);
    for (const auto& [ab, q] : ad.coeffs()) rows[c][ab.first].emplace_back(ab.second, q);
  }
  return rows;
}

SparseRow apply_ad(const SparseRow& r, const std::vector<std::vector<std::pair<int, Rational>>>& ad, int k) {
  SparseRow out;
  for (const auto& [col, q] : r) {
    auto p = decode(col, k);
    for (const auto& [d, s] : ad[p.b1]) add_to(out, pattern_column(k, p.order, d, p.b2), q * s);
    for (const auto& [d, s] : ad[p.b2]) add_to(out, pattern_column(k, p.order, p.b1, d), q * s);
  }
  return out;
}

std::string ratio(std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); }

}  // namespace

std::int64_t pattern_column(int k, int order, int b1, int b2) {
  std::int64_t K = k * k;
  return order * K * K + b1 * K + b2;
}

bool ConsequenceSpace::contains(const UPoly& f) const {
  if (f.is_zero()) return true;
  if (f.size() != k_) throw invalid_size("polynomial size differs from k");
  for (const auto& [aa, row] : split_patterns(f))
    if (!spans_[block_type(aa.first, aa.second, k_)].contains(row)) return false;
  return true;
}

std::vector<UPoly> ConsequenceSpace::block_basis(int a1, int a2) const {
  std::vector<UPoly> out;
  for (const auto& [lead, row] : spans_[block_type(a1, a2, k_)].rows()) out.push_back(pattern_poly(row, a1, a2, k_));
  return out;
}

std::vector<UPoly> ConsequenceSpace::basis() const {
  std::vector<UPoly> out;
  for (int a1 = 0; a1 < k_ * k_; ++a1)
    for (int a2 = 0; a2 < k_ * k_; ++a2)
      for (auto& f : block_basis(a1, a2)) out.push_back(std::move(f));
  return out;
}

ConsequenceSpace consequence_space(const GeneratorSet& gens, int k) {
  ConsequenceSpace cs(k);
  AdRows ad = ad_rows(k);
  std::deque<std::pair<int, SparseRow>> queue;
  for (auto& [t, row] : sources(gens, k))
    if (cs.span(t).insert(row)) queue.emplace_back(t, std::move(row));
  while (!queue.empty()) {
    auto [t, row] = std::move(queue.front());
    queue.pop_front();
    for (int c = 0; c < k * k - 1; ++c) {
      SparseRow w = apply_ad(row, ad[c], k);
      if (!w.empty() && cs.span(t).insert(w)) queue.emplace_back(t, std::move(w));
    }
  }
  return cs;
}

ConsequenceSpace consequence_space_via_delta(const GeneratorSet& gens, const DeltaImage& d) {
  int k = d.k;
  ConsequenceSpace cs(k);
  // Each element grouped by the first indices (p1.a, p2.a) of its terms.
  using Grouped = std::map<std::pair<int, int>, std::vector<std::pair<std::pair<int, int>, Rational>>>;
  std::vector<Grouped> grouped;
  for (const auto& e : d.basis) {
    Grouped g;
    for (const auto& [pp, q] : e) g[{pp.first.a, pp.second.a}].push_back({{pp.first.b, pp.second.b}, q});
    grouped.push_back(std::move(g));
  }
  for (const auto& [t, row] : sources(gens, k)) {
    for (const auto& g : grouped) {
      SparseRow out;
      for (const auto& [col, q] : row) {
        auto p = decode(col, k);
        // The first tensor factor acts on the variable written first.
        int first = p.order == 0 ? p.b1 : p.b2, second = p.order == 0 ? p.b2 : p.b1;
        auto it = g.find({first, second});
        if (it == g.end()) continue;
        for (const auto& [bb, s] : it->second) {
          int n1 = p.order == 0 ? bb.first : bb.second, n2 = p.order == 0 ? bb.second : bb.first;
          add_to(out, pattern_column(k, p.order, n1, n2), q * s);
        }
      }
      if (!out.empty()) cs.span(t).insert(std::move(out));
    }
  }
  return cs;
}

std::vector<UPoly> consequences_deg2(const GeneratorSet& g, int k) { return consequence_space(g, k).basis(); }

bool member_deg2(const UPoly& f, const GeneratorSet& g, int k) { return consequence_space(g, k).contains(f); }

namespace {

std::int64_t delta_key(const ExpIndex& p, const ExpIndex& q, int k) {
  std::int64_t K = k * k;
  return ((p.a * K + p.b) * K + q.a) * K + q.b;
}

SparseRow delta_row(const DeltaImage::Elem& e, int k) {
  SparseRow r;
  for (const auto& [pq, c] : e) r.emplace(delta_key(pq.first, pq.second, k), c);
  return r;
}

void monomials_of_degree(int vars, int deg, std::vector<Monomial>& out) {
  Monomial m(vars, 0);
  std::function<void(int, int)> rec = [&](int v, int left) {
    if (v == vars - 1) {
      m[v] = static_cast<std::uint8_t>(left);
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[v] = static_cast<std::uint8_t>(e);
      rec(v + 1, left - e);
    }
  };
  rec(0, deg);
}

}  // namespace

DeltaImage stabilized_delta_image(int k, int cap) {
  if (k < 2) throw invalid_size("k must be at least 2");
  DeltaImage d;
  d.k = k;
  RowEchelon span;
  int flat = 0;
  for (int deg = 0; deg <= cap; ++deg) {
    std::vector<Monomial> mons;
    monomials_of_degree(k * k - 1, deg, mons);
    for (const auto& m : mons) {
      PBWElem u(k);
      u.add(m, 1);
      DeltaImage::Elem e;
      TensorElem split = comultiply_iter(u, 2);
      for (const auto& [mm, q] : split.terms()) {
        Endo r1 = rep_phi_monomial(k, mm[0]), r2 = rep_phi_monomial(k, mm[1]);
        for (const auto& [p, s] : r1.coeffs())
          for (const auto& [t, w] : r2.coeffs()) {
            auto [it, fresh] = e.emplace(std::pair{ExpIndex{p.first, p.second}, ExpIndex{t.first, t.second}}, q * s * w);
            if (!fresh) {
              it->second += q * s * w;
              if (is_zero(it->second)) e.erase(it);
            }
          }
      }
      if (!e.empty() && span.insert(delta_row(e, k))) d.basis.push_back(std::move(e));
    }
    int dim = static_cast<int>(span.rank());
    bool grew = d.dims_by_degree.empty() || dim > d.dims_by_degree.back();
    d.dims_by_degree.push_back(dim);
    if (grew) {
      d.degree = deg;
      flat = 0;
    } else if (++flat == 2) {
      return d;
    }
  }
  throw cap_exceeded("image did not stabilize below the degree cap");
}

bool delta_image_closed(const DeltaImage& d) {
  int k = d.k;
  RowEchelon span;
  for (const auto& e : d.basis) span.insert(delta_row(e, k));
  // phi_p phi_p' (p acting first) is phi_{p.a, p'.b} when p.b == p'.a.
  using Grouped = std::map<std::pair<int, int>, std::vector<std::pair<std::pair<int, int>, Rational>>>;
  std::vector<Grouped> by_source;
  for (const auto& e : d.basis) {
    Grouped g;
    for (const auto& [pq, c] : e) g[{pq.first.a, pq.second.a}].push_back({{pq.first.b, pq.second.b}, c});
    by_source.push_back(std::move(g));
  }
  for (const auto& x : d.basis)
    for (const auto& y : by_source) {
      SparseRow prod;
      for (const auto& [pq, c] : x) {
        auto it = y.find({pq.first.b, pq.second.b});
        if (it == y.end()) continue;
        for (const auto& [bb, s] : it->second)
          add_to(prod, delta_key({pq.first.a, bb.first}, {pq.second.a, bb.second}, k), c * s);
      }
      if (!span.contains(prod)) return false;
    }
  return true;
}

std::vector<UPoly> deduce_all(const UPoly& start, const std::vector<DeductionStep>& steps) {
  std::vector<UPoly> r{start};
  for (const auto& s : steps) {
    UPoly next = act_on_upoly(r.back(), s.exponent);
    for (const auto& [c, ref] : s.subtract) {
      if (ref < 0 || ref >= static_cast<int>(r.size()))
        throw dangling_reference("step refers to result " + std::to_string(ref) + " before it exists");
      next -= c * r[ref];
    }
    r.push_back(std::move(next));
  }
  return r;
}

UPoly deduce(const UPoly& start, const std::vector<DeductionStep>& steps) { return deduce_all(start, steps).back(); }

namespace {

// Builders for polynomials whose S-exponents all have first index e12.
struct B {
  int k;

  int e(int i, int j) const { return BasisIndexM::E(k, i, j).pos; }
  int h(int i) const { return BasisIndexM::H(k, i).pos; }
  int g() const { return k * k - 1; }
  int a0() const { return e(1, 2); }

  Factor X(int b) const { return {1, {b == g() ? g() : a0(), b}}; }
  Factor Y(int b) const { return {2, {b == g() ? g() : a0(), b}}; }

  UPoly m(int b, int d, const Rational& q = 1) const { return UPoly::monomial(k, {X(b), Y(d)}, q); }
  UPoly ym(int b, int d, const Rational& q = 1) const { return UPoly::monomial(k, {Y(b), X(d)}, q); }
  // x^{b} y^{d} - y^{b} x^{d}
  UPoly skew(int b, int d) const { return m(b, d) - ym(b, d); }
  // [x^{b}, y^{d}]
  UPoly br(int b, int d) const { return m(b, d) - ym(d, b); }
  // x^{b} y^{h_ij}
  UPoly mh(int b, int i, int j) const {
    UPoly f(k);
    for (const auto& [c, q] : h_general(i, j, k)) f += m(b, c.pos, q);
    return f;
  }

  PBWElem E(int i, int j, const Rational& q = 1, int pow = 1) const {
    return q * pbw_pow(PBWElem::gen(BasisIndexM::E(k, i, j)), pow);
  }
  DeductionStep step(PBWElem u, std::vector<std::pair<Rational, int>> sub = {}) const {
    return {std::move(u), std::move(sub)};
  }
};

bool distinct(std::initializer_list<int> v) {
  for (auto a = v.begin(); a != v.end(); ++a)
    for (auto b = a + 1; b != v.end(); ++b)
      if (*a == *b) return false;
  return true;
}

std::string idx(std::initializer_list<std::pair<const char*, int>> v) {
  std::string s = "(";
  bool first = true;
  for (auto& [n, x] : v) {
    if (!first) s += ",";
    s += std::string(n) + "=" + std::to_string(x);
    first = false;
  }
  return s + ")";
}

}  // namespace

std::vector<DeductionChain> deduction_chains(int k) {
  if (k < 2) throw invalid_size("k must be at least 2");
  B b{k};
  std::vector<DeductionChain> out;
  auto add = [&](std::string name, UPoly start, std::vector<DeductionStep> steps, UPoly result) {
    UPoly target = result;
    out.push_back({std::move(name), std::move(start), std::move(steps), std::move(result), std::move(target)});
  };
  Rational half = rat(1, 2);
  auto E = [&](int i, int j, const Rational& q = 1, int pow = 1) { return b.E(i, j, q, pow); };
  auto S = [&](PBWElem u, std::vector<std::pair<Rational, int>> sub = {}) { return b.step(std::move(u), std::move(sub)); };
  auto m = [&](int p, int q) { return b.m(p, q); };
  auto e = [&](int i, int j) { return b.e(i, j); };
  auto h = [&](int i) { return b.h(i); };
  const int g = b.g();

  for (int a = 1; a <= k; ++a)
    for (int bb = 1; bb <= k; ++bb) {
      if (a == bb) continue;
      auto ab = idx({{"a", a}, {"b", bb}});
      add("chain1.3" + ab, m(e(a, bb), e(a, bb)), {S(E(bb, a, rat(1, 24), 4))}, m(e(bb, a), e(bb, a)));
      add("chain7.4" + ab, b.skew(e(a, bb), e(bb, a)),
          {S(E(bb, a, -1)), S(E(a, bb), {{-2, 0}}), S(E(bb, a, half), {{1, 1}}), S(E(a, bb, -half), {{-half, 2}})},
          b.skew(e(bb, a), e(a, bb)));
      add("chain7.4m" + ab, m(e(a, bb), e(bb, a)),
          {S(E(bb, a, -1)), S(E(a, bb), {{-2, 0}}), S(E(bb, a, half), {{1, 1}}), S(E(a, bb, -half), {{-half, 2}})},
          m(e(bb, a), e(a, bb)));
      add("chain8.3" + ab, b.br(g, e(a, bb)), {S(E(bb, a, -half, 2))}, b.br(g, e(bb, a)));
      add("chain8.3m" + ab, m(g, e(a, bb)), {S(E(bb, a, -half, 2))}, m(g, e(bb, a)));
      for (int c = 1; c <= k; ++c) {
        if (!distinct({a, bb, c})) continue;
        auto abc = idx({{"a", a}, {"b", bb}, {"c", c}});
        add("chain1.1" + abc, m(e(a, bb), e(a, bb)), {S(E(c, a, half, 2))}, m(e(c, bb), e(c, bb)));
        add("chain1.2" + abc, m(e(a, bb), e(a, bb)), {S(E(bb, c, half, 2))}, m(e(a, c), e(a, c)));
        UPoly st = m(e(a, bb), e(c, a));
        add("chain2.1" + abc, st, {S(E(bb, a, -half, 2))}, m(e(bb, a), e(c, a)));
        add("chain2.2" + abc, st, {S(E(a, c, -half, 2))}, m(e(a, bb), e(a, c)));
        add("chain2.3" + abc, st, {S(E(bb, c, -half, 2))}, m(e(a, c), e(bb, a)));
        // Printed with "subtract 1/2 (a)" in the last step; the action yields -1/2 (a), so it is added.
        add("chain2.4" + abc, st, {S(E(bb, a, -1)), S(E(a, bb, -1), {{2, 0}}), S(E(bb, a, half), {{-half, 1}})},
            m(e(bb, a), e(c, bb)));
        add("chain2.7" + abc, m(e(a, bb), e(a, c)), {S(E(c, bb, -1))}, m(e(a, bb), e(a, bb)));
        for (const bool mono : {false, true}) {
          auto s = [&](int p, int q) { return mono ? m(p, q) : b.skew(p, q); };
          std::string tag = mono ? "m" : "";
          add("chain7.1" + tag + abc, s(e(a, bb), e(bb, a)), {S(E(a, c, -1))}, s(e(a, bb), e(bb, c)));
          add("chain7.2" + tag + abc, s(e(a, bb), e(bb, a)), {S(E(c, a))}, s(e(c, bb), e(bb, a)));
          add("chain7.3" + tag + abc, s(e(a, bb), e(bb, a)), {S(E(c, a)), S(E(a, c, -1), {{-1, 0}})},
              s(e(c, bb), e(bb, c)));
          auto t = [&](int d) { return mono ? m(g, d) : b.br(g, d); };
          add("chain8.1" + tag + abc, t(e(a, bb)), {S(E(c, a))}, t(e(c, bb)));
          add("chain8.2" + tag + abc, t(e(a, bb)), {S(E(bb, c, -1))}, t(e(a, c)));
        }
        for (int d = 1; d <= k; ++d) {
          if (!distinct({a, bb, c, d})) continue;
          auto abcd = idx({{"a", a}, {"b", bb}, {"c", c}, {"d", d}});
          add("chain2.5" + abcd, st, {S(E(d, a)), S(E(a, d, -1), {{-1, 0}})}, m(e(d, bb), e(c, d)));
          add("chain2.6" + abcd, st, {S(E(bb, d, -1))}, m(e(a, d), e(c, a)));
          add("chain3.1" + abcd, st, {S(E(a, d, -1))}, m(e(a, bb), e(c, d)));
          UPoly st3 = m(e(a, bb), e(c, d));
          add("chain3.2" + abcd, st3, {S(E(bb, a, -half, 2))}, m(e(bb, a), e(c, d)));
          add("chain3.3" + abcd, st3, {S(E(d, c, -half, 2))}, m(e(a, bb), e(d, c)));
          add("chain3.4" + abcd, st3, {S(E(bb, c, -half, 2))}, m(e(a, c), e(bb, d)));
          for (int i = 1; i <= k; ++i) {
            if (!distinct({a, bb, c, d, i})) continue;
            add("chain3.5" + idx({{"a", a}, {"b", bb}, {"c", c}, {"d", d}, {"i", i}}), st3, {S(E(i, a))},
                m(e(i, bb), e(c, d)));
          }
        }
      }
    }

  for (int i = 1; i <= k - 1; ++i) {
    for (int a = 1; a <= k; ++a)
      for (int c = 1; c <= k; ++c) {
        if (a == c || a == i || c == i + 1) continue;
        auto ab = idx({{"i", i}, {"a", a}, {"b", c}});
        add("chain4.1" + ab, m(e(i, i + 1), e(a, c)), {S(E(i + 1, i, -1))}, m(h(i), e(a, c)));
        add("chain4.3" + ab, m(e(a, c), e(i, i + 1)), {S(E(i + 1, i, -1))}, m(e(a, c), h(i)));
      }
    for (int a = 1; a <= k; ++a) {
      if (a == i || a == i + 1) continue;
      auto ia = idx({{"i", i}, {"a", a}});
      DeductionChain c{"chain4.2" + ia, m(e(i, i + 1), e(a, i + 1)), {S(E(i + 1, i, -1))},
                       m(h(i), e(a, i + 1)) + m(e(i, i + 1), e(a, i)), m(h(i), e(a, i + 1))};
      out.push_back(std::move(c));
      // Printed as x^{e_{i+1,b}} y^{e_{i,i+1}} + x^{e_ib} y^{h_i}; the action gives -x^{e_ib} y^{h_i}.
      DeductionChain c4{"chain4.4" + idx({{"i", i}, {"b", a}}), m(e(i, a), e(i, i + 1)), {S(E(i + 1, i))},
                        m(e(i + 1, a), e(i, i + 1)) - m(e(i, a), h(i)), UPoly(k) - m(e(i, a), h(i))};
      out.push_back(std::move(c4));
    }
    for (int j = 1; j <= k - 1; ++j) {
      if (j >= i - 1 && j <= i + 1) continue;
      add("chain4.5" + idx({{"i", i}, {"j", j}}), m(h(i), e(j, j + 1)), {S(E(j + 1, j, -1))}, m(h(i), h(j)));
    }
    add("chain8.4" + idx({{"i", i}}), b.br(g, e(i, i + 1)), {S(E(i + 1, i, -1))}, b.br(g, h(i)));
    add("chain8.4m" + idx({{"i", i}}), m(g, e(i, i + 1)), {S(E(i + 1, i, -1))}, m(g, h(i)));
  }

  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      for (int l = 1; l <= k; ++l) {
        if (!distinct({i, j, l})) continue;
        auto ijl = idx({{"i", i}, {"j", j}, {"l", l}});
        add("chain5.1" + ijl, m(e(i, j), e(l, i)), {S(E(j, l, -1))}, m(e(i, l), e(l, i)) - m(e(i, j), e(j, i)));
        if (j <= k - 1 && l != j + 1)
          add("chain5.2" + ijl, m(e(i, l), h(j)), {S(E(l, j, -1))}, m(e(i, j), h(j)) - m(e(i, l), e(l, j)));
        if (i <= k - 1 && l != i + 1)
          add("chain5.4" + ijl, m(h(i), e(l, j)), {S(E(i, l))}, m(h(i), e(i, j)) - m(e(i, l), e(l, j)));
        if (j >= 2 && l != j - 1)
          add("chain6.1" + ijl, m(e(i, l), h(j - 1)), {S(E(l, j, -1))}, m(e(i, j), h(j - 1)) + m(e(i, l), e(l, j)));
        if (i >= 2 && l != i - 1)
          add("chain6.3" + ijl, m(h(i - 1), e(l, j)), {S(E(i, l))}, m(h(i - 1), e(i, j)) + m(e(i, l), e(l, j)));
        if (i >= 2 && j != i - 1)
          add("chain6.5" + ijl, m(h(i - 1), e(i, j)) + m(e(i, l), e(l, j)), {S(E(j, i, -1))},
              b.mh(h(i - 1), i, j) + m(e(i, l), e(l, i)) - m(e(j, l), e(l, j)) + m(e(j, i), e(i, j)));
      }

  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) {
      auto ij = idx({{"i", i}, {"j", j}});
      if (j <= k - 1 && i != j && i != j + 1)
        add("chain5.3" + ij, m(e(i, j + 1), e(j, j + 1)), {S(E(j + 1, j, half, 2))},
            m(e(i, j), h(j)) - m(e(i, j + 1), e(j + 1, j)));
      if (i <= k - 1 && j != i && j != i + 1) {
        add("chain5.5" + ij, m(e(i + 1, i), e(i + 1, j)), {S(E(i, i + 1, half, 2))},
            m(h(i), e(i, j)) - m(e(i, i + 1), e(i + 1, j)));
        add("chain6.6" + ij, m(h(i), e(i, i + 1)) - m(e(i, j), e(j, i + 1)), {S(E(i + 1, i, -1))},
            m(h(i), h(i)) - 2 * m(e(i + 1, i), e(i, i + 1)) + m(e(i + 1, j), e(j, i + 1)) - m(e(i, j), e(j, i)));
      }
      if (j >= 2 && i != j - 1 && i != j)
        add("chain6.2" + ij, m(e(i, j - 1), e(j, j - 1)), {S(E(j - 1, j, -half, 2))},
            m(e(i, j), h(j - 1)) + m(e(i, j - 1), e(j - 1, j)));
      if (i >= 2 && j != i - 1 && j != i)
        add("chain6.4" + ij, m(e(i - 1, i), e(i - 1, j)), {S(E(i, i - 1, -half, 2))},
            m(h(i - 1), e(i, j)) + m(e(i, i - 1), e(i - 1, j)));
      if (i >= 2 && i <= k - 1 && j != i && j != i + 1)
        add("chain6.7" + idx({{"i", i}, {"l", j}}), m(e(i + 1, i), h(i - 1)) + m(e(i + 1, j), e(j, i)),
            {S(E(i, i + 1))},
            m(h(i), h(i - 1)) + m(e(i + 1, i), e(i, i + 1)) + m(e(i, j), e(j, i)) - m(e(i + 1, j), e(j, i + 1)));
    }

  if (k == 2) add("lu_redundancy", m(e(2, 1), e(2, 1)), {S(E(1, 2, 1, 4))}, 24 * m(e(1, 2), e(1, 2)));
  return out;
}

GeneratorSet u_generators(int k) {
  if (k < 2) throw invalid_size("k must be at least 2");
  B b{k};
  int e12 = b.e(1, 2), e21 = b.e(2, 1), g = b.g();
  return {k == 2 ? b.m(e12, e12) : b.m(e12, b.e(3, 1)), b.skew(e12, e21), b.br(g, g), b.br(g, e12)};
}

GeneratorSet lu_generators(int k) {
  GeneratorSet t = u_generators(k);
  GeneratorSet out{t[1], t[2], t[3]};
  if (k >= 3) out.push_back(t[0]);
  return out;
}

std::vector<NamedPoly> list_L(int k) {
  if (k < 2) throw invalid_size("k must be at least 2");
  B b{k};
  std::vector<NamedPoly> out;
  auto add = [&](int fam, UPoly f) { out.push_back({"L" + std::to_string(fam), std::move(f)}); };
  auto e = [&](int i, int j) { return b.e(i, j); };
  auto h = [&](int i) { return b.h(i); };
  auto m = [&](int p, int q) { return b.m(p, q); };
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      for (int l = 1; l <= k; ++l)
        for (int p = 1; p <= k; ++p)
          if (i != j && l != p && j != l) add(1, m(e(i, j), e(l, p)));
  for (int i = 1; i <= k - 1; ++i)
    for (int j = 1; j <= k; ++j)
      for (int l = 1; l <= k; ++l) {
        if (j == l) continue;
        if (j != i && j != i + 1) add(2, m(h(i), e(j, l)));
        if (l != i && l != i + 1) add(3, m(e(j, l), h(i)));
      }
  for (int i = 1; i <= k - 1; ++i)
    for (int j = 1; j <= k - 1; ++j)
      if (j < i - 1 || j > i + 1) add(4, m(h(i), h(j)));
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      for (int l = 1; l <= k; ++l) {
        if (!distinct({i, j, l})) continue;
        if (j >= 2) add(5, m(e(i, j), h(j - 1)) + m(e(i, l), e(l, j)));
        if (i >= 2) add(6, m(h(i - 1), e(i, j)) + m(e(i, l), e(l, j)));
      }
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) {
      if (i == j) continue;
      if (i <= k - 1 && j >= 2) add(7, m(h(i), e(i, j)) + m(e(i, j), h(j - 1)));
      if (i >= 2 && j <= k - 1) add(8, m(h(i - 1), e(i, j)) + m(e(i, j), h(j)));
      if (i >= 2 && i <= k - 1) add(9, m(h(i - 1), h(i)) + m(e(i, j), e(j, i)));
    }
  for (int i = 1; i <= k - 1; ++i)
    for (int j = 1; j <= k; ++j)
      for (int l = 1; l <= k; ++l)
        if (j != i && l != i + 1) add(10, m(e(i, j), e(j, i)) + m(e(i + 1, l), e(l, i + 1)) - m(h(i), h(i)));
  for (int p = 0; p < k * k - 1; ++p)
    for (int q = 0; q < k * k - 1; ++q) add(11, b.skew(p, q));
  add(12, b.br(b.g(), b.g()));
  for (int q = 0; q < k * k - 1; ++q) add(12, b.br(b.g(), q));
  for (int i = 1; i <= k - 2; ++i) add(13, b.br(h(i), h(i + 1)));
  return out;
}

std::vector<Check> verify_generators(int k) {
  std::vector<Check> out;
  GeneratorSet gens = u_generators(k);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool id = is_identity(gens[i]);
    out.push_back({"generator " + std::to_string(i + 1) + " is an identity", id ? "true" : "false", "true", id});
  }
  ConsequenceSpace J = consequence_space(gens, k);

  std::map<std::string, std::pair<std::size_t, std::size_t>> member, ident;
  std::map<std::string, std::string> first_miss;
  std::vector<std::string> order;
  for (const auto& [fam, f] : list_L(k)) {
    if (!member.count(fam)) order.push_back(fam);
    auto& mm = member[fam];
    auto& ii = ident[fam];
    ++mm.second, ++ii.second;
    if (J.contains(f)) {
      ++mm.first;
    } else if (!first_miss.count(fam)) {
      first_miss[fam] = format_upoly(f);
    }
    if (is_identity(f)) ++ii.first;
  }
  for (const auto& fam : order) {
    auto [ok, n] = member[fam];
    std::string comp = ratio(ok, n);
    if (first_miss.count(fam)) comp += " (first outside: " + first_miss[fam] + ")";
    out.push_back({fam + " lies in the ideal", comp, ratio(n, n), ok == n});
    auto [oi, ni] = ident[fam];
    out.push_back({fam + " are identities", ratio(oi, ni), ratio(ni, ni), oi == ni});
  }

  // Quotient dimension of each block against the degree-2 codimension cells.
  std::size_t K = static_cast<std::size_t>(k) * k, s = K - 1;
  std::size_t want[4] = {K, s, s, 1};
  std::size_t total[4] = {2 * s * s, 2 * s, 2 * s, 2};
  const char* names[4] = {"SS", "SG", "GS", "GG"};
  for (int t = 0; t < 4; ++t) {
    std::size_t q = total[t] - J.dim(t);
    out.push_back({std::string("degree-2 quotient of block ") + names[t], std::to_string(q), std::to_string(want[t]),
                   q == want[t]});
  }

  // For k = 2 the (L,U) list drops x^{e12 e12} y^{e12 e12}, which vanishes
  // only once E12^3 = 0 may be used inside a product.
  GeneratorSet lu = lu_generators(k);
  ConsequenceSpace LU = consequence_space(lu, k);
  if (k == 2) {
    bool implied = LU.contains(gens[0]);
    out.push_back({"x^{e12 e12} y^{e12 e12} from the (L,U) list inside F^U", implied ? "implied" : "not implied",
                   "not implied", !implied});
    lu.push_back(gens[0]);
    LU = consequence_space(lu, k);
    BasisIndexM e12 = BasisIndexM::E(k, 1, 2), e21 = BasisIndexM::E(k, 2, 1);
    PBWElem E12 = PBWElem::gen(e12);
    bool nil = rep_phi(pbw_pow(E12, 3)).is_zero();
    out.push_back({"E12^3 acts as zero", nil ? "true" : "false", "true", nil});
    Endo lhs = op_mul(phi_unit(e12, e21), rep_phi(pbw_pow(E12, 2)));
    Endo rhs = Rational(-2) * phi_unit(e12, e12);
    out.push_back({"phi_{e12 e21} E12^2", lhs.str(), rhs.str(), lhs == rhs});
  }
  bool same = true;
  for (int t = 0; t < 4; ++t) {
    same = same && LU.dim(t) == J.dim(t);
    for (const auto& [lead, row] : LU.span(t).rows()) same = same && J.span(t).contains(row);
  }
  out.push_back({k == 2 ? "(L,U) generators with x^{e12 e12} y^{e12 e12} give the same degree-2 ideal"
                        : "(L,U) generators give the same degree-2 ideal",
                 same ? "true" : "false", "true", same});
  return out;
}

std::vector<Check> minimality_witness(int k) {
  std::vector<Check> out;
  GeneratorSet gens = u_generators(k);
  const char* names[4] = {"SS", "SG", "GS", "GG"};
  auto dims = [&](const ConsequenceSpace& cs) {
    std::string s;
    for (int t = 0; t < 4; ++t) s += std::string(t ? " " : "") + names[t] + "=" + std::to_string(cs.dim(t));
    return s;
  };
  auto support = [&](const GeneratorSet& g, std::initializer_list<int> allowed, const std::string& name) {
    ConsequenceSpace cs = consequence_space(g, k);
    bool ok = true, any = false;
    for (int t = 0; t < 4; ++t) {
      bool in = std::find(allowed.begin(), allowed.end(), t) != allowed.end();
      if (!in && cs.dim(t) != 0) ok = false;
      if (in && cs.dim(t) != 0) any = true;
    }
    std::string want;
    for (int t : allowed) want += std::string(want.empty() ? "" : ",") + names[t];
    out.push_back({name, dims(cs), "support in " + want, ok && any});
  };
  support({gens[2]}, {3}, "consequences of [x^g,y^g] stay in GG");
  support({gens[3]}, {1, 2}, "consequences of [x^g,y^e12] stay in SG and GS");
  support({gens[0], gens[1]}, {0}, "consequences of f1 and f2 stay in SS");

  UPoly sum = gens[0] + gens[1] + gens[2] + gens[3];
  Endo pgg = phi_unit(BasisIndexM::G(k), BasisIndexM::G(k));
  Endo p12 = phi_unit(BasisIndexM::E(k, 1, 2), BasisIndexM::E(k, 1, 2));
  UPoly s1 = substitute_swap(sum, {}, {{1, pgg}, {2, pgg}});
  out.push_back({"sum of generators under (phi_gg, phi_gg)", format_upoly(s1), format_upoly(gens[2]), s1 == gens[2]});
  UPoly s2 = substitute_swap(sum, {}, {{1, pgg}, {2, p12}});
  out.push_back({"sum of generators under (phi_gg, phi_e12e12)", format_upoly(s2), format_upoly(gens[3]), s2 == gens[3]});

  for (std::size_t i = 0; i < gens.size(); ++i) {
    GeneratorSet rest;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) rest.push_back(gens[j]);
    bool in = consequence_space(rest, k).contains(gens[i]);
    out.push_back({"generator " + std::to_string(i + 1) + " is not implied by the others", in ? "implied" : "not implied",
                   "not implied", !in});
  }

  // Skew-symmetry of the consequences of f2 on blocks with equal first indices.
  ConsequenceSpace c2 = consequence_space({gens[1]}, k);
  std::size_t skew_ok = 0, skew_n = 0;
  for (int a = 0; a < k * k; ++a)
    for (const auto& F : c2.block_basis(a, a)) {
      ++skew_n;
      if (substitute_swap(F, {{1, 2}, {2, 1}}, {}) == UPoly(k) - F) ++skew_ok;
    }
  out.push_back({"consequences of f2 are skew on equal first indices", ratio(skew_ok, skew_n), ratio(skew_n, skew_n),
                 skew_ok == skew_n && skew_n > 0});
  // Every block at once: patterns forget the first indices, so swapping the
  // variables together with their first indices is swap_pattern.
  std::size_t pat_ok = 0, pat_n = 0;
  for (int t = 0; t < 4; ++t)
    for (const auto& [lead, row] : c2.span(t).rows()) {
      ++pat_n;
      SparseRow neg = row;
      for (auto& [col, q] : neg) q = -q;
      if (swap_pattern(row, k) == neg) ++pat_ok;
    }
  out.push_back({"full basis of consequences of f2 is skew under the swap carrying first indices", ratio(pat_ok, pat_n),
                 ratio(pat_n, pat_n), pat_ok == pat_n && pat_n > 0});
  bool f1_skew = substitute_swap(gens[0], {{1, 2}, {2, 1}}, {}) == UPoly(k) - gens[0];
  out.push_back({"f1 is not skew", f1_skew ? "skew" : "not skew", "not skew", !f1_skew});

  MatElem e12 = basis_matrix(BasisIndexM::E(k, 1, 2));
  std::map<int, Tensor2k> tuple{{1, Tensor2k::pure(1, 2, e12)}, {2, Tensor2k::pure(2, 1, e12)}};
  MatElem e11 = MatElem::unit(k, 1, 1);
  Tensor2k want;
  want.k = k;
  want.parts[{1, 1}] = e11;
  want.parts[{2, 2}] = Rational(-1) * e11;
  Tensor2k got = evaluate_tensor2k(gens[1], tuple);
  out.push_back({"f2 at (e12 (x) e12, e21 (x) e12)", got.str(), want.str(), got == want});
  ConsequenceSpace c1 = consequence_space({gens[0]}, k);
  std::size_t zero = 0, n1 = 0;
  for (const auto& F : c1.basis()) {
    ++n1;
    if (evaluate_tensor2k(F, tuple).is_zero()) ++zero;
  }
  out.push_back({"consequences of f1 vanish at the same tuple", ratio(zero, n1), ratio(n1, n1), zero == n1 && n1 > 0});
  return out;
}

std::vector<Check> replay_chains(int k) {
  std::vector<Check> out;
  ConsequenceSpace J = consequence_space(u_generators(k), k);
  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
  std::map<std::string, std::string> miss;
  std::vector<std::string> order;
  for (const auto& c : deduction_chains(k)) {
    std::string fam = c.name.substr(0, c.name.find('('));
    if (!tally.count(fam)) order.push_back(fam);
    auto& t = tally[fam];
    ++t.second;
    UPoly r = deduce(c.start, c.steps);
    bool ok = r == c.result && (c.result == c.target || J.contains(c.result - c.target));
    if (ok) {
      ++t.first;
    } else if (!miss.count(fam)) {
      miss[fam] = c.name + " gave " + format_upoly(r);
    }
  }
  for (const auto& fam : order) {
    auto [ok, n] = tally[fam];
    std::string comp = ratio(ok, n);
    if (miss.count(fam)) comp += " (" + miss[fam] + ")";
    out.push_back({"chain " + fam, comp, ratio(n, n), ok == n});
  }
  return out;
}

std::vector<Check> differential_generator_check(int k) {
  BasisIndexM g = BasisIndexM::G(k), e12 = BasisIndexM::E(k, 1, 2), e21 = BasisIndexM::E(k, 2, 1);
  PBWElem rgg = preimage_rho(g, g), r1212 = preimage_rho(e12, e12), r1221 = preimage_rho(e12, e21);
  PBWElem y = rgg + r1212;
  PBWElem y2 = r1221;
  if (k >= 3) y2 += preimage_rho(e12, BasisIndexM::E(k, 3, 1));
  std::vector<LTerm> terms{
      {1, {{1, rgg}, {2, y}}},
      {-1, {{2, y}, {1, rgg}}},
      {1, {{1, r1212}, {2, y2}}},
      {-1, {{2, r1212}, {1, r1221}}},
  };
  UPoly pushed = push_through_rep(k, terms);
  UPoly want(k);
  for (const auto& f : lu_generators(k)) want += f;
  std::vector<Check> out;
  out.push_back({"differential generator through rep_phi", format_upoly(pushed), format_upoly(want), pushed == want});
  if (k <= 4) {
    bool id = is_identity(pushed);
    out.push_back({"differential generator image is an identity", id ? "true" : "false", "true", id});
  }
  return out;
}

}  // namespace mkpi
