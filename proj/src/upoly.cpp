#include "mkpi/upoly.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <numeric>

namespace mkpi {

bool valid_exp(const ExpIndex& e, int k) {
  int g = k * k - 1;
  if (e.a < 0 || e.b < 0 || e.a > g || e.b > g) return false;
  return (e.a == g) == (e.b == g);
}

std::vector<ExpIndex> all_exps(int k) {
  std::vector<ExpIndex> out;
  int s = k * k - 1;
  out.reserve(s * s + 1);
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) out.push_back({a, b});
  out.push_back(ExpIndex::gg(k));
  return out;
}

UPoly UPoly::monomial(int k, UMonomial m, const Rational& q) {
  UPoly f(k);
  f.add(m, q);
  return f;
}

void UPoly::add(const UMonomial& m, const Rational& q) {
  if (sgn(q) == 0) return;
  for (const auto& fac : m)
    if (!valid_exp(fac.exp, k_)) throw invalid_exponent("exponent pair outside U");
  auto [it, fresh] = t_.try_emplace(m, q);
  if (!fresh) {
    it->second += q;
    if (sgn(it->second) == 0) t_.erase(it);
  }
}

Rational UPoly::coeff(const UMonomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Rational(0) : it->second;
}

std::set<int> UPoly::variables() const {
  std::set<int> v;
  for (const auto& [m, q] : t_)
    for (const auto& f : m) v.insert(f.var);
  return v;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (k_ == 0) k_ = o.k_;
  for (const auto& [m, q] : o.t_) add(m, q);
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (k_ == 0) k_ = o.k_;
  for (const auto& [m, q] : o.t_) add(m, -q);
  return *this;
}

UPoly& UPoly::operator*=(const Rational& q) {
  if (sgn(q) == 0) {
    t_.clear();
    return *this;
  }
  for (auto& kv : t_) kv.second *= q;
  return *this;
}

UPoly upoly_mul(const UPoly& f, const UPoly& g) {
  UPoly out(f.size() ? f.size() : g.size());
  for (const auto& [m1, q1] : f.terms())
    for (const auto& [m2, q2] : g.terms()) {
      UMonomial m = m1;
      m.insert(m.end(), m2.begin(), m2.end());
      out.add(m, q1 * q2);
    }
  return out;
}

UPoly commutator(const UPoly& f, const UPoly& g) { return upoly_mul(f, g) - upoly_mul(g, f); }

std::string format_exp(const ExpIndex& e, int k) {
  return "[" + BasisIndexM::at(k, e.a).name() + "|" + BasisIndexM::at(k, e.b).name() + "]";
}

std::string format_upoly(const UPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, q] : f.terms()) {
    Rational a = abs(q);
    if (first) {
      if (sgn(q) < 0) out += "-";
    } else {
      out += sgn(q) < 0 ? " - " : " + ";
    }
    first = false;
    if (a != 1) out += a.get_str() + "*";
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) out += " ";
      out += "x" + std::to_string(m[i].var) + "^" + format_exp(m[i].exp, f.size());
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(const std::string& s, int k) : s_(s), k_(k) {}

  UPoly parse() {
    UPoly f = poly();
    ws();
    if (p_ != s_.size()) fail("unexpected character '" + std::string(1, s_[p_]) + "'");
    return f;
  }

 private:
  const std::string& s_;
  int k_;
  std::size_t p_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw upoly_syntax_error(msg, p_); }

  void ws() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool peek(char c) {
    ws();
    return p_ < s_.size() && s_[p_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++p_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  long integer() {
    ws();
    std::size_t start = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (start == p_) fail("expected an integer");
    if (p_ - start > 9) fail("integer too large");
    return std::stol(s_.substr(start, p_ - start));
  }

  UPoly poly() {
    UPoly f(k_);
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    UPoly t = term();
    f += neg ? Rational(-1) * t : t;
    for (;;) {
      if (eat('+')) f += term();
      else if (eat('-')) f -= term();
      else break;
    }
    return f;
  }

  bool atom_start() {
    ws();
    return p_ < s_.size() && (s_[p_] == 'x' || s_[p_] == '[' || s_[p_] == '(');
  }

  UPoly term() {
    ws();
    Rational c = 1;
    bool has_coeff = false;
    if (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) {
      long num = integer();
      long den = 1;
      if (eat('/')) {
        den = integer();
        if (den == 0) fail("zero denominator");
      }
      c = rat(num, den);
      has_coeff = true;
      eat('*');
    }
    if (!atom_start()) {
      if (has_coeff && sgn(c) == 0) return UPoly(k_);
      fail("expected a factor");
    }
    UPoly f = UPoly::monomial(k_, {}, c);
    while (atom_start()) f = upoly_mul(f, atom());
    return f;
  }

  UPoly atom() {
    if (eat('[')) {
      UPoly a = poly();
      expect(',');
      UPoly b = poly();
      expect(']');
      return commutator(a, b);
    }
    if (eat('(')) {
      UPoly a = poly();
      expect(')');
      return a;
    }
    expect('x');
    std::size_t at = p_;
    long var = integer();
    if (var < 1) {
      p_ = at;
      fail("variable index must be positive");
    }
    expect('^');
    expect('[');
    std::size_t first_at = p_;
    auto first = slot();
    expect('|');
    auto second = slot();
    expect(']');
    if (first.size() != 1 || first.begin()->second != 1) {
      p_ = first_at;
      fail("first exponent index must be a basis element");
    }
    int a = first.begin()->first;
    UPoly f(k_);
    for (const auto& [b, q] : second) {
      ExpIndex e{a, b};
      if (!valid_exp(e, k_))
        throw invalid_exponent("invalid exponent pair " + format_exp(e, k_) + " at position " +
                               std::to_string(first_at));
      f.add({Factor{static_cast<int>(var), e}}, q);
    }
    return f;
  }

  // One exponent slot as a combination of basis positions.
  std::map<int, Rational> slot() {
    ws();
    std::size_t start = p_;
    std::string tok;
    while (p_ < s_.size() && s_[p_] != '|' && s_[p_] != ']') {
      if (!std::isspace(static_cast<unsigned char>(s_[p_]))) tok += s_[p_];
      ++p_;
    }
    std::map<int, Rational> out;
    try {
      if (!tok.empty() && tok[0] == 'h') {
        std::string body = tok.substr(1);
        auto comma = body.find(',');
        bool general = comma != std::string::npos || (body.size() == 2 && k_ < 10);
        if (general) {
          int i = comma != std::string::npos ? std::stoi(body.substr(0, comma)) : body[0] - '0';
          int j = comma != std::string::npos ? std::stoi(body.substr(comma + 1)) : body[1] - '0';
          for (const auto& [b, q] : h_general(i, j, k_)) out[b.pos] += q;
          return out;
        }
      }
      out[parse_basis_name(tok, k_).pos] = 1;
    } catch (const std::logic_error& e) {
      p_ = start;
      fail("bad exponent '" + tok + "': " + e.what());
    }
    return out;
  }
};

}  // namespace

UPoly parse_upoly(const std::string& text, int k) {
  if (k < 2) throw invalid_size("k must be at least 2");
  UPoly f = Parser(text, k).parse();
  auto vars = f.variables();
  int expect = 1;
  for (int v : vars)
    if (v != expect++) throw upoly_syntax_error("variable indices must be 1..n without gaps", 0);
  return f;
}

namespace {

// Row b of an endomorphism: the images phi_{b c} with their coefficients.
std::vector<std::pair<int, Rational>> endo_row(const Endo& u, int b) {
  std::vector<std::pair<int, Rational>> row;
  for (auto it = u.coeffs().lower_bound({b, INT_MIN}); it != u.coeffs().end() && it->first.first == b; ++it)
    row.emplace_back(it->first.second, it->second);
  return row;
}

void expand_product(const std::vector<std::vector<std::pair<Factor, Rational>>>& choices, const Rational& coef,
                    UPoly& out) {
  UMonomial m(choices.size());
  std::vector<std::size_t> idx(choices.size(), 0);
  for (const auto& c : choices)
    if (c.empty()) return;
  for (;;) {
    Rational q = coef;
    for (std::size_t i = 0; i < choices.size(); ++i) {
      m[i] = choices[i][idx[i]].first;
      q *= choices[i][idx[i]].second;
    }
    out.add(m, q);
    std::size_t i = 0;
    while (i < choices.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
    if (i == choices.size()) return;
  }
}

}  // namespace

UPoly act_on_upoly(const UPoly& f, const PBWElem& u) {
  int k = f.size();
  UPoly out(k);
  if (u.is_zero()) return out;
  if (u.size() != k) throw invalid_size("PBW element and polynomial of different sizes");
  std::map<std::size_t, TensorElem> split;
  for (const auto& [m, q] : f.terms()) {
    std::size_t n = m.size();
    if (n == 0) {
      // a constant is acted on through the counit
      auto it = u.terms().find(Monomial(k * k - 1, 0));
      if (it != u.terms().end()) out.add(m, q * it->second);
      continue;
    }
    auto sit = split.find(n);
    if (sit == split.end()) sit = split.emplace(n, comultiply_iter(u, static_cast<int>(n))).first;
    for (const auto& [parts, c] : sit->second.terms()) {
      std::vector<std::vector<std::pair<Factor, Rational>>> choices(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& fac = m[i];
        Endo r = rep_phi_monomial(k, parts[i]);
        for (auto& [cpos, coef] : endo_row(r, fac.exp.b)) {
          ExpIndex e{fac.exp.a, cpos};
          if (!valid_exp(e, k)) throw std::logic_error("action left U");
          choices[i].emplace_back(Factor{fac.var, e}, coef);
        }
      }
      expand_product(choices, q * c, out);
    }
  }
  return out;
}

UPoly substitute_swap(const UPoly& f, const std::map<int, int>& sigma, const std::map<int, Endo>& exps) {
  int k = f.size();
  std::set<int> images;
  for (const auto& [from, to] : sigma) {
    if (to < 1) throw std::invalid_argument("substitution target must be a positive variable");
    if (!images.insert(to).second) throw std::invalid_argument("substitution is not a permutation");
  }
  for (const auto& [v, e] : exps)
    if (!in_U(e)) throw invalid_exponent("substitution exponent outside U");
  auto vars = f.variables();
  std::set<int> targets;
  for (int v : vars) {
    auto it = sigma.find(v);
    if (!targets.insert(it == sigma.end() ? v : it->second).second)
      throw std::invalid_argument("substitution is not a permutation of the variables");
  }
  UPoly out(k);
  for (const auto& [m, q] : f.terms()) {
    std::vector<std::vector<std::pair<Factor, Rational>>> choices(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      const auto& fac = m[i];
      auto sit = sigma.find(fac.var);
      int var = sit == sigma.end() ? fac.var : sit->second;
      auto eit = exps.find(fac.var);
      if (eit == exps.end()) {
        choices[i].emplace_back(Factor{var, fac.exp}, 1);
        continue;
      }
      // exps[v] * phi_ab = sum_c exps[v]_{c,a} phi_{c,b}
      for (const auto& [key, coef] : eit->second.coeffs()) {
        if (key.second != fac.exp.a) continue;
        ExpIndex e{key.first, fac.exp.b};
        if (!valid_exp(e, k)) throw invalid_exponent("substitution produced an exponent outside U");
        choices[i].emplace_back(Factor{var, e}, coef);
      }
    }
    expand_product(choices, q, out);
  }
  return out;
}

MatElem evaluate(const UPoly& f, const std::map<int, MatElem>& assignment) {
  int k = f.size();
  std::map<int, std::vector<Rational>> coords;
  for (int v : f.variables()) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw missing_assignment("no value for x" + std::to_string(v));
    if (it->second.size() != k) throw invalid_size("assigned matrix has the wrong size");
    coords[v] = coords_M(it->second);
  }
  MatElem total(k);
  for (const auto& [m, q] : f.terms()) {
    MatElem prod = MatElem::identity(k);
    Rational scale = q;
    for (const auto& fac : m) {
      scale *= coords[fac.var][fac.exp.a];
      if (sgn(scale) == 0) break;
      prod = assoc_mul(prod, basis_matrix(BasisIndexM::at(k, fac.exp.b)));
    }
    if (sgn(scale) != 0) total += scale * prod;
  }
  return total;
}

Tensor2k Tensor2k::pure(int i, int j, const MatElem& m) {
  if (i < 1 || i > 2 || j < 1 || j > 2) throw invalid_index("2x2 unit index out of range");
  Tensor2k t;
  t.k = m.size();
  if (!m.is_zero()) t.parts[{i, j}] = m;
  return t;
}

bool Tensor2k::is_zero() const {
  for (const auto& [ij, m] : parts)
    if (!m.is_zero()) return false;
  return true;
}

std::string Tensor2k::str() const {
  std::string out;
  for (const auto& [ij, m] : parts) {
    if (m.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "e" + std::to_string(ij.first) + std::to_string(ij.second) + " (x) " + m.str();
  }
  return out.empty() ? "0" : out;
}

bool operator==(const Tensor2k& a, const Tensor2k& b) {
  auto nonzero = [](const Tensor2k& t) {
    std::map<std::pair<int, int>, MatElem> p;
    for (const auto& [ij, m] : t.parts)
      if (!m.is_zero()) p.emplace(ij, m);
    return p;
  };
  return nonzero(a) == nonzero(b);
}

Tensor2k evaluate_tensor2k(const UPoly& f, const std::map<int, Tensor2k>& assignment) {
  int k = f.size();
  for (int v : f.variables())
    if (!assignment.count(v)) throw missing_assignment("no value for x" + std::to_string(v));
  Tensor2k total;
  total.k = k;
  for (const auto& [m, q] : f.terms()) {
    Tensor2k prod;
    prod.k = k;
    prod.parts[{1, 1}] = MatElem::identity(k);
    prod.parts[{2, 2}] = MatElem::identity(k);
    for (const auto& fac : m) {
      const Tensor2k& x = assignment.at(fac.var);
      Endo phi = phi_unit(BasisIndexM::at(k, fac.exp.a), BasisIndexM::at(k, fac.exp.b));
      Tensor2k next;
      next.k = k;
      for (const auto& [ij, a] : prod.parts)
        for (const auto& [lm, b] : x.parts) {
          if (ij.second != lm.first) continue;
          MatElem c = assoc_mul(a, apply_endo(phi, b));
          auto [it, fresh] = next.parts.try_emplace({ij.first, lm.second}, c);
          if (!fresh) it->second += c;
        }
      prod = std::move(next);
    }
    for (auto& [ij, a] : prod.parts) {
      auto [it, fresh] = total.parts.try_emplace(ij, q * a);
      if (!fresh) it->second += q * a;
    }
  }
  std::erase_if(total.parts, [](const auto& kv) { return kv.second.is_zero(); });
  return total;
}

bool is_multilinear(const UPoly& f) {
  std::set<int> common;
  bool first = true;
  for (const auto& [m, q] : f.terms()) {
    std::set<int> vs;
    for (const auto& fac : m)
      if (!vs.insert(fac.var).second) return false;
    if (first) common = vs;
    else if (vs != common) return false;
    first = false;
  }
  return true;
}

bool is_identity(const UPoly& f) {
  if (!is_multilinear(f)) throw unsupported_input("identity test needs a multilinear polynomial");
  int k = f.size();
  if (f.is_zero()) return true;
  std::vector<MatElem> bm;
  for (int p = 0; p < k * k; ++p) bm.push_back(basis_matrix(BasisIndexM::at(k, p)));
  std::map<std::vector<int>, MatElem> groups;
  for (const auto& [m, q] : f.terms()) {
    std::vector<std::pair<int, int>> firsts;
    for (const auto& fac : m) firsts.emplace_back(fac.var, fac.exp.a);
    std::sort(firsts.begin(), firsts.end());
    std::vector<int> key;
    for (auto& vf : firsts) key.push_back(vf.second);
    MatElem prod = bm[m.front().exp.b];
    for (std::size_t i = 1; i < m.size(); ++i) prod = assoc_mul(prod, bm[m[i].exp.b]);
    auto [it, fresh] = groups.try_emplace(key, q * prod);
    if (!fresh) it->second += q * prod;
  }
  for (const auto& [key, val] : groups)
    if (!val.is_zero()) return false;
  return true;
}

bool is_identity_exhaustive(const UPoly& f) {
  if (!is_multilinear(f)) throw unsupported_input("identity test needs a multilinear polynomial");
  int k = f.size();
  if (f.is_zero()) return true;
  auto vars = f.variables();
  std::vector<int> vs(vars.begin(), vars.end());
  auto basis = basis_m(k);
  std::vector<std::size_t> idx(vs.size(), 0);
  for (;;) {
    std::map<int, MatElem> asg;
    for (std::size_t i = 0; i < vs.size(); ++i) asg[vs[i]] = basis[idx[i]].second;
    if (!evaluate(f, asg).is_zero()) return false;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == basis.size()) idx[i++] = 0;
    if (i == idx.size()) return true;
  }
}

std::map<ComponentKey, UPoly> decompose_components(const UPoly& f) {
  if (!is_multilinear(f)) throw unsupported_input("components need a multilinear polynomial");
  int k = f.size();
  std::map<ComponentKey, UPoly> out;
  for (const auto& [m, q] : f.terms()) {
    ComponentKey key;
    for (const auto& fac : m) {
      if (fac.exp.is_g(k)) key.I.insert(fac.var);
      else key.a[fac.var] = fac.exp.a;
    }
    auto it = out.try_emplace(key, UPoly(k)).first;
    it->second.add(m, q);
  }
  return out;
}

std::vector<UMonomial> basis_P(int r, int n, int a, int k) {
  if (r < 0 || n < 0 || r > n) throw std::invalid_argument("basis_P needs 0 <= r <= n");
  if (a < 0 || a >= k * k - 1) throw invalid_index("first index must lie in S");
  int s = k * k - 1;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<UMonomial> out;
  do {
    std::vector<int> b(n - r, 0);
    for (;;) {
      UMonomial m;
      m.reserve(n);
      for (int v : perm) {
        if (v <= r) m.push_back({v, ExpIndex::gg(k)});
        else m.push_back({v, ExpIndex{a, b[v - r - 1]}});
      }
      out.push_back(std::move(m));
      int i = 0;
      while (i < n - r && ++b[i] == s) b[i++] = 0;
      if (i == n - r) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

UPoly push_through_rep(int k, const std::vector<LTerm>& terms) {
  UPoly out(k);
  for (const auto& t : terms) {
    std::vector<std::vector<std::pair<Factor, Rational>>> choices;
    for (const auto& [var, u] : t.factors) {
      Endo r = rep_phi(u);
      std::vector<std::pair<Factor, Rational>> c;
      for (const auto& [ab, q] : r.coeffs()) {
        ExpIndex e{ab.first, ab.second};
        if (!valid_exp(e, k)) throw invalid_exponent("image of the exponent lies outside U");
        c.emplace_back(Factor{var, e}, q);
      }
      choices.push_back(std::move(c));
    }
    expand_product(choices, t.coeff, out);
  }
  return out;
}

bool gg_substitution_holds(int k, int a) {
  if (a < 0 || a >= k * k - 1) throw invalid_index("first index must lie in S");
  int e12 = BasisIndexM::E(k, 1, 2).pos, e21 = BasisIndexM::E(k, 2, 1).pos;
  UPoly lhs = UPoly::monomial(k, {{1, {a, e12}}, {2, {a, e21}}});
  UPoly rhs(k);
  Rational w = Rational(1, k);
  for (int i = 1; i <= k - 1; ++i)
    rhs.add({{1, {a, BasisIndexM::H(k, i).pos}}, {2, {a, BasisIndexM::H(k, i).pos}}}, w);
  for (int i = 1; i <= k - 2; ++i)
    rhs.add({{1, {a, BasisIndexM::H(k, i).pos}}, {2, {a, BasisIndexM::H(k, i + 1).pos}}}, w);
  Endo pgg = phi_unit(BasisIndexM::G(k), BasisIndexM::G(k));
  auto basis = basis_m(k);
  for (const auto& [s, ms] : basis)
    for (const auto& [t, mt] : basis) {
      std::map<int, MatElem> asg{{1, ms}, {2, mt}};
      if (apply_endo(pgg, evaluate(lhs, asg)) != evaluate(rhs, asg)) return false;
    }
  return true;
}

}  // namespace mkpi
