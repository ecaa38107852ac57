#include "mkpi/pbw.hpp"

#include <cctype>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>

namespace mkpi {

int degree(const Monomial& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

bool DeglexLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = degree(a), db = degree(b);
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

namespace {

// Structure constants and caches for one k.  The caches are filled on
// demand; concurrent readers share a lock and inserts are idempotent.
struct LieContext {
  int k;
  int d;
  std::vector<std::vector<std::vector<std::pair<int, Rational>>>> bracket;
  std::vector<Endo> ad;

  mutable std::shared_mutex mu;
  std::map<std::pair<Monomial, int>, PBWElem> mul_memo;
  std::map<Monomial, Endo, DeglexLess> rep_memo;

  explicit LieContext(int kk) : k(kk), d(kk * kk - 1) {
    std::vector<MatElem> mats;
    for (int s = 0; s < d; ++s) mats.push_back(basis_matrix(BasisIndexM::at(k, s)));
    bracket.assign(d, std::vector<std::vector<std::pair<int, Rational>>>(d));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        auto c = coords_M(lie_bracket(mats[a], mats[b]));
        for (int l = 0; l < d; ++l)
          if (sgn(c[l]) != 0) bracket[a][b].emplace_back(l, c[l]);
      }
    for (int s = 0; s < d; ++s) ad.push_back(inner_derivation(mats[s]));
  }
};

LieContext& context(int k) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<LieContext>> all;
  if (k < 2) throw invalid_size("matrix size must be at least 2");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = all[k];
  if (!slot) slot = std::make_unique<LieContext>(k);
  return *slot;
}

PBWElem mul_gen(const PBWElem& f, int x);

// m * x with m a normal monomial and x a generator.
PBWElem mul_mon_gen(LieContext& ctx, const Monomial& m, int x) {
  int last = -1;
  for (int i = ctx.d - 1; i >= 0; --i)
    if (m[i]) {
      last = i;
      break;
    }
  PBWElem out(ctx.k);
  if (last <= x) {
    Monomial r = m;
    ++r[x];
    out.add(r, 1);
    return out;
  }
  {
    std::shared_lock lock(ctx.mu);
    auto it = ctx.mul_memo.find({m, x});
    if (it != ctx.mul_memo.end()) return it->second;
  }
  // w y x = (w x) y + w [y, x]
  Monomial w = m;
  --w[last];
  PBWElem wx = mul_mon_gen(ctx, w, x);
  out = mul_gen(wx, last);
  for (const auto& [l, q] : ctx.bracket[last][x]) {
    PBWElem t = mul_mon_gen(ctx, w, l);
    t *= q;
    out += t;
  }
  std::unique_lock lock(ctx.mu);
  ctx.mul_memo.emplace(std::make_pair(m, x), out);
  return out;
}

PBWElem mul_gen(const PBWElem& f, int x) {
  auto& ctx = context(f.size());
  PBWElem out(f.size());
  for (const auto& [m, q] : f.terms()) {
    PBWElem t = mul_mon_gen(ctx, m, x);
    t *= q;
    out += t;
  }
  return out;
}

std::vector<int> word_of(const Monomial& m) {
  std::vector<int> w;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int e = 0; e < m[i]; ++e) w.push_back(static_cast<int>(i));
  return w;
}

}  // namespace

PBWElem PBWElem::scalar(int k, const Rational& q) {
  PBWElem f(k);
  f.add(Monomial(k * k - 1, 0), q);
  return f;
}

PBWElem PBWElem::gen(int k, int s) {
  if (s < 0 || s >= k * k - 1) throw invalid_index("generator outside S");
  PBWElem f(k);
  Monomial m(k * k - 1, 0);
  m[s] = 1;
  f.add(m, 1);
  return f;
}

PBWElem PBWElem::from_matrix(const MatElem& c) {
  if (sgn(c.trace()) != 0) throw std::invalid_argument("generator must be traceless");
  auto co = coords_M(c);
  PBWElem f(c.size());
  for (int s = 0; s < c.size() * c.size() - 1; ++s)
    if (sgn(co[s]) != 0) f += co[s] * gen(c.size(), s);
  return f;
}

void PBWElem::add(const Monomial& m, const Rational& q) {
  if (sgn(q) == 0) return;
  auto [it, fresh] = t_.try_emplace(m, q);
  if (!fresh) {
    it->second += q;
    if (sgn(it->second) == 0) t_.erase(it);
  }
}

int PBWElem::degree() const {
  return t_.empty() ? -1 : mkpi::degree(t_.rbegin()->first);
}

std::string monomial_str(const Monomial& m, int k) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += "*";
    s += BasisIndexM::at(k, static_cast<int>(i)).name();
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string PBWElem::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [m, q] = *it;
    if (!first) os << (sgn(q) < 0 ? " - " : " + ");
    else if (sgn(q) < 0) os << "-";
    first = false;
    Rational a = abs(q);
    bool unit = mkpi::degree(m) == 0;
    if (unit) os << a.get_str();
    else {
      if (a != 1) os << a.get_str() << "*";
      os << monomial_str(m, k_);
    }
  }
  return os.str();
}

PBWElem& PBWElem::operator+=(const PBWElem& o) {
  if (k_ == 0) k_ = o.k_;
  if (o.k_ != 0 && o.k_ != k_) throw invalid_size("PBW size mismatch");
  for (const auto& [m, q] : o.t_) add(m, q);
  return *this;
}

PBWElem& PBWElem::operator-=(const PBWElem& o) {
  if (k_ == 0) k_ = o.k_;
  if (o.k_ != 0 && o.k_ != k_) throw invalid_size("PBW size mismatch");
  for (const auto& [m, q] : o.t_) add(m, -q);
  return *this;
}

PBWElem& PBWElem::operator*=(const Rational& q) {
  if (sgn(q) == 0) t_.clear();
  for (auto& kv : t_) kv.second *= q;
  return *this;
}

PBWElem pbw_mul(const PBWElem& f, const PBWElem& g) {
  if (f.size() != g.size()) throw invalid_size("PBW size mismatch");
  PBWElem out(f.size());
  for (const auto& [m, q] : g.terms()) {
    PBWElem t = f;
    for (int x : word_of(m)) t = mul_gen(t, x);
    t *= q;
    out += t;
  }
  return out;
}

PBWElem pbw_pow(const PBWElem& f, int n) {
  PBWElem r = PBWElem::one(f.size());
  for (int i = 0; i < n; ++i) r = pbw_mul(r, f);
  return r;
}

PBWElem pbw_word(int k, const std::vector<int>& word) {
  PBWElem r = PBWElem::one(k);
  for (int x : word) r = mul_gen(r, x);
  return r;
}

PBWElem pbw_action_word(int k, const std::vector<int>& word) {
  return pbw_word(k, std::vector<int>(word.rbegin(), word.rend()));
}

namespace {

struct PbwParser {
  const std::string& s;
  int k;
  ProductOrder order;
  std::size_t p = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("PBW expression, position " + std::to_string(p) + ": " + msg);
  }
  void ws() {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  }
  bool peek(char c) {
    ws();
    return p < s.size() && s[p] == c;
  }
  std::string digits() {
    std::size_t b = p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (b == p) fail("expected digits");
    return s.substr(b, p - b);
  }
  PBWElem expr() {
    ws();
    bool neg = false;
    if (peek('-')) neg = true, ++p;
    else if (peek('+')) ++p;
    PBWElem r = term();
    if (neg) r *= -1;
    while (true) {
      ws();
      if (peek('+')) {
        ++p;
        r += term();
      } else if (peek('-')) {
        ++p;
        r -= term();
      } else {
        return r;
      }
    }
  }
  bool starts_factor() {
    ws();
    if (p >= s.size()) return false;
    char c = s[p];
    return c == 'e' || c == 'h' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
  }
  PBWElem term() {
    PBWElem r = power();
    while (true) {
      if (peek('*')) {
        ++p;
      } else if (!starts_factor()) {
        return r;
      }
      PBWElem f = power();
      r = order == ProductOrder::Standard ? pbw_mul(r, f) : pbw_mul(f, r);
    }
  }
  PBWElem power() {
    PBWElem b = primary();
    if (peek('^')) {
      ++p;
      ws();
      int n = std::stoi(digits());
      b = pbw_pow(b, n);
    }
    return b;
  }
  PBWElem primary() {
    ws();
    if (p >= s.size()) fail("unexpected end");
    char c = s[p];
    if (c == '(') {
      ++p;
      PBWElem r = expr();
      if (!peek(')')) fail("expected ')'");
      ++p;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      if (p < s.size() && s[p] == '/') {
        ++p;
        num += "/" + digits();
      }
      return PBWElem::scalar(k, parse_rational(num));
    }
    if (c == 'e' || c == 'h') {
      ++p;
      std::string a = digits();
      std::string name(1, c);
      if (p < s.size() && s[p] == ',') {
        ++p;
        name += a + "," + digits();
      } else {
        name += a;
      }
      BasisIndexM idx = parse_basis_name(name, k);
      return PBWElem::gen(idx);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

PBWElem parse_pbw(const std::string& text, int k, ProductOrder order) {
  PbwParser ps{text, k, order};
  PBWElem r = ps.expr();
  ps.ws();
  if (ps.p != text.size()) ps.fail("trailing input");
  return r;
}

void TensorElem::add(const std::vector<Monomial>& m, const Rational& q) {
  if (sgn(q) == 0) return;
  auto [it, fresh] = t_.try_emplace(m, q);
  if (!fresh) {
    it->second += q;
    if (sgn(it->second) == 0) t_.erase(it);
  }
}

namespace {

// Distribute e copies of one generator over n slots with multinomial weights.
void distribute(int e, int n, std::vector<int>& cur, int slot, const BigInt& w,
                std::vector<std::pair<std::vector<int>, BigInt>>& out) {
  if (slot == n - 1) {
    cur[slot] = e;
    out.emplace_back(cur, w);
    return;
  }
  BigInt binom = 1;
  for (int c = 0; c <= e; ++c) {
    cur[slot] = c;
    distribute(e - c, n, cur, slot + 1, w * binom, out);
    binom = binom * (e - c) / (c + 1);
  }
}

}  // namespace

TensorElem comultiply_iter(const PBWElem& f, int n) {
  if (n < 2) throw std::invalid_argument("comultiplication needs at least two factors");
  int k = f.size();
  int d = k * k - 1;
  TensorElem out(k, n);
  for (const auto& [m, q] : f.terms()) {
    if (degree(m) * n > kComultiplyCap)
      throw cap_exceeded("comultiplication cap exceeded: degree " + std::to_string(degree(m)) +
                         " into " + std::to_string(n) + " factors");
    std::vector<std::pair<std::vector<Monomial>, BigInt>> acc{{std::vector<Monomial>(n, Monomial(d, 0)), 1}};
    for (int s = 0; s < d; ++s) {
      if (!m[s]) continue;
      std::vector<std::pair<std::vector<int>, BigInt>> splits;
      std::vector<int> cur(n);
      distribute(m[s], n, cur, 0, 1, splits);
      std::vector<std::pair<std::vector<Monomial>, BigInt>> next;
      for (const auto& [slots, w] : acc)
        for (const auto& [sp, w2] : splits) {
          auto t = slots;
          for (int i = 0; i < n; ++i) t[i][s] = static_cast<std::uint8_t>(sp[i]);
          next.emplace_back(std::move(t), w * w2);
        }
      acc = std::move(next);
    }
    // each slot receives letters in ascending order, hence is already normal
    for (const auto& [slots, w] : acc) out.add(slots, q * Rational(w));
  }
  return out;
}

static TensorElem comultiply_slot(const TensorElem& t, bool left) {
  if (t.factors() != 2) throw std::invalid_argument("expects a two-factor tensor");
  TensorElem out(t.size(), 3);
  for (const auto& [f, q] : t.terms()) {
    PBWElem part(t.size());
    part.add(left ? f[0] : f[1], 1);
    TensorElem split = comultiply_iter(part, 2);
    for (const auto& [g, w] : split.terms()) {
      std::vector<Monomial> m = left ? std::vector<Monomial>{g[0], g[1], f[1]}
                                     : std::vector<Monomial>{f[0], g[0], g[1]};
      out.add(m, q * w);
    }
  }
  return out;
}

TensorElem comultiply_left(const TensorElem& t) { return comultiply_slot(t, true); }
TensorElem comultiply_right(const TensorElem& t) { return comultiply_slot(t, false); }

Endo ad_generator(int k, int s) { return context(k).ad.at(s); }

Endo rep_phi_monomial(int k, const Monomial& m) {
  auto& ctx = context(k);
  {
    std::shared_lock lock(ctx.mu);
    auto it = ctx.rep_memo.find(m);
    if (it != ctx.rep_memo.end()) return it->second;
  }
  Endo r;
  int first = -1;
  for (int i = 0; i < ctx.d; ++i)
    if (m[i]) {
      first = i;
      break;
    }
  if (first < 0) {
    r = endo_identity(k);
  } else {
    // ad_first o rep(rest) = op_mul(rep(rest), E_first)
    Monomial rest = m;
    --rest[first];
    r = op_mul(rep_phi_monomial(k, rest), ctx.ad[first]);
  }
  std::unique_lock lock(ctx.mu);
  ctx.rep_memo.emplace(m, r);
  return r;
}

Endo rep_phi(const PBWElem& f) {
  Endo r(f.size());
  for (const auto& [m, q] : f.terms()) r += q * rep_phi_monomial(f.size(), m);
  return r;
}

}  // namespace mkpi
