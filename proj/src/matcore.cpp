#include "mkpi/matcore.hpp"

#include <cctype>
#include <sstream>

namespace mkpi {

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("empty rational");
  std::size_t i = 0;
  if (t[0] == '+' || t[0] == '-') i = 1;
  std::size_t slash = t.find('/');
  auto digits = [&](std::size_t a, std::size_t b) {
    if (a >= b) return false;
    for (std::size_t p = a; p < b; ++p)
      if (!std::isdigit(static_cast<unsigned char>(t[p]))) return false;
    return true;
  };
  std::size_t end = slash == std::string::npos ? t.size() : slash;
  if (!digits(i, end) || (slash != std::string::npos && !digits(slash + 1, t.size())))
    throw std::invalid_argument("malformed rational '" + s + "'");
  Rational q;
  if (slash == std::string::npos) {
    q = Rational(BigInt(t.substr(i)));
  } else {
    BigInt den(t.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q = Rational(BigInt(t.substr(i, slash - i)), den);
    q.canonicalize();
  }
  return t[0] == '-' ? Rational(-q) : q;
}

static void check_k(int k) {
  if (k < 2) throw invalid_size("matrix size must be at least 2");
}

BasisIndexM BasisIndexM::H(int k, int i) {
  check_k(k);
  if (i < 1 || i > k - 1) throw invalid_index("h index out of range");
  return {k, i - 1};
}

BasisIndexM BasisIndexM::E(int k, int i, int j) {
  check_k(k);
  if (i < 1 || j < 1 || i > k || j > k || i == j) throw invalid_index("e index out of range");
  return {k, (k - 1) + (i - 1) * (k - 1) + (j - 1 - (j > i ? 1 : 0))};
}

BasisIndexM BasisIndexM::G(int k) {
  check_k(k);
  return {k, k * k - 1};
}

BasisIndexM BasisIndexM::at(int k, int pos) {
  check_k(k);
  if (pos < 0 || pos >= k * k) throw invalid_index("basis position out of range");
  return {k, pos};
}

BasisIndexM::Kind BasisIndexM::kind() const {
  if (pos < k - 1) return Kind::H;
  if (pos == k * k - 1) return Kind::G;
  return Kind::E;
}

int BasisIndexM::i() const {
  switch (kind()) {
    case Kind::H: return pos + 1;
    case Kind::E: return (pos - (k - 1)) / (k - 1) + 1;
    default: return 0;
  }
}

int BasisIndexM::j() const {
  if (kind() != Kind::E) return 0;
  int r = (pos - (k - 1)) % (k - 1) + 1;
  return r >= i() ? r + 1 : r;
}

std::string BasisIndexM::name() const {
  switch (kind()) {
    case Kind::H: return "h" + std::to_string(i());
    case Kind::G: return "g";
    default: break;
  }
  if (k <= 9) return "e" + std::to_string(i()) + std::to_string(j());
  return "e" + std::to_string(i()) + "," + std::to_string(j());
}

BasisIndexM parse_basis_name(const std::string& s, int k) {
  if (s == "g") return BasisIndexM::G(k);
  if (s.size() < 2) throw invalid_index("bad basis name '" + s + "'");
  std::string body = s.substr(1);
  for (char c : body)
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != ',')
      throw invalid_index("bad basis name '" + s + "'");
  if (s[0] == 'h') {
    if (body.find(',') != std::string::npos) throw invalid_index("bad basis name '" + s + "'");
    return BasisIndexM::H(k, std::stoi(body));
  }
  if (s[0] == 'e') {
    auto comma = body.find(',');
    if (comma == std::string::npos) {
      if (body.size() != 2) throw invalid_index("ambiguous index '" + s + "', use eI,J");
      return BasisIndexM::E(k, body[0] - '0', body[1] - '0');
    }
    if (comma == 0 || comma + 1 >= body.size()) throw invalid_index("bad basis name '" + s + "'");
    return BasisIndexM::E(k, std::stoi(body.substr(0, comma)), std::stoi(body.substr(comma + 1)));
  }
  throw invalid_index("bad basis name '" + s + "'");
}

MatElem::MatElem(int k) : k_(k), a_(static_cast<std::size_t>(k) * k) {
  if (k < 1) throw invalid_size("matrix size must be positive");
}

MatElem MatElem::identity(int k) {
  MatElem m(k);
  for (int i = 1; i <= k; ++i) m(i, i) = 1;
  return m;
}

MatElem MatElem::unit(int k, int i, int j) {
  MatElem m(k);
  m(i, j) = 1;
  return m;
}

Rational MatElem::trace() const {
  Rational t;
  for (int i = 1; i <= k_; ++i) t += (*this)(i, i);
  return t;
}

bool MatElem::is_zero() const {
  for (const auto& q : a_)
    if (sgn(q) != 0) return false;
  return true;
}

std::string MatElem::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 1; i <= k_; ++i) {
    if (i > 1) os << "; ";
    for (int j = 1; j <= k_; ++j) os << (j > 1 ? " " : "") << (*this)(i, j).get_str();
  }
  os << "]";
  return os.str();
}

static void same_size(const MatElem& x, const MatElem& y) {
  if (x.size() != y.size()) throw invalid_size("matrix size mismatch");
}

MatElem& MatElem::operator+=(const MatElem& o) {
  same_size(*this, o);
  for (std::size_t p = 0; p < a_.size(); ++p) a_[p] += o.a_[p];
  return *this;
}

MatElem& MatElem::operator-=(const MatElem& o) {
  same_size(*this, o);
  for (std::size_t p = 0; p < a_.size(); ++p) a_[p] -= o.a_[p];
  return *this;
}

MatElem& MatElem::operator*=(const Rational& c) {
  for (auto& q : a_) q *= c;
  return *this;
}

MatElem assoc_mul(const MatElem& x, const MatElem& y) {
  same_size(x, y);
  int k = x.size();
  MatElem r(k);
  for (int i = 1; i <= k; ++i)
    for (int l = 1; l <= k; ++l) {
      if (sgn(x(i, l)) == 0) continue;
      for (int j = 1; j <= k; ++j)
        if (sgn(y(l, j)) != 0) r(i, j) += x(i, l) * y(l, j);
    }
  return r;
}

MatElem lie_bracket(const MatElem& x, const MatElem& y) {
  return assoc_mul(x, y) - assoc_mul(y, x);
}

MatElem basis_matrix(const BasisIndexM& a) {
  int k = a.k;
  switch (a.kind()) {
    case BasisIndexM::Kind::H: {
      MatElem m(k);
      m(a.i(), a.i()) = 1;
      m(a.i() + 1, a.i() + 1) = -1;
      return m;
    }
    case BasisIndexM::Kind::E: return MatElem::unit(k, a.i(), a.j());
    default: return MatElem::identity(k);
  }
}

std::vector<std::pair<BasisIndexM, MatElem>> basis_m(int k) {
  check_k(k);
  std::vector<std::pair<BasisIndexM, MatElem>> out;
  out.reserve(k * k);
  for (int p = 0; p < k * k; ++p) {
    auto a = BasisIndexM::at(k, p);
    out.emplace_back(a, basis_matrix(a));
  }
  return out;
}

std::vector<Rational> coords_M(const MatElem& x) {
  int k = x.size();
  check_k(k);
  std::vector<Rational> c(k * k);
  Rational t = x.trace() / k;
  c[k * k - 1] = t;
  // traceless diagonal d_i = x_ii - t;  sum_l c_l (delta_il - delta_i,l+1) = d_i
  Rational run;
  for (int l = 1; l <= k - 1; ++l) {
    run += x(l, l) - t;
    c[l - 1] = run;
  }
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (i != j) c[BasisIndexM::E(k, i, j).pos] = x(i, j);
  return c;
}

Rational mu_coeff(const MatElem& x, const BasisIndexM& a) {
  if (x.size() != a.k) throw invalid_size("matrix size does not match basis index");
  return coords_M(x)[a.pos];
}

MatElem from_coords(int k, const std::vector<Rational>& c) {
  MatElem m(k);
  for (int p = 0; p < k * k; ++p) {
    if (sgn(c[p]) == 0) continue;
    auto a = BasisIndexM::at(k, p);
    switch (a.kind()) {
      case BasisIndexM::Kind::H:
        m(a.i(), a.i()) += c[p];
        m(a.i() + 1, a.i() + 1) -= c[p];
        break;
      case BasisIndexM::Kind::E: m(a.i(), a.j()) += c[p]; break;
      default:
        for (int i = 1; i <= k; ++i) m(i, i) += c[p];
    }
  }
  return m;
}

std::map<BasisIndexM, Rational> h_general(int i, int j, int k) {
  check_k(k);
  if (i == j || i < 1 || j < 1 || i > k || j > k) throw invalid_index("h_ij needs 1 <= i != j <= k");
  int lo = std::min(i, j), hi = std::max(i, j);
  Rational s = i > j ? -1 : 1;
  std::map<BasisIndexM, Rational> out;
  for (int l = lo; l < hi; ++l) out[BasisIndexM::H(k, l)] = s;
  return out;
}

}  // namespace mkpi
