#include "mkpi/endo.hpp"

#include <sstream>
#include <vector>

namespace mkpi {

Rational Endo::coeff(int a, int b) const {
  auto it = c_.find({a, b});
  return it == c_.end() ? Rational(0) : it->second;
}

void Endo::add(int a, int b, const Rational& q) {
  if (sgn(q) == 0) return;
  auto [it, fresh] = c_.try_emplace({a, b}, q);
  if (!fresh) {
    it->second += q;
    if (sgn(it->second) == 0) c_.erase(it);
  }
}

std::string Endo::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, q] : c_) {
    if (!first) os << (sgn(q) < 0 ? " - " : " + ");
    else if (sgn(q) < 0) os << "-";
    first = false;
    Rational m = abs(q);
    if (m != 1) os << m.get_str() << "*";
    os << "phi[" << BasisIndexM::at(k_, key.first).name() << "|"
       << BasisIndexM::at(k_, key.second).name() << "]";
  }
  return os.str();
}

static void same_size(int a, int b) {
  if (a != b) throw invalid_size("endomorphism size mismatch");
}

Endo& Endo::operator+=(const Endo& o) {
  if (k_ == 0) k_ = o.k_;
  same_size(k_, o.k_);
  for (const auto& [key, q] : o.c_) add(key.first, key.second, q);
  return *this;
}

Endo& Endo::operator-=(const Endo& o) {
  if (k_ == 0) k_ = o.k_;
  same_size(k_, o.k_);
  for (const auto& [key, q] : o.c_) add(key.first, key.second, -q);
  return *this;
}

Endo& Endo::operator*=(const Rational& q) {
  if (sgn(q) == 0) {
    c_.clear();
    return *this;
  }
  for (auto& kv : c_) kv.second *= q;
  return *this;
}

Endo phi_unit(const BasisIndexM& a, const BasisIndexM& b) {
  same_size(a.k, b.k);
  Endo u(a.k);
  u.add(a.pos, b.pos, 1);
  return u;
}

Endo phi_lin(const BasisIndexM& a, const std::map<BasisIndexM, Rational>& b) {
  Endo u(a.k);
  for (const auto& [bb, q] : b) {
    same_size(a.k, bb.k);
    u.add(a.pos, bb.pos, q);
  }
  return u;
}

Endo endo_identity(int k) {
  Endo u(k);
  for (int a = 0; a < k * k; ++a) u.add(a, a, 1);
  return u;
}

Endo op_mul(const Endo& u, const Endo& v) {
  same_size(u.size(), v.size());
  int n = u.size() * u.size();
  // rows of v grouped by source index
  std::vector<std::vector<std::pair<int, const Rational*>>> rows(n);
  for (const auto& [key, q] : v.coeffs()) rows[key.first].emplace_back(key.second, &q);
  Endo r(u.size());
  for (const auto& [key, q] : u.coeffs())
    for (const auto& [d, p] : rows[key.second]) r.add(key.first, d, q * *p);
  return r;
}

MatElem apply_endo(const Endo& u, const MatElem& x) {
  same_size(u.size(), x.size());
  int k = x.size();
  auto c = coords_M(x);
  std::vector<Rational> out(k * k);
  for (const auto& [key, q] : u.coeffs())
    if (sgn(c[key.first]) != 0) out[key.second] += c[key.first] * q;
  return from_coords(k, out);
}

Endo inner_derivation(const MatElem& c) {
  if (sgn(c.trace()) != 0) throw std::invalid_argument("inner derivation needs a traceless element");
  int k = c.size();
  Endo u(k);
  for (const auto& [a, m] : basis_m(k)) {
    auto img = coords_M(lie_bracket(c, m));
    for (int b = 0; b < k * k; ++b) u.add(a.pos, b, img[b]);
  }
  return u;
}

Endo inner_derivation_E_formula(int i, int j, int k) {
  if (i == j) throw invalid_index("E_ij needs i != j");
  auto e = [k](int a, int b) { return BasisIndexM::E(k, a, b); };
  Endo u(k);
  for (int l = 1; l <= k; ++l) {
    if (l == i || l == j) continue;
    u += phi_unit(e(j, l), e(i, l));
    u -= phi_unit(e(l, i), e(l, j));
  }
  u += phi_lin(e(j, i), h_general(i, j, k));
  // phi_{h_0 .} and phi_{h_k .} vanish
  auto h_term = [&](int l, int sign) {
    if (l >= 1 && l <= k - 1) u.add(BasisIndexM::H(k, l).pos, e(i, j).pos, sign);
  };
  h_term(i - 1, 1);
  h_term(i, -1);
  h_term(j - 1, -1);
  h_term(j, 1);
  return u;
}

bool in_U(const Endo& u) {
  int g = u.size() * u.size() - 1;
  for (const auto& [key, q] : u.coeffs()) {
    bool a_g = key.first == g, b_g = key.second == g;
    if (a_g != b_g) return false;
  }
  return true;
}

Endo block_S(const Endo& u) {
  int g = u.size() * u.size() - 1;
  Endo r(u.size());
  for (const auto& [key, q] : u.coeffs())
    if (key.first != g && key.second != g) r.add(key.first, key.second, q);
  return r;
}

Endo block_G(const Endo& u) {
  int g = u.size() * u.size() - 1;
  Endo r(u.size());
  r.add(g, g, u.coeff(g, g));
  return r;
}

}  // namespace mkpi
