#include "mkpi/linalg.hpp"
#include "mkpi/pbw.hpp"

namespace mkpi {

PBWElem casimir_x(int i, int j, int k) {
  if (i < 1 || i > k || j < 1 || j > k) throw invalid_index("casimir generator index out of range");
  if (i != j) return PBWElem::gen(BasisIndexM::E(k, i, j));
  PBWElem f(k);
  for (int l = 1; l <= k - 1; ++l) {
    Rational alpha = l >= i ? k - l : -l;
    f += Rational(alpha / k) * PBWElem::gen(BasisIndexM::H(k, l));
  }
  return f;
}

PBWElem casimir(int p, int k) {
  if (p < 2 || p > k) throw std::invalid_argument("casimir index must satisfy 2 <= p <= k");
  std::vector<std::vector<PBWElem>> x(k, std::vector<PBWElem>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) x[i][j] = casimir_x(i + 1, j + 1, k);
  auto pw = x;
  for (int step = 1; step < p; ++step) {
    std::vector<std::vector<PBWElem>> next(k, std::vector<PBWElem>(k, PBWElem(k)));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        for (int l = 0; l < k; ++l) next[i][j] += pbw_mul(pw[i][l], x[l][j]);
    pw = std::move(next);
  }
  PBWElem c(k);
  for (int i = 0; i < k; ++i) c += pw[i][i];
  return c;
}

Rational casimir_eigenvalue_closed(int p, int k) {
  if (p < 1 || p > k) throw std::invalid_argument("eigenvalue index must satisfy 1 <= p <= k");
  if (p == 1) return 0;
  BigInt kp, km;
  BigInt kk = k;
  mpz_pow_ui(kp.get_mpz_t(), kk.get_mpz_t(), p);
  mpz_pow_ui(km.get_mpz_t(), kk.get_mpz_t(), p - 1);
  Rational d = k * k - 1;
  if (p % 2 == 0) return Rational(k) * (Rational(kp - 1) / d + 1);
  return Rational(k * k) * Rational(km - 1) / d;
}

std::vector<Rational> casimir_trace_diagonal(int k) {
  std::vector<Rational> diag(k);
  for (int i = 1; i <= k; ++i) {
    int m = i == 1 ? 1 : (i == k ? -1 : 0);
    diag[i - 1] = m + k - i;
  }
  return diag;
}

Rational casimir_eigenvalue_trace(int p, int k) {
  if (p < 1 || p > k) throw std::invalid_argument("eigenvalue index must satisfy 1 <= p <= k");
  auto diag = casimir_trace_diagonal(k);
  // column vector A^p * ones; the trace of A^p E is the sum of its entries
  std::vector<Rational> v(k, 1);
  for (int step = 0; step < p; ++step) {
    std::vector<Rational> w(k);
    for (int i = 0; i < k; ++i) {
      w[i] = diag[i] * v[i];
      for (int j = i + 1; j < k; ++j) w[i] -= v[j];
    }
    v = std::move(w);
  }
  Rational t = 0;
  for (const auto& q : v) t += q;
  return t;
}

KernelElements kernel_elements(int k) {
  KernelElements out;
  for (int p = 2; p <= k; ++p)
    out.z[p] = casimir(p, k) - PBWElem::scalar(k, casimir_eigenvalue_closed(p, k));
  Rational l2 = casimir_eigenvalue_closed(2, k);
  for (int p = 3; p <= k; ++p) {
    PBWElem c2 = out.z.at(2) + PBWElem::scalar(k, l2);
    PBWElem cp = out.z.at(p) + PBWElem::scalar(k, casimir_eigenvalue_closed(p, k));
    out.z_prime[p] = l2 * cp - casimir_eigenvalue_closed(p, k) * c2;
  }
  out.z_total = pbw_pow(PBWElem::gen(BasisIndexM::E(k, 1, 2)), 3);
  for (int p = 2; p <= k; ++p)
    out.z_total += pbw_mul(PBWElem::gen(BasisIndexM::E(k, 1, p)), out.z.at(p));
  return out;
}

bool in_kernel(const PBWElem& f) { return rep_phi(f).coeffs().empty(); }

std::vector<Rational> c_vector(int p, int q, int k) {
  if (p < 1 || p > k - 1) throw invalid_index("c-vector index out of range");
  std::vector<Rational> c(k - 1);
  for (int l = 1; l <= k - 1; ++l) {
    if (l < p) c[l - 1] = -k + p;
    else if (l > p) c[l - 1] = p;
    else c[l - 1] = p < q ? -k + p : p;
  }
  return c;
}

std::vector<std::vector<Rational>> m_matrix(int s, int k) {
  if (s < 1 || s > k) throw invalid_index("M(s) index out of range");
  int n = k - 1;
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  auto set = [&](int row, int col, int v) {
    if (row >= 1 && row <= n) m[row - 1][col - 1] = v;
  };
  for (int l = 1; l <= n; ++l) {
    if (l < s - 1) {
      set(l, l, 1);
      set(l + 1, l, -1);
    } else if (l > s) {
      set(l - 1, l, 1);
      set(l, l, -1);
    } else if (l == s - 1) {
      for (int r = 1; r <= n; ++r) set(r, l, r == s - 1 ? 2 : 1);
    } else {
      for (int r = 1; r <= n; ++r) set(r, l, r == s ? -2 : -1);
    }
  }
  return m;
}

bool verify_m_inverse(int s, int k) {
  auto m = m_matrix(s, k);
  for (int i = 1; i <= k - 1; ++i) {
    auto c = c_vector(i, s, k);
    for (int j = 1; j <= k - 1; ++j) {
      Rational dot = 0;
      for (int r = 0; r < k - 1; ++r) dot += c[r] * m[r][j - 1];
      if (dot != (i == j ? Rational(-k) : Rational(0))) return false;
    }
  }
  return true;
}

namespace {

// Products below are written as the printed words, read in action order.
struct OpWords {
  int k;
  PBWElem e(int i, int j) const { return PBWElem::gen(BasisIndexM::E(k, i, j)); }
  PBWElem word(std::initializer_list<std::pair<int, int>> letters) const {
    std::vector<int> w;
    for (auto [i, j] : letters) w.push_back(BasisIndexM::E(k, i, j).pos);
    return pbw_action_word(k, w);
  }
  // u then v in action order
  PBWElem then(const PBWElem& u, const PBWElem& v) const { return pbw_mul(v, u); }
};

PBWElem rho_e_target(int k, int r, int s, int i, int j) {
  OpWords o{k};
  if (i == r && j == s) return Rational(1, 4) * o.word({{s, r}, {s, r}, {r, s}, {r, s}});
  if (i == s && j == r) return Rational(-1, 2) * o.word({{s, r}, {s, r}});
  if (j == r) return Rational(-1, 2) * o.word({{s, r}, {s, r}, {i, s}});
  if (i == s) return Rational(1, 2) * o.word({{s, r}, {s, r}, {r, j}});
  return Rational(1, 2) * o.word({{s, r}, {s, r}, {r, j}, {i, s}});
}

PBWElem rho_h_target(int k, int r, int s, int i) {
  OpWords o{k};
  if (s == r + 1 && i == r) return Rational(-1, 2) * o.word({{s, r}, {s, r}, {r, s}});
  if (s == r - 1 && i == r - 1) return Rational(1, 2) * o.word({{s, r}, {s, r}, {r, s}});
  if (i == r) return Rational(-1, 2) * o.word({{s, r}, {s, r}, {r + 1, s}, {r, r + 1}});
  if (i == s - 1) return Rational(1, 2) * o.word({{s, r}, {s, r}, {r, s - 1}, {s - 1, s}});
  if (i == r - 1) return Rational(1, 2) * o.word({{s, r}, {s, r}, {r - 1, s}, {r, r - 1}});
  return Rational(1, 2) * o.word({{s, r}, {s, r}, {i + 1, s}, {r, i}, {i, i + 1}});
}

PBWElem rho_h_e(int k, int i, int r, int s) {
  OpWords o{k};
  auto c = c_vector(i, s, k);
  PBWElem dot(k);
  int slot = 0;
  for (int j = 1; j <= k; ++j) {
    if (j == s) continue;
    PBWElem v = j == r ? Rational(-1) * o.e(s, r) : o.word({{s, j}, {j, r}});
    dot += c[slot++] * v;
  }
  return Rational(-1, 2 * k) * o.then(dot, o.word({{r, s}, {r, s}}));
}

PBWElem rho_h_h(int k, int i, int j) {
  OpWords o{k};
  auto c = c_vector(i, j, k);
  PBWElem dot(k);
  int slot = 0;
  for (int r = 1; r <= k; ++r) {
    if (r == j + 1) continue;
    PBWElem w = r == j ? Rational(1, 2) * o.word({{j, j + 1}, {j + 1, j}})
                       : o.word({{j, r}, {r, j}}) -
                             Rational(1, 4) * o.word({{j + 1, r}, {j + 1, r}, {r, j + 1}, {r, j + 1}});
    dot += c[slot++] * w;
  }
  return Rational(1, k) * o.then(dot, o.word({{j + 1, j}, {j, j + 1}}));
}

}  // namespace

PBWElem preimage_rho(const BasisIndexM& a, const BasisIndexM& b) {
  if (a.k != b.k) throw invalid_size("preimage indices of different sizes");
  int k = a.k;
  using K = BasisIndexM::Kind;
  if (a.kind() == K::G || b.kind() == K::G) {
    if (a.kind() != b.kind()) throw invalid_index("preimage pair mixes g with S");
    PBWElem r = PBWElem::one(k);
    for (int s = 0; s < k * k - 1; ++s) {
      auto x = BasisIndexM::at(k, s);
      r -= preimage_rho(x, x);
    }
    return r;
  }
  if (a.kind() == K::E && b.kind() == K::E) return rho_e_target(k, a.i(), a.j(), b.i(), b.j());
  if (a.kind() == K::E) return rho_h_target(k, a.i(), a.j(), b.i());
  if (b.kind() == K::E) return rho_h_e(k, a.i(), b.i(), b.j());
  return rho_h_h(k, a.i(), b.i());
}

EnvelopingDim enveloping_dim(int k, int degree_cap) {
  if (degree_cap < 1) throw std::invalid_argument("degree cap must be positive");
  auto key = [k](const Endo& u) {
    SparseRow r;
    for (const auto& [ab, q] : u.coeffs()) r[std::int64_t(ab.first) * k * k + ab.second] = q;
    return r;
  };
  EnvelopingDim out;
  RowEchelon span;
  std::vector<Endo> frontier{endo_identity(k)};
  span.insert(key(frontier[0]));
  out.dims_by_degree.push_back(1);
  for (int d = 1; d <= degree_cap; ++d) {
    std::vector<Endo> next;
    for (const auto& u : frontier)
      for (int s = 0; s < k * k - 1; ++s) {
        Endo v = op_mul(u, ad_generator(k, s));
        if (span.insert(key(v))) next.push_back(std::move(v));
      }
    out.dims_by_degree.push_back(static_cast<int>(span.rank()));
    if (next.empty()) {
      out.dimension = static_cast<int>(span.rank());
      out.degree = d - 1;
      return out;
    }
    frontier = std::move(next);
  }
  throw cap_exceeded("enveloping dimension did not stabilize within the degree cap");
}

}  // namespace mkpi
