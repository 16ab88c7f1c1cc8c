#include "unitary/matrices.hpp"

#include <algorithm>
#include <optional>

namespace unitary {

Matrix mat_zero(const Field& F, unsigned n) {
  return Matrix{&F, n, std::vector<uint32_t>((size_t)n * n, 0)};
}

Matrix mat_identity(const Field& F, unsigned n) {
  Matrix I = mat_zero(F, n);
  for (unsigned i = 0; i < n; ++i) I.at(i, i) = F.one();
  return I;
}

Matrix mat_mul(const Matrix& A, const Matrix& B) {
  const Field& F = *A.F;
  if (A.n != B.n || A.F != B.F) throw InvariantError("mat_mul: shape mismatch");
  unsigned n = A.n;
  Matrix C = mat_zero(F, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned k = 0; k < n; ++k) {
      uint32_t aik = A.at(i, k);
      if (aik == 0) continue;
      for (unsigned j = 0; j < n; ++j) {
        uint32_t b = B.at(k, j);
        if (b == 0) continue;
        C.at(i, j) = F.add(C.at(i, j), F.mul(aik, b));
      }
    }
  return C;
}

std::vector<uint32_t> mat_apply(const Matrix& A, const std::vector<uint32_t>& v) {
  const Field& F = *A.F;
  unsigned n = A.n;
  std::vector<uint32_t> w(n, 0);
  for (unsigned i = 0; i < n; ++i) {
    uint32_t acc = 0;
    for (unsigned j = 0; j < n; ++j) {
      uint32_t x = A.at(i, j);
      if (x != 0 && v[j] != 0) acc = F.add(acc, F.mul(x, v[j]));
    }
    w[i] = acc;
  }
  return w;
}

bool is_identity(const Matrix& A) {
  const Field& F = *A.F;
  for (unsigned i = 0; i < A.n; ++i)
    for (unsigned j = 0; j < A.n; ++j)
      if (A.at(i, j) != (i == j ? F.one() : 0)) return false;
  return true;
}

Matrix conj_transpose(const Matrix& A) {
  const Field& F = *A.F;
  Matrix B = mat_zero(F, A.n);
  for (unsigned i = 0; i < A.n; ++i)
    for (unsigned j = 0; j < A.n; ++j) B.at(j, i) = F.frobenius_q(A.at(i, j));
  return B;
}

bool is_unitary(const Matrix& A) {
  return is_identity(mat_mul(A, conj_transpose(A)));
}

Poly char_poly(const Matrix& A) {
  const Field& F = *A.F;
  unsigned n = A.n;
  if (n == 0) return poly_one(F);
  Matrix H = A;

  // Similarity reduction to upper Hessenberg with elementary row/column pairs.
  for (unsigned j = 0; j + 2 < n; ++j) {
    unsigned piv = 0;
    bool found = false;
    for (unsigned r = j + 1; r < n && !found; ++r)
      if (H.at(r, j) != 0) {
        piv = r;
        found = true;
      }
    if (!found) continue;
    if (piv != j + 1) {
      for (unsigned c = 0; c < n; ++c) std::swap(H.at(piv, c), H.at(j + 1, c));
      for (unsigned r = 0; r < n; ++r) std::swap(H.at(r, piv), H.at(r, j + 1));
    }
    uint32_t inv = F.inv(H.at(j + 1, j));
    for (unsigned i = j + 2; i < n; ++i) {
      uint32_t fct = F.mul(H.at(i, j), inv);
      if (fct == 0) continue;
      for (unsigned c = 0; c < n; ++c)
        H.at(i, c) = F.sub(H.at(i, c), F.mul(fct, H.at(j + 1, c)));
      for (unsigned r = 0; r < n; ++r)
        H.at(r, j + 1) = F.add(H.at(r, j + 1), F.mul(fct, H.at(r, i)));
    }
  }

  // p_k = (x - H[k-1][k-1]) p_{k-1} - sum_m H[m-1][k-1] (prod subdiag) p_{m-1}
  std::vector<Poly> p(n + 1, poly_one(F));
  for (unsigned k = 1; k <= n; ++k) {
    Poly lin = poly_from_coeffs(F, {F.neg(H.at(k - 1, k - 1)), F.one()});
    Poly acc = mul(lin, p[k - 1]);
    uint32_t chain = F.one();
    for (unsigned m = k - 1; m >= 1; --m) {
      // chain = prod_{i=m}^{k-1} H[i][i-1]
      chain = F.mul(chain, H.at(m, m - 1));
      if (chain == 0) break;
      uint32_t h = H.at(m - 1, k - 1);
      if (h == 0) continue;
      acc = sub(acc, mul_scalar(p[m - 1], F.mul(h, chain)));
    }
    p[k] = std::move(acc);
  }
  return p[n];
}

namespace {

Poly poly_det(const Field& F, std::vector<std::vector<Poly>>& B, std::vector<unsigned> cols,
              unsigned row) {
  if (cols.empty()) return poly_one(F);
  Poly acc = poly_zero(F);
  for (size_t t = 0; t < cols.size(); ++t) {
    const Poly& entry = B[row][cols[t]];
    if (entry.is_zero()) continue;
    std::vector<unsigned> rest;
    rest.reserve(cols.size() - 1);
    for (size_t s = 0; s < cols.size(); ++s)
      if (s != t) rest.push_back(cols[s]);
    Poly minor = poly_det(F, B, std::move(rest), row + 1);
    Poly term = mul(entry, minor);
    acc = (t % 2 == 0) ? add(acc, term) : sub(acc, term);
  }
  return acc;
}

}  // namespace

Poly char_poly_naive(const Matrix& A) {
  const Field& F = *A.F;
  unsigned n = A.n;
  if (n > 6) throw GuardError("char_poly_naive: n <= 6 required");
  std::vector<std::vector<Poly>> B(n, std::vector<Poly>(n));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      if (i == j)
        B[i][j] = poly_from_coeffs(F, {F.neg(A.at(i, j)), F.one()});
      else
        B[i][j] = poly_const(F, F.neg(A.at(i, j)));
    }
  std::vector<unsigned> cols(n);
  for (unsigned j = 0; j < n; ++j) cols[j] = j;
  return poly_det(F, B, std::move(cols), 0);
}

namespace {

// Plain echelon basis over the field; insert returns false if v was already
// in the span (v is consumed either way).
struct Echelon {
  const Field& F;
  unsigned n;
  std::vector<std::pair<unsigned, std::vector<uint32_t>>> rows;  // (pivot, vec)

  explicit Echelon(const Field& f, unsigned dim) : F(f), n(dim) {}

  void reduce(std::vector<uint32_t>& v) const {
    for (const auto& [piv, row] : rows) {
      if (v[piv] == 0) continue;
      uint32_t fct = v[piv];
      for (unsigned j = 0; j < n; ++j)
        if (row[j] != 0) v[j] = F.sub(v[j], F.mul(fct, row[j]));
    }
  }

  bool insert(std::vector<uint32_t> v) {
    reduce(v);
    unsigned piv = n;
    for (unsigned j = 0; j < n; ++j)
      if (v[j] != 0) {
        piv = j;
        break;
      }
    if (piv == n) return false;
    uint32_t inv = F.inv(v[piv]);
    for (unsigned j = 0; j < n; ++j) v[j] = F.mul(v[j], inv);
    rows.emplace_back(piv, std::move(v));
    return true;
  }
};

// Annihilator of v under A: iterate the Krylov sequence with coefficient
// tracking until the new vector is dependent.
Poly krylov_annihilator(const Matrix& A, std::vector<uint32_t> v) {
  const Field& F = *A.F;
  unsigned n = A.n;
  // local echelon rows carry their expression in terms of k_0..k_t
  struct Row {
    std::vector<uint32_t> vec;
    std::vector<uint32_t> rep;
    unsigned pivot;
  };
  std::vector<Row> rows;
  std::vector<uint32_t> cur = std::move(v);
  for (unsigned t = 0;; ++t) {
    if (t > n) throw InvariantError("min_poly: krylov sequence too long");
    std::vector<uint32_t> vec = cur;
    std::vector<uint32_t> rep(t + 1, 0);
    rep[t] = F.one();
    for (const auto& row : rows) {
      if (vec[row.pivot] == 0) continue;
      uint32_t fct = vec[row.pivot];
      for (unsigned j = 0; j < n; ++j)
        if (row.vec[j] != 0) vec[j] = F.sub(vec[j], F.mul(fct, row.vec[j]));
      for (size_t j = 0; j < row.rep.size(); ++j)
        if (row.rep[j] != 0) rep[j] = F.sub(rep[j], F.mul(fct, row.rep[j]));
    }
    unsigned piv = n;
    for (unsigned j = 0; j < n; ++j)
      if (vec[j] != 0) {
        piv = j;
        break;
      }
    if (piv == n) {
      // dependence: sum rep_j k_j = 0, rep_t = 1
      return make_monic(poly_from_coeffs(F, std::move(rep)));
    }
    uint32_t inv = F.inv(vec[piv]);
    for (unsigned j = 0; j < n; ++j) vec[j] = F.mul(vec[j], inv);
    for (auto& x : rep) x = F.mul(x, inv);
    rows.push_back({std::move(vec), std::move(rep), piv});
    cur = mat_apply(A, cur);
  }
}

}  // namespace

Poly min_poly(const Matrix& A) {
  const Field& F = *A.F;
  unsigned n = A.n;
  Poly m = poly_one(F);
  Echelon seen(F, n);
  for (unsigned s = 0; s < n && m.deg() < (int)n; ++s) {
    std::vector<uint32_t> e(n, 0);
    e[s] = F.one();
    {
      std::vector<uint32_t> probe = e;
      seen.reduce(probe);
      if (std::all_of(probe.begin(), probe.end(), [](uint32_t x) { return x == 0; }))
        continue;
    }
    Poly g = krylov_annihilator(A, e);
    m = lcm(m, g);
    std::vector<uint32_t> w = e;
    for (int step = 0; step <= g.deg(); ++step) {
      if (!seen.insert(w)) break;
      w = mat_apply(A, w);
    }
  }
  return m;
}

Int element_order(const Matrix& A) {
  const Field& F = *A.F;
  Poly m = min_poly(A);
  if (m.deg() < 1 || m.c[0] == 0) throw GuardError("element_order: singular matrix");
  Int V = 1;
  uint64_t p = F.p();
  for (const auto& fe : factorize(m).factors) {
    Int ppow = 1;
    while (ppow < fe.mult) ppow *= p;
    V = lcm(V, tau(fe.phi) * ppow);
  }
  return V;
}

Int element_order_naive(const Matrix& A) {
  Matrix B = A;
  Int ord = 1;
  while (!is_identity(B)) {
    B = mat_mul(B, A);
    ord += 1;
    if (ord > 10000000) throw GuardError("element_order_naive: iteration guard");
  }
  return ord;
}

}  // namespace unitary
