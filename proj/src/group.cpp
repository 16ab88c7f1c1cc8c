#include "unitary/group.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace unitary {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw GuardError(msg);
}

void validate_prime_power(uint64_t q) {
  if (q < 2) throw GuardError("q must be a prime power >= 2");
  if (factor_integer(Int(q)).size() != 1) throw GuardError("q must be a prime power");
}

}  // namespace

Int order_U(unsigned n, uint64_t q) {
  validate_prime_power(q);
  Int res = int_pow(Int(q), (unsigned long)n * (n - (n > 0 ? 1 : 0)) / 2);
  for (unsigned j = 1; j <= n; ++j) {
    Int term = int_pow(Int(q), j);
    if (j % 2 == 1)
      res *= term + 1;
    else
      res *= term - 1;
  }
  return res;
}

Int order_GL(unsigned n, const Int& r) {
  Int res = int_pow(r, (unsigned long)n * (n - (n > 0 ? 1 : 0)) / 2);
  for (unsigned j = 1; j <= n; ++j) res *= int_pow(r, j) - 1;
  return res;
}

namespace {

// Basis of { v : <v, u_j> = 0 for all j } for the given orthonormal columns;
// the constraint rows are the entrywise q-power conjugates.
std::vector<std::vector<uint32_t>> perp_basis(const Field& F, unsigned n,
                                              const std::vector<std::vector<uint32_t>>& cols) {
  unsigned k = (unsigned)cols.size();
  std::vector<std::vector<uint32_t>> C(k, std::vector<uint32_t>(n));
  for (unsigned j = 0; j < k; ++j)
    for (unsigned i = 0; i < n; ++i) C[j][i] = F.frobenius_q(cols[j][i]);

  // reduced row echelon form
  std::vector<unsigned> pivot_col;
  unsigned row = 0;
  for (unsigned col = 0; col < n && row < k; ++col) {
    unsigned sel = k;
    for (unsigned r = row; r < k; ++r)
      if (C[r][col] != 0) {
        sel = r;
        break;
      }
    if (sel == k) continue;
    std::swap(C[sel], C[row]);
    uint32_t inv = F.inv(C[row][col]);
    for (unsigned c = 0; c < n; ++c) C[row][c] = F.mul(C[row][c], inv);
    for (unsigned r = 0; r < k; ++r) {
      if (r == row || C[r][col] == 0) continue;
      uint32_t fct = C[r][col];
      for (unsigned c = 0; c < n; ++c) C[r][c] = F.sub(C[r][c], F.mul(fct, C[row][c]));
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (row != k) throw InvariantError("perp_basis: dependent constraint rows");

  std::vector<bool> is_pivot(n, false);
  for (unsigned c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<uint32_t>> basis;
  for (unsigned fc = 0; fc < n; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<uint32_t> v(n, 0);
    v[fc] = F.one();
    for (unsigned r = 0; r < row; ++r) v[pivot_col[r]] = F.neg(C[r][fc]);
    basis.push_back(std::move(v));
  }
  if (basis.size() != n - k) throw InvariantError("perp_basis: wrong dimension");
  return basis;
}

bool norm_one(const Field& F, const std::vector<uint32_t>& v, uint64_t q) {
  uint32_t acc = 0;
  for (uint32_t x : v)
    if (x != 0) acc = F.add(acc, F.pow_u(x, q + 1));
  return acc == F.one();
}

Matrix frame_to_matrix(const Field& F, unsigned n,
                       const std::vector<std::vector<uint32_t>>& cols) {
  Matrix A = mat_zero(F, n);
  for (unsigned j = 0; j < n; ++j)
    for (unsigned i = 0; i < n; ++i) A.at(i, j) = cols[j][i];
  return A;
}

void extend_frames(const Field& F, unsigned n, uint64_t q,
                   std::vector<std::vector<uint32_t>>& cols, std::vector<Matrix>& out) {
  unsigned k = (unsigned)cols.size();
  if (k == n) {
    out.push_back(frame_to_matrix(F, n, cols));
    return;
  }
  auto basis = perp_basis(F, n, cols);
  unsigned dim = n - k;
  uint64_t Q = F.size();
  uint64_t total = 1;
  for (unsigned i = 0; i < dim; ++i) total *= Q;
  std::vector<uint32_t> v(n);
  for (uint64_t t = 1; t < total; ++t) {
    std::fill(v.begin(), v.end(), 0);
    uint64_t rest = t;
    for (unsigned b = 0; b < dim; ++b) {
      uint32_t coef = (uint32_t)(rest % Q);
      rest /= Q;
      if (coef == 0) continue;
      for (unsigned i = 0; i < n; ++i)
        if (basis[b][i] != 0) v[i] = F.add(v[i], F.mul(coef, basis[b][i]));
    }
    if (!norm_one(F, v, q)) continue;
    cols.push_back(v);
    extend_frames(F, n, q, cols, out);
    cols.pop_back();
  }
}

bool enumeration_allowed(unsigned n, uint64_t q) {
  static const std::pair<unsigned, uint64_t> allow[] = {
      {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}};
  for (auto [an, aq] : allow)
    if (an == n && aq == q) return true;
  return false;
}

}  // namespace

std::vector<Matrix> enumerate_group(unsigned n, uint64_t q, bool override_guard) {
  validate_prime_power(q);
  require(n >= 1, "enumerate_group: n >= 1 required");
  if (!override_guard && !enumeration_allowed(n, q))
    throw GuardError("enumerate_group: (n,q) outside the enumeration allowlist");
  Int order = order_U(n, q);
  if (order > 2000000) throw GuardError("enumerate_group: group too large");
  const Field& F = Field::make_q2(q);

  std::vector<Matrix> out;
  out.reserve((size_t)order.get_ui());
  std::vector<std::vector<uint32_t>> cols;
  extend_frames(F, n, q, cols, out);
  if (Int((unsigned long)out.size()) != order)
    throw InvariantError("enumerate_group: frame count disagrees with the order formula");
  return out;
}

std::vector<Matrix> enumerate_group_filter(unsigned n, uint64_t q) {
  validate_prime_power(q);
  require(n >= 1, "enumerate_group_filter: n >= 1 required");
  const Field& F = Field::make_q2(q);
  uint64_t Q = F.size();
  long double space = powl((long double)Q, (long double)n * n);
  if (space > (long double)(1u << 20))
    throw GuardError("enumerate_group_filter: Q^(n^2) exceeds 2^20");
  uint64_t total = 1;
  for (unsigned i = 0; i < n * n; ++i) total *= Q;

  std::vector<Matrix> out;
  for (uint64_t code = 0; code < total; ++code) {
    Matrix A = mat_zero(F, n);
    uint64_t rest = code;
    for (unsigned i = 0; i < n * n; ++i) {
      A.a[i] = (uint32_t)(rest % Q);
      rest /= Q;
    }
    if (is_unitary(A)) out.push_back(std::move(A));
  }
  return out;
}

Matrix sample_unitary(unsigned n, uint64_t q, uint64_t seed, uint64_t index) {
  validate_prime_power(q);
  require(n >= 1 && n <= 50 && q <= 5, "sample_unitary: n <= 50 and q <= 5 required");
  const Field& F = Field::make_q2(q);
  uint64_t Q = F.size();
  CounterRng rng(seed, index);

  std::vector<std::vector<uint32_t>> cols;
  std::vector<uint32_t> v(n);
  for (unsigned k = 0; k < n; ++k) {
    auto basis = perp_basis(F, n, cols);
    unsigned dim = n - k;
    bool got = false;
    for (uint64_t attempt = 0; attempt < 64 * q && !got; ++attempt) {
      std::fill(v.begin(), v.end(), 0);
      for (unsigned b = 0; b < dim; ++b) {
        uint32_t coef = (uint32_t)rng.below(Q);
        if (coef == 0) continue;
        for (unsigned i = 0; i < n; ++i)
          if (basis[b][i] != 0) v[i] = F.add(v[i], F.mul(coef, basis[b][i]));
      }
      got = norm_one(F, v, q);
    }
    if (!got) throw InvariantError("sample_unitary: rejection cap hit");
    cols.push_back(v);
  }
  Matrix A = frame_to_matrix(F, n, cols);
  return A;
}

namespace {

struct ElementRecord {
  Int V;
  Int T;
  uint64_t cp_code = 0;
  unsigned M = 0;
  bool bound_pMT = false;
  bool bound_3pMqn = false;
};

ElementRecord inspect_element(const Matrix& A, uint64_t q) {
  const Field& F = *A.F;
  ElementRecord rec;
  rec.V = element_order(A);
  Poly cp = char_poly(A);
  Factorization fact = factorize(cp);
  PolyStats st = poly_stats(fact);
  rec.cp_code = poly_code(cp);
  rec.M = st.M;
  rec.T = st.T;
  Int p = F.p();
  rec.bound_pMT = rec.V <= p * st.M * st.T;
  rec.bound_3pMqn = rec.V <= 3 * p * st.M * int_pow(Int(q), A.n);
  return rec;
}

}  // namespace

GroupCensus census(unsigned n, uint64_t q, Exec exec, bool override_guard) {
  std::vector<Matrix> elems = enumerate_group(n, q, override_guard);
  size_t cnt = elems.size();
  std::vector<ElementRecord> rec(cnt);
  std::string failure;

  bool par = exec == Exec::parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (par)
#endif
  for (size_t i = 0; i < cnt; ++i) {
    try {
      rec[i] = inspect_element(elems[i], q);
    } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
      failure = e.what();
    }
  }
  (void)par;
  if (!failure.empty()) throw InvariantError("census: " + failure);

  GroupCensus c;
  c.n = n;
  c.q = q;
  c.order_formula = order_U(n, q);
  c.order_enumerated = cnt;
  c.max_order = 0;
  c.max_T = 0;
  Int sum = 0;
  for (size_t i = 0; i < cnt; ++i) {
    const auto& r = rec[i];
    if (!r.bound_pMT) throw InvariantError("census: V <= p M T violated");
    if (!r.bound_3pMqn) throw InvariantError("census: V <= 3 p M q^n violated");
    sum += r.V;
    if (r.V > c.max_order) c.max_order = r.V;
    if (r.T > c.max_T) c.max_T = r.T;
    c.max_M = std::max(c.max_M, r.M);
    c.order_hist[r.V] += 1;
    c.charpoly_counts[r.cp_code] += 1;
  }
  c.mu = Rat(sum, c.order_formula);
  c.mu.canonicalize();
  return c;
}

SampleStats sample_order_stats(unsigned n, uint64_t q, uint64_t seed, uint64_t count,
                               Exec exec) {
  require(count >= 1, "sample_order_stats: count >= 1 required");
  SampleStats s;
  s.n = n;
  s.q = q;
  s.seed = seed;
  s.count = count;

  std::vector<Int> orders(count);
  std::vector<uint8_t> ok(count, 0);
  std::string failure;

  bool par = exec == Exec::parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (par)
#endif
  for (size_t i = 0; i < count; ++i) {
    try {
      Matrix A = sample_unitary(n, q, seed, i);
      ElementRecord r = inspect_element(A, q);
      orders[i] = r.V;
      ok[i] = r.bound_pMT && r.bound_3pMqn;
    } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
      failure = e.what();
    }
  }
  (void)par;
  if (!failure.empty()) throw InvariantError("sample_order_stats: " + failure);

  Int sum = 0;
  long double logsum = 0;
  s.max_order = 0;
  for (size_t i = 0; i < count; ++i) {
    if (!ok[i]) throw InvariantError("sample_order_stats: order bound violated");
    sum += orders[i];
    logsum += log2_of(orders[i]);
    if (orders[i] > s.max_order) s.max_order = orders[i];
  }
  s.mean_order = Rat(sum, Int((unsigned long)count));
  s.mean_order.canonicalize();
  s.mean_log2_order = logsum / (long double)count;
  return s;
}

}  // namespace unitary
