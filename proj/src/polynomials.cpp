#include "unitary/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace unitary {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw GuardError(msg);
}

}  // namespace

Poly poly_zero(const Field& F) { return Poly{&F, {}}; }

Poly poly_one(const Field& F) { return Poly{&F, {F.one()}}; }

Poly poly_x(const Field& F) { return Poly{&F, {0, F.one()}}; }

Poly poly_const(const Field& F, uint32_t a) {
  Poly f{&F, {a}};
  f.trim();
  return f;
}

Poly poly_from_coeffs(const Field& F, std::vector<uint32_t> coeffs) {
  Poly f{&F, std::move(coeffs)};
  f.trim();
  return f;
}

uint64_t poly_code(const Poly& f) {
  if (!f.is_monic()) throw InvariantError("poly_code: non-monic polynomial");
  uint64_t Q = f.F->size();
  uint64_t code = 0;
  for (int j = f.deg() - 1; j >= 0; --j) code = code * Q + f.c[(size_t)j];
  return code;
}

Poly poly_from_code(const Field& F, unsigned d, uint64_t code) {
  uint64_t Q = F.size();
  std::vector<uint32_t> c(d + 1);
  for (unsigned j = 0; j < d; ++j) {
    c[j] = (uint32_t)(code % Q);
    code /= Q;
  }
  if (code != 0) throw InvariantError("poly_from_code: code out of range");
  c[d] = F.one();
  return Poly{&F, std::move(c)};
}

std::string poly_str(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int j = f.deg(); j >= 0; --j) {
    uint32_t a = f.c[(size_t)j];
    if (a == 0) continue;
    if (!out.empty()) out += " + ";
    if (j == 0) {
      out += std::to_string(a);
    } else {
      if (a != f.F->one()) {
        out += std::to_string(a);
        out += "*";
      }
      out += "x";
      if (j > 1) {
        out += "^";
        out += std::to_string(j);
      }
    }
  }
  return out;
}

Poly add(const Poly& a, const Poly& b) {
  const Field& F = *a.F;
  Poly r{&F, {}};
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t j = 0; j < r.c.size(); ++j) r.c[j] = F.add(a.coeff(j), b.coeff(j));
  r.trim();
  return r;
}

Poly sub(const Poly& a, const Poly& b) {
  const Field& F = *a.F;
  Poly r{&F, {}};
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t j = 0; j < r.c.size(); ++j) r.c[j] = F.sub(a.coeff(j), b.coeff(j));
  r.trim();
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return poly_zero(*a.F);
  const Field& F = *a.F;
  Poly r{&F, std::vector<uint32_t>(a.c.size() + b.c.size() - 1, 0)};
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j] == 0) continue;
      r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    }
  }
  r.trim();
  return r;
}

Poly mul_scalar(const Poly& a, uint32_t s) {
  const Field& F = *a.F;
  if (s == 0) return poly_zero(F);
  Poly r = a;
  for (auto& x : r.c) x = F.mul(x, s);
  return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw InvariantError("divmod: zero divisor");
  const Field& F = *a.F;
  if (a.deg() < b.deg()) return {poly_zero(F), a};
  Poly rem = a;
  Poly quot{&F, std::vector<uint32_t>((size_t)(a.deg() - b.deg() + 1), 0)};
  uint32_t lead_inv = F.inv(b.c.back());
  for (int k = a.deg(); k >= b.deg(); --k) {
    uint32_t rc = rem.coeff((size_t)k);
    if (rc == 0) continue;
    uint32_t qc = F.mul(rc, lead_inv);
    quot.c[(size_t)(k - b.deg())] = qc;
    for (int j = 0; j <= b.deg(); ++j) {
      size_t idx = (size_t)(k - b.deg() + j);
      rem.c[idx] = F.sub(rem.c[idx], F.mul(qc, b.c[(size_t)j]));
    }
  }
  rem.trim();
  quot.trim();
  return {std::move(quot), std::move(rem)};
}

Poly mod(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly make_monic(const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return mul_scalar(a, a.F->inv(a.c.back()));
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly u = a, v = b;
  while (!v.is_zero()) {
    Poly r = mod(u, v);
    u = std::move(v);
    v = std::move(r);
  }
  return make_monic(u);
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return poly_zero(*a.F);
  Poly g = gcd(a, b);
  return make_monic(divmod(mul(a, b), g).first);
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f) { return mod(mul(a, b), f); }

Poly powmod(const Poly& base, const Int& k, const Poly& f) {
  if (k < 0) throw InvariantError("powmod: negative exponent");
  Poly r = mod(poly_one(*base.F), f);
  if (k == 0) return r;
  Poly b = mod(base, f);
  size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = mulmod(r, r, f);
    if (mpz_tstbit(k.get_mpz_t(), i)) r = mulmod(r, b, f);
  }
  return r;
}

uint32_t eval(const Poly& f, uint32_t x) {
  const Field& F = *f.F;
  uint32_t acc = 0;
  for (size_t j = f.c.size(); j-- > 0;) acc = F.add(F.mul(acc, x), f.c[j]);
  return acc;
}

Poly poly_pow(const Poly& base, unsigned k) {
  Poly r = poly_one(*base.F);
  for (unsigned i = 0; i < k; ++i) r = mul(r, base);
  return r;
}

Poly tilde(const Poly& f) {
  require(f.is_monic(), "tilde: monic input required");
  require(f.deg() == 0 || f.c[0] != 0, "tilde: nonzero constant term required");
  const Field& F = *f.F;
  if (f.deg() == 0) return f;
  unsigned d = (unsigned)f.deg();
  // a_0^{-q}, computed as (a_0^{-1})^q
  uint32_t a0invq = F.frobenius_q(F.inv(f.c[0]));
  Poly r{&F, std::vector<uint32_t>(d + 1, 0)};
  r.c[d] = F.one();
  for (unsigned j = 0; j < d; ++j)
    r.c[j] = F.mul(a0invq, F.frobenius_q(f.c[d - j]));
  return r;
}

bool self_conjugate(const Poly& f) { return tilde(f) == f; }

bool irreducible(const Poly& f) {
  require(f.is_monic() && f.deg() >= 1, "irreducible: monic nonconstant input required");
  unsigned d = (unsigned)f.deg();
  if (d == 1) return true;
  const Field& F = *f.F;
  Int Q = F.size();
  Poly x = poly_x(F);
  // Walk x -> x^Q -> x^{Q^2} ... ; a factor of degree k <= d/2 shows up as a
  // nontrivial gcd with x^{Q^k} - x. If none appears, at most one factor of
  // degree > d/2 is possible, so f is irreducible.
  Poly g = mod(x, f);
  for (unsigned k = 1; 2 * k <= d; ++k) {
    g = powmod(g, Q, f);
    Poly h = gcd(sub(g, x), f);
    if (h.deg() != 0) return false;
  }
  return true;
}

namespace {

std::mutex table_mutex;
std::map<std::pair<const Field*, unsigned>, std::vector<uint64_t>> table_cache;

const std::vector<uint64_t>& table_locked(const Field& F, unsigned d) {
  auto key = std::make_pair(&F, d);
  auto it = table_cache.find(key);
  if (it != table_cache.end()) return it->second;

  uint64_t Q = F.size();
  long double sz = powl((long double)Q, (long double)d);
  if (d == 0 || sz > (long double)(1u << 24))
    throw GuardError("irreducible_codes: Q^d exceeds 2^24");
  uint64_t total = 1;
  for (unsigned i = 0; i < d; ++i) total *= Q;

  std::vector<uint64_t> out;
  if (d == 1) {
    out.resize(Q);
    for (uint64_t c = 0; c < Q; ++c) out[c] = c;
  } else {
    // Product sieve: mark every monic with a factor of degree <= d/2.
    std::vector<bool> composite(total, false);
    for (unsigned a = 1; 2 * a <= d; ++a) {
      const auto& small = table_locked(F, a);
      uint64_t hi = 1;
      for (unsigned i = 0; i < d - a; ++i) hi *= Q;
      for (uint64_t pc : small) {
        Poly phi = poly_from_code(F, a, pc);
        for (uint64_t hc = 0; hc < hi; ++hc)
          composite[poly_code(mul(phi, poly_from_code(F, d - a, hc)))] = true;
      }
    }
    for (uint64_t c = 0; c < total; ++c)
      if (!composite[c]) out.push_back(c);
  }
  auto [pos, inserted] = table_cache.emplace(key, std::move(out));
  (void)inserted;
  return pos->second;
}

}  // namespace

const std::vector<uint64_t>& irreducible_codes(const Field& F, unsigned d) {
  std::lock_guard<std::mutex> lk(table_mutex);
  return table_locked(F, d);
}

std::vector<Poly> irreducibles(const Field& F, unsigned d) {
  const auto& codes = irreducible_codes(F, d);
  std::vector<Poly> out;
  out.reserve(codes.size());
  for (uint64_t c : codes) {
    if (d == 1 && c == 0) continue;  // x is excluded from I_1
    out.push_back(poly_from_code(F, d, c));
  }
  return out;
}

Cls classify(const Poly& phi) {
  require(phi.deg() >= 1 && phi.c[0] != 0,
          "classify: irreducible with nonzero constant term required");
  Poly conj = tilde(phi);
  if (conj == phi) return Cls::J;
  return poly_code(phi) < poly_code(conj) ? Cls::Kplus : Cls::Kminus;
}

std::vector<Poly> enumerate_J(const Field& F, unsigned d) {
  require(d >= 1, "enumerate_J: d >= 1 required");
  std::vector<Poly> out;
  if (d % 2 == 0) return out;
  uint64_t q = F.base_q();
  uint64_t Q = F.size();

  std::vector<uint32_t> norm1;
  for (uint64_t a = 1; a < Q; ++a)
    if (F.pow_u((uint32_t)a, q + 1) == F.one()) norm1.push_back((uint32_t)a);
  if (norm1.size() != q + 1) throw InvariantError("enumerate_J: norm-one count");

  unsigned m = (d - 1) / 2;
  uint64_t free_total = 1;
  for (unsigned i = 0; i < m; ++i) free_total *= Q;

  std::vector<uint32_t> c(d + 1, 0);
  c[d] = F.one();
  for (uint32_t a0 : norm1) {
    c[0] = a0;
    for (uint64_t t = 0; t < free_total; ++t) {
      uint64_t rest = t;
      for (unsigned j = 1; j <= m; ++j) {
        c[j] = (uint32_t)(rest % Q);
        rest /= Q;
        c[d - j] = F.mul(a0, F.frobenius_q(c[j]));
      }
      Poly f{&F, c};
      if (d > 1) {
        bool has_root = false;
        for (uint64_t x = 0; x < Q && !has_root; ++x)
          if (eval(f, (uint32_t)x) == 0) has_root = true;
        if (has_root) continue;
      }
      if (irreducible(f)) out.push_back(std::move(f));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Poly& a, const Poly& b) { return poly_code(a) < poly_code(b); });
  if (Int((unsigned long)out.size()) != count_J(F, d))
    throw InvariantError("enumerate_J: count mismatch with moebius formula");
  return out;
}

std::vector<Poly> enumerate_Kplus(const Field& F, unsigned d) {
  const auto& codes = irreducible_codes(F, d);
  std::vector<Poly> out;
  for (uint64_t code : codes) {
    if (d == 1 && code == 0) continue;
    Poly f = poly_from_code(F, d, code);
    Poly conj = tilde(f);
    if (conj == f) continue;
    if (poly_code(conj) > code) out.push_back(std::move(f));
  }
  return out;
}

Int count_I(unsigned d, const Int& r) {
  require(d >= 1, "count_I: d >= 1 required");
  Int sum = 0;
  for (uint64_t k : divisors(d)) {
    int mu = mobius(k);
    if (mu == 0) continue;
    sum += Int(mu) * int_pow(r, d / k);
  }
  Int cnt = sum / d;
  if (cnt * d != sum) throw InvariantError("count_I: moebius sum not divisible");
  if (d == 1) cnt -= 1;  // x excluded
  return cnt;
}

Int count_J(const Field& F, unsigned d) {
  require(d >= 1, "count_J: d >= 1 required");
  if (d % 2 == 0) return 0;
  Int q = F.base_q();
  Int sum = 0;
  for (uint64_t k : divisors(d)) {
    int mu = mobius(k);
    if (mu == 0) continue;
    sum += Int(mu) * (int_pow(q, d / k) + 1);
  }
  Int cnt = sum / d;
  if (cnt * d != sum) throw InvariantError("count_J: moebius sum not divisible");
  return cnt;
}

namespace {

std::mutex tau_factor_mutex;
std::map<Int, std::vector<std::pair<Int, unsigned>>> tau_factor_cache;

std::vector<std::pair<Int, unsigned>> unit_group_factors(const Int& n) {
  std::lock_guard<std::mutex> lk(tau_factor_mutex);
  auto it = tau_factor_cache.find(n);
  if (it == tau_factor_cache.end())
    it = tau_factor_cache.emplace(n, factor_integer(n)).first;
  return it->second;
}

std::mutex tau_mutex;
std::map<std::tuple<const Field*, unsigned, uint64_t>, Int> tau_cache;

}  // namespace

Int tau(const Poly& phi) {
  require(phi.deg() >= 1 && phi.c[0] != 0,
          "tau: irreducible with nonzero constant term required");
  const Field& F = *phi.F;
  auto key = std::make_tuple(&F, (unsigned)phi.deg(), poly_code(phi));
  {
    std::lock_guard<std::mutex> lk(tau_mutex);
    auto it = tau_cache.find(key);
    if (it != tau_cache.end()) return it->second;
  }
  Int group = int_pow(Int(F.size()), (unsigned long)phi.deg()) - 1;
  Int ord = group;
  Poly x = poly_x(F);
  Poly one = mod(poly_one(F), phi);
  for (const auto& [p, e] : unit_group_factors(group)) {
    for (unsigned i = 0; i < e; ++i) {
      Int cand = ord / p;
      if (powmod(x, cand, phi) == one)
        ord = cand;
      else
        break;
    }
  }
  std::lock_guard<std::mutex> lk(tau_mutex);
  tau_cache.emplace(key, ord);
  return ord;
}

namespace {

// Divide phi out of rem to its full multiplicity.
void extract_factor(Poly& rem, Poly phi, std::vector<FactorEntry>& out) {
  unsigned m = 0;
  for (;;) {
    auto [q, r] = divmod(rem, phi);
    if (!r.is_zero()) break;
    rem = std::move(q);
    ++m;
  }
  if (m == 0) throw InvariantError("factorize: claimed factor does not divide");
  out.push_back({std::move(phi), m, Cls::J});
}

}  // namespace

Factorization factorize(const Poly& f) {
  require(f.is_monic(), "factorize: monic input required");
  require(f.deg() == 0 || f.c[0] != 0, "factorize: nonzero constant term required");
  const Field& F = *f.F;
  Int Q = F.size();
  Factorization fact;
  fact.base = f;
  Poly rem = f;
  Poly x = poly_x(F);
  Poly g = mod(x, f);
  // Distinct-degree pass: gcd with x^{Q^k} - x collects the distinct degree-k
  // factors of rem (smaller degrees are gone by then). A collected part that
  // is larger than k holds several factors and is split against the table;
  // the usual single-factor part needs no table at all.
  for (unsigned k = 1; 2 * (int)k <= rem.deg(); ++k) {
    g = powmod(g, Q, f);
    Poly part = gcd(sub(g, x), rem);
    if (part.deg() == 0) continue;
    if (part.deg() == (int)k) {
      extract_factor(rem, std::move(part), fact.factors);
      continue;
    }
    for (uint64_t code : irreducible_codes(F, k)) {
      if (k == 1 && code == 0) continue;
      Poly phi = poly_from_code(F, k, code);
      auto [q, r] = divmod(part, phi);
      if (!r.is_zero()) continue;
      part = std::move(q);
      extract_factor(rem, std::move(phi), fact.factors);
      if (part.deg() == (int)k) {
        extract_factor(rem, std::move(part), fact.factors);
        break;
      }
      if (part.deg() == 0) break;
    }
  }
  // No factor up to half the remaining degree: the remainder is irreducible.
  if (rem.deg() >= 1) fact.factors.push_back({std::move(rem), 1, Cls::J});
  std::sort(fact.factors.begin(), fact.factors.end(),
            [](const FactorEntry& a, const FactorEntry& b) {
              if (a.phi.deg() != b.phi.deg()) return a.phi.deg() < b.phi.deg();
              return poly_code(a.phi) < poly_code(b.phi);
            });
  for (auto& fe : fact.factors) fe.cls = classify(fe.phi);
  return fact;
}

PolyStats poly_stats(const Factorization& fact) {
  const Field& F = *fact.base.F;
  Int q = F.base_q();
  PolyStats st{1, 1, 1, 1, 0};
  for (const auto& fe : fact.factors) {
    unsigned d = (unsigned)fe.phi.deg();
    if (fe.cls == Cls::J) st.X1 = lcm(st.X1, int_pow(q, d) + 1);
    if (fe.cls == Cls::Kplus) st.X2 = lcm(st.X2, int_pow(q, 2 * d) - 1);
    st.T = lcm(st.T, tau(fe.phi));
    st.M = std::max(st.M, fe.mult);
  }
  st.X = lcm(st.X1, st.X2);
  return st;
}

bool is_in_Omega(const Poly& f) {
  require(f.is_monic(), "is_in_Omega: monic input required");
  if (f.deg() == 0) return true;
  if (f.c[0] == 0) return false;
  return self_conjugate(f);
}

}  // namespace unitary
