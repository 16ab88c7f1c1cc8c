#include "unitary/fields.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace unitary {

namespace {

// --- F_p[t] helpers used only for modulus construction -----------------
// Coefficient vectors mod p, t^0 first, no trailing zeros.

using PVec = std::vector<uint64_t>;

void ptrim(PVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

uint64_t mod_inverse(uint64_t a, uint64_t p) {
  int64_t t = 0, nt = 1;
  int64_t r = (int64_t)p, nr = (int64_t)(a % p);
  while (nr != 0) {
    int64_t qq = r / nr;
    t -= qq * nt; std::swap(t, nt);
    r -= qq * nr; std::swap(r, nr);
  }
  if (t < 0) t += (int64_t)p;
  return (uint64_t)t;
}

// a*b mod f, f monic of degree e.
PVec pmulmod(const PVec& a, const PVec& b, const PVec& f, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  size_t e = f.size() - 1;
  PVec r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  for (size_t i = r.size(); i-- > e;) {
    uint64_t c = r[i];
    if (c == 0) continue;
    r[i] = 0;
    for (size_t j = 0; j < e; ++j)
      r[i - e + j] = (r[i - e + j] + c * (p - f[j] % p)) % p;
  }
  r.resize(e);
  ptrim(r);
  return r;
}

PVec ppowmod(PVec base, uint64_t k, const PVec& f, uint64_t p) {
  PVec r = {1};
  while (k) {
    if (k & 1) r = pmulmod(r, base, f, p);
    base = pmulmod(base, base, f, p);
    k >>= 1;
  }
  return r;
}

PVec psub(const PVec& a, const PVec& b, uint64_t p) {
  PVec r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint64_t x = i < a.size() ? a[i] : 0;
    uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = (x + p - y) % p;
  }
  ptrim(r);
  return r;
}

PVec pgcd(PVec a, PVec b, uint64_t p) {
  while (!b.empty()) {
    // a mod b
    uint64_t binv = mod_inverse(b.back(), p);
    while (a.size() >= b.size()) {
      uint64_t c = a.back() * binv % p;
      size_t shift = a.size() - b.size();
      for (size_t j = 0; j < b.size(); ++j)
        a[shift + j] = (a[shift + j] + (p - c * b[j] % p)) % p;
      ptrim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

// Rabin's criterion: f (monic, degree e >= 2) is irreducible over F_p iff
// t^(p^e) == t mod f and gcd(t^(p^(e/r)) - t, f) = 1 for every prime r | e.
bool irreducible_fp(const PVec& f, uint64_t p) {
  size_t e = f.size() - 1;
  PVec t = {0, 1};
  std::vector<PVec> frob(e + 1);
  frob[0] = t;
  for (size_t k = 1; k <= e; ++k) frob[k] = ppowmod(frob[k - 1], p, f, p);
  if (frob[e] != t) return false;
  for (size_t r = 2; r <= e; ++r) {
    if (e % r != 0) continue;
    bool prime = true;
    for (size_t d = 2; d * d <= r; ++d)
      if (r % d == 0) prime = false;
    if (!prime) continue;
    PVec g = pgcd(psub(frob[e / r], t, p), f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

Field::Field(uint64_t p, unsigned e) : p_(p), e_(e) {
  if (e == 0) throw GuardError("Field: degree must be positive");
  if (!is_prime(Int(p))) throw GuardError("Field: characteristic must be prime");
  Int sz = int_pow(p, e);
  if (sz > (1 << 24)) throw GuardError("Field: p^e exceeds 2^24");
  q_ = (uint32_t)sz.get_ui();
  one_ = 1;
  pw_.resize(e + 1);
  pw_[0] = 1;
  for (unsigned j = 1; j <= e; ++j) pw_[j] = pw_[j - 1] * (uint32_t)p;

  if (e == 1) {
    mod_ = {0, 1};
  } else {
    // Scan the lower-coefficient block in code order; the code of the
    // non-leading digits equals the base-p tuple value, so the first
    // irreducible hit is the canonical modulus.
    for (uint32_t low = 0;; ++low) {
      if (low >= q_) throw InvariantError("Field: no irreducible modulus found");
      PVec f(e + 1, 0);
      uint32_t v = low;
      for (unsigned j = 0; j < e; ++j) {
        f[j] = v % p;
        v /= (uint32_t)p;
      }
      f[e] = 1;
      if (irreducible_fp(f, p)) {
        mod_.assign(f.begin(), f.end());
        break;
      }
    }
  }

  for (auto& [pr, ex] : factor_integer(Int(q_) - 1))
    ord_primes_.push_back(pr.get_ui());

  if (q_ <= (1u << 20)) {
    // Discrete-log tables. Bootstrap with the table-free product.
    uint32_t g = (q_ == 2) ? 1 : 2;
    for (;; ++g) {
      if (g >= q_) throw InvariantError("Field: no generator found");
      bool primitive = true;
      for (uint64_t r : ord_primes_)
        if (pow_raw(g, (q_ - 1) / r) == one_) {
          primitive = false;
          break;
        }
      if (primitive) break;
    }
    gen_ = g;
    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    uint32_t cur = one_;
    for (uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = cur;
      log_[cur] = i;
      cur = mul_raw(cur, gen_);
    }
    if (cur != one_) throw InvariantError("Field: generator order mismatch");
    tabled_ = true;
  }
}

const Field& Field::make(uint64_t p, unsigned e) {
  static std::mutex mu;
  static std::map<std::pair<uint64_t, unsigned>, std::unique_ptr<Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, e}];
  if (!slot) slot.reset(new Field(p, e));
  return *slot;
}

const Field& Field::make_q2(uint64_t q) {
  if (q < 2) throw GuardError("Field: q must be >= 2");
  auto fac = factor_integer(Int(q));
  if (fac.size() != 1) throw GuardError("Field: q must be a prime power");
  return make(fac[0].first.get_ui(), 2 * fac[0].second);
}

uint64_t Field::base_q() const {
  if (e_ % 2 != 0) throw GuardError("Field: base_q requires even degree");
  return pw_[e_ / 2];
}

uint32_t Field::add(uint32_t a, uint32_t b) const {
  if (p_ == 2) return a ^ b;
  if (e_ == 1) {
    uint64_t s = (uint64_t)a + b;
    return (uint32_t)(s >= p_ ? s - p_ : s);
  }
  uint32_t out = 0, place = 1;
  for (unsigned j = 0; j < e_; ++j) {
    uint32_t s = a % (uint32_t)p_ + b % (uint32_t)p_;
    if (s >= p_) s -= (uint32_t)p_;
    out += s * place;
    a /= (uint32_t)p_;
    b /= (uint32_t)p_;
    place *= (uint32_t)p_;
  }
  return out;
}

uint32_t Field::neg(uint32_t a) const {
  if (p_ == 2) return a;
  if (e_ == 1) return a == 0 ? 0 : (uint32_t)(p_ - a);
  uint32_t out = 0, place = 1;
  for (unsigned j = 0; j < e_; ++j) {
    uint32_t d = a % (uint32_t)p_;
    out += (d == 0 ? 0 : (uint32_t)p_ - d) * place;
    a /= (uint32_t)p_;
    place *= (uint32_t)p_;
  }
  return out;
}

uint32_t Field::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t Field::mul_raw(uint32_t a, uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  if (e_ == 1) return (uint32_t)((uint64_t)a * b % p_);
  // Schoolbook product of digit vectors, reduced by the monic modulus.
  uint64_t da[24], db[24], r[48] = {0};
  for (unsigned j = 0; j < e_; ++j) {
    da[j] = a % (uint32_t)p_;
    db[j] = b % (uint32_t)p_;
    a /= (uint32_t)p_;
    b /= (uint32_t)p_;
  }
  for (unsigned i = 0; i < e_; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < e_; ++j) r[i + j] += da[i] * db[j];
  }
  for (unsigned i = 2 * e_ - 1; i >= e_; --i) {
    uint64_t c = r[i] % p_;
    if (c == 0) continue;
    for (unsigned j = 0; j < e_; ++j)
      r[i - e_ + j] += c * (p_ - mod_[j] % p_);
  }
  uint32_t out = 0, place = 1;
  for (unsigned j = 0; j < e_; ++j) {
    out += (uint32_t)(r[j] % p_) * place;
    place *= (uint32_t)p_;
  }
  return out;
}

uint32_t Field::mul(uint32_t a, uint32_t b) const {
  if (!tabled_) return mul_raw(a, b);
  if (a == 0 || b == 0) return 0;
  uint32_t s = log_[a] + log_[b];
  if (s >= q_ - 1) s -= q_ - 1;
  return exp_[s];
}

uint32_t Field::inv(uint32_t a) const {
  if (a == 0) throw InvariantError("Field::inv: zero has no inverse");
  if (tabled_) {
    uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
  }
  return pow_raw(a, q_ - 2);
}

uint32_t Field::pow_raw(uint32_t a, uint64_t k) const {
  uint32_t r = one_;
  while (k) {
    if (k & 1) r = mul_raw(r, a);
    a = mul_raw(a, a);
    k >>= 1;
  }
  return r;
}

uint32_t Field::pow_u(uint32_t a, uint64_t k) const {
  if (a == 0) return k == 0 ? one_ : 0;
  k %= (q_ - 1);
  if (tabled_) {
    uint64_t l = (uint64_t)log_[a] * k % (q_ - 1);
    return exp_[l];
  }
  uint32_t r = one_;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

uint32_t Field::pow(uint32_t a, const Int& k) const {
  if (k < 0) throw GuardError("Field::pow: negative exponent");
  if (a == 0) return k == 0 ? one_ : 0;
  uint64_t r = mpz_fdiv_ui(k.get_mpz_t(), q_ - 1);
  return pow_u(a, r);
}

uint32_t Field::frobenius(uint32_t a, unsigned k) const {
  for (unsigned i = 0; i < k; ++i) a = pow_u(a, p_);
  return a;
}

uint32_t Field::frobenius_q(uint32_t a) const {
  if (e_ % 2 != 0) throw GuardError("Field: frobenius_q requires even degree");
  return frobenius(a, e_ / 2);
}

Int Field::mult_order(uint32_t a) const {
  if (a == 0) throw GuardError("Field::mult_order: zero input");
  uint64_t ord = q_ - 1;
  for (uint64_t r : ord_primes_)
    while (ord % r == 0 && pow_u(a, ord / r) == one_) ord /= r;
  return Int(ord);
}

std::vector<uint32_t> Field::decode(uint32_t a) const {
  std::vector<uint32_t> out(e_);
  for (unsigned j = 0; j < e_; ++j) {
    out[j] = a % (uint32_t)p_;
    a /= (uint32_t)p_;
  }
  return out;
}

uint32_t Field::encode(const std::vector<uint32_t>& digits) const {
  if (digits.size() > e_) throw GuardError("Field::encode: too many digits");
  uint32_t out = 0;
  for (size_t j = digits.size(); j-- > 0;) {
    if (digits[j] >= p_) throw GuardError("Field::encode: digit out of range");
    out = out * (uint32_t)p_ + digits[j];
  }
  return out;
}

}  // namespace unitary
