#include "unitary/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

namespace unitary {

Int int_pow(const Int& base, unsigned long exp) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Int lcm(const Int& a, const Int& b) {
  Int out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Int gcd(const Int& a, const Int& b) {
  Int out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

namespace {

const Int kFactorGuard = Int(1) << 128;

Int mod_pow(Int base, Int exp, const Int& mod) {
  Int out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned long s) {
  Int x = mod_pow(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned long i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;  // a witnesses compositeness
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  static const unsigned small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (unsigned p : small) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  // Deterministic below 3.3e24 (first 13 primes); no pseudoprime to all of
  // these bases is known below 2^128, which the factoring guard enforces.
  static const unsigned bases[] = {2,  3,  5,  7,  11, 13, 17,
                                   19, 23, 29, 31, 37, 41};
  for (unsigned a : bases) {
    if (n <= a) break;  // a == n would test witness 0; smaller bases suffice
    if (miller_rabin_witness(n, Int(a), d, s)) return false;
  }
  return true;
}

const std::vector<uint32_t>& small_primes() {
  static const std::vector<uint32_t> table = [] {
    const uint32_t limit = 1000000;
    std::vector<bool> sieve(limit + 1, true);
    sieve[0] = sieve[1] = false;
    for (uint32_t i = 2; (uint64_t)i * i <= limit; ++i)
      if (sieve[i])
        for (uint32_t j = i * i; j <= limit; j += i) sieve[j] = false;
    std::vector<uint32_t> out;
    for (uint32_t i = 2; i <= limit; ++i)
      if (sieve[i]) out.push_back(i);
    return out;
  }();
  return table;
}

std::vector<uint64_t> primes_up_to(uint64_t limit) {
  if (limit > 100000000) throw GuardError("primes_up_to: limit too large");
  std::vector<bool> sieve(limit + 1, true);
  sieve[0] = false;
  if (limit >= 1) sieve[1] = false;
  for (uint64_t i = 2; i * i <= limit; ++i)
    if (sieve[i])
      for (uint64_t j = i * i; j <= limit; j += i) sieve[j] = false;
  std::vector<uint64_t> out;
  for (uint64_t i = 2; i <= limit; ++i)
    if (sieve[i]) out.push_back(i);
  return out;
}

std::vector<uint64_t> first_primes(uint64_t count) {
  std::vector<uint64_t> out;
  out.reserve(count);
  // p_n < n (ln n + ln ln n) for n >= 6; pad generously for small n.
  uint64_t limit = 100;
  if (count > 5) {
    double n = (double)count;
    limit = (uint64_t)(n * (std::log(n) + std::log(std::log(n)))) + 16;
  }
  while (true) {
    auto ps = primes_up_to(limit);
    if (ps.size() >= count) {
      out.assign(ps.begin(), ps.begin() + count);
      return out;
    }
    limit *= 2;
  }
}

namespace {

// Brent's cycle-finding variant of Pollard rho; n must be odd composite, not
// a prime power handled elsewhere. Returns a nontrivial factor.
Int pollard_brent(const Int& n, unsigned long seed) {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(seed);
  while (true) {
    Int y = rng.get_z_range(n - 3) + 2;
    Int c = rng.get_z_range(n - 1) + 1;
    Int m = 128, g = 1, r = 1, q = 1, x, ys;
    while (g == 1) {
      x = y;
      for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
      Int k = 0;
      while (k < r && g == 1) {
        ys = y;
        Int lim = r - k;
        if (m < lim) lim = m;
        for (Int i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      }
    }
    if (g != n) return g;
    ++seed;  // rare: retry with a fresh polynomial
  }
}

void factor_rec(const Int& n, std::vector<Int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  // Perfect powers first: rho degrades on them and mpz detects them cheaply.
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
      Int root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
        std::vector<Int> base;
        factor_rec(root, base);
        for (unsigned long i = 0; i < k; ++i)
          out.insert(out.end(), base.begin(), base.end());
        return;
      }
    }
  }
  Int d = pollard_brent(n, 0x9e3779b9u);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factor_integer(const Int& n) {
  if (n < 1) throw GuardError("factor_integer: n must be >= 1");
  if (n >= kFactorGuard) throw GuardError("factor_integer: n >= 2^128");
  std::vector<Int> primes;
  Int rest = n;
  for (uint32_t p : small_primes()) {
    if (Int(p) * p > rest) break;
    while (rest % p == 0) {
      primes.emplace_back(p);
      rest /= p;
    }
  }
  if (rest > 1) factor_rec(rest, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Int, unsigned>> out;
  for (const Int& p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

std::vector<Int> prime_factors(const Int& n) {
  std::vector<Int> out;
  for (auto& [p, e] : factor_integer(n)) out.push_back(p);
  return out;
}

int mobius(uint64_t n) {
  if (n == 0) throw GuardError("mobius: n must be positive");
  int out = 1;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      out = -out;
    }
  }
  if (n > 1) out = -out;
  return out;
}

std::vector<uint64_t> divisors(uint64_t n) {
  if (n == 0) throw GuardError("divisors: n must be positive");
  std::vector<uint64_t> out;
  for (uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Int cyclotomic_value(uint64_t n, const Int& q) {
  if (n == 0) throw GuardError("cyclotomic_value: n must be positive");
  if (q < 2) throw GuardError("cyclotomic_value: q must be >= 2");
  // Phi_n(q) = prod_{d|n} (q^d - 1)^{mu(n/d)}, exact division at the end.
  Int num = 1, den = 1;
  for (uint64_t d : divisors(n)) {
    int mu = mobius(n / d);
    if (mu == 0) continue;
    Int term = int_pow(q, d) - 1;
    (mu > 0 ? num : den) *= term;
  }
  if (num % den != 0) throw InvariantError("cyclotomic_value: nonintegral");
  return num / den;
}

long double log_of(const Int& x) {
  if (x <= 0) throw GuardError("log_of: positive input required");
  signed long exp2;
  double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
  return std::log((long double)mant) + (long double)exp2 * 0.6931471805599453094L;
}

long double log_of(const Rat& x) {
  if (x <= 0) throw GuardError("log_of: positive input required");
  return log_of(x.get_num()) - log_of(x.get_den());
}

long double log2_of(const Int& x) { return log_of(x) / 0.6931471805599453094L; }
long double log2_of(const Rat& x) { return log_of(x) / 0.6931471805599453094L; }

std::string to_string(const Int& x) { return x.get_str(); }

}  // namespace unitary
