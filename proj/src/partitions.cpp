#include "unitary/partitions.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace unitary {

namespace {

constexpr unsigned kSizeGuard = 200;
constexpr uint64_t kListGuard = 2000000;
constexpr size_t kBitGuard = 4000000;  // operand-size cap for exact products

void require(bool ok, const char* msg) {
  if (!ok) throw GuardError(msg);
}

void check_q(uint64_t q) {
  if (q < 2 || factor_integer(Int(q)).size() != 1)
    throw GuardError("q must be a prime power >= 2");
}

std::vector<Int> factorials(unsigned max) {
  std::vector<Int> f(max + 1);
  f[0] = 1;
  for (unsigned i = 1; i <= max; ++i) f[i] = f[i - 1] * i;
  return f;
}

Int checked_div(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0) throw InvariantError("checked_div: inexact division");
  return q;
}

// -------- streaming enumerations --------

void rec_distinct(unsigned remaining, unsigned vmax, unsigned step,
                  std::vector<uint32_t>& parts,
                  const std::function<void(const std::vector<uint32_t>&)>& fn) {
  if (remaining == 0) {
    fn(parts);
    return;
  }
  for (unsigned v = std::min(vmax, remaining); v >= 1; --v) {
    if (step == 2 && v % 2 == 0) continue;
    parts.push_back(v);
    rec_distinct(remaining - v, v >= step ? v - step : 0, step, parts, fn);
    parts.pop_back();
  }
}

void rec_all(unsigned remaining, unsigned vmax, std::vector<uint32_t>& parts,
             const std::function<void(const std::vector<uint32_t>&)>& fn) {
  if (remaining == 0) {
    fn(parts);
    return;
  }
  for (unsigned v = std::min(vmax, remaining); v >= 1; --v) {
    parts.push_back(v);
    rec_all(remaining - v, v, parts, fn);
    parts.pop_back();
  }
}

}  // namespace

void for_each_distinct(unsigned s,
                       const std::function<void(const std::vector<uint32_t>&)>& fn) {
  require(s <= kSizeGuard, "partitions: size exceeds 200");
  std::vector<uint32_t> parts;
  rec_distinct(s, s, 1, parts, fn);
}

void for_each_distinct_odd(unsigned b,
                           const std::function<void(const std::vector<uint32_t>&)>& fn) {
  require(b <= kSizeGuard, "partitions: size exceeds 200");
  std::vector<uint32_t> parts;
  rec_distinct(b, b, 2, parts, fn);
}

void for_each_partition(unsigned s,
                        const std::function<void(const std::vector<uint32_t>&)>& fn) {
  require(s <= kSizeGuard, "partitions: size exceeds 200");
  std::vector<uint32_t> parts;
  rec_all(s, s, parts, fn);
}

uint64_t count_distinct(unsigned s) {
  require(s <= kSizeGuard, "partitions: size exceeds 200");
  std::vector<uint64_t> dp(s + 1, 0);
  dp[0] = 1;
  for (unsigned v = 1; v <= s; ++v)
    for (unsigned j = s; j >= v; --j) dp[j] += dp[j - v];
  return dp[s];
}

uint64_t count_distinct_odd(unsigned b) {
  require(b <= kSizeGuard, "partitions: size exceeds 200");
  std::vector<uint64_t> dp(b + 1, 0);
  dp[0] = 1;
  for (unsigned v = 1; v <= b; v += 2)
    for (unsigned j = b; j >= v; --j) dp[j] += dp[j - v];
  return dp[b];
}

std::vector<std::vector<uint32_t>> partitions_distinct(unsigned s) {
  require(count_distinct(s) <= kListGuard, "partitions: list too large to materialize");
  std::vector<std::vector<uint32_t>> out;
  for_each_distinct(s, [&](const std::vector<uint32_t>& p) { out.push_back(p); });
  return out;
}

std::vector<std::vector<uint32_t>> partitions_distinct_odd(unsigned b) {
  require(count_distinct_odd(b) <= kListGuard,
          "partitions: list too large to materialize");
  std::vector<std::vector<uint32_t>> out;
  for_each_distinct_odd(b, [&](const std::vector<uint32_t>& p) { out.push_back(p); });
  return out;
}

namespace {

void check_distinct(const std::vector<uint32_t>& parts, bool odd) {
  for (size_t i = 0; i < parts.size(); ++i) {
    require(parts[i] >= 1, "partition parts must be positive");
    if (i > 0) require(parts[i] < parts[i - 1], "partition parts must be distinct descending");
    if (odd) require(parts[i] % 2 == 1, "partition parts must be odd");
  }
}

}  // namespace

Int X1_of_partition(const std::vector<uint32_t>& parts, uint64_t q) {
  check_q(q);
  check_distinct(parts, true);
  Int x = 1;
  for (uint32_t d : parts) x = lcm(x, int_pow(Int(q), d) + 1);
  return x;
}

Int X2_of_partition(const std::vector<uint32_t>& parts, uint64_t q) {
  check_q(q);
  check_distinct(parts, false);
  Int x = 1;
  for (uint32_t d : parts) x = lcm(x, int_pow(Int(q), 2ul * d) - 1);
  return x;
}

namespace {

// One pass over all distinct(-odd) partitions of every size <= maxs.
// Per size s the accumulator holds  sum X(pi) * (s! / prod(parts))  so the
// result is num[s] / s!; distinct parts <= s always divide s! exactly.
struct SweepCtx {
  unsigned maxs;
  unsigned step;  // 1 = distinct, 2 = distinct odd
  const std::vector<Int>& xval;
  const std::vector<Int>& fact;
};

void sweep_rec(const SweepCtx& ctx, unsigned vmax, unsigned sum, uint64_t prod,
               const Int& lcmx, std::vector<Int>& num) {
  for (unsigned v = vmax; v >= 1; --v) {
    if (ctx.step == 2 && v % 2 == 0) continue;
    unsigned ns = sum + v;
    if (ns > ctx.maxs) continue;
    if (prod > UINT64_MAX / v) throw InvariantError("sigma sweep: product overflow");
    uint64_t nprod = prod * v;
    Int nlcm = lcm(lcmx, ctx.xval[v]);
    num[ns] += nlcm * checked_div(ctx.fact[ns], Int(nprod));
    sweep_rec(ctx, v - 1, ns, nprod, nlcm, num);
  }
}

std::vector<Rat> sigma_sweep(unsigned maxs, uint64_t q, unsigned step, bool use_x2,
                             Exec exec) {
  check_q(q);
  require(maxs <= kSizeGuard, "sigma sweep: size exceeds 200");
  std::vector<Int> xval(maxs + 1);
  for (unsigned v = 1; v <= maxs; ++v) {
    if (use_x2)
      xval[v] = int_pow(Int(q), 2ul * v) - 1;
    else
      xval[v] = int_pow(Int(q), v) + 1;
  }
  std::vector<Int> fact = factorials(maxs);
  SweepCtx ctx{maxs, step, xval, fact};

  std::vector<Int> num(maxs + 1);
  for (auto& x : num) x = 0;

  // split on the largest part; exact integer partials merge associatively
  bool par = exec == Exec::parallel;
#ifdef _OPENMP
  if (par && maxs >= 1) {
#pragma omp parallel
    {
      std::vector<Int> local(maxs + 1);
      for (auto& x : local) x = 0;
#pragma omp for schedule(dynamic) nowait
      for (unsigned v = 1; v <= maxs; ++v) {
        if (ctx.step == 2 && v % 2 == 0) continue;
        Int nlcm = ctx.xval[v];
        local[v] += nlcm * checked_div(ctx.fact[v], Int(v));
        sweep_rec(ctx, v - 1, v, v, nlcm, local);
      }
#pragma omp critical
      for (unsigned i = 0; i <= maxs; ++i) num[i] += local[i];
    }
  } else
#else
  (void)par;
#endif
  {
    sweep_rec(ctx, maxs, 0, 1, Int(1), num);
  }

  std::vector<Rat> out(maxs + 1);
  out[0] = 1;
  for (unsigned s = 1; s <= maxs; ++s) {
    out[s] = Rat(num[s], fact[s]);
    out[s].canonicalize();
  }
  return out;
}

}  // namespace

Rat sigma1(unsigned b, uint64_t q, Exec exec) { return sigma_sweep(b, q, 2, false, exec)[b]; }

Rat sigma2(unsigned s, uint64_t q, Exec exec) { return sigma_sweep(s, q, 1, true, exec)[s]; }

std::vector<Rat> sigma1_sweep(unsigned max_b, uint64_t q, Exec exec) {
  return sigma_sweep(max_b, q, 2, false, exec);
}

std::vector<Rat> sigma2_sweep(unsigned max_s, uint64_t q, Exec exec) {
  return sigma_sweep(max_s, q, 1, true, exec);
}

Int cyclotomic_2p(uint64_t p, const Int& q) {
  require(p % 2 == 1 && p <= 1000000 && is_prime(Int(p)),
          "cyclotomic_2p: odd prime p required");
  require(q >= 2, "cyclotomic_2p: q >= 2 required");
  return checked_div(int_pow(q, p) + 1, q + 1);
}

PrimeWindow prime_window(unsigned xi, uint64_t q) {
  check_q(q);
  // xi >= 2 keeps the smallest window prime odd, matching the Phi_{2p} form
  require(xi >= 2 && xi <= 13, "prime_window: 2 <= xi <= 13 required");
  uint64_t hi = (uint64_t)floorl(expl((long double)xi));
  std::vector<uint64_t> all = first_primes(hi);

  PrimeWindow w;
  w.xi = xi;
  w.q = q;
  w.primes.assign(all.begin() + (xi - 1), all.end());

  long double lq = logl((long double)q);
  long double lq1 = logl((long double)q + 1);
  long double dens = 1;
  for (uint64_t p : w.primes) {
    w.log_kappa += (long double)p * lq + log1pl(powl((long double)q, -(long double)p)) - lq1;
    dens *= 1 - 1 / (long double)p;
  }
  w.density = dens;
  if (w.primes.size() <= 64) {
    Rat d(1);
    for (uint64_t p : w.primes) d *= Rat(p - 1, p);
    d.canonicalize();
    w.density_exact = d;
  }
  return w;
}

Rat G_function(uint64_t k, const std::vector<uint64_t>& primes, const Int& q) {
  Rat g(1);
  for (uint64_t p : primes) {
    if (k != 0 && k % p != 0) continue;
    g /= Rat(cyclotomic_2p(p, q));
    if (mpz_sizeinbase(g.get_den().get_mpz_t(), 2) > kBitGuard)
      throw GuardError("G_function: operand size guard exceeded");
  }
  g.canonicalize();
  return g;
}

Rat fourier_a0(const std::vector<uint64_t>& primes, const Int& q, A0Mode mode) {
  require(!primes.empty(), "fourier_a0: empty window");
  for (size_t i = 0; i < primes.size(); ++i) {
    require(primes[i] % 2 == 1 && is_prime(Int(primes[i])), "fourier_a0: odd primes required");
    if (i > 0) require(primes[i] > primes[i - 1], "fourier_a0: ascending primes required");
  }

  if (mode == A0Mode::direct) {
    Int Nbig = 1;
    for (uint64_t p : primes) Nbig *= p;
    if (Nbig > 100000000) throw GuardError("fourier_a0: direct mode requires N <= 1e8");
    uint64_t N = Nbig.get_ui();
    size_t k = primes.size();

    // residues share G through their divisibility mask
    std::vector<Rat> maskG(1u << k);
    maskG[0] = 1;
    for (size_t m = 1; m < maskG.size(); ++m) {
      size_t low = m & (~m + 1);
      size_t bit = 0;
      while ((1u << bit) != low) ++bit;
      maskG[m] = maskG[m ^ low] / Rat(cyclotomic_2p(primes[bit], q));
    }
    std::vector<uint64_t> hits(1u << k, 0);
    for (uint64_t v = 0; v < N; ++v) {
      size_t m = 0;
      for (size_t i = 0; i < k; ++i)
        if (v % primes[i] == 0) m |= (size_t)1 << i;
      hits[m] += 1;
    }
    Rat sum(0);
    for (size_t m = 0; m < maskG.size(); ++m)
      if (hits[m]) sum += Rat((unsigned long)hits[m]) * maskG[m];
    Rat a0 = sum / Rat(Nbig);
    a0.canonicalize();
    return a0;
  }

  // product mode: prod_p ((1 - 1/p) + 1/(p Phi_{2p}(q)))
  size_t bits = 0;
  for (uint64_t p : primes) bits += (size_t)(p * (mpz_sizeinbase(q.get_mpz_t(), 2)));
  if (bits > kBitGuard)
    throw GuardError("fourier_a0: product mode operand size guard exceeded");
  Rat prod(1);
  for (uint64_t p : primes) {
    Int phi = cyclotomic_2p(p, q);
    Rat term(Int(p - 1) * phi + 1, Int(p) * phi);
    term.canonicalize();
    prod *= term;
  }
  prod.canonicalize();
  return prod;
}

Rat series_coeff(unsigned b, const std::vector<uint64_t>& primes, const Int& q) {
  require(b <= kSizeGuard, "series_coeff: b exceeds 200");
  std::vector<uint64_t> eff;
  for (uint64_t p : primes)
    if (p <= b) eff.push_back(p);

  std::vector<Rat> g(b + 1), B(b + 1);
  for (unsigned k = 1; k <= b; ++k) g[k] = G_function(k, eff, q);
  B[0] = 1;
  for (unsigned n = 1; n <= b; ++n) {
    Rat s(0);
    for (unsigned k = 1; k <= n; ++k) s += g[k] * B[n - k];
    B[n] = s / Rat((unsigned long)n);
    B[n].canonicalize();
  }
  return B[b];
}

BoundReport sigma1_bound_report(unsigned b, unsigned xi, uint64_t q) {
  require(b >= 1 && b <= kSizeGuard, "sigma1_bound_report: 1 <= b <= 200 required");
  PrimeWindow w = prime_window(xi, q);
  Rat s1 = sigma1(b, q);
  Rat coeff = series_coeff(b, w.primes, Int(q));
  if (coeff <= 0) throw InvariantError("sigma1_bound_report: nonpositive series coefficient");

  BoundReport r;
  r.b = b;
  r.xi = xi;
  r.q = q;
  r.lhs_log = s1 == 0 ? -HUGE_VALL : log_of(s1);
  r.rhs_log = logl(4.0L) + w.log_kappa + (long double)b * logl((long double)q) + log_of(coeff);
  long double slack = 1e-9L * std::max((long double)1, fabsl(r.rhs_log));
  r.holds = r.lhs_log <= r.rhs_log + slack;
  return r;
}

}  // namespace unitary
