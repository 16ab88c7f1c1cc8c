#ifndef UNITARY_NUMERIC_HPP
#define UNITARY_NUMERIC_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace unitary {

using Int = mpz_class;
using Rat = mpq_class;

/// Thrown when an input exceeds a desk-scale guard. CLI maps this to exit 2.
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a checked invariant fails (implementation bug, not a data
/// condition). CLI maps this to exit 1.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

Int int_pow(const Int& base, unsigned long exp);
inline Int int_pow(unsigned long base, unsigned long exp) { return int_pow(Int(base), exp); }

Int lcm(const Int& a, const Int& b);
Int gcd(const Int& a, const Int& b);

/// Deterministic Miller-Rabin with a fixed base set. The bases are proven
/// correct below 3.3e24 and the factoring guard keeps inputs below 2^128,
/// where the extended base set has no known pseudoprime.
bool is_prime(const Int& n);

/// Complete factorization of n >= 1 into (prime, exponent) pairs, primes
/// ascending. Trial division by primes up to 1e6, then Pollard rho (Brent).
/// Guard: n < 2^128.
std::vector<std::pair<Int, unsigned>> factor_integer(const Int& n);

/// Distinct prime divisors of n, ascending.
std::vector<Int> prime_factors(const Int& n);

/// All primes <= limit, ascending.
const std::vector<uint32_t>& small_primes();  // primes below 1e6, cached
std::vector<uint64_t> primes_up_to(uint64_t limit);

/// The first `count` primes, ascending (p_1 = 2).
std::vector<uint64_t> first_primes(uint64_t count);

int mobius(uint64_t n);
std::vector<uint64_t> divisors(uint64_t n);

/// Value of the n'th cyclotomic polynomial at an integer q >= 2,
/// via the Moebius product over divisors of n.
Int cyclotomic_value(uint64_t n, const Int& q);

/// Natural log of a positive integer / rational, in long double (the exact
/// side of an inequality gets converted with ~1 ulp slack, never asserted
/// for equality).
long double log_of(const Int& x);
long double log_of(const Rat& x);
long double log2_of(const Int& x);
long double log2_of(const Rat& x);

std::string to_string(const Int& x);

}  // namespace unitary

#endif
