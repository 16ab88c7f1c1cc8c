#ifndef UNITARY_PARTITIONS_HPP
#define UNITARY_PARTITIONS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "unitary/numeric.hpp"
#include "unitary/parallel.hpp"

namespace unitary {

/// Streaming partition visitors; parts arrive strictly (resp. weakly)
/// decreasing. Guard: s <= 200.
void for_each_distinct(unsigned s, const std::function<void(const std::vector<uint32_t>&)>& fn);
void for_each_distinct_odd(unsigned b,
                           const std::function<void(const std::vector<uint32_t>&)>& fn);
void for_each_partition(unsigned s,
                        const std::function<void(const std::vector<uint32_t>&)>& fn);

/// Materialized lists (additionally guarded by the predicted count).
std::vector<std::vector<uint32_t>> partitions_distinct(unsigned s);
std::vector<std::vector<uint32_t>> partitions_distinct_odd(unsigned b);

uint64_t count_distinct(unsigned s);
uint64_t count_distinct_odd(unsigned b);

/// X1 over a distinct-odd-parts partition: lcm of q^d + 1.
Int X1_of_partition(const std::vector<uint32_t>& parts, uint64_t q);
/// X2 over a distinct-parts partition: lcm of q^{2d} - 1.
Int X2_of_partition(const std::vector<uint32_t>& parts, uint64_t q);

/// sigma1(b) = sum over partitions of b into distinct odd parts of
/// X1(pi) / prod(parts); sigma2(s) likewise with distinct parts and X2.
/// Exact; empty-sum sizes give 0, size 0 gives 1.
Rat sigma1(unsigned b, uint64_t q, Exec exec = Exec::parallel);
Rat sigma2(unsigned s, uint64_t q, Exec exec = Exec::parallel);

/// All values up to max in one enumeration pass (index = size).
std::vector<Rat> sigma1_sweep(unsigned max_b, uint64_t q, Exec exec = Exec::parallel);
std::vector<Rat> sigma2_sweep(unsigned max_s, uint64_t q, Exec exec = Exec::parallel);

/// Phi_{2p}(q) = (q^p + 1)/(q + 1) for an odd prime p; cross-checked against
/// the Moebius product.
Int cyclotomic_2p(uint64_t p, const Int& q);
inline Int phi_2(const Int& q) { return q + 1; }

/// Primes with index in [xi, floor(e^xi)] (1-based, p_1 = 2). Guard xi <= 13.
struct PrimeWindow {
  unsigned xi = 0;
  uint64_t q = 0;
  std::vector<uint64_t> primes;
  long double log_kappa = 0;  // sum of log Phi_{2p}(q) over the window
  long double density = 1;    // prod (1 - 1/p)
  std::optional<Rat> density_exact;  // populated for windows of <= 64 primes
};
PrimeWindow prime_window(unsigned xi, uint64_t q);

/// G(k) = prod over window primes dividing k of 1/Phi_{2p}(q); G(0) takes
/// every window prime.
Rat G_function(uint64_t k, const std::vector<uint64_t>& primes, const Int& q);

/// Mean of G over its period N = prod primes. The direct mode sums the N
/// residues (N <= 1e8); the product mode uses the factored form
/// prod((1 - 1/p) + 1/(p Phi_{2p}(q))), guarded by total operand size.
enum class A0Mode : uint8_t { direct, product };
Rat fourier_a0(const std::vector<uint64_t>& primes, const Int& q, A0Mode mode);

/// [z^b] exp(sum_k G(k) z^k / k), exact, via the logarithmic-derivative
/// recurrence. Window primes above b cannot divide any k <= b and drop out.
Rat series_coeff(unsigned b, const std::vector<uint64_t>& primes, const Int& q);

/// log-space comparison sigma1(b) <= 4 kappa_xi q^b [z^b] exp(sum G z^k / k).
struct BoundReport {
  unsigned b = 0;
  unsigned xi = 0;
  uint64_t q = 0;
  long double lhs_log = 0;
  long double rhs_log = 0;
  bool holds = false;
};
BoundReport sigma1_bound_report(unsigned b, unsigned xi, uint64_t q);

}  // namespace unitary

#endif
