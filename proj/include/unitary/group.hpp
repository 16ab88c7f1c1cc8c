#ifndef UNITARY_GROUP_HPP
#define UNITARY_GROUP_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "unitary/matrices.hpp"
#include "unitary/numeric.hpp"
#include "unitary/parallel.hpp"
#include "unitary/rng.hpp"

namespace unitary {

/// |U(n,q)| = q^{n(n-1)/2} prod_{j=1}^{n} (q^j - (-1)^j).
Int order_U(unsigned n, uint64_t q);

/// |GL(n,r)| = r^{n(n-1)/2} prod_{j=1}^{n} (r^j - 1).
Int order_GL(unsigned n, const Int& r);

/// All of U(n,q) by extending orthonormal frames column by column.
/// Guarded to a small allowlist unless explicitly overridden.
std::vector<Matrix> enumerate_group(unsigned n, uint64_t q, bool override_guard = false);

/// Oracle: filter all of GL-sized matrix space by the unitarity predicate.
/// Q^{n^2} scan, so n <= 2 only (and n = 2 only for tiny q).
std::vector<Matrix> enumerate_group_filter(unsigned n, uint64_t q);

/// Uniform element, deterministic in (seed, index); independent streams per
/// index make parallel draws reproducible regardless of thread count.
Matrix sample_unitary(unsigned n, uint64_t q, uint64_t seed, uint64_t index);

struct GroupCensus {
  unsigned n = 0;
  uint64_t q = 0;
  Int order_formula;
  Int order_enumerated;
  Rat mu;         // mean element order
  Int max_order;  // max V(A)
  std::map<Int, Int> order_hist;
  std::map<uint64_t, Int> charpoly_counts;  // code of char poly -> count
  unsigned max_M = 0;
  Int max_T;
};

/// Full sweep over the group: orders via the minimal-polynomial route, char
/// polynomial tallies, and the hard bound checks V <= p M T and
/// V <= 3 p M q^n on every element.
GroupCensus census(unsigned n, uint64_t q, Exec exec, bool override_guard = false);

struct SampleStats {
  unsigned n = 0;
  uint64_t q = 0;
  uint64_t seed = 0;
  uint64_t count = 0;
  Rat mean_order;
  Int max_order;
  long double mean_log2_order = 0;
};

/// Orders of `count` sampled elements; the two order bounds are asserted on
/// every draw.
SampleStats sample_order_stats(unsigned n, uint64_t q, uint64_t seed, uint64_t count,
                               Exec exec);

}  // namespace unitary

#endif
