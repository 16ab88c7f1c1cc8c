#ifndef UNITARY_MEASURE_HPP
#define UNITARY_MEASURE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "unitary/numeric.hpp"
#include "unitary/parallel.hpp"
#include "unitary/polynomials.hpp"

namespace unitary {

/// Weight factor of a self-conjugate factor of degree d with multiplicity m:
/// q^{d(m^2-m)} / |U(m, q^d)|.
Rat class_weight_J(uint64_t q, unsigned d, unsigned m);

/// Weight factor of a conjugate pair of degree d with common multiplicity m:
/// q^{2d(m^2-m)} / |GL(m, q^{2d})|.
Rat class_weight_K(uint64_t q, unsigned d, unsigned m);

/// Probability that a uniform element of U(n,q), n = deg f, has
/// characteristic polynomial f. Requires f monic; f(0) = 0 or a factor
/// multiset not closed under tilde is off the support and gives 0.
Rat measure_of(const Poly& f);

/// A conjugacy-closed factor class: a self-conjugate irreducible, or a
/// conjugate pair represented by its canonical-smaller member.
struct ClassInfo {
  Poly rep;
  bool isJ = false;
  unsigned deg = 0;   // degree of rep
  unsigned span = 0;  // degrees consumed per multiplicity: deg or 2*deg
  uint64_t code = 0;
  Int xfac;  // q^deg + 1 for J, q^{2 deg} - 1 for pairs
};

/// The full characteristic-polynomial distribution on U(n,q): one entry per
/// tilde-closed monic polynomial of degree n with nonzero constant term,
/// holding the exact element count. Entry weights come from the product
/// formula over factor classes; the table asserts that the counts are
/// integers summing to |U(n,q)| and that there are (q+1) q^{n-1} entries.
class OmegaTable {
 public:
  struct Entry {
    std::vector<std::pair<uint32_t, uint32_t>> parts;  // (class index, mult)
    Int count;
    uint32_t M = 0;
  };

  OmegaTable(unsigned n, uint64_t q, bool override_guard = false);
  OmegaTable(const OmegaTable&) = delete;

  /// Process-wide cache.
  static const OmegaTable& get(unsigned n, uint64_t q);

  unsigned n() const { return n_; }
  uint64_t q() const { return q_; }
  const Field& field() const { return *F_; }
  const Int& group_order() const { return order_; }
  const std::vector<ClassInfo>& classes() const { return classes_; }
  const std::vector<Entry>& entries() const { return entries_; }

  Rat weight(const Entry& e) const;
  Poly poly_of(const Entry& e) const;
  Int X_of(const Entry& e) const;
  Int X1_of(const Entry& e) const;
  Int X2_of(const Entry& e) const;
  Int T_of(const Entry& e) const;  // lcm of tau over the factors

 private:
  unsigned n_;
  uint64_t q_;
  const Field* F_;
  Int order_;
  std::vector<ClassInfo> classes_;
  std::vector<Entry> entries_;
};

enum class Stat : uint8_t { X, X1, X2, T, M };
Stat stat_from_name(const std::string& name);
const char* stat_name(Stat s);

/// E_n(Y) = sum over the table of count * Y / |U|.
Rat expect_stat(Stat s, unsigned n, uint64_t q, Exec exec = Exec::parallel);

/// P_n(M > xi), exact.
Rat tail_M(unsigned n, uint64_t q, unsigned xi);

/// P_n(m_psi = ell) where psi is irreducible; the multiplicity is that of
/// psi's conjugacy class in the table.
Rat prob_mult_eq(unsigned n, uint64_t q, const Poly& psi, unsigned ell);

struct PiStep {
  unsigned deg = 0;
  uint64_t code = 0;
  bool isJ = false;
  bool kept = true;
};

/// Greedy reduction to a divisibility-minimal divisor with the same X:
/// multiplicities drop to one, then classes are deleted in canonical
/// ascending order whenever X survives without them.
struct PiSplit {
  Poly f, g, h;
  Int X_f, X_g;
  std::vector<PiStep> steps;
};
PiSplit pi_factor(const Poly& f);

/// Submultiplicativity probe over a full table: for every f whose reduced
/// part g is proper, compare P_n({f}) against P_{|g|}({g}) P_{n-|g|}({h}).
/// The inequality fails in general — (x+1)^2 at q=2 gives ratio exactly 2 —
/// but the pair-only case stays below one and the global ratio below ten.
struct SubLemmaReport {
  unsigned n = 0;
  uint64_t q = 0;
  uint64_t checked = 0;
  uint64_t ratio_gt_one = 0;
  Rat max_ratio;
  std::string argmax;
  uint64_t k_only_checked = 0;
  uint64_t k_only_gt_one = 0;
  Rat max_ratio_k_only;
  Rat unit_square_ratio;  // ratio of f = (x+1)^2, zero if absent (n != 2)
  bool within_ten = true;
};
SubLemmaReport check_sub_lemma(unsigned n, uint64_t q);

/// Inverse-CDF draws from the char-poly distribution; entry indices,
/// deterministic in (seed, index).
std::vector<size_t> sample_entries(const OmegaTable& tab, uint64_t seed, uint64_t count);

}  // namespace unitary

#endif
