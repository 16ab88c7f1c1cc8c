#ifndef UNITARY_POLYNOMIALS_HPP
#define UNITARY_POLYNOMIALS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "unitary/fields.hpp"
#include "unitary/numeric.hpp"

namespace unitary {

/// Polynomial over a Field, coefficient codes with t^0 first. The zero
/// polynomial has an empty vector; otherwise c.back() != 0.
struct Poly {
  const Field* F = nullptr;
  std::vector<uint32_t> c;

  int deg() const { return (int)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_monic() const { return !c.empty() && c.back() == F->one(); }
  uint32_t coeff(size_t j) const { return j < c.size() ? c[j] : 0; }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool operator==(const Poly& o) const { return F == o.F && c == o.c; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
};

Poly poly_zero(const Field& F);
Poly poly_one(const Field& F);
Poly poly_x(const Field& F);
Poly poly_const(const Field& F, uint32_t a);
Poly poly_from_coeffs(const Field& F, std::vector<uint32_t> coeffs);

/// Canonical code of a monic polynomial: base-Q value of the non-leading
/// coefficient codes, a_0 least significant. (degree, code) totally orders
/// the monic polynomials; this order is the K+/K- tie-break.
uint64_t poly_code(const Poly& f);
Poly poly_from_code(const Field& F, unsigned d, uint64_t code);
std::string poly_str(const Poly& f);  // codes as integer coefficients

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly mul_scalar(const Poly& a, uint32_t s);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly mod(const Poly& a, const Poly& b);
Poly make_monic(const Poly& a);
Poly gcd(const Poly& a, const Poly& b);  // monic (or zero)
Poly lcm(const Poly& a, const Poly& b);
Poly mulmod(const Poly& a, const Poly& b, const Poly& f);
Poly powmod(const Poly& base, const Int& k, const Poly& f);
uint32_t eval(const Poly& f, uint32_t x);
Poly poly_pow(const Poly& base, unsigned k);

/// Conjugate-reciprocal: x^d + sum a_0^{-q} a_{d-j}^q x^j. Monic input with
/// nonzero constant term; an involution that permutes the irreducibles.
Poly tilde(const Poly& f);
bool self_conjugate(const Poly& f);

/// Deterministic irreducibility test over the coefficient field (gcd with
/// x^(Q^k) - x for k up to d/2; a reducible polynomial always shares a root
/// with one of them).
bool irreducible(const Poly& f);

/// Monic irreducibles of degree d over F, in code order, as codes.
/// Degree 1 includes x (code 0); callers following the I_1 convention skip it.
/// Guard: Q^d <= 2^24.
const std::vector<uint64_t>& irreducible_codes(const Field& F, unsigned d);

/// I_d with the x-exclusion at d = 1, as polynomials in canonical order.
std::vector<Poly> irreducibles(const Field& F, unsigned d);

enum class Cls : uint8_t { J, Kplus, Kminus };

/// J iff phi = tilde(phi); otherwise the canonical-smaller of the pair is K+.
Cls classify(const Poly& phi);

/// Self-conjugate irreducibles of degree d (J_d), code order. Enumerated
/// directly from the constraint a_{d-j} = a_0 a_j^q, a_0^{q+1} = 1, which
/// cuts the candidate space to (q+1) q^{d-1}; empty for even d.
std::vector<Poly> enumerate_J(const Field& F, unsigned d);

/// K+ representatives of degree d, code order (needs the degree-d table).
std::vector<Poly> enumerate_Kplus(const Field& F, unsigned d);

/// Mignotte count |I_{d,r}| = (1/d) sum_{k|d} mu(k) r^{d/k}.
Int count_I(unsigned d, const Int& r);

/// Moebius formula for |J_d|: 0 for even d, (1/d) sum mu(k)(q^{d/k}+1) else.
Int count_J(const Field& F, unsigned d);

/// Multiplicative order of x in F[x]/(phi), phi irreducible != x. Equals the
/// common order of the roots in the degree-d extension.
Int tau(const Poly& phi);

struct FactorEntry {
  Poly phi;
  unsigned mult;
  Cls cls;
};

struct Factorization {
  Poly base;
  std::vector<FactorEntry> factors;  // ascending (degree, code)
};

/// Trial division by the irreducible tables in increasing degree; the final
/// remainder of degree > half is itself irreducible. Requires nonzero
/// constant term.
Factorization factorize(const Poly& f);

struct PolyStats {
  Int X1, X2, X, T;
  unsigned M;
};

/// X1 = lcm{q^|phi|+1 : J factors}, X2 = lcm{q^{2|phi|}-1 : K+ factors},
/// X = lcm(X1,X2), T = lcm of tau over all distinct factors, M = max
/// multiplicity. Empty lcm = 1; constant polynomial has M = 0.
PolyStats poly_stats(const Factorization& fact);

/// Monic f with nonzero constant term whose factor multiset is closed under
/// tilde with equal multiplicities — equivalently tilde(f) = f.
bool is_in_Omega(const Poly& f);

}  // namespace unitary

#endif
