#ifndef UNITARY_FIELDS_HPP
#define UNITARY_FIELDS_HPP

#include <cstdint>
#include <vector>

#include "unitary/numeric.hpp"

namespace unitary {

/// F_{p^e} with a canonical modulus: the least monic irreducible of degree e
/// over F_p, where the coefficient tuple (a_{e-1},...,a_0) is compared as a
/// base-p integer. Elements are handles ("codes") in [0, p^e): the base-p
/// value of the coefficient vector, constant digit least significant. Code
/// order therefore gives a total order on elements, used wherever a canonical
/// choice between conjugates is required.
///
/// Fields are interned: make(p, e) returns the same object for the same
/// parameters, so pointer identity distinguishes fields.
class Field {
 public:
  static const Field& make(uint64_t p, unsigned e);

  /// F_{q^2} for a prime power q = p^a: returns make(p, 2a).
  static const Field& make_q2(uint64_t q);

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  uint64_t p() const { return p_; }
  unsigned e() const { return e_; }
  uint32_t size() const { return q_; }
  /// p^{e/2}; the "q" of which this field is the square. Requires even e.
  uint64_t base_q() const;
  /// Monic modulus digits, t^0 first, length e+1. For e == 1 this is t.
  const std::vector<uint32_t>& modulus() const { return mod_; }

  uint32_t zero() const { return 0; }
  uint32_t one() const { return one_; }
  uint32_t from_int(uint64_t c) const { return (uint32_t)(c % p_); }

  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t sub(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;
  uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }
  uint32_t pow_u(uint32_t a, uint64_t k) const;
  uint32_t pow(uint32_t a, const Int& k) const;
  uint32_t frobenius(uint32_t a, unsigned k = 1) const;  // a^(p^k)
  uint32_t frobenius_q(uint32_t a) const;                // a^q; even e only
  Int mult_order(uint32_t a) const;

  std::vector<uint32_t> decode(uint32_t a) const;  // digits, t^0 first
  uint32_t encode(const std::vector<uint32_t>& digits) const;

 private:
  Field(uint64_t p, unsigned e);

  uint32_t mul_raw(uint32_t a, uint32_t b) const;  // table-free
  uint32_t pow_raw(uint32_t a, uint64_t k) const;

  uint64_t p_;
  unsigned e_;
  uint32_t q_;
  uint32_t one_;
  std::vector<uint32_t> mod_;        // modulus digits
  std::vector<uint32_t> pw_;         // pw_[j] = p^j
  std::vector<uint64_t> ord_primes_; // distinct primes of q-1
  bool tabled_ = false;
  uint32_t gen_ = 0;
  std::vector<uint32_t> exp_, log_;
};

}  // namespace unitary

#endif
