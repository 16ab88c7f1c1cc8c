#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "unitary/fields.hpp"

using namespace unitary;

namespace {

// exhaustive ring/field axioms; fields are small enough to brute-force
void check_axioms(const Field& F) {
  uint32_t n = F.size();
  for (uint32_t a = 0; a < n; ++a) {
    CHECK(F.add(a, 0) == a);
    CHECK(F.mul(a, F.one()) == a);
    CHECK(F.add(a, F.neg(a)) == 0);
    if (a != 0) {
      CHECK(F.mul(a, F.inv(a)) == F.one());
      CHECK(F.pow_u(a, n - 1) == F.one());  // Lagrange
    }
    for (uint32_t b = 0; b < n; ++b) {
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, b) == F.mul(b, a));
      CHECK(F.sub(a, b) == F.add(a, F.neg(b)));
      for (uint32_t c = 0; c < n; ++c) {
        CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
        CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      }
    }
  }
}

}  // namespace

TEST_CASE("axioms for every field up to 256 elements") {
  check_axioms(Field::make(2, 1));
  check_axioms(Field::make(2, 2));
  check_axioms(Field::make(2, 4));
  check_axioms(Field::make(3, 2));
  check_axioms(Field::make(5, 2));
  check_axioms(Field::make(7, 1));
  check_axioms(Field::make(2, 8));
  check_axioms(Field::make(3, 4));
}

TEST_CASE("interning") {
  CHECK(&Field::make(2, 2) == &Field::make(2, 2));
  CHECK(&Field::make(2, 2) == &Field::make_q2(2));
  CHECK(&Field::make_q2(4) == &Field::make(2, 4));
  CHECK(&Field::make_q2(9) == &Field::make(3, 4));
  CHECK(Field::make_q2(3).size() == 9);
  CHECK(Field::make_q2(3).base_q() == 3);
}

TEST_CASE("F4 multiplication table") {
  const Field& F = Field::make(2, 2);
  // codes: 0, 1, 2 = t, 3 = t+1 with t^2 = t+1
  CHECK(F.mul(2, 2) == 3);
  CHECK(F.mul(2, 3) == 1);
  CHECK(F.mul(3, 3) == 2);
  CHECK(F.inv(2) == 3);
}

TEST_CASE("frobenius") {
  for (uint64_t q : {2, 3, 4, 5}) {
    const Field& F = Field::make_q2(q);
    for (uint32_t a = 0; a < F.size(); ++a) {
      uint32_t c = F.frobenius_q(a);
      CHECK(c == F.pow_u(a, q));
      CHECK(F.frobenius_q(c) == a);  // involution on F_{q^2}
      CHECK(F.frobenius(a) == F.pow_u(a, F.p()));
    }
    // fixed points of a -> a^q are exactly the base field
    unsigned fixed = 0;
    for (uint32_t a = 0; a < F.size(); ++a)
      if (F.frobenius_q(a) == a) ++fixed;
    CHECK(fixed == q);
  }
}

TEST_CASE("mult_order divides group order and is minimal") {
  for (uint64_t q : {3, 4, 9, 25}) {
    const Field& F = Field::make_q2(q);
    for (uint32_t a = 1; a < F.size(); ++a) {
      Int ord = F.mult_order(a);
      CHECK(Int(F.size() - 1) % ord == 0);
      CHECK(F.pow(a, ord) == F.one());
      for (auto& [p, e] : factor_integer(ord))
        CHECK(F.pow(a, ord / p) != F.one());
    }
  }
}

TEST_CASE("encode and decode") {
  const Field& F = Field::make(3, 4);
  for (uint32_t a = 0; a < F.size(); ++a) {
    auto digits = F.decode(a);
    CHECK(digits.size() == 4);
    CHECK(F.encode(digits) == a);
  }
}

TEST_CASE("norm map is onto the base field") {
  const Field& F = Field::make_q2(3);
  uint64_t q = 3;
  // a^(q+1) lands in F_q; each nonzero value is hit q+1 times
  std::vector<unsigned> hits(F.size(), 0);
  for (uint32_t a = 1; a < F.size(); ++a) ++hits[F.pow_u(a, q + 1)];
  unsigned nonzero = 0;
  for (uint32_t v = 1; v < F.size(); ++v)
    if (hits[v]) {
      CHECK(hits[v] == q + 1);
      CHECK(F.frobenius_q(v) == v);
      ++nonzero;
    }
  CHECK(nonzero == q - 1);
}
