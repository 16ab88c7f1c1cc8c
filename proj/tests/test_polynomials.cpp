#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "unitary/polynomials.hpp"
#include "unitary/rng.hpp"

using namespace unitary;

namespace {

Poly random_monic(const Field& F, unsigned d, CounterRng& rng, bool nonzero_const) {
  std::vector<uint32_t> c(d + 1);
  c[d] = F.one();
  for (unsigned j = 0; j < d; ++j) c[j] = (uint32_t)rng.below((uint64_t)F.size());
  if (nonzero_const && c[0] == 0) c[0] = F.one();
  return poly_from_coeffs(F, c);
}

}  // namespace

TEST_CASE("divmod invariant") {
  CounterRng rng(11, 0);
  for (uint64_t q : {2, 3}) {
    const Field& F = Field::make_q2(q);
    for (int it = 0; it < 200; ++it) {
      Poly f = random_monic(F, 1 + (unsigned)rng.below(8), rng, false);
      Poly g = random_monic(F, 1 + (unsigned)rng.below(4), rng, false);
      auto [quo, rem] = divmod(f, g);
      CHECK(add(mul(quo, g), rem) == f);
      CHECK((rem.is_zero() || rem.deg() < g.deg()));
    }
  }
}

TEST_CASE("code round trip and ordering") {
  const Field& F = Field::make_q2(2);
  for (uint64_t code = 0; code < 64; ++code) {
    Poly f = poly_from_code(F, 3, code);
    CHECK(f.is_monic());
    CHECK(f.deg() == 3);
    CHECK(poly_code(f) == code);
  }
}

TEST_CASE("tilde is a degree-preserving involution") {
  CounterRng rng(12, 0);
  for (uint64_t q : {2, 3}) {
    const Field& F = Field::make_q2(q);
    for (int it = 0; it < 300; ++it) {
      Poly f = random_monic(F, 1 + (unsigned)rng.below(7), rng, true);
      Poly t = tilde(f);
      CHECK(t.deg() == f.deg());
      CHECK(t.is_monic());
      CHECK(tilde(t) == f);
    }
  }
}

TEST_CASE("tilde is multiplicative") {
  CounterRng rng(13, 0);
  const Field& F = Field::make_q2(3);
  for (int it = 0; it < 200; ++it) {
    Poly f = random_monic(F, 1 + (unsigned)rng.below(4), rng, true);
    Poly g = random_monic(F, 1 + (unsigned)rng.below(4), rng, true);
    CHECK(tilde(mul(f, g)) == mul(tilde(f), tilde(g)));
  }
}

TEST_CASE("tilde rejects zero constant term") {
  const Field& F = Field::make_q2(2);
  CHECK_THROWS_AS(tilde(poly_x(F)), GuardError);
}

TEST_CASE("irreducible enumeration matches counting formulas") {
  for (uint64_t q : {2, 3}) {
    const Field& F = Field::make_q2(q);
    Int Q(( long)(q * q));
    for (unsigned d = 1; d <= 5; ++d) {
      auto irr = irreducibles(F, d);
      CHECK(Int((long)irr.size()) == count_I(d, Q));
      for (const Poly& f : irr) CHECK(irreducible(f));
      // J + paired K partitions the list
      unsigned nJ = 0, nKp = 0, nKm = 0;
      for (const Poly& f : irr) {
        Cls c = classify(f);
        if (c == Cls::J) {
          CHECK(tilde(f) == f);
          ++nJ;
        } else if (c == Cls::Kplus) {
          CHECK(poly_code(f) < poly_code(tilde(f)));
          ++nKp;
        } else {
          ++nKm;
        }
      }
      CHECK(nKp == nKm);
      CHECK(Int(nJ) == count_J(F, d));
      CHECK(enumerate_J(F, d).size() == nJ);
      CHECK(enumerate_Kplus(F, d).size() == nKp);
    }
    // x is excluded from degree 1
    for (const Poly& f : irreducibles(F, 1)) CHECK(f.c[0] != 0);
  }
}

TEST_CASE("self-conjugate counts vanish in even degree and match the base field") {
  for (uint64_t q : {2, 3}) {
    const Field& F = Field::make_q2(q);
    for (unsigned d = 2; d <= 8; d += 2) CHECK(count_J(F, d) == 0);
    for (unsigned d = 3; d <= 9; d += 2) CHECK(count_J(F, d) == count_I(d, Int((long)q)));
    CHECK(count_J(F, 1) == Int((long)(q + 1)));
  }
}

TEST_CASE("tau of linear factors is the multiplicative order of the root") {
  for (uint64_t q : {2, 3}) {
    const Field& F = Field::make_q2(q);
    for (uint32_t a = 1; a < F.size(); ++a) {
      // phi = x - a
      Poly phi = poly_from_coeffs(F, {F.neg(a), F.one()});
      CHECK(tau(phi) == F.mult_order(a));
    }
  }
}

TEST_CASE("tau properties") {
  for (uint64_t q : {2, 3}) {
    const Field& F = Field::make_q2(q);
    for (unsigned d = 1; d <= 4; ++d) {
      Int group = int_pow(Int((long)(q * q)), d) - 1;
      for (const Poly& phi : irreducibles(F, d)) {
        Int t = tau(phi);
        CHECK(group % t == 0);
        CHECK(t == tau(tilde(phi)));
        // minimality: x^t = 1 but no proper prime quotient works
        CHECK(powmod(poly_x(F), t, phi) == mod(poly_one(F), phi));
        for (auto& [p, e] : factor_integer(t))
          CHECK(powmod(poly_x(F), t / p, phi) != mod(poly_one(F), phi));
      }
    }
    for (unsigned d = 1; d <= 7; d += 2) {
      Int cap = int_pow(Int((long)q), d) + 1;
      for (const Poly& phi : enumerate_J(F, d)) CHECK(cap % tau(phi) == 0);
    }
  }
}

TEST_CASE("factorize round trip") {
  CounterRng rng(14, 0);
  for (uint64_t q : {2, 3}) {
    const Field& F = Field::make_q2(q);
    for (int it = 0; it < 120; ++it) {
      Poly f = random_monic(F, 1 + (unsigned)rng.below(9), rng, true);
      Factorization fac = factorize(f);
      Poly prod = poly_one(F);
      unsigned degsum = 0;
      uint64_t prev_key = 0;
      for (const FactorEntry& e : fac.factors) {
        CHECK(irreducible(e.phi));
        CHECK(e.cls == classify(e.phi));
        for (unsigned i = 0; i < e.mult; ++i) prod = mul(prod, e.phi);
        degsum += e.mult * e.phi.deg();
        // sorted by (deg, code) without repeats
        uint64_t key = (uint64_t)e.phi.deg() << 32 | poly_code(e.phi);
        CHECK(key > prev_key);
        prev_key = key;
      }
      CHECK(prod == f);
      CHECK(degsum == f.deg());
    }
  }
}

TEST_CASE("factorize a crafted square") {
  const Field& F = Field::make_q2(2);
  auto irr3 = irreducibles(F, 3);
  Poly f = mul(mul(irr3[0], irr3[0]), irr3[1]);
  Factorization fac = factorize(f);
  REQUIRE(fac.factors.size() == 2);
  CHECK(fac.factors[0].mult + fac.factors[1].mult == 3);
  PolyStats st = poly_stats(fac);
  CHECK(st.M == 2);
}

TEST_CASE("stats of a split semisimple polynomial") {
  // (x+1)(x+w)(x+w^2) over F_4: three self-conjugate linear factors
  const Field& F = Field::make_q2(2);
  Poly f = poly_one(F);
  for (uint32_t a : {1u, 2u, 3u}) f = mul(f, poly_from_coeffs(F, {a, F.one()}));
  PolyStats st = poly_stats(factorize(f));
  CHECK(st.M == 1);
  CHECK(st.X1 == 3);  // lcm of q^1+1 over the J factors
  CHECK(st.X2 == 1);
  CHECK(st.X == 3);
  CHECK(st.T == 3);  // orders 1, 3, 3
}

TEST_CASE("omega membership count") {
  for (uint64_t q : {2, 3}) {
    const Field& F = Field::make_q2(q);
    uint64_t Q = q * q;
    for (unsigned n = 1; n <= 3; ++n) {
      uint64_t total = 1, expected = q + 1;
      for (unsigned i = 0; i < n; ++i) total *= Q;
      for (unsigned i = 1; i < n; ++i) expected *= q;
      uint64_t hits = 0;
      for (uint64_t code = 0; code < total; ++code)
        if (is_in_Omega(poly_from_code(F, n, code))) ++hits;
      CHECK(hits == expected);
    }
  }
}

TEST_CASE("omega membership equals multiset tilde-closure") {
  const Field& F = Field::make_q2(2);
  for (uint64_t code = 0; code < 4096; ++code) {
    Poly f = poly_from_code(F, 6, code);
    if (f.c[0] == 0) {
      CHECK_FALSE(is_in_Omega(f));
      continue;
    }
    bool closed = true;
    Factorization fac = factorize(f);
    for (const FactorEntry& a : fac.factors) {
      Poly conj = tilde(a.phi);
      unsigned conj_mult = 0;
      for (const FactorEntry& b : fac.factors)
        if (b.phi == conj) conj_mult = b.mult;
      if (conj_mult != a.mult) closed = false;
    }
    CHECK(is_in_Omega(f) == closed);
  }
}
