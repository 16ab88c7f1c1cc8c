#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <map>
#include <vector>

#include "unitary/numeric.hpp"
#include "unitary/partitions.hpp"

using namespace unitary;

namespace {

// z_pi = prod over part multiplicities of j^{m_j} * m_j!
Int z_of(const std::vector<uint32_t>& parts) {
  std::map<uint32_t, unsigned> mult;
  for (uint32_t p : parts) mult[p]++;
  Int z = 1;
  for (auto [j, m] : mult) {
    z *= int_pow(Int(j), m);
    for (unsigned i = 2; i <= m; ++i) z *= i;
  }
  return z;
}

Int prod_parts(const std::vector<uint32_t>& parts) {
  Int p = 1;
  for (uint32_t v : parts) p *= v;
  return p;
}

}  // namespace

TEST_CASE("partition counts match the classical tables") {
  // distinct parts, then distinct odd parts, s = 0..10
  const uint64_t distinct[] = {1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10};
  const uint64_t distinct_odd[] = {1, 1, 0, 1, 1, 1, 1, 1, 2, 2, 2};
  for (unsigned s = 0; s <= 10; ++s) {
    CHECK(count_distinct(s) == distinct[s]);
    CHECK(count_distinct_odd(s) == distinct_odd[s]);
  }
  // counts agree with the enumerations
  for (unsigned s = 0; s <= 24; ++s) {
    uint64_t n1 = 0, n2 = 0;
    for_each_distinct(s, [&](const std::vector<uint32_t>&) { ++n1; });
    for_each_distinct_odd(s, [&](const std::vector<uint32_t>&) { ++n2; });
    CHECK(n1 == count_distinct(s));
    CHECK(n2 == count_distinct_odd(s));
    CHECK(partitions_distinct(s).size() == n1);
    CHECK(partitions_distinct_odd(s).size() == n2);
  }
}

TEST_CASE("streamed partitions have the advertised shape") {
  unsigned rows = 0;
  for_each_partition(8, [&](const std::vector<uint32_t>& parts) {
    ++rows;
    uint64_t sum = 0;
    for (size_t i = 0; i < parts.size(); ++i) {
      CHECK(parts[i] >= 1);
      if (i > 0) CHECK(parts[i] <= parts[i - 1]);  // weakly decreasing
      sum += parts[i];
    }
    CHECK(sum == 8);
  });
  CHECK(rows == 22);  // p(8)

  for_each_distinct(12, [&](const std::vector<uint32_t>& parts) {
    for (size_t i = 1; i < parts.size(); ++i) CHECK(parts[i] < parts[i - 1]);
  });
  for_each_distinct_odd(15, [&](const std::vector<uint32_t>& parts) {
    for (size_t i = 0; i < parts.size(); ++i) {
      CHECK(parts[i] % 2 == 1);
      if (i > 0) CHECK(parts[i] < parts[i - 1]);
    }
  });
}

TEST_CASE("sum of 1/z_pi over partitions of s is 1") {
  // permutations of cycle type pi number s!/z_pi, so the types tile S_s
  for (unsigned s = 1; s <= 30; s += (s < 12 ? 1 : 6)) {
    Rat total = 0;
    for_each_partition(s, [&](const std::vector<uint32_t>& parts) {
      Rat term(1, z_of(parts));
      term.canonicalize();
      total += term;
    });
    CHECK(total == Rat(1));
  }
}

TEST_CASE("X1/X2 of explicit partitions") {
  CHECK(X1_of_partition({}, 2) == 1);
  CHECK(X1_of_partition({1}, 2) == 3);
  CHECK(X1_of_partition({3, 1}, 2) == 9);  // lcm(9, 3)
  CHECK(X1_of_partition({5}, 2) == 33);
  CHECK(X2_of_partition({1}, 2) == 3);
  CHECK(X2_of_partition({2, 1}, 2) == 15);   // lcm(15, 3)
  CHECK(X2_of_partition({3, 2, 1}, 3) == 7280);  // lcm(728, 80, 8)

  CHECK_THROWS_AS(X1_of_partition({2}, 2), GuardError);      // even part
  CHECK_THROWS_AS(X1_of_partition({3, 3}, 2), GuardError);   // repeated
  CHECK_THROWS_AS(X1_of_partition({1, 3}, 2), GuardError);   // ascending
  CHECK_THROWS_AS(X2_of_partition({1, 1}, 2), GuardError);
  CHECK_THROWS_AS(X2_of_partition({0}, 2), GuardError);
  CHECK_THROWS_AS(X2_of_partition({1}, 6), GuardError);  // q not a prime power
}

TEST_CASE("sigma values: pins and brute force") {
  CHECK(sigma1(0, 2) == Rat(1));
  CHECK(sigma1(1, 2) == Rat(3));
  CHECK(sigma1(2, 2) == Rat(0));
  CHECK(sigma1(3, 2) == Rat(3));
  CHECK(sigma1(4, 2) == Rat(3));
  CHECK(sigma2(0, 2) == Rat(1));
  CHECK(sigma2(1, 2) == Rat(3));
  {
    Rat expect(57, 2);
    expect.canonicalize();
    CHECK(sigma2(3, 2) == expect);
  }

  for (uint64_t q : {2ul, 3ul}) {
    auto s1 = sigma1_sweep(12, q);
    auto s2 = sigma2_sweep(12, q);
    REQUIRE(s1.size() == 13);
    REQUIRE(s2.size() == 13);
    for (unsigned b = 0; b <= 12; ++b) {
      Rat brute1 = 0, brute2 = 0;
      for_each_distinct_odd(b, [&](const std::vector<uint32_t>& parts) {
        Rat term(X1_of_partition(parts, q), prod_parts(parts));
        term.canonicalize();
        brute1 += term;
      });
      for_each_distinct(b, [&](const std::vector<uint32_t>& parts) {
        Rat term(X2_of_partition(parts, q), prod_parts(parts));
        term.canonicalize();
        brute2 += term;
      });
      CHECK(s1[b] == brute1);
      CHECK(s2[b] == brute2);
      CHECK(sigma1(b, q) == brute1);
      CHECK(sigma2(b, q) == brute2);
    }
  }
}

TEST_CASE("cyclotomic_2p matches the generic cyclotomic value") {
  for (uint64_t p : {3ul, 5ul, 7ul, 11ul, 13ul})
    for (uint64_t q : {2ul, 3ul, 4ul})
      CHECK(cyclotomic_2p(p, Int(q)) == cyclotomic_value(2 * p, Int(q)));

  CHECK(cyclotomic_2p(3, Int(2)) == 3);
  CHECK(cyclotomic_2p(5, Int(2)) == 11);
  CHECK(cyclotomic_2p(7, Int(3)) == 547);

  CHECK_THROWS_AS(cyclotomic_2p(2, Int(2)), GuardError);
  CHECK_THROWS_AS(cyclotomic_2p(9, Int(2)), GuardError);
  CHECK_THROWS_AS(cyclotomic_2p(4, Int(2)), GuardError);
  CHECK_THROWS_AS(cyclotomic_2p(3, Int(1)), GuardError);
}

TEST_CASE("q^d + 1 factors through the even-index cyclotomics") {
  // q^d + 1 = prod over e | d of Phi_{2e}(q), d odd; the 2p helper covers
  // the prime divisors, the generic Moebius product the rest
  for (uint64_t q : {2ul, 3ul}) {
    for (uint64_t d = 1; d <= 15; d += 2) {
      Int prod = 1;
      for (uint64_t e : divisors(d)) {
        if (e == 1) prod *= phi_2(Int(q));
        else if (is_prime(Int(e))) prod *= cyclotomic_2p(e, Int(q));
        else prod *= cyclotomic_value(2 * e, Int(q));
      }
      CHECK(prod == int_pow(Int(q), d) + 1);
    }
  }
}

TEST_CASE("prime windows") {
  auto w2 = prime_window(2, 2);
  CHECK(w2.primes == std::vector<uint64_t>{3, 5, 7, 11, 13, 17});
  CHECK(w2.log_kappa == doctest::Approx(32.381523).epsilon(1e-6));
  REQUIRE(w2.density_exact.has_value());
  {
    // prod (p-1)/p over the window
    Rat expect(2 * 4 * 6 * 10 * 12 * 16, 3 * 5 * 7 * 11 * 13 * 17);
    expect.canonicalize();
    CHECK(*w2.density_exact == expect);
    CHECK(w2.density ==
          doctest::Approx((double)expect.get_d()).epsilon(1e-12));
  }

  auto w3 = prime_window(3, 3);
  REQUIRE(w3.primes.size() == 18);  // indices 3..20
  CHECK(w3.primes.front() == 5);
  CHECK(w3.primes.back() == 71);
  // log_kappa recomputed from the exact cyclotomic values
  long double lk = 0;
  for (uint64_t p : w3.primes) lk += log_of(cyclotomic_2p(p, Int(3)));
  CHECK((double)w3.log_kappa == doctest::Approx((double)lk).epsilon(1e-12));

  CHECK_THROWS_AS(prime_window(1, 2), GuardError);
  CHECK_THROWS_AS(prime_window(14, 2), GuardError);
}

TEST_CASE("G function over a toy window") {
  std::vector<uint64_t> w{3, 5};
  Int q(2);
  // Phi_6(2) = 3, Phi_10(2) = 11
  auto rat = [](long n, long d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
  };
  CHECK(G_function(0, w, q) == rat(1, 33));
  CHECK(G_function(1, w, q) == Rat(1));
  CHECK(G_function(3, w, q) == rat(1, 3));
  CHECK(G_function(5, w, q) == rat(1, 11));
  CHECK(G_function(6, w, q) == rat(1, 3));
  CHECK(G_function(10, w, q) == rat(1, 11));
  CHECK(G_function(15, w, q) == rat(1, 33));
  CHECK(G_function(7, w, q) == Rat(1));
}

TEST_CASE("fourier_a0: direct equals product, pins, validation") {
  auto rat = [](long n, long d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
  };
  std::vector<uint64_t> w35{3, 5};
  CHECK(fourier_a0(w35, Int(2), A0Mode::product) == rat(7, 11));
  CHECK(fourier_a0(w35, Int(2), A0Mode::direct) == rat(7, 11));
  CHECK(fourier_a0({3}, Int(2), A0Mode::direct) == rat(7, 9));
  CHECK(fourier_a0({3}, Int(2), A0Mode::product) == rat(7, 9));

  for (uint64_t q : {2ul, 3ul}) {
    for (auto& w : std::vector<std::vector<uint64_t>>{
             {3, 5, 7}, {5, 11}, {7, 13}, {3, 5, 7, 11}}) {
      CHECK(fourier_a0(w, Int(q), A0Mode::direct) ==
            fourier_a0(w, Int(q), A0Mode::product));
    }
  }

  CHECK_THROWS_AS(fourier_a0({}, Int(2), A0Mode::product), GuardError);
  CHECK_THROWS_AS(fourier_a0({2, 3}, Int(2), A0Mode::product), GuardError);
  CHECK_THROWS_AS(fourier_a0({5, 3}, Int(2), A0Mode::product), GuardError);
  CHECK_THROWS_AS(fourier_a0({9}, Int(2), A0Mode::product), GuardError);
  // period 3*5*...*31 > 1e8: direct mode refuses, product mode still works
  std::vector<uint64_t> big{3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
  CHECK_THROWS_AS(fourier_a0(big, Int(2), A0Mode::direct), GuardError);
  CHECK(fourier_a0(big, Int(2), A0Mode::product) > 0);
}

TEST_CASE("series coefficients against the cycle-index sum") {
  // [z^b] exp(sum G(k) z^k / k) = sum over partitions of b of
  // prod G(part) / z_pi
  std::vector<uint64_t> w{3, 5};
  for (uint64_t q : {2ul, 3ul}) {
    for (unsigned b = 0; b <= 10; ++b) {
      Rat brute = 0;
      for_each_partition(b, [&](const std::vector<uint32_t>& parts) {
        Rat term = 1;
        for (uint32_t p : parts) term *= G_function(p, w, Int(q));
        term /= Rat(z_of(parts));
        term.canonicalize();
        brute += term;
      });
      brute.canonicalize();
      CHECK(series_coeff(b, w, Int(q)) == brute);
    }
  }
  // empty window: G == 1 identically, the series is 1/(1-z)
  for (unsigned b : {0u, 1u, 5u, 40u}) CHECK(series_coeff(b, {}, Int(2)) == Rat(1));
}

TEST_CASE("sigma1 bound reports") {
  for (unsigned b = 1; b <= 10; ++b) {
    auto r = sigma1_bound_report(b, 2, 2);
    CHECK(r.b == b);
    CHECK(r.xi == 2);
    CHECK(r.q == 2);
    CHECK(r.holds);
    if (b == 2) CHECK(r.lhs_log < -1e100);  // sigma1(2) = 0
    else CHECK(r.lhs_log <= r.rhs_log);
  }
  CHECK(sigma1_bound_report(5, 3, 3).holds);
  CHECK_THROWS_AS(sigma1_bound_report(0, 2, 2), GuardError);
}

TEST_CASE("size guards") {
  auto noop = [](const std::vector<uint32_t>&) {};
  CHECK_THROWS_AS(for_each_distinct(201, noop), GuardError);
  CHECK_THROWS_AS(for_each_distinct_odd(201, noop), GuardError);
  CHECK_THROWS_AS(for_each_partition(201, noop), GuardError);
  CHECK_THROWS_AS(sigma1_sweep(201, 2), GuardError);
  CHECK_THROWS_AS(sigma2(201, 2), GuardError);
  CHECK_THROWS_AS(partitions_distinct(200), GuardError);  // list too large
  CHECK_THROWS_AS(series_coeff(201, {3}, Int(2)), GuardError);
}
