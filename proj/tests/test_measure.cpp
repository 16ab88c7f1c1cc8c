#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "unitary/group.hpp"
#include "unitary/matrices.hpp"
#include "unitary/measure.hpp"

using namespace unitary;

TEST_CASE("table shape and normalization") {
  for (uint64_t q : {2, 3}) {
    for (unsigned n = 1; n <= (q == 2 ? 8u : 5u); ++n) {
      const OmegaTable& t = OmegaTable::get(n, q);
      uint64_t expect = q + 1;
      for (unsigned i = 1; i < n; ++i) expect *= q;
      CHECK(t.entries().size() == expect);
      Int count_sum = 0;
      Rat weight_sum(0);
      for (const auto& e : t.entries()) {
        CHECK(e.count > 0);
        count_sum += e.count;
        weight_sum += t.weight(e);
      }
      weight_sum.canonicalize();
      CHECK(count_sum == t.group_order());
      CHECK(weight_sum == 1);
    }
  }
}

TEST_CASE("measure equals census frequency") {
  for (auto [n, q] : {std::pair<unsigned, uint64_t>{1, 2}, {2, 2}, {3, 2}, {1, 3}, {2, 3}}) {
    GroupCensus c = census(n, q, Exec::parallel);
    const Field& F = Field::make_q2(q);
    const OmegaTable& t = OmegaTable::get(n, q);
    // every table entry shows up with exactly the predicted multiplicity
    std::map<uint64_t, Int> predicted;
    for (const auto& e : t.entries()) predicted[poly_code(t.poly_of(e))] = e.count;
    CHECK(predicted.size() == c.charpoly_counts.size());
    for (const auto& [code, count] : c.charpoly_counts) {
      REQUIRE(predicted.count(code) == 1);
      CHECK(predicted[code] == count);
      Rat freq(count, c.order_formula);
      freq.canonicalize();
      CHECK(measure_of(poly_from_code(F, n, code)) == freq);
    }
  }
}

TEST_CASE("pinned measure values") {
  const Field& F2 = Field::make_q2(2);
  // (x+1)^2 over F_4
  Poly sq = mul(poly_from_coeffs(F2, {1, 1}), poly_from_coeffs(F2, {1, 1}));
  CHECK(measure_of(sq) == Rat(2, 9));
  // distinct self-conjugate linear factors
  Poly split = mul(poly_from_coeffs(F2, {1, 1}), poly_from_coeffs(F2, {2, 1}));
  CHECK(measure_of(split) == Rat(1, 9));
  // conjugate pair of non-self-conjugate linear factors over F_9
  const Field& F3 = Field::make_q2(3);
  auto kp = enumerate_Kplus(F3, 1);
  REQUIRE(kp.size() == 2);
  Poly pair = mul(kp[0], tilde(kp[0]));
  CHECK(measure_of(pair) == Rat(1, 8));
}

TEST_CASE("measure rejects polynomials outside the support") {
  const Field& F = Field::make_q2(2);
  // x has zero constant term; x^2+x+w is not tilde-closed as a multiset
  CHECK(measure_of(poly_x(F)) == 0);
  auto kp = enumerate_Kplus(F, 1);
  if (!kp.empty()) CHECK(measure_of(kp[0]) == 0);
  // an unpaired K factor of degree 2 has measure zero
  Poly kp2 = enumerate_Kplus(F, 2).at(0);
  CHECK(measure_of(kp2) == 0);
}

TEST_CASE("multiplicity law cross-checked against the census") {
  const Field& F = Field::make_q2(2);
  Poly psi = poly_from_coeffs(F, {1, 1});  // x + 1
  GroupCensus c = census(3, 2, Exec::parallel);
  for (unsigned ell = 0; ell <= 3; ++ell) {
    Int hits = 0;
    for (const auto& [code, count] : c.charpoly_counts) {
      unsigned m = 0;
      for (const FactorEntry& e : factorize(poly_from_code(F, 3, code)).factors)
        if (e.phi == psi) m = e.mult;
      if (m == ell) hits += count;
    }
    Rat expect(hits, c.order_formula);
    expect.canonicalize();
    CHECK(prob_mult_eq(3, 2, psi, ell) == expect);
  }
}

TEST_CASE("multiplicity law sums to one") {
  const Field& F = Field::make_q2(2);
  for (const Poly& psi : {poly_from_coeffs(F, {1, 1}), irreducibles(F, 2).at(0)}) {
    Rat total(0);
    for (unsigned ell = 0; ell <= 6; ++ell) total += prob_mult_eq(6, 2, psi, ell);
    total.canonicalize();
    CHECK(total == 1);
  }
}

TEST_CASE("tail of the maximal multiplicity") {
  for (auto [n, q] : {std::pair<unsigned, uint64_t>{4, 2}, {6, 2}, {4, 3}}) {
    CHECK(tail_M(n, q, 0) == 1);  // some factor always exists
    CHECK(tail_M(n, q, n) == 0);
    Rat prev = tail_M(n, q, 0);
    for (unsigned xi = 1; xi <= n; ++xi) {
      Rat cur = tail_M(n, q, xi);
      CHECK(cur <= prev);
      prev = cur;
    }
    // direct mass of {M > 2}
    const OmegaTable& t = OmegaTable::get(n, q);
    Rat mass(0);
    for (const auto& e : t.entries())
      if (e.M > 2) mass += t.weight(e);
    mass.canonicalize();
    CHECK(mass == tail_M(n, q, 2));
  }
}

TEST_CASE("pinned expectations on small tables") {
  CHECK(expect_stat(Stat::X, 1, 2, Exec::parallel) == 3);
  CHECK(expect_stat(Stat::T, 1, 2, Exec::parallel) == Rat(7, 3));
  CHECK(expect_stat(Stat::M, 2, 2, Exec::parallel) == Rat(5, 3));
  CHECK(expect_stat(Stat::T, 2, 2, Exec::parallel) == Rat(23, 9));
  // X dominates T dominates M pointwise, so the means are ordered
  for (unsigned n = 1; n <= 8; ++n) {
    Rat ex = expect_stat(Stat::X, n, 2, Exec::parallel);
    Rat et = expect_stat(Stat::T, n, 2, Exec::parallel);
    CHECK(et <= ex);
  }
}

TEST_CASE("statistic lcm structure on the table") {
  const OmegaTable& t = OmegaTable::get(6, 2);
  for (const auto& e : t.entries()) {
    Int x1 = t.X1_of(e), x2 = t.X2_of(e), x = t.X_of(e);
    CHECK(x == lcm(x1, x2));
    CHECK(x % t.T_of(e) == 0);  // T | X
  }
}

TEST_CASE("reduction keeps X and the canonical trace") {
  const Field& F = Field::make_q2(2);
  // f = (x+1)(x+w)(x+w^2): the greedy pass deletes the two smaller classes
  Poly f = poly_one(F);
  for (uint32_t a : {1u, 2u, 3u}) f = mul(f, poly_from_coeffs(F, {a, F.one()}));
  PiSplit ps = pi_factor(f);
  CHECK(ps.g == poly_from_coeffs(F, {3, 1}));
  CHECK(ps.h == mul(poly_from_coeffs(F, {1, 1}), poly_from_coeffs(F, {2, 1})));
  CHECK(ps.X_f == 3);
  CHECK(ps.X_g == 3);
  REQUIRE(ps.steps.size() == 3);
  CHECK_FALSE(ps.steps[0].kept);
  CHECK_FALSE(ps.steps[1].kept);
  CHECK(ps.steps[2].kept);
}

TEST_CASE("reduction invariants hold on every entry up to degree 6") {
  for (unsigned n = 1; n <= 6; ++n) {
    const OmegaTable& t = OmegaTable::get(n, 2);
    for (const auto& e : t.entries()) {
      Poly f = t.poly_of(e);
      PiSplit ps = pi_factor(f);
      CHECK(ps.X_g == ps.X_f);
      CHECK(divmod(f, ps.g).second.is_zero());
      CHECK(is_in_Omega(ps.g));
      for (const FactorEntry& fe : factorize(ps.g).factors) CHECK(fe.mult == 1);
    }
  }
}

TEST_CASE("X is multiplicative over coprime tilde-closed parts") {
  const OmegaTable& a = OmegaTable::get(2, 2);
  const OmegaTable& b = OmegaTable::get(3, 2);
  for (const auto& ea : a.entries())
    for (const auto& eb : b.entries()) {
      Poly f = a.poly_of(ea), g = b.poly_of(eb);
      if (gcd(f, g).deg() != 0) continue;
      PolyStats st = poly_stats(factorize(mul(f, g)));
      CHECK(st.X == lcm(a.X_of(ea), b.X_of(eb)));
    }
}

TEST_CASE("pair-only reductions first appear at degree 8 and stay tame") {
  for (unsigned n = 1; n <= 6; ++n) {
    SubLemmaReport r = check_sub_lemma(n, 2);
    CHECK(r.k_only_checked == 0);
  }
  SubLemmaReport r8 = check_sub_lemma(8, 2);
  CHECK(r8.k_only_checked == 6);
  CHECK(r8.k_only_gt_one == 0);
  CHECK(r8.max_ratio_k_only == 1);  // met with equality
  CHECK(r8.within_ten);
}

TEST_CASE("repeated-factor counterexample is exact") {
  SubLemmaReport r = check_sub_lemma(2, 2);
  CHECK(r.unit_square_ratio == 2);
  CHECK(r.max_ratio == 2);
  CHECK(r.ratio_gt_one > 0);
}

TEST_CASE("entry sampling follows the weights") {
  const OmegaTable& t = OmegaTable::get(2, 2);
  auto draws = sample_entries(t, 9, 1800);
  std::vector<int> hits(t.entries().size(), 0);
  for (size_t idx : draws) {
    REQUIRE(idx < hits.size());
    ++hits[idx];
  }
  double chi2 = 0;
  for (size_t i = 0; i < hits.size(); ++i) {
    Rat w = t.weight(t.entries()[i]);
    double expect = 1800.0 * w.get_d();
    double diff = hits[i] - expect;
    chi2 += diff * diff / expect;
  }
  CHECK(chi2 < 21.0);  // 5 dof, p ~ 0.0008
}

TEST_CASE("table guard") {
  CHECK_THROWS_AS(OmegaTable(40, 2, false), GuardError);
}
