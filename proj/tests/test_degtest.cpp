#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "degtest/degree_test.hpp"
#include "degtest/rng.hpp"
#include "doctest.h"

using namespace degtest;

namespace {

TruthTable random_tt(int n, SplitMix64& rng) {
  TruthTable tt(n);
  for (auto& w : tt.words) w = rng();
  if (n < 6) tt.words[0] &= (1ULL << (1u << n)) - 1;
  return tt;
}

ExactProb q_product(int m) {
  ExactProb p = ExactProb::one();
  for (int i = 1; i <= m; ++i) {
    mpz_class pw = mpz_class(1) << i;
    p = ExactProb(mpq_class(p.value() * mpq_class(pw - 1, pw)));
  }
  return p;
}

}  // namespace

TEST_CASE("run_test XORs over the affine span with 2^k calls") {
  BlackBox f = BlackBox::from(parse_anf("x1x2x3", 3));
  TestTuple indep{PointVec(3, 0), {PointVec(3, 1), PointVec(3, 2), PointVec(3, 4)}};
  uint64_t before = f.call_count();
  CHECK(run_test(f, indep) == TestOutcome::Fail);  // top coefficient is 1
  CHECK_EQ(f.call_count() - before, 8);

  TestTuple dep{PointVec(3, 5), {PointVec(3, 1), PointVec(3, 1), PointVec(3, 2)}};
  CHECK(run_test(f, dep) == TestOutcome::Pass);  // dependent directions never fail

  CHECK_THROWS_AS(run_test(f, TestTuple{PointVec(3, 0), {}}), std::domain_error);
  CHECK_THROWS_AS(run_test(f, TestTuple{PointVec(2, 0), {PointVec(3, 1)}}), std::domain_error);
}

TEST_CASE("exact dt for the full-degree monomial") {
  TruthTable tt = anf_to_tt(parse_anf("x1x2x3", 3));
  CHECK_EQ(exact_dt_tuples(tt, 3).rational_string(), "21/64");
  CHECK_EQ(exact_add(tt, 3).rational_string(), "1/1");  // the single 3-space fails
  CHECK_EQ(dt_from_add(exact_add(tt, 3), 3, 3).rational_string(), "21/64");
  CHECK_EQ(dt_by_derivative_recursion(tt, 3).rational_string(), "21/64");
  CHECK_EQ(exact_dt_homogeneous(tt, 3).rational_string(), "21/64");
}

TEST_CASE("the three exact methods agree on random functions") {
  SplitMix64 rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    TruthTable tt = random_tt(4, rng);
    for (int k = 1; k <= 4; ++k) {
      ExactProb by_tuples = exact_dt_tuples(tt, k);
      ExactProb by_spaces = dt_from_add(exact_add(tt, k), 4, k);
      ExactProb by_rec = dt_by_derivative_recursion(tt, k);
      CHECK(by_tuples == by_spaces);
      CHECK(by_tuples == by_rec);
    }
  }
}

TEST_CASE("dt/add conversions invert each other") {
  SplitMix64 rng(12);
  TruthTable tt = random_tt(5, rng);
  for (int k = 1; k <= 5; ++k) {
    ExactProb add = exact_add(tt, k);
    CHECK(add_from_dt(dt_from_add(add, 5, k), 5, k) == add);
  }
  CHECK_THROWS_AS(add_from_dt(ExactProb::zero(), 3, 4), std::domain_error);
}

TEST_CASE("k above n makes every tuple dependent") {
  SplitMix64 rng(13);
  TruthTable tt = random_tt(2, rng);
  CHECK_EQ(exact_dt_tuples(tt, 3), ExactProb::zero());
  CHECK_EQ(exact_dt_tuples(tt, 4), ExactProb::zero());
}

TEST_CASE("homogeneous shortcut matches the affine enumeration") {
  Anf f = parse_anf("x1x2 + x3x4", 4);
  CHECK_EQ(exact_dt_homogeneous(f, 2).rational_string(), "15/32");
  CHECK(exact_dt_homogeneous(f, 2) == dt_from_add(exact_add(anf_to_tt(f), 2), 4, 2));
  CHECK_THROWS_AS(exact_dt_homogeneous(f, 3), std::domain_error);  // deg != k
  CHECK_THROWS_AS(exact_dt_homogeneous(Anf(4), 2), std::domain_error);

  Anf g = parse_anf("x1x2x3 + x4x5x6", 6);
  CHECK(exact_dt_homogeneous(g, 3) == closed_form_dt(ClosedForm::TwoMonomials, 3));
}

TEST_CASE("derivative recursion base case is the two-point collision rate") {
  SplitMix64 rng(14);
  for (int rep = 0; rep < 5; ++rep) {
    TruthTable tt = random_tt(5, rng);
    mpz_class w = tt.weight();
    ExactProb expect = ExactProb::from_ratio(2 * w * (32 - w), 1024);
    CHECK(dt_by_derivative_recursion(tt, 1) == expect);
    CHECK(exact_dt_tuples(tt, 1) == expect);
  }
}

TEST_CASE("size guards refuse blowups with a cost note") {
  TruthTable big(8);
  CHECK_THROWS_AS(exact_dt_tuples(big, 3), SizeGuardError);  // 2^32 tuples
  try {
    exact_dt_tuples(big, 3);
  } catch (const SizeGuardError& e) {
    CHECK(std::string(e.what()).find("2^32") != std::string::npos);
  }
  TruthTable wide(13);
  CHECK_THROWS_AS(dt_by_derivative_recursion(wide, 2), SizeGuardError);
}

TEST_CASE("closed forms") {
  CHECK_EQ(closed_form_dt(ClosedForm::Monomial, 1).rational_string(), "1/2");
  CHECK_EQ(closed_form_dt(ClosedForm::Monomial, 2).rational_string(), "3/8");
  CHECK_EQ(closed_form_dt(ClosedForm::Monomial, 3).rational_string(), "21/64");
  CHECK_EQ(closed_form_dt(ClosedForm::Monomial, 4).rational_string(), "315/1024");
  CHECK_EQ(closed_form_dt(ClosedForm::Monomial, 5).rational_string(), "9765/32768");
  CHECK_EQ(closed_form_dt(ClosedForm::TwoMonomials, 2).rational_string(), "15/32");
  CHECK_EQ(closed_form_dt(ClosedForm::TwoMonomials, 3).rational_string(), "903/2048");
  CHECK_EQ(closed_form_dt(ClosedForm::ProductExtension, 2, 2).rational_string(), "1575/4096");
  CHECK_EQ(closed_form_dt(ClosedForm::ProductExtension, 2, 2).decimal(9), "0.384521484");
  CHECK(closed_form_dt(ClosedForm::ProductExtension, 3, 0) ==
        closed_form_dt(ClosedForm::TwoMonomials, 3));
  for (int k = 1; k <= 6; ++k) CHECK(closed_form_dt(ClosedForm::Monomial, k) == q_product(k));
  CHECK_THROWS_AS(closed_form_dt(ClosedForm::Monomial, 0), std::domain_error);
  CHECK_THROWS_AS(closed_form_dt(ClosedForm::ProductExtension, 2, -1), std::domain_error);
}

TEST_CASE("disjoint composition formula") {
  ExactProb p = closed_form_dt(ClosedForm::Monomial, 3);
  ExactProb two = compose_dt_disjoint(p, p);
  CHECK(two == closed_form_dt(ClosedForm::TwoMonomials, 3));
  ExactProb three = compose_dt_disjoint(two, p);
  CHECK_EQ(three.rational_string(), "31437/65536");

  // cross-check against enumeration on 6 variables
  TruthTable tt = anf_to_tt(parse_anf("x1x2x3 + x4x5x6", 6));
  CHECK(two == dt_from_add(exact_add(tt, 3), 6, 3));
}

TEST_CASE("new-variable lift") {
  CHECK(lift_multiply_new_var(closed_form_dt(ClosedForm::Monomial, 2), 2) ==
        closed_form_dt(ClosedForm::Monomial, 3));
  // x5 * (x1x2 ^ x3x4) on 5 variables: dt_3 = (1 - 2^-3) dt_2
  Anf f = parse_anf("x1x2x5 + x3x4x5", 5);
  ExactProb lifted = lift_multiply_new_var(closed_form_dt(ClosedForm::TwoMonomials, 2), 2);
  CHECK(exact_dt_homogeneous(f, 3) == lifted);
  CHECK_THROWS_AS(lift_multiply_new_var(ExactProb::one(), 0), std::domain_error);
}

TEST_CASE("complement transfer") {
  // complement of x1x2x3 inside 8 variables is the degree-5 monomial
  ExactProb q3 = closed_form_dt(ClosedForm::Monomial, 3);
  ExactProb q5 = closed_form_dt(ClosedForm::Monomial, 5);
  CHECK(complement_transfer(q3, 8, 3) == q5);
  CHECK_EQ(ExactProb(mpq_class(q5.value() / q3.value())).rational_string(), "465/512");
  CHECK_THROWS_AS(complement_transfer(q3, 4, 3), std::domain_error);  // needs k <= n/2
  CHECK_THROWS_AS(complement_transfer(q3, 5, 0), std::domain_error);
}

TEST_CASE("estimates are deterministic in the seed and unbiased") {
  TruthTable tt = anf_to_tt(parse_anf("x1x2x3", 3));
  Estimate a = estimate_dt(tt, 3, 20000, kDefaultSeed);
  Estimate b = estimate_dt(tt, 3, 20000, kDefaultSeed);
  CHECK_EQ(a.p_hat, b.p_hat);
  CHECK_EQ(a.trials, 20000);
  CHECK_EQ(a.seed, kDefaultSeed);
  const double exact = 21.0 / 64.0;
  CHECK(std::abs(a.p_hat - exact) < 5 * a.std_error + 1e-9);

  // every independent triple on 3 variables spans the whole space, which the
  // top monomial always detects
  Estimate ind = estimate_dt(tt, 3, 2000, kDefaultSeed, true);
  CHECK_EQ(ind.p_hat, 1.0);

  CHECK_THROWS_AS(estimate_dt(tt, 0, 10, kDefaultSeed), std::domain_error);
  CHECK_THROWS_AS(estimate_dt(tt, 1, 0, kDefaultSeed), std::domain_error);
}

TEST_CASE("decision procedure") {
  // deg(f) = 1 < 2: no run can fail, the verdict uses all t rounds
  TruthTable low = anf_to_tt(parse_anf("x1", 3));
  Decision d = decide(low, 2, 7, kDefaultSeed);
  CHECK(d.verdict == Decision::Verdict::DegLessThanK);
  CHECK_EQ(d.runs_used, 7);
  CHECK_EQ(d.failures, 0);
  CHECK_EQ(d.false_positive_bound, doctest::Approx(std::pow(1.0 - 0.288788, 7)));

  // deg(f) = k: a failure arrives quickly and certifies the verdict
  TruthTable top = anf_to_tt(parse_anf("x1x2x3", 3));
  Decision e = decide(top, 3, 200, kDefaultSeed);
  CHECK(e.verdict == Decision::Verdict::DegAtLeastK);
  CHECK_EQ(e.failures, 1);
  CHECK_EQ(e.false_positive_bound, 0.0);
  CHECK(e.runs_used >= 1);
  CHECK(e.runs_used <= 200);

  CHECK_THROWS_AS(decide(low, 2, 0, kDefaultSeed), std::domain_error);
}

TEST_CASE("bounds") {
  BoundPair b83 = bounds(8, 3);
  CHECK_EQ(b83.lower.rational_string(), "21/64");
  CHECK_EQ(b83.upper.rational_string(), "65025/131072");
  CHECK_EQ(b83.lower.decimal(6), "0.328125");
  CHECK_EQ(b83.upper.decimal(9), "0.496101379");

  BoundPair b84 = bounds(8, 4);
  CHECK_EQ(b84.lower.decimal(6), "0.307617");
  CHECK_EQ(b84.upper.decimal(7), "0.4941635");

  BoundPair b51 = bounds(5, 1);
  CHECK(b51.lower == b51.upper);
  CHECK_EQ(b51.lower.rational_string(), "1/2");

  CHECK_THROWS_AS(bounds(4, 5), std::domain_error);
  CHECK_THROWS_AS(bounds(4, 0), std::domain_error);
}

TEST_CASE("q-Pochhammer floor rendering") {
  CHECK_EQ(pochhammer_floor(6), "0.288788");
  CHECK_EQ(pochhammer_floor(9), "0.288788095");
  CHECK_EQ(pochhammer_floor(1), "0.3");
  CHECK_THROWS_AS(pochhammer_floor(0), std::domain_error);
}
