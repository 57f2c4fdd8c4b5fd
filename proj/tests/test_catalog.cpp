#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "degtest/catalog.hpp"
#include "degtest/degree_test.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace degtest;

TEST_CASE("builtin representative lists") {
  auto deg3 = builtin_reps(3);
  REQUIRE_EQ(deg3.size(), 31);
  CHECK_EQ(deg3.front().id, "f_2");
  CHECK_EQ(deg3.back().id, "f_27");
  for (const auto& r : deg3) {
    CHECK_EQ(r.n, 8);
    CHECK_EQ(r.degree, 3);
    CHECK(r.expected_add.has_value());
    CHECK(r.expected_dt.has_value());
    Anf a = r.anf();
    CHECK_EQ(a.degree(), 3);
    for (uint32_t m : a.monomials) CHECK_EQ(std::popcount(m), 3);  // homogeneous
  }
  CHECK_EQ(deg3.front().anf().monomials.size(), 1);

  auto deg2 = builtin_reps(2);
  REQUIRE_EQ(deg2.size(), 4);
  CHECK_EQ(deg2[0].id, "g_1");
  CHECK_EQ(deg2[3].id, "g_4");
  CHECK_EQ(*deg2[0].expected_dt, "0.375000");
  CHECK_EQ(*deg2[3].expected_dt, "0.498047");
  CHECK_FALSE(deg2[0].expected_add.has_value());

  auto deg1 = builtin_reps(1);
  REQUIRE_EQ(deg1.size(), 1);
  CHECK_EQ(deg1[0].id, "f");
  CHECK_EQ(deg1[0].anf_text, "x1");
  CHECK_EQ(*deg1[0].expected_dt, "0.500000");

  CHECK(builtin_reps(4).empty());
  CHECK(builtin_reps(0).empty());
}

TEST_CASE("degree-3 sweep reproduces the reference table") {
  auto reps = builtin_reps(3);
  auto rows = sweep(reps, 3);
  REQUIRE_EQ(rows.size(), 31);

  // the builtin list is stored in ascending-dt order, so sweep preserves it
  for (size_t i = 0; i < rows.size(); ++i) CHECK_EQ(rows[i].id, reps[i].id);
  for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i - 1].dt <= rows[i].dt);

  CHECK_EQ(rows.front().add.rational_string(), "32768/97155");
  CHECK_EQ(rows.front().dt.decimal(6), "0.328125");
  CHECK_EQ(rows.back().add.rational_string(), "48896/97155");
  CHECK_EQ(rows.back().dt.decimal(6), "0.489624");
  for (const auto& row : rows) {
    // every add value is (failing spaces) / G(8,3), so scaling by 97155 is integral
    mpq_class scaled = row.add.value() * 97155;
    CHECK_EQ(scaled.get_den(), 1);
    CHECK(row.dt == dt_from_add(row.add, 8, 3));
  }

  CHECK(check_rows(reps, rows).empty());

  // exact-value histogram: 16 distinct dt values across the 31 classes
  HistogramSpec distinct;
  distinct.mode = HistogramSpec::Mode::PerDistinctValue;
  auto bins = histogram(rows, distinct);
  CHECK_EQ(bins.size(), 16);
  size_t total = 0;
  for (const auto& b : bins) total += b.count;
  CHECK_EQ(total, 31);
  CHECK_EQ(bins.front().low.decimal(6), "0.328125");
  CHECK_EQ(bins.front().count, 1);
  for (size_t i = 1; i < bins.size(); ++i) CHECK(bins[i - 1].low < bins[i].low);

  // equal-width histogram over the data range
  HistogramSpec equal;
  auto ebins = histogram(rows, equal);
  REQUIRE_EQ(ebins.size(), 20);
  CHECK(ebins.front().low == rows.front().dt);
  CHECK(ebins.back().high == rows.back().dt);
  total = 0;
  for (const auto& b : ebins) total += b.count;
  CHECK_EQ(total, 31);
}

TEST_CASE("check_rows flags mismatches and missing ids") {
  auto reps = builtin_reps(2);
  auto rows = sweep(reps, 2);
  CHECK(check_rows(reps, rows).empty());

  auto tampered = reps;
  tampered[0].expected_dt = "0.999999";
  auto bad = check_rows(tampered, rows);
  REQUIRE_EQ(bad.size(), 1);
  CHECK_EQ(bad[0], "g_1");

  RepEntry ghost;
  ghost.id = "g_9";
  ghost.n = 8;
  ghost.anf_text = "x1x2";
  ghost.degree = 2;
  ghost.expected_dt = "0.375000";
  auto with_ghost = reps;
  with_ghost.push_back(ghost);
  bad = check_rows(with_ghost, rows);
  REQUIRE_EQ(bad.size(), 1);
  CHECK_EQ(bad[0], "g_9");
}

TEST_CASE("parallel sweep matches the serial order and values") {
  auto reps = builtin_reps(2);
  auto serial = sweep(reps, 2, 1);
  auto parallel = sweep(reps, 2, 4);
  REQUIRE_EQ(serial.size(), parallel.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    CHECK_EQ(serial[i].id, parallel[i].id);
    CHECK(serial[i].add == parallel[i].add);
    CHECK(serial[i].dt == parallel[i].dt);
  }
}

TEST_CASE("sweep rejects malformed requests") {
  auto reps = builtin_reps(2);
  CHECK_THROWS_AS(sweep(reps, 0), std::domain_error);
  CHECK_THROWS_AS(sweep(reps, 9), std::domain_error);
  CHECK_THROWS_AS(sweep(reps, 2, 0), std::domain_error);
  auto mixed = reps;
  mixed[1].n = 6;
  CHECK_THROWS_AS(sweep(mixed, 2), std::domain_error);
  CHECK(sweep({}, 3).empty());
}

TEST_CASE("load_reps parses ids, comments, and blank lines") {
  std::istringstream in(
      "# reference list\n"
      "\n"
      "f_a: x1x2x3\n"
      "f_b: x1x2x3 + x4x5x6   # two monomials\r\n");
  auto reps = load_reps(in, 8, 3);
  REQUIRE_EQ(reps.size(), 2);
  CHECK_EQ(reps[0].id, "f_a");
  CHECK_EQ(reps[0].anf_text, "x1x2x3");
  CHECK_EQ(reps[0].n, 8);
  CHECK_EQ(reps[0].degree, 3);
  CHECK_FALSE(reps[0].expected_add.has_value());
  CHECK_EQ(reps[1].id, "f_b");
  CHECK_EQ(reps[1].anf().monomials.size(), 2);
}

namespace {

void check_rep_error(const std::string& text, int n, int degree, int line,
                     const std::string& fragment) {
  std::istringstream in(text);
  try {
    load_reps(in, n, degree);
    FAIL("expected RepParseError for " << text);
  } catch (const RepParseError& e) {
    CHECK_EQ(e.line, line);
    CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    CHECK(std::string(e.what()).rfind("line " + std::to_string(line) + ":", 0) == 0);
  }
}

}  // namespace

TEST_CASE("load_reps reports the offending line") {
  check_rep_error("f_a x1x2x3\n", 8, 3, 1, "expected \"id: <ANF>\"");
  check_rep_error(": x1x2x3\n", 8, 3, 1, "empty id");
  check_rep_error("a,b: x1x2x3\n", 8, 3, 1, "id contains a comma");
  check_rep_error("f_a:\n", 8, 3, 1, "empty ANF");
  check_rep_error("# c\n\nf_a: x1 +\n", 8, 3, 3, "expected a term");
  check_rep_error("f_a: x1x2 + x1x2\n", 8, 3, 1, "zero function");
  check_rep_error("f_a: x1x2\n", 8, 3, 1, "has degree 2, expected 3");
  check_rep_error("f_a: x1x2x3\nf_a: x4x5x6\n", 8, 3, 2, "duplicate id \"f_a\" (first on line 1)");
  check_rep_error("f_a: x1x2x3\nf_b: x1*x2*x3\n", 8, 3, 2,
                  "repeats the monomial set of \"f_a\"");
  CHECK_THROWS_AS(load_reps_file("/nonexistent/reps.txt", 8, 3), std::invalid_argument);
}

TEST_CASE("complement catalog derivation") {
  auto reps = builtin_reps(3);
  auto comp = derive_complement_reps(reps, 8);
  REQUIRE_EQ(comp.size(), 31);
  for (size_t i = 0; i < comp.size(); ++i) {
    CHECK_EQ(comp[i].id, reps[i].id);
    CHECK_EQ(comp[i].degree, 5);
    CHECK_EQ(comp[i].anf().degree(), 5);
    CHECK_EQ(comp[i].expected_add, reps[i].expected_add);
    CHECK_FALSE(comp[i].expected_dt.has_value());
  }
  auto back = derive_complement_reps(comp, 8);
  for (size_t i = 0; i < back.size(); ++i) CHECK(back[i].anf() == reps[i].anf());

  auto one_var = builtin_reps(2);
  one_var[0].n = 6;
  CHECK_THROWS_AS(derive_complement_reps(one_var, 8), std::domain_error);
}

TEST_CASE("histogram range control") {
  auto rows = sweep(builtin_reps(1), 1);  // single row, dt = 1/2
  REQUIRE_EQ(rows.size(), 1);
  CHECK_EQ(rows[0].dt.rational_string(), "1/2");

  HistogramSpec spec;
  spec.bins = 4;
  spec.range = {{ExactProb::zero(), ExactProb::one()}};
  auto bins = histogram(rows, spec);
  REQUIRE_EQ(bins.size(), 4);
  CHECK_EQ(bins[0].count, 0);
  CHECK_EQ(bins[1].count, 0);
  CHECK_EQ(bins[2].count, 1);  // 1/2 opens the third bin [0.5, 0.75)
  CHECK_EQ(bins[3].count, 0);
  CHECK_EQ(bins[0].low.rational_string(), "0/1");
  CHECK_EQ(bins[3].high.rational_string(), "1/1");

  // equal edges collapse to a single full bin
  HistogramSpec tight;
  auto single = histogram(rows, tight);
  REQUIRE_EQ(single.size(), 1);
  CHECK_EQ(single[0].count, 1);

  HistogramSpec off;
  off.range = {{ExactProb::zero(), ExactProb::from_ratio(1, 4)}};
  CHECK_THROWS_AS(histogram(rows, off), std::invalid_argument);
  CHECK_THROWS_AS(histogram({}, spec), std::invalid_argument);
}

TEST_CASE("csv and json emitters") {
  auto rows = sweep(builtin_reps(1), 1);
  CHECK_EQ(sweep_csv(rows),
           "id,n,k,monomials,dd_k,add_k_rational,add_k,dt_k_rational,dt_k\n"
           "f,8,1,1,1/8,128/255,0.501961,1/2,0.500000\n");

  auto parsed = nlohmann::json::parse(sweep_json(rows));
  REQUIRE_EQ(parsed.size(), 1);
  CHECK_EQ(parsed[0]["id"], "f");
  CHECK_EQ(parsed[0]["n"], 8);
  CHECK_EQ(parsed[0]["dd_k"], "1/8");
  CHECK_EQ(parsed[0]["add_k_rational"], "128/255");
  CHECK_EQ(parsed[0]["add_k"], "0.501961");
  CHECK_EQ(parsed[0]["dt_k_rational"], "1/2");
  CHECK_EQ(parsed[0]["dt_k"], "0.500000");

  HistogramSpec distinct;
  distinct.mode = HistogramSpec::Mode::PerDistinctValue;
  CHECK_EQ(histogram_csv(histogram(rows, distinct), distinct), "value,count\n0.500000,1\n");

  HistogramSpec equal;
  CHECK_EQ(histogram_csv(histogram(rows, equal), equal),
           "bin_low,bin_high,count\n0.500000,0.500000,1\n");
}
