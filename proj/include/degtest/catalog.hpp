#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "degtest/boolfun.hpp"
#include "degtest/prob.hpp"

namespace degtest {

/** One representative of an equivalence class, stored as ANF text. */
struct RepEntry {
  std::string id;
  int n = 0;
  std::string anf_text;
  int degree = 0;
  std::optional<std::string> expected_add;  // 6 d.p. reference value, if known
  std::optional<std::string> expected_dt;

  Anf anf() const { return parse_anf(anf_text, n); }
};

/**
 * Embedded representative lists with their reference values attached.
 * Degree 3 is the full 31-class list for n = 8 (ids follow the source
 * numbering, hence the gaps); degrees 1 and 2 are the short chains used by
 * the worked examples. Any other degree yields an empty list — the degree-4
 * list is external data, see load_reps.
 */
std::vector<RepEntry> builtin_reps(int degree);

struct RepParseError : std::runtime_error {
  int line;  // 1-based
  RepParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

/**
 * Representative file: UTF-8 lines "id: <ANF text>"; '#' starts a comment and
 * blank lines are skipped. Every entry must have exactly the stated degree,
 * and two entries may not share one monomial set.
 */
std::vector<RepEntry> load_reps(std::istream& in, int n, int degree);
std::vector<RepEntry> load_reps_file(const std::string& path, int n, int degree);

/** One computed row of a batch sweep; add and dt are exact. */
struct SweepRow {
  std::string id;
  int n = 0;
  int k = 0;
  size_t monomial_count = 0;
  ExactProb dd;
  ExactProb add;
  ExactProb dt;  // always add * lin_indep_probability(n, k) exactly
  double elapsed_seconds = 0;
};

/**
 * Exact add_k/dt_k for every representative. Functions of degree <= k take
 * the offset-independent subspace path; k below the degree falls back to the
 * full affine enumeration. Rows are computed in parallel when parallelism > 1
 * and always come back sorted ascending by exact dt, input order on ties.
 */
std::vector<SweepRow> sweep(const std::vector<RepEntry>& reps, int k, int parallelism = 1);

/**
 * Complement catalog: each ANF is replaced by its monomial-wise complement
 * within x_1..x_n, turning a homogeneous degree-k list into a degree-(n-k)
 * one under the same ids. add_k expectations carry over (add is invariant
 * under complementation); dt expectations do not and are dropped.
 */
std::vector<RepEntry> derive_complement_reps(const std::vector<RepEntry>& reps, int n);

struct HistogramSpec {
  enum class Mode { EqualWidthBins, PerDistinctValue };
  Mode mode = Mode::EqualWidthBins;
  int bins = 20;  // EqualWidthBins only
  /** Bin range; defaults to [min, max] of the data. */
  std::optional<std::pair<ExactProb, ExactProb>> range;
};

struct HistogramBin {
  ExactProb low;
  ExactProb high;  // == low in PerDistinctValue mode
  size_t count = 0;
};

/**
 * Bins the exact dt column. EqualWidthBins assigns by exact rational
 * comparison against the bin edges, half-open except the last bin, which is
 * closed; PerDistinctValue emits one bin per distinct exact value, ascending.
 * Counts always sum to rows.size().
 */
std::vector<HistogramBin> histogram(const std::vector<SweepRow>& rows, const HistogramSpec& spec);

/** Header "id,n,k,monomials,dd_k,add_k_rational,add_k,dt_k_rational,dt_k". */
std::string sweep_csv(const std::vector<SweepRow>& rows, int digits = 6);
std::string sweep_json(const std::vector<SweepRow>& rows, int digits = 6);

/** "bin_low,bin_high,count" for equal-width bins, "value,count" per distinct value. */
std::string histogram_csv(const std::vector<HistogramBin>& bins, const HistogramSpec& spec,
                          int digits = 6);

/**
 * Ids whose computed values, rendered at 6 decimals, differ from the stored
 * expectations (6 d.p. is the reference precision). Entries without
 * expectations are skipped; an expected id missing from rows is a failure.
 */
std::vector<std::string> check_rows(const std::vector<RepEntry>& reps,
                                    const std::vector<SweepRow>& rows);

}  // namespace degtest
