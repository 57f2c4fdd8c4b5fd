#pragma once

#include <gmpxx.h>

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "degtest/prob.hpp"

namespace degtest {

/** Word budget: largest vector dimension that fits the packed representation. */
constexpr int kMaxVars = 24;
/** Largest n for which full 2^n truth tables are kept in memory by default. */
constexpr int kMaxTableVars = 16;

inline uint32_t low_mask(int n) { return (n >= 32) ? ~0u : ((1u << n) - 1u); }

/** An element of F_2^n; coordinate x_i lives in bit (i-1). */
struct PointVec {
  int n = 0;
  uint32_t bits = 0;

  PointVec() = default;
  PointVec(int n_, uint32_t bits_) : n(n_), bits(bits_) {
    if (n < 1 || n > kMaxVars) throw std::domain_error("PointVec dimension out of range");
    if (bits & ~low_mask(n)) throw std::domain_error("PointVec has bits above dimension");
  }

  bool operator==(const PointVec& o) const { return n == o.n && bits == o.bits; }
  bool operator!=(const PointVec& o) const { return !(*this == o); }

  PointVec operator^(const PointVec& o) const {
    if (n != o.n) throw std::domain_error("PointVec dimension mismatch");
    return PointVec(n, bits ^ o.bits);
  }
};

/** Square matrix over F_2; cols[j] is the image of the canonical basis vector e_{j+1}. */
struct GF2Matrix {
  int n = 0;
  std::vector<uint32_t> cols;

  GF2Matrix() = default;
  GF2Matrix(int n_, std::vector<uint32_t> cols_) : n(n_), cols(std::move(cols_)) {
    if (n < 1 || n > kMaxVars) throw std::domain_error("matrix dimension out of range");
    if (cols.size() != static_cast<size_t>(n)) throw std::domain_error("matrix needs n columns");
    for (uint32_t c : cols)
      if (c & ~low_mask(n)) throw std::domain_error("matrix column has bits above dimension");
  }

  static GF2Matrix identity(int n) {
    std::vector<uint32_t> cols(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) cols[static_cast<size_t>(j)] = 1u << j;
    return GF2Matrix(n, std::move(cols));
  }
};

int rank(const GF2Matrix& m);
inline bool is_invertible(const GF2Matrix& m) { return rank(m) == m.n; }

/** y = Mx over F_2 (XOR of the columns selected by x). */
inline uint32_t apply_bits(const GF2Matrix& m, uint32_t x) {
  uint32_t y = 0;
  while (x) {
    int j = std::countr_zero(x);
    y ^= m.cols[static_cast<size_t>(j)];
    x &= x - 1;
  }
  return y;
}
inline PointVec apply(const GF2Matrix& m, const PointVec& x) {
  if (x.n != m.n) throw std::domain_error("matrix/vector dimension mismatch");
  return PointVec(m.n, apply_bits(m, x.bits));
}

GF2Matrix multiply(const GF2Matrix& a, const GF2Matrix& b);

/** |GL(n, F_2)| = prod_{i=0}^{n-1} (2^n - 2^i). */
mpz_class count_invertible(int n);

/** Number of k-dimensional subspaces of F_2^n. */
mpz_class gaussian_binomial(int n, int k);

/**
 * Canonical basis of a k-dimensional subspace: row-reduced echelon form with
 * pivot = lowest set bit of each row, pivot positions strictly increasing, and
 * every row zero at the other rows' pivots. Unique per subspace.
 */
struct SubspaceBasis {
  int n = 0;
  int k = 0;
  std::vector<uint32_t> rows;

  std::vector<int> pivots() const {
    std::vector<int> p;
    p.reserve(rows.size());
    for (uint32_t r : rows) p.push_back(std::countr_zero(r));
    return p;
  }

  bool operator==(const SubspaceBasis& o) const {
    return n == o.n && k == o.k && rows == o.rows;
  }
  bool operator<(const SubspaceBasis& o) const { return rows < o.rows; }
};

/**
 * Reduce arbitrary vectors to the canonical basis of their span.
 * Returns nullopt when the vectors are linearly dependent.
 */
std::optional<SubspaceBasis> canonical_basis(int n, const std::vector<uint32_t>& vecs);

/** Rank of a list of packed vectors (insertion into a triangular basis). */
int span_rank(const std::vector<uint32_t>& vecs);

/**
 * Streams every k-dimensional subspace of F_2^n exactly once, in a fixed
 * deterministic order (pivot combinations in lexicographic order, then free
 * entries counted LSB-first). Construct with (cell, stride) to restrict to
 * every stride-th pivot combination, which splits the stream into disjoint
 * parts for parallel consumption.
 */
class SubspaceStream {
 public:
  SubspaceStream(int n, int k, uint64_t cell = 0, uint64_t stride = 1);

  /** Fills `out` with the next canonical basis; false when exhausted. */
  bool next(SubspaceBasis& out);

 private:
  int n_, k_;
  uint64_t cell_, stride_, combo_index_ = 0;
  std::vector<int> pivots_;
  std::vector<std::vector<int>> free_cells_;
  int total_free_ = 0;
  uint64_t assign_ = 0;
  bool done_ = false;

  void rebuild_cells();
  bool advance_combination();
  bool combination_selected() const { return (combo_index_ - 1) % stride_ == cell_; }
};

template <typename Fn>
void for_each_subspace(int n, int k, Fn&& fn) {
  SubspaceStream stream(n, k);
  SubspaceBasis basis;
  while (stream.next(basis)) fn(basis);
}

/**
 * One canonical offset per coset of the subspace: the 2^(n-k) vectors that are
 * zero in every pivot position. Their cosets partition F_2^n.
 */
std::vector<PointVec> coset_transversal(const SubspaceBasis& s);

/** The 2^k points of the span, offset 0 first (doubling order over the rows). */
std::vector<uint32_t> span_points(const SubspaceBasis& s);

/** Uniform element of GL(n, F_2) by rejection sampling of random matrices. */
template <typename Rng>
GF2Matrix random_invertible(int n, Rng& rng) {
  if (n < 1 || n > kMaxVars) throw std::domain_error("dimension out of range");
  const uint32_t mask = low_mask(n);
  std::vector<uint32_t> cols(static_cast<size_t>(n));
  while (true) {
    for (auto& c : cols) c = static_cast<uint32_t>(rng()) & mask;
    GF2Matrix m(n, cols);
    if (is_invertible(m)) return m;
  }
}

/**
 * Probability that k uniform vectors of F_2^n are linearly independent:
 * prod_{i=n-k+1}^{n} (1 - 2^-i). Returns 0 when k > n.
 */
ExactProb lin_indep_probability(int n, int k);

}  // namespace degtest
