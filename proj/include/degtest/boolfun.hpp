#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "degtest/gf2.hpp"
#include "degtest/prob.hpp"

namespace degtest {

/** Output bits of f packed 64 per word; bit at index j is f(point j). */
struct TruthTable {
  int n = 0;
  std::vector<uint64_t> words;

  TruthTable() = default;
  explicit TruthTable(int n_);

  static size_t word_count(int n) { return (n >= 6) ? (1ULL << (n - 6)) : 1; }
  size_t size() const { return 1ULL << n; }

  int get(uint32_t x) const { return static_cast<int>((words[x >> 6] >> (x & 63u)) & 1u); }
  void set(uint32_t x, int bit) {
    uint64_t m = 1ULL << (x & 63u);
    if (bit)
      words[x >> 6] |= m;
    else
      words[x >> 6] &= ~m;
  }

  uint64_t weight() const;

  bool operator==(const TruthTable& o) const { return n == o.n && words == o.words; }
  bool operator<(const TruthTable& o) const { return words < o.words; }
};

/** Monomial set of the algebraic normal form; mask 0 is the constant term. */
struct Anf {
  int n = 0;
  std::vector<uint32_t> monomials;  // sorted ascending, unique

  Anf() = default;
  explicit Anf(int n_);

  /** Builds from arbitrary masks with GF(2) semantics: pairs cancel. */
  static Anf from_masks(int n, const std::vector<uint32_t>& masks);

  bool is_zero() const { return monomials.empty(); }
  bool contains(uint32_t mask) const;

  /** Max monomial degree; nullopt is the distinguished "degree of zero" value. */
  std::optional<int> degree() const;

  bool operator==(const Anf& o) const { return n == o.n && monomials == o.monomials; }
};

/** Opaque point evaluator with a shared call counter. */
struct BlackBox {
  int n = 0;
  std::function<int(uint32_t)> fn;
  std::shared_ptr<std::atomic<uint64_t>> calls = std::make_shared<std::atomic<uint64_t>>(0);

  int eval(uint32_t x) const {
    calls->fetch_add(1, std::memory_order_relaxed);
    return fn(x);
  }
  uint64_t call_count() const { return calls->load(std::memory_order_relaxed); }

  static BlackBox from(const TruthTable& tt);
  static BlackBox from(const Anf& a);
};

/** x -> Mx ^ v with M invertible. */
struct AffineMap {
  GF2Matrix m;
  PointVec v;

  AffineMap(GF2Matrix m_, PointVec v_) : m(std::move(m_)), v(v_) {
    if (m.n != v.n) throw std::domain_error("affine map dimension mismatch");
    if (!is_invertible(m)) throw std::domain_error("affine map needs an invertible matrix");
  }
};

/**
 * In-place XOR butterfly on 2^n packed bits: one fold per variable, O(n 2^n).
 * Involution; maps truth-table bits to ANF coefficient bits and back.
 */
void moebius_inplace(std::vector<uint64_t>& words, int n);

Anf moebius(const TruthTable& tt);
TruthTable anf_to_tt(const Anf& a);

/**
 * ANF coefficient of the monomial with the given support, read through the
 * oracle alone: XOR of f over the subspace spanned by the support's canonical
 * basis vectors (2^|support| calls).
 */
int coefficient(const BlackBox& f, uint32_t support_mask);

/** C(n, k). */
mpz_class binomial(int n, int k);

/** Fraction of degree-k monomials present: count / C(n, k). */
ExactProb dd_k(const Anf& a, int k);

/** g(x) = f(Mx ^ v); degree is preserved. */
TruthTable compose_affine(const TruthTable& f, const AffineMap& map);
Anf compose_affine(const Anf& f, const AffineMap& map);

/** dst[x] = src[x] ^ src[x ^ a]; dst and src may alias only fully. */
void derivative_words(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src, int n,
                      uint32_t a);

/** Discrete derivative D_a f(x) = f(x ^ a) ^ f(x); zero function when a = 0. */
TruthTable derivative(const TruthTable& f, const PointVec& a);
Anf derivative(const Anf& f, const PointVec& a);

/**
 * All nonzero directions a with deg(D_a f) < deg(f) - 1.
 * Requires a non-constant f; at most 2^(n - deg f) - 1 exist.
 */
std::vector<PointVec> fast_points(const Anf& f);
std::vector<PointVec> fast_points(const TruthTable& f);

/** Monomial-wise complement within x_1...x_n; input must be homogeneous. */
Anf complement(const Anf& a);

struct AnfParseError : std::runtime_error {
  size_t position;  // 1-based byte offset into the input text
  AnfParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

/**
 * Grammar: terms separated by '+' (or the XOR sign U+2295); a term is "0",
 * "1", or a product of x<index> factors with optional '*' separators
 * ("x1x2x3" and "x1*x2*x3" are the same term). Whitespace is ignored; digits
 * after 'x' are read greedily, so x12 is variable twelve. Repeated variables
 * collapse, duplicate terms cancel over GF(2).
 */
Anf parse_anf(const std::string& text, int n);
std::string format_anf(const Anf& a);

/** g's variables shifted past f's; monomial sets merged over GF(2). */
Anf disjoint_sum(const Anf& f, const Anf& g);

/**
 * Truth-table file: line 1 "n=<int>", line 2 the 2^n output bits, either as a
 * '0'/'1' string (bit j at index j) or, with hex = true, lowercase hex where
 * bit j sits in nibble j/4 at position j mod 4.
 */
TruthTable read_truth_table(std::istream& in, bool hex);
TruthTable read_truth_table_file(const std::string& path, bool hex);
void write_truth_table(std::ostream& out, const TruthTable& tt, bool hex);
std::string truth_table_bits_string(const TruthTable& tt);
std::string truth_table_hex_string(const TruthTable& tt);

}  // namespace degtest
