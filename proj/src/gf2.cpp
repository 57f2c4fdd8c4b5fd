#include "degtest/gf2.hpp"

#include <algorithm>

namespace degtest {

int span_rank(const std::vector<uint32_t>& vecs) {
  uint32_t basis[kMaxVars] = {0};
  int r = 0;
  for (uint32_t v : vecs) {
    while (v) {
      int b = std::countr_zero(v);
      if (basis[b]) {
        v ^= basis[b];
      } else {
        basis[b] = v;
        ++r;
        break;
      }
    }
  }
  return r;
}

int rank(const GF2Matrix& m) { return span_rank(m.cols); }

GF2Matrix multiply(const GF2Matrix& a, const GF2Matrix& b) {
  if (a.n != b.n) throw std::domain_error("matrix dimension mismatch");
  std::vector<uint32_t> cols(static_cast<size_t>(a.n));
  for (int j = 0; j < a.n; ++j) cols[static_cast<size_t>(j)] = apply_bits(a, b.cols[static_cast<size_t>(j)]);
  return GF2Matrix(a.n, std::move(cols));
}

mpz_class count_invertible(int n) {
  if (n < 1) throw std::domain_error("dimension must be positive");
  mpz_class total = 1;
  mpz_class pow_n;
  mpz_ui_pow_ui(pow_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
  mpz_class pow_i = 1;
  for (int i = 0; i < n; ++i) {
    total *= pow_n - pow_i;
    pow_i *= 2;
  }
  return total;
}

mpz_class gaussian_binomial(int n, int k) {
  if (k < 0 || n < 0) throw std::domain_error("gaussian binomial needs n, k >= 0");
  if (k > n) return 0;
  mpz_class num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), 2, static_cast<unsigned long>(n - i));
    num *= t - 1;
    mpz_ui_pow_ui(t.get_mpz_t(), 2, static_cast<unsigned long>(k - i));
    den *= t - 1;
  }
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

std::optional<SubspaceBasis> canonical_basis(int n, const std::vector<uint32_t>& vecs) {
  if (n < 1 || n > kMaxVars) throw std::domain_error("dimension out of range");
  std::vector<uint32_t> rows;
  rows.reserve(vecs.size());
  for (uint32_t v : vecs) {
    if (v & ~low_mask(n)) throw std::domain_error("vector has bits above dimension");
    for (uint32_t r : rows) {
      int p = std::countr_zero(r);
      if ((v >> p) & 1u) v ^= r;
    }
    if (v == 0) return std::nullopt;  // dependent input
    int p = std::countr_zero(v);
    for (uint32_t& r : rows)
      if ((r >> p) & 1u) r ^= v;
    rows.push_back(v);
  }
  std::sort(rows.begin(), rows.end(), [](uint32_t a, uint32_t b) {
    return std::countr_zero(a) < std::countr_zero(b);
  });
  SubspaceBasis out;
  out.n = n;
  out.k = static_cast<int>(rows.size());
  out.rows = std::move(rows);
  return out;
}

SubspaceStream::SubspaceStream(int n, int k, uint64_t cell, uint64_t stride)
    : n_(n), k_(k), cell_(cell), stride_(stride) {
  if (n < 1 || n > kMaxVars) throw std::domain_error("dimension out of range");
  if (k < 1 || k > n) throw std::domain_error("subspace dimension needs 1 <= k <= n");
  if (stride == 0 || cell >= stride) throw std::domain_error("invalid stream cell");
  pivots_.resize(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j) pivots_[static_cast<size_t>(j)] = j;
  combo_index_ = 1;
  rebuild_cells();
  if (!combination_selected() && !advance_combination()) done_ = true;
}

void SubspaceStream::rebuild_cells() {
  free_cells_.assign(static_cast<size_t>(k_), {});
  total_free_ = 0;
  for (int j = 0; j < k_; ++j) {
    auto& cell = free_cells_[static_cast<size_t>(j)];
    for (int q = pivots_[static_cast<size_t>(j)] + 1; q < n_; ++q) {
      if (std::find(pivots_.begin(), pivots_.end(), q) == pivots_.end()) cell.push_back(q);
    }
    total_free_ += static_cast<int>(cell.size());
  }
  assign_ = 0;
}

bool SubspaceStream::advance_combination() {
  do {
    // next k-combination of {0..n-1} in lexicographic order
    int j = k_ - 1;
    while (j >= 0 && pivots_[static_cast<size_t>(j)] == n_ - k_ + j) --j;
    if (j < 0) return false;
    ++pivots_[static_cast<size_t>(j)];
    for (int t = j + 1; t < k_; ++t)
      pivots_[static_cast<size_t>(t)] = pivots_[static_cast<size_t>(t - 1)] + 1;
    ++combo_index_;
  } while (!combination_selected());
  rebuild_cells();
  return true;
}

bool SubspaceStream::next(SubspaceBasis& out) {
  if (done_) return false;
  out.n = n_;
  out.k = k_;
  out.rows.assign(static_cast<size_t>(k_), 0);
  uint64_t a = assign_;
  for (int j = 0; j < k_; ++j) {
    uint32_t row = 1u << pivots_[static_cast<size_t>(j)];
    for (int q : free_cells_[static_cast<size_t>(j)]) {
      if (a & 1u) row |= 1u << q;
      a >>= 1;
    }
    out.rows[static_cast<size_t>(j)] = row;
  }
  ++assign_;
  if (assign_ == (1ULL << total_free_)) {
    if (!advance_combination()) done_ = true;
  }
  return true;
}

std::vector<PointVec> coset_transversal(const SubspaceBasis& s) {
  std::vector<int> pivots = s.pivots();
  std::vector<int> free_pos;
  for (int q = 0; q < s.n; ++q)
    if (std::find(pivots.begin(), pivots.end(), q) == pivots.end()) free_pos.push_back(q);
  std::vector<PointVec> out;
  out.reserve(1ULL << free_pos.size());
  for (uint64_t c = 0; c < (1ULL << free_pos.size()); ++c) {
    uint32_t bits = 0;
    uint64_t a = c;
    for (int q : free_pos) {
      if (a & 1u) bits |= 1u << q;
      a >>= 1;
    }
    out.emplace_back(s.n, bits);
  }
  return out;
}

std::vector<uint32_t> span_points(const SubspaceBasis& s) {
  std::vector<uint32_t> pts{0};
  pts.reserve(1ULL << s.rows.size());
  for (uint32_t r : s.rows) {
    size_t m = pts.size();
    for (size_t i = 0; i < m; ++i) pts.push_back(pts[i] ^ r);
  }
  return pts;
}

ExactProb lin_indep_probability(int n, int k) {
  if (n < 1) throw std::domain_error("dimension must be positive");
  if (k < 0) throw std::domain_error("negative tuple size");
  if (k > n) return ExactProb::zero();
  mpq_class p = 1;
  for (int i = n - k + 1; i <= n; ++i) {
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), 2, static_cast<unsigned long>(i));
    p *= mpq_class(pw - 1, pw);
  }
  return ExactProb(p);
}

}  // namespace degtest
