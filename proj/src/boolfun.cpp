#include "degtest/boolfun.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

namespace degtest {

TruthTable::TruthTable(int n_) : n(n_) {
  if (n < 1 || n > kMaxTableVars) throw std::domain_error("truth table dimension out of range");
  words.assign(word_count(n), 0);
}

uint64_t TruthTable::weight() const {
  uint64_t w = 0;
  for (uint64_t x : words) w += static_cast<uint64_t>(std::popcount(x));
  return w;
}

Anf::Anf(int n_) : n(n_) {
  if (n < 1 || n > kMaxVars) throw std::domain_error("dimension out of range");
}

Anf Anf::from_masks(int n, const std::vector<uint32_t>& masks) {
  Anf a(n);
  std::set<uint32_t> present;
  for (uint32_t m : masks) {
    if (m & ~low_mask(n)) throw std::domain_error("monomial uses a variable above n");
    auto it = present.find(m);
    if (it == present.end())
      present.insert(m);
    else
      present.erase(it);  // GF(2): a monomial added twice cancels
  }
  a.monomials.assign(present.begin(), present.end());
  return a;
}

bool Anf::contains(uint32_t mask) const {
  return std::binary_search(monomials.begin(), monomials.end(), mask);
}

std::optional<int> Anf::degree() const {
  if (monomials.empty()) return std::nullopt;
  int d = 0;
  for (uint32_t m : monomials) d = std::max(d, std::popcount(m));
  return d;
}

BlackBox BlackBox::from(const TruthTable& tt) {
  BlackBox b;
  b.n = tt.n;
  auto table = std::make_shared<TruthTable>(tt);
  b.fn = [table](uint32_t x) { return table->get(x); };
  return b;
}

BlackBox BlackBox::from(const Anf& a) { return from(anf_to_tt(a)); }

void moebius_inplace(std::vector<uint64_t>& words, int n) {
  static constexpr uint64_t kLow[6] = {
      0x5555555555555555ULL, 0x3333333333333333ULL, 0x0f0f0f0f0f0f0f0fULL,
      0x00ff00ff00ff00ffULL, 0x0000ffff0000ffffULL, 0x00000000ffffffffULL,
  };
  for (int b = 0; b < n; ++b) {
    if (b < 6) {
      const uint64_t mask = kLow[b];
      const int s = 1 << b;
      for (auto& w : words) w ^= (w & mask) << s;
    } else {
      const size_t half = 1ULL << (b - 6);
      for (size_t base = 0; base < words.size(); base += 2 * half)
        for (size_t j = 0; j < half; ++j) words[base + half + j] ^= words[base + j];
    }
  }
}

Anf moebius(const TruthTable& tt) {
  std::vector<uint64_t> coeff = tt.words;
  moebius_inplace(coeff, tt.n);
  Anf a(tt.n);
  for (uint32_t x = 0; x < tt.size(); ++x)
    if ((coeff[x >> 6] >> (x & 63u)) & 1u) a.monomials.push_back(x);
  return a;
}

TruthTable anf_to_tt(const Anf& a) {
  if (a.n > kMaxTableVars) throw std::domain_error("truth table dimension out of range");
  TruthTable tt(a.n);
  for (uint32_t m : a.monomials) tt.set(m, 1);
  moebius_inplace(tt.words, tt.n);
  return tt;
}

int coefficient(const BlackBox& f, uint32_t support_mask) {
  if (support_mask & ~low_mask(f.n)) throw std::domain_error("support above dimension");
  // XOR of f over all points v with v contained in the support mask.
  int acc = 0;
  uint32_t v = 0;
  while (true) {
    acc ^= f.eval(v);
    if (v == support_mask) break;
    v = (v - support_mask) & support_mask;  // next subset of the mask
  }
  return acc;
}

mpz_class binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

ExactProb dd_k(const Anf& a, int k) {
  if (k < 0 || k > a.n) throw std::domain_error("dd_k needs 0 <= k <= n");
  mpz_class count = 0;
  for (uint32_t m : a.monomials)
    if (std::popcount(m) == k) ++count;
  return ExactProb::from_ratio(count, binomial(a.n, k));
}

TruthTable compose_affine(const TruthTable& f, const AffineMap& map) {
  if (f.n != map.m.n) throw std::domain_error("affine map dimension mismatch");
  TruthTable g(f.n);
  // Walk x in Gray-code order so y = Mx ^ v updates by one column per step.
  uint32_t x = 0, y = map.v.bits;
  g.set(0, f.get(y));
  for (uint32_t i = 1; i < f.size(); ++i) {
    int b = std::countr_zero(i);
    x ^= 1u << b;
    y ^= map.m.cols[static_cast<size_t>(b)];
    g.set(x, f.get(y));
  }
  return g;
}

Anf compose_affine(const Anf& f, const AffineMap& map) {
  return moebius(compose_affine(anf_to_tt(f), map));
}

namespace {

// permute word bits by x -> x ^ a for a < 64: a composition of masked swaps
inline uint64_t permute_xor_low(uint64_t w, uint32_t a) {
  static constexpr uint64_t kLow[6] = {
      0x5555555555555555ULL, 0x3333333333333333ULL, 0x0f0f0f0f0f0f0f0fULL,
      0x00ff00ff00ff00ffULL, 0x0000ffff0000ffffULL, 0x00000000ffffffffULL,
  };
  while (a) {
    int b = std::countr_zero(a);
    a &= a - 1;
    const int s = 1 << b;
    w = ((w & kLow[b]) << s) | ((w >> s) & kLow[b]);
  }
  return w;
}

}  // namespace

void derivative_words(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src, int n,
                      uint32_t a) {
  const size_t hi = a >> 6;
  const uint32_t lo = a & 63u;
  dst.resize(src.size());
  if (n < 6) {
    // single partial word: mirror bits within the live 2^n range
    uint64_t w = src[0];
    uint64_t p = permute_xor_low(w, a);
    dst[0] = (w ^ p) & ((1ULL << (1u << n)) - 1);
    return;
  }
  for (size_t j = 0; j < src.size(); ++j)
    dst[j] = src[j] ^ permute_xor_low(src[j ^ hi], lo);
}

TruthTable derivative(const TruthTable& f, const PointVec& a) {
  if (f.n != a.n) throw std::domain_error("derivative dimension mismatch");
  TruthTable g(f.n);
  derivative_words(g.words, f.words, f.n, a.bits);
  return g;
}

Anf derivative(const Anf& f, const PointVec& a) {
  return moebius(derivative(anf_to_tt(f), a));
}

std::vector<PointVec> fast_points(const Anf& f) {
  auto deg = f.degree();
  if (!deg || *deg == 0) throw std::domain_error("fast points need a non-constant function");
  const int k = *deg;
  TruthTable tt = anf_to_tt(f);
  std::vector<PointVec> out;
  std::vector<uint64_t> d;
  for (uint32_t a = 1; a < tt.size(); ++a) {
    derivative_words(d, tt.words, tt.n, a);
    TruthTable da;
    da.n = tt.n;
    da.words = d;
    auto dd = moebius(da).degree();
    int deg_da = dd ? *dd : -1;  // local comparison only; the zero sentinel sorts lowest
    if (deg_da < k - 1) out.emplace_back(f.n, a);
  }
  return out;
}

std::vector<PointVec> fast_points(const TruthTable& f) { return fast_points(moebius(f)); }

Anf complement(const Anf& a) {
  auto deg = a.degree();
  if (!deg) throw std::domain_error("complement of the zero function is undefined");
  for (uint32_t m : a.monomials)
    if (std::popcount(m) != *deg)
      throw std::domain_error("complement needs a homogeneous function");
  const uint32_t full = low_mask(a.n);
  std::vector<uint32_t> masks;
  masks.reserve(a.monomials.size());
  for (uint32_t m : a.monomials) masks.push_back(full ^ m);
  return Anf::from_masks(a.n, masks);
}

namespace {

constexpr const char* kXorSign = "\xe2\x8a\x95";  // U+2295

}  // namespace

Anf parse_anf(const std::string& text, int n) {
  if (n < 1 || n > kMaxVars) throw std::domain_error("dimension out of range");
  std::vector<uint32_t> masks;
  size_t i = 0;
  const auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };

  while (true) {
    skip_ws();
    if (i >= text.size()) throw AnfParseError("expected a term", i + 1);
    if (text[i] == '0' || text[i] == '1') {
      if (text[i] == '1') masks.push_back(0);
      ++i;
    } else {
      uint32_t mask = 0;
      bool expect_factor = true;
      while (true) {
        skip_ws();
        if (!expect_factor) {
          if (i < text.size() && text[i] == '*') {
            ++i;
            expect_factor = true;
            continue;
          }
          if (i < text.size() && text[i] == 'x') {
            expect_factor = true;  // juxtaposed factor
            continue;
          }
          break;  // term ends
        }
        const size_t var_pos = i;
        if (i >= text.size() || text[i] != 'x')
          throw AnfParseError("expected a variable like x2", i + 1);
        ++i;
        uint32_t idx = 0;
        size_t digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          idx = idx * 10 + static_cast<uint32_t>(text[i] - '0');
          if (++digits > 3) throw AnfParseError("variable index out of range", var_pos + 1);
          ++i;
        }
        if (digits == 0) throw AnfParseError("missing variable index", var_pos + 1);
        if (idx < 1) throw AnfParseError("variable indices start at x1", var_pos + 1);
        if (idx > static_cast<uint32_t>(n))
          throw AnfParseError("variable x" + std::to_string(idx) + " above dimension n=" +
                                  std::to_string(n),
                              var_pos + 1);
        mask |= 1u << (idx - 1);
        expect_factor = false;
      }
      masks.push_back(mask);
    }
    skip_ws();
    if (i >= text.size()) break;
    if (text[i] == '+') {
      ++i;
      continue;
    }
    if (text.compare(i, 3, kXorSign) == 0) {
      i += 3;
      continue;
    }
    throw AnfParseError("expected '+' between terms", i + 1);
  }
  return Anf::from_masks(n, masks);
}

std::string format_anf(const Anf& a) {
  if (a.monomials.empty()) return "0";
  std::string out;
  for (size_t t = 0; t < a.monomials.size(); ++t) {
    if (t) out += " + ";
    uint32_t m = a.monomials[t];
    if (m == 0) {
      out += "1";
      continue;
    }
    bool first = true;
    while (m) {
      int b = std::countr_zero(m);
      m &= m - 1;
      if (!first) out += "*";
      out += "x" + std::to_string(b + 1);
      first = false;
    }
  }
  return out;
}

Anf disjoint_sum(const Anf& f, const Anf& g) {
  if (f.n + g.n > kMaxVars) throw std::domain_error("combined dimension out of range");
  std::vector<uint32_t> masks = f.monomials;
  for (uint32_t m : g.monomials) masks.push_back(m << f.n);
  return Anf::from_masks(f.n + g.n, masks);
}

TruthTable read_truth_table(std::istream& in, bool hex) {
  std::string header, data;
  if (!std::getline(in, header)) throw std::invalid_argument("missing header line");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header.rfind("n=", 0) != 0) throw std::invalid_argument("header must be n=<int>");
  int n = 0;
  try {
    size_t used = 0;
    n = std::stoi(header.substr(2), &used);
    if (used != header.size() - 2) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("header must be n=<int>");
  }
  if (n < 1 || n > kMaxTableVars) throw std::invalid_argument("dimension out of range");
  if (hex && n < 2) throw std::invalid_argument("hex form needs n >= 2");
  if (!std::getline(in, data)) throw std::invalid_argument("missing data line");
  if (!data.empty() && data.back() == '\r') data.pop_back();

  TruthTable tt(n);
  if (!hex) {
    if (data.size() != tt.size()) throw std::invalid_argument("expected 2^n bits");
    for (uint32_t j = 0; j < tt.size(); ++j) {
      if (data[j] != '0' && data[j] != '1') throw std::invalid_argument("bits must be 0 or 1");
      tt.set(j, data[j] - '0');
    }
  } else {
    if (data.size() != tt.size() / 4) throw std::invalid_argument("expected 2^n/4 hex digits");
    for (size_t i = 0; i < data.size(); ++i) {
      char c = data[i];
      int v;
      if (c >= '0' && c <= '9')
        v = c - '0';
      else if (c >= 'a' && c <= 'f')
        v = c - 'a' + 10;
      else
        throw std::invalid_argument("hex digits must be lowercase");
      for (int b = 0; b < 4; ++b) tt.set(static_cast<uint32_t>(4 * i + b), (v >> b) & 1);
    }
  }
  return tt;
}

TruthTable read_truth_table_file(const std::string& path, bool hex) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return read_truth_table(in, hex);
}

std::string truth_table_bits_string(const TruthTable& tt) {
  std::string s(tt.size(), '0');
  for (uint32_t j = 0; j < tt.size(); ++j)
    if (tt.get(j)) s[j] = '1';
  return s;
}

std::string truth_table_hex_string(const TruthTable& tt) {
  if (tt.n < 2) throw std::domain_error("hex form needs n >= 2");
  std::string s(tt.size() / 4, '0');
  for (size_t i = 0; i < s.size(); ++i) {
    int v = 0;
    for (int b = 0; b < 4; ++b) v |= tt.get(static_cast<uint32_t>(4 * i + b)) << b;
    s[i] = (v < 10) ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10);
  }
  return s;
}

void write_truth_table(std::ostream& out, const TruthTable& tt, bool hex) {
  out << "n=" << tt.n << "\n"
      << (hex ? truth_table_hex_string(tt) : truth_table_bits_string(tt)) << "\n";
}

}  // namespace degtest
