#include "degtest/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iterator>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "degtest/degree_test.hpp"
#include "json.hpp"

namespace degtest {

namespace {

struct BuiltinRow {
  const char* id;
  const char* anf;
  const char* add;  // 6 d.p. reference or nullptr
  const char* dt;
};

// Degree-3 classes for n = 8, ascending by dt (ties in id order). Both
// reference columns are round-half-even renderings of the exact rationals,
// which `sweep --check` reproduces digit for digit.
constexpr BuiltinRow kDegree3[] = {
    {"f_2", "x1x2x3", "0.337275", "0.328125"},
    {"f_3", "x1x2x5 + x3x4x5", "0.421594", "0.410156"},
    {"f_7", "x1x2x7 + x3x4x7 + x5x6x7", "0.442674", "0.430664"},
    {"f_4", "x1x2x3 + x4x5x6", "0.453214", "0.440918"},
    {"f_5", "x1x2x3 + x2x4x5 + x3x4x6", "0.463754", "0.451172"},
    {"f_6", "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6", "0.474294", "0.461426"},
    {"f_8", "x1x2x3 + x4x5x6 + x1x4x7", "0.474294", "0.461426"},
    {"f_13", "x1x2x3 + x4x5x6 + x1x7x8", "0.482199", "0.469116"},
    {"f_9", "x1x2x3 + x2x4x5 + x3x4x6 + x1x4x7", "0.484834", "0.471680"},
    {"f_10", "x1x2x3 + x4x5x6 + x1x4x7 + x2x5x7", "0.484834", "0.471680"},
    {"f_16", "x1x2x3 + x2x4x5 + x3x4x6 + x3x7x8", "0.484834", "0.471680"},
    {"f_12", "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x6x7 + x2x4x7", "0.490103",
     "0.476807"},
    {"f_14", "x1x2x3 + x4x5x6 + x1x7x8 + x4x7x8", "0.490103", "0.476807"},
    {"f_29", "x1x2x3 + x4x5x6 + x1x4x7 + x3x6x8", "0.490103", "0.476807"},
    {"f_15", "x1x2x3 + x2x4x5 + x6x7x8 + x1x4x7", "0.492738", "0.479370"},
    {"f_11", "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x6x7", "0.495373", "0.481934"},
    {"f_17", "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x7x8", "0.495373", "0.481934"},
    {"f_24", "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x6x7 + x5x6x8", "0.495373",
     "0.481934"},
    {"f_28", "x1x2x7 + x3x4x7 + x5x6x7 + x2x5x8 + x3x6x8", "0.495373", "0.481934"},
    {"f_31", "x1x2x3 + x4x5x6 + x1x4x7 + x3x6x8 + x4x7x8 + x5x6x8", "0.495373", "0.481934"},
    {"f_18", "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x6x7 + x2x3x8", "0.498008",
     "0.484497"},
    {"f_19", "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x5x8 + x2x3x7 + x6x7x8", "0.498008",
     "0.484497"},
    {"f_26", "x1x2x3 + x4x5x6 + x1x4x7 + x2x5x7 + x2x6x8 + x2x7x8 + x3x4x8", "0.498008",
     "0.484497"},
    {"f_30", "x1x2x3 + x4x5x6 + x1x4x7 + x3x6x8 + x5x7x8", "0.498008", "0.484497"},
    {"f_22",
     "x1x2x3 + x2x3x4 + x3x4x5 + x4x5x6 + x5x6x7 + x6x7x8 + x1x2x8 + x2x3x8 + x3x4x8 + x4x5x8 + "
     "x5x6x8 + x1x7x8",
     "0.499326", "0.485779"},
    {"f_21", "x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x2x7x8 + x3x4x7 + x1x6x8 + x2x3x7 + x1x4x7",
     "0.500643", "0.487061"},
    {"f_23", "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x6x7 + x5x7x8", "0.500643",
     "0.487061"},
    {"f_25", "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x1x6x7 + x3x4x8", "0.500643",
     "0.487061"},
    {"f_32", "x1x2x3 + x4x5x6 + x1x4x7 + x1x6x8 + x2x5x8 + x3x4x8", "0.500643", "0.487061"},
    {"f_20", "x1x2x3 + x1x4x5 + x2x4x6 + x3x5x6 + x4x5x6 + x2x7x8 + x3x4x7 + x1x6x8", "0.501961",
     "0.488342"},
    {"f_27", "x1x2x3 + x4x5x6 + x1x4x7 + x2x5x7 + x1x6x8 + x1x7x8 + x2x4x8 + x3x5x8", "0.503278",
     "0.489624"},
};

constexpr BuiltinRow kDegree2[] = {
    {"g_1", "x1x2", nullptr, "0.375000"},
    {"g_2", "x1x2 + x3x4", nullptr, "0.468750"},
    {"g_3", "x1x2 + x3x4 + x5x6", nullptr, "0.492188"},
    {"g_4", "x1x2 + x3x4 + x5x6 + x7x8", nullptr, "0.498047"},
};

constexpr BuiltinRow kDegree1[] = {
    {"f", "x1", nullptr, "0.500000"},
};

std::vector<RepEntry> make_entries(const BuiltinRow* rows, size_t count, int degree) {
  std::vector<RepEntry> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    RepEntry e;
    e.id = rows[i].id;
    e.n = 8;
    e.anf_text = rows[i].anf;
    e.degree = degree;
    if (rows[i].add) e.expected_add = rows[i].add;
    if (rows[i].dt) e.expected_dt = rows[i].dt;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

std::vector<RepEntry> builtin_reps(int degree) {
  switch (degree) {
    case 1:
      return make_entries(kDegree1, std::size(kDegree1), 1);
    case 2:
      return make_entries(kDegree2, std::size(kDegree2), 2);
    case 3:
      return make_entries(kDegree3, std::size(kDegree3), 3);
    default:
      return {};
  }
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<RepEntry> load_reps(std::istream& in, int n, int degree) {
  if (degree < 1) throw std::domain_error("degree must be positive");
  std::vector<RepEntry> out;
  std::map<std::string, int> seen_ids;                 // id -> line
  std::map<std::vector<uint32_t>, std::string> seen_fns;  // monomial set -> id
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (size_t hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string text = trim(raw);
    if (text.empty()) continue;

    size_t colon = text.find(':');
    if (colon == std::string::npos) throw RepParseError(line, "expected \"id: <ANF>\"");
    std::string id = trim(text.substr(0, colon));
    std::string expr = trim(text.substr(colon + 1));
    if (id.empty()) throw RepParseError(line, "empty id");
    if (id.find(',') != std::string::npos) throw RepParseError(line, "id contains a comma");
    if (expr.empty()) throw RepParseError(line, "empty ANF");

    Anf a;
    try {
      a = parse_anf(expr, n);
    } catch (const AnfParseError& e) {
      throw RepParseError(line, e.what());
    }
    auto deg = a.degree();
    if (!deg) throw RepParseError(line, "entry \"" + id + "\" is the zero function");
    if (*deg != degree) {
      throw RepParseError(line, "entry \"" + id + "\" has degree " + std::to_string(*deg) +
                                    ", expected " + std::to_string(degree));
    }
    if (auto it = seen_ids.find(id); it != seen_ids.end()) {
      throw RepParseError(line, "duplicate id \"" + id + "\" (first on line " +
                                    std::to_string(it->second) + ")");
    }
    if (auto it = seen_fns.find(a.monomials); it != seen_fns.end()) {
      throw RepParseError(line,
                          "entry \"" + id + "\" repeats the monomial set of \"" + it->second + "\"");
    }
    seen_ids.emplace(id, line);
    seen_fns.emplace(a.monomials, id);

    RepEntry e;
    e.id = std::move(id);
    e.n = n;
    e.anf_text = std::move(expr);
    e.degree = degree;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<RepEntry> load_reps_file(const std::string& path, int n, int degree) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return load_reps(in, n, degree);
}

namespace {

SweepRow compute_row(const RepEntry& rep, int k) {
  const auto t0 = std::chrono::steady_clock::now();
  Anf a = rep.anf();
  SweepRow row;
  row.id = rep.id;
  row.n = rep.n;
  row.k = k;
  row.monomial_count = a.monomials.size();
  row.dd = dd_k(a, k);
  TruthTable tt = anf_to_tt(a);
  auto deg = a.degree();
  if (!deg || *deg <= k) {
    // k-th derivatives are constant, so offsets cannot change the outcome
    row.dt = exact_dt_homogeneous(tt, k);
    row.add = add_from_dt(row.dt, rep.n, k);
  } else {
    row.add = exact_add(tt, k);
    row.dt = dt_from_add(row.add, rep.n, k);
  }
  row.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(const std::vector<RepEntry>& reps, int k, int parallelism) {
  if (reps.empty()) return {};
  const int n = reps.front().n;
  for (const auto& r : reps)
    if (r.n != n) throw std::domain_error("sweep needs entries of one dimension");
  if (k < 1 || k > n) throw std::domain_error("sweep needs 1 <= k <= n");
  if (parallelism < 1) throw std::domain_error("parallelism must be >= 1");

  std::vector<SweepRow> rows(reps.size());
  std::atomic<size_t> cursor{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      size_t i = cursor.fetch_add(1);
      if (i >= reps.size()) return;
      try {
        rows[i] = compute_row(reps[i], k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  if (parallelism == 1 || reps.size() == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const size_t count = std::min(static_cast<size_t>(parallelism), reps.size());
    pool.reserve(count);
    for (size_t i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) { return a.dt < b.dt; });
  return rows;
}

std::vector<RepEntry> derive_complement_reps(const std::vector<RepEntry>& reps, int n) {
  std::vector<RepEntry> out;
  out.reserve(reps.size());
  for (const auto& rep : reps) {
    if (rep.n != n) throw std::domain_error("complement derivation needs entries of dimension n");
    Anf a = rep.anf();
    Anf c = complement(a);  // rejects non-homogeneous input
    RepEntry e;
    e.id = rep.id;
    e.n = n;
    e.anf_text = format_anf(c);
    e.degree = n - *a.degree();
    e.expected_add = rep.expected_add;  // add is invariant under complementation
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<HistogramBin> histogram(const std::vector<SweepRow>& rows, const HistogramSpec& spec) {
  if (rows.empty()) throw std::invalid_argument("histogram needs at least one row");

  if (spec.mode == HistogramSpec::Mode::PerDistinctValue) {
    std::map<ExactProb, size_t> counts;
    for (const auto& r : rows) ++counts[r.dt];
    std::vector<HistogramBin> bins;
    bins.reserve(counts.size());
    for (const auto& [v, c] : counts) bins.push_back({v, v, c});
    return bins;
  }

  if (spec.bins < 1) throw std::invalid_argument("bin count must be >= 1");
  mpq_class lo, hi;
  if (spec.range) {
    lo = spec.range->first.value();
    hi = spec.range->second.value();
    if (lo > hi) throw std::invalid_argument("histogram range is empty");
  } else {
    lo = hi = rows.front().dt.value();
    for (const auto& r : rows) {
      lo = std::min(lo, r.dt.value());
      hi = std::max(hi, r.dt.value());
    }
  }
  if (lo == hi) return {{ExactProb(lo), ExactProb(hi), rows.size()}};

  std::vector<HistogramBin> bins;
  bins.reserve(static_cast<size_t>(spec.bins));
  mpq_class width = (hi - lo) / spec.bins;
  for (int i = 0; i < spec.bins; ++i) {
    HistogramBin b;
    b.low = ExactProb(mpq_class(lo + i * width));
    b.high = ExactProb(mpq_class(lo + (i + 1) * width));
    bins.push_back(std::move(b));
  }
  for (const auto& r : rows) {
    const mpq_class& v = r.dt.value();
    if (v < lo || v > hi) throw std::invalid_argument("value outside histogram range");
    // floor((v - lo) / width); the top edge closes the last bin
    mpq_class pos = (v - lo) * spec.bins / (hi - lo);
    mpz_class idx;
    mpz_fdiv_q(idx.get_mpz_t(), pos.get_num().get_mpz_t(), pos.get_den().get_mpz_t());
    size_t i = std::min(static_cast<size_t>(idx.get_ui()), static_cast<size_t>(spec.bins - 1));
    ++bins[i].count;
  }
  return bins;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, int digits) {
  std::string out = "id,n,k,monomials,dd_k,add_k_rational,add_k,dt_k_rational,dt_k\n";
  for (const auto& r : rows) {
    out += r.id + ',' + std::to_string(r.n) + ',' + std::to_string(r.k) + ',' +
           std::to_string(r.monomial_count) + ',' + r.dd.rational_string() + ',' +
           r.add.rational_string() + ',' + r.add.decimal(digits) + ',' + r.dt.rational_string() +
           ',' + r.dt.decimal(digits) + '\n';
  }
  return out;
}

std::string sweep_json(const std::vector<SweepRow>& rows, int digits) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json obj;
    obj["id"] = r.id;
    obj["n"] = r.n;
    obj["k"] = r.k;
    obj["monomials"] = r.monomial_count;
    obj["dd_k"] = r.dd.rational_string();
    obj["add_k_rational"] = r.add.rational_string();
    obj["add_k"] = r.add.decimal(digits);
    obj["dt_k_rational"] = r.dt.rational_string();
    obj["dt_k"] = r.dt.decimal(digits);
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::string histogram_csv(const std::vector<HistogramBin>& bins, const HistogramSpec& spec,
                          int digits) {
  std::string out;
  if (spec.mode == HistogramSpec::Mode::PerDistinctValue) {
    out = "value,count\n";
    for (const auto& b : bins) out += b.low.decimal(digits) + ',' + std::to_string(b.count) + '\n';
  } else {
    out = "bin_low,bin_high,count\n";
    for (const auto& b : bins) {
      out += b.low.decimal(digits) + ',' + b.high.decimal(digits) + ',' +
             std::to_string(b.count) + '\n';
    }
  }
  return out;
}

std::vector<std::string> check_rows(const std::vector<RepEntry>& reps,
                                    const std::vector<SweepRow>& rows) {
  std::map<std::string, const SweepRow*> by_id;
  for (const auto& r : rows) by_id.emplace(r.id, &r);
  std::vector<std::string> failures;
  for (const auto& rep : reps) {
    if (!rep.expected_add && !rep.expected_dt) continue;
    auto it = by_id.find(rep.id);
    if (it == by_id.end()) {
      failures.push_back(rep.id);
      continue;
    }
    const SweepRow& row = *it->second;
    bool ok = true;
    if (rep.expected_add && row.add.decimal(6) != *rep.expected_add) ok = false;
    if (rep.expected_dt && row.dt.decimal(6) != *rep.expected_dt) ok = false;
    if (!ok) failures.push_back(rep.id);
  }
  return failures;
}

}  // namespace degtest
