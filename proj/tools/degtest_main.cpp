#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "degtest/catalog.hpp"
#include "degtest/degree_test.hpp"
#include "json.hpp"

namespace {

using namespace degtest;

constexpr int kExitVerdictAtLeast = 1;
constexpr int kExitParse = 2;
constexpr int kExitGuard = 3;
constexpr int kExitCheck = 4;

struct GlobalOpts {
  std::string seed_text = "0x5eedc0de";
  std::string output = "plain";
  int precision = 6;
  int parallelism = 1;
};

uint64_t parse_seed(const std::string& text) {
  if (text == "random") {
    std::random_device rd;
    return (static_cast<uint64_t>(rd()) << 32) ^ rd();
  }
  try {
    size_t used = 0;
    uint64_t v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("seed must be an integer or \"random\"");
  }
}

std::string fmt_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/** "p/q = 0.dddddd" pair used by all plain outputs. */
std::string prob_pair(const ExactProb& p, int digits) {
  return p.rational_string() + " = " + p.decimal(digits);
}

struct FunctionOpts {
  std::string expr;
  std::string tt_path;
  bool hex = false;
  int n = 0;
};

void add_function_opts(CLI::App* cmd, FunctionOpts& f, bool* n_given) {
  auto* expr = cmd->add_option("--expr", f.expr, "ANF text, e.g. \"x1x2x3 + x4x5x6\"");
  auto* tt = cmd->add_option("--tt", f.tt_path, "truth-table file (see README for the format)");
  cmd->add_flag("--hex", f.hex, "the truth-table file stores hex digits instead of bits");
  auto* n = cmd->add_option("--n", f.n, "number of variables (required with --expr)");
  expr->excludes(tt);
  n->each([n_given](const std::string&) { *n_given = true; });
}

struct LoadedFunction {
  int n = 0;
  Anf anf;
  TruthTable tt;
};

LoadedFunction load_function(const FunctionOpts& f, bool n_given) {
  LoadedFunction out;
  if (!f.expr.empty() && !f.tt_path.empty())
    throw std::invalid_argument("--expr and --tt are mutually exclusive");
  if (!f.expr.empty()) {
    if (!n_given) throw std::invalid_argument("--n is required with --expr");
    out.n = f.n;
    out.anf = parse_anf(f.expr, f.n);
    out.tt = anf_to_tt(out.anf);
  } else if (!f.tt_path.empty()) {
    out.tt = read_truth_table_file(f.tt_path, f.hex);
    if (n_given && f.n != out.tt.n)
      throw std::invalid_argument("--n disagrees with the truth-table header");
    out.n = out.tt.n;
    out.anf = moebius(out.tt);
  } else {
    throw std::invalid_argument("one of --expr or --tt is required");
  }
  return out;
}

std::string degree_text(const Anf& a) {
  auto d = a.degree();
  return d ? std::to_string(*d) : "undefined (zero function)";
}

// ---------------------------------------------------------------- anf ------

struct AnfCmd {
  FunctionOpts fn;
  bool n_given = false;
};

int run_anf(const AnfCmd& c, const GlobalOpts& g) {
  LoadedFunction f = load_function(c.fn, c.n_given);
  const bool bits_form = f.n < 2;
  const std::string table =
      bits_form ? truth_table_bits_string(f.tt) : truth_table_hex_string(f.tt);
  const char* table_key = bits_form ? "truth_table_bits" : "truth_table_hex";

  struct DdRow {
    int k;
    mpz_class count;
    mpz_class total;
  };
  std::vector<DdRow> dd;
  for (int k = 0; k <= f.n; ++k) {
    mpz_class count = 0;
    for (uint32_t m : f.anf.monomials)
      if (std::popcount(m) == k) ++count;
    dd.push_back({k, count, binomial(f.n, k)});
  }

  if (g.output == "json") {
    nlohmann::ordered_json obj;
    obj["n"] = f.n;
    obj["anf"] = format_anf(f.anf);
    if (auto d = f.anf.degree())
      obj["degree"] = *d;
    else
      obj["degree"] = nullptr;
    obj["monomials"] = f.anf.monomials.size();
    obj[table_key] = table;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : dd) {
      nlohmann::ordered_json e;
      e["k"] = r.k;
      e["count"] = r.count.get_str();
      e["total"] = r.total.get_str();
      e["value"] = decimal_string(mpq_class(r.count, r.total), g.precision);
      arr.push_back(std::move(e));
    }
    obj["dd"] = std::move(arr);
    std::cout << obj.dump(2) << "\n";
    return 0;
  }
  if (g.output == "csv") {
    std::cout << "n,degree,monomials,anf\n"
              << f.n << ',' << (f.anf.degree() ? std::to_string(*f.anf.degree()) : "") << ','
              << f.anf.monomials.size() << ',' << format_anf(f.anf) << "\n";
    return 0;
  }
  std::cout << "n: " << f.n << "\n"
            << "anf: " << format_anf(f.anf) << "\n"
            << "degree: " << degree_text(f.anf) << "\n"
            << table_key << ": " << table << "\n";
  for (const auto& r : dd) {
    std::cout << "dd_" << r.k << ": " << r.count.get_str() << "/" << r.total.get_str() << " = "
              << decimal_string(mpq_class(r.count, r.total), g.precision) << "\n";
  }
  return 0;
}

// -------------------------------------------------------------- exact ------

struct ExactCmd {
  FunctionOpts fn;
  bool n_given = false;
  int k = 0;
  std::string method = "auto";
  bool self_check = false;
};

struct ExactResult {
  ExactProb dt;
  ExactProb add;
};

ExactResult exact_by_method(const LoadedFunction& f, int k, const std::string& method) {
  ExactResult r;
  if (method == "tuples") {
    r.dt = exact_dt_tuples(f.tt, k);
    r.add = add_from_dt(r.dt, f.n, k);
  } else if (method == "subspaces") {
    auto deg = f.anf.degree();
    if (!deg || *deg <= k) {
      r.dt = exact_dt_homogeneous(f.tt, k);
      r.add = add_from_dt(r.dt, f.n, k);
    } else {
      r.add = exact_add(f.tt, k);
      r.dt = dt_from_add(r.add, f.n, k);
    }
  } else if (method == "recursion") {
    r.dt = dt_by_derivative_recursion(f.tt, k);
    r.add = add_from_dt(r.dt, f.n, k);
  } else {
    throw std::invalid_argument("unknown method \"" + method + "\"");
  }
  return r;
}

int run_exact(const ExactCmd& c, const GlobalOpts& g) {
  LoadedFunction f = load_function(c.fn, c.n_given);
  if (c.k < 1 || c.k > f.n) throw std::domain_error("exact needs 1 <= k <= n");

  std::string method = c.method;
  if (method == "auto") {
    auto deg = f.anf.degree();
    if (!deg || *deg <= c.k)
      method = "subspaces";  // offset-independent fast path
    else if ((c.k + 1) * f.n <= 24)
      method = "tuples";
    else
      method = "subspaces";
  }
  ExactResult r = exact_by_method(f, c.k, method);

  std::vector<std::string> checked;
  if (c.self_check) {
    const char* all[] = {"tuples", "subspaces", "recursion"};
    for (const char* m : all) {
      ExactResult other;
      try {
        other = exact_by_method(f, c.k, m);
      } catch (const SizeGuardError&) {
        continue;  // too costly here; skip, the remaining methods still apply
      }
      if (other.dt != r.dt || other.add != r.add) {
        std::cerr << "self-check failed: method " << m << " gives dt "
                  << other.dt.rational_string() << ", method " << method << " gives "
                  << r.dt.rational_string() << "\n";
        return 1;
      }
      checked.push_back(m);
    }
  }

  if (g.output == "json") {
    nlohmann::ordered_json obj;
    obj["n"] = f.n;
    obj["k"] = c.k;
    obj["method"] = method;
    obj["dt_k_rational"] = r.dt.rational_string();
    obj["dt_k"] = r.dt.decimal(g.precision);
    obj["add_k_rational"] = r.add.rational_string();
    obj["add_k"] = r.add.decimal(g.precision);
    if (c.self_check) obj["self_check"] = checked;
    std::cout << obj.dump(2) << "\n";
    return 0;
  }
  if (g.output == "csv") {
    std::cout << "n,k,method,dt_k_rational,dt_k,add_k_rational,add_k\n"
              << f.n << ',' << c.k << ',' << method << ',' << r.dt.rational_string() << ','
              << r.dt.decimal(g.precision) << ',' << r.add.rational_string() << ','
              << r.add.decimal(g.precision) << "\n";
    return 0;
  }
  std::cout << "n: " << f.n << "\n"
            << "k: " << c.k << "\n"
            << "method: " << method << "\n"
            << "dt_" << c.k << ": " << prob_pair(r.dt, g.precision) << "\n"
            << "add_" << c.k << ": " << prob_pair(r.add, g.precision) << "\n";
  if (c.self_check) {
    std::cout << "self_check: ok (";
    for (size_t i = 0; i < checked.size(); ++i) std::cout << (i ? ", " : "") << checked[i];
    std::cout << ")\n";
  }
  return 0;
}

// --------------------------------------------------------------- test ------

struct TestCmd {
  FunctionOpts fn;
  bool n_given = false;
  int k = 0;
  uint64_t t = 9;
};

int run_test_cmd(const TestCmd& c, const GlobalOpts& g) {
  LoadedFunction f = load_function(c.fn, c.n_given);
  if (c.k < 1 || c.k > f.n) throw std::domain_error("test needs 1 <= k <= n");
  const uint64_t seed = parse_seed(g.seed_text);
  Decision d = decide(f.tt, c.k, c.t, seed);
  const bool at_least = d.verdict == Decision::Verdict::DegAtLeastK;
  const std::string verdict =
      at_least ? ("deg(f) >= " + std::to_string(c.k)) : ("deg(f) < " + std::to_string(c.k));

  if (g.output == "json") {
    nlohmann::ordered_json obj;
    obj["n"] = f.n;
    obj["k"] = c.k;
    obj["t"] = c.t;
    obj["verdict"] = verdict;
    obj["runs_used"] = d.runs_used;
    obj["failures"] = d.failures;
    obj["false_positive_bound"] = fmt_double(d.false_positive_bound, g.precision);
    obj["seed"] = seed;
    std::cout << obj.dump(2) << "\n";
  } else if (g.output == "csv") {
    std::cout << "n,k,t,verdict,runs_used,failures,false_positive_bound,seed\n"
              << f.n << ',' << c.k << ',' << c.t << ',' << verdict << ',' << d.runs_used << ','
              << d.failures << ',' << fmt_double(d.false_positive_bound, g.precision) << ','
              << seed << "\n";
  } else {
    std::cout << "n: " << f.n << "\n"
              << "k: " << c.k << "\n"
              << "t: " << c.t << "\n"
              << "verdict: " << verdict << "\n"
              << "runs_used: " << d.runs_used << "\n"
              << "failures: " << d.failures << "\n"
              << "false_positive_bound: " << fmt_double(d.false_positive_bound, g.precision)
              << "\n"
              << "seed: " << seed << "\n";
  }
  return at_least ? kExitVerdictAtLeast : 0;
}

// ----------------------------------------------------------- estimate ------

struct EstimateCmd {
  FunctionOpts fn;
  bool n_given = false;
  int k = 0;
  uint64_t trials = 100000;
  bool independent = false;
};

int run_estimate(const EstimateCmd& c, const GlobalOpts& g) {
  LoadedFunction f = load_function(c.fn, c.n_given);
  if (c.k < 1 || c.k > f.n) throw std::domain_error("estimate needs 1 <= k <= n");
  const uint64_t seed = parse_seed(g.seed_text);
  Estimate e = estimate_dt(f.tt, c.k, c.trials, seed, c.independent);
  const std::string target = (c.independent ? "add_" : "dt_") + std::to_string(c.k);

  if (g.output == "json") {
    nlohmann::ordered_json obj;
    obj["n"] = f.n;
    obj["k"] = c.k;
    obj["target"] = target;
    obj["trials"] = e.trials;
    obj["p_hat"] = fmt_double(e.p_hat, g.precision);
    obj["std_error"] = fmt_double(e.std_error, g.precision);
    obj["seed"] = seed;
    std::cout << obj.dump(2) << "\n";
  } else if (g.output == "csv") {
    std::cout << "n,k,target,trials,p_hat,std_error,seed\n"
              << f.n << ',' << c.k << ',' << target << ',' << e.trials << ','
              << fmt_double(e.p_hat, g.precision) << ',' << fmt_double(e.std_error, g.precision)
              << ',' << seed << "\n";
  } else {
    std::cout << "n: " << f.n << "\n"
              << "k: " << c.k << "\n"
              << "target: " << target << "\n"
              << "trials: " << e.trials << "\n"
              << "p_hat: " << fmt_double(e.p_hat, g.precision) << "\n"
              << "std_error: " << fmt_double(e.std_error, g.precision) << "\n"
              << "seed: " << seed << "\n";
  }
  return 0;
}

// ----------------------------------------------------- rep list sources ----

struct SourceOpts {
  std::string source;
  int n = 8;
  int degree = 0;
  bool degree_given = false;
  bool complement = false;
};

void add_source_opts(CLI::App* cmd, SourceOpts& s, const char* flag_name) {
  cmd->add_option(flag_name, s.source, "builtin:<degree> or a representative file path")
      ->required();
  cmd->add_option("--n", s.n, "number of variables for file sources (default 8)");
  auto* deg = cmd->add_option("--degree", s.degree, "declared degree of file entries");
  deg->each([&s](const std::string&) { s.degree_given = true; });
  cmd->add_flag("--complement", s.complement,
                "replace every entry by its monomial-wise complement before use");
}

std::vector<RepEntry> load_source(const SourceOpts& s) {
  std::vector<RepEntry> reps;
  if (s.source.rfind("builtin:", 0) == 0) {
    const std::string tail = s.source.substr(8);
    int degree = 0;
    try {
      size_t used = 0;
      degree = std::stoi(tail, &used);
      if (used != tail.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("builtin source must be builtin:<degree>");
    }
    reps = builtin_reps(degree);
    if (reps.empty()) {
      std::cerr << "note: no builtin list for degree " << degree
                << " (only 1-3 are embedded; larger lists are external data)\n";
    }
  } else {
    if (!s.degree_given)
      throw std::invalid_argument("--degree is required with a file source");
    reps = load_reps_file(s.source, s.n, s.degree);
  }
  if (s.complement && !reps.empty()) reps = derive_complement_reps(reps, reps.front().n);
  return reps;
}

HistogramSpec parse_hist_mode(const std::string& text) {
  HistogramSpec spec;
  if (text == "distinct") {
    spec.mode = HistogramSpec::Mode::PerDistinctValue;
    return spec;
  }
  if (text == "equal") return spec;
  if (text.rfind("equal:", 0) == 0) {
    try {
      size_t used = 0;
      spec.bins = std::stoi(text.substr(6), &used);
      if (used != text.size() - 6 || spec.bins < 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("histogram mode must be distinct, equal, or equal:<bins>");
    }
    return spec;
  }
  throw std::invalid_argument("histogram mode must be distinct, equal, or equal:<bins>");
}

// -------------------------------------------------------------- sweep ------

struct SweepCmd {
  SourceOpts src;
  int k = 0;
  std::string out_path;
  bool check = false;
  std::string hist_mode;
};

int run_sweep(const SweepCmd& c, const GlobalOpts& g) {
  std::vector<RepEntry> reps = load_source(c.src);
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<SweepRow> rows = sweep(reps, c.k, g.parallelism);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "sweep: " << rows.size() << " rows in " << fmt_double(elapsed, 3) << " s\n";

  const std::string table = (g.output == "json") ? sweep_json(rows, g.precision)
                                                 : sweep_csv(rows, g.precision);
  if (!c.out_path.empty()) {
    std::ofstream out(c.out_path);
    if (!out) throw std::invalid_argument("cannot write " + c.out_path);
    out << table;
  }

  if (!c.hist_mode.empty()) {
    HistogramSpec spec = parse_hist_mode(c.hist_mode);
    std::cout << histogram_csv(histogram(rows, spec), spec, g.precision);
  } else {
    std::cout << table;
  }

  if (c.check) {
    std::vector<std::string> bad = check_rows(reps, rows);
    if (!bad.empty()) {
      std::cerr << "check failed for " << bad.size() << " entries:";
      for (const auto& id : bad) std::cerr << ' ' << id;
      std::cerr << "\n";
      return kExitCheck;
    }
    std::cerr << "check passed (" << rows.size() << " rows)\n";
  }
  return 0;
}

// --------------------------------------------------------------- hist ------

struct HistCmd {
  SourceOpts src;
  int k = 0;
  std::string mode = "equal:20";
};

int run_hist(const HistCmd& c, const GlobalOpts& g) {
  std::vector<RepEntry> reps = load_source(c.src);
  std::vector<SweepRow> rows = sweep(reps, c.k, g.parallelism);
  HistogramSpec spec = parse_hist_mode(c.mode);
  std::cout << histogram_csv(histogram(rows, spec), spec, g.precision);
  return 0;
}

// --------------------------------------------------------------- reps ------

struct RepsCmd {
  SourceOpts src;
};

int run_reps(const RepsCmd& c, const GlobalOpts& g) {
  std::vector<RepEntry> reps = load_source(c.src);
  if (g.output == "json") {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reps) {
      nlohmann::ordered_json obj;
      obj["id"] = r.id;
      obj["n"] = r.n;
      obj["degree"] = r.degree;
      obj["anf"] = r.anf_text;
      if (r.expected_add) obj["expected_add"] = *r.expected_add;
      if (r.expected_dt) obj["expected_dt"] = *r.expected_dt;
      arr.push_back(std::move(obj));
    }
    std::cout << arr.dump(2) << "\n";
    return 0;
  }
  if (g.output == "csv") {
    std::cout << "id,n,degree,anf\n";
    for (const auto& r : reps)
      std::cout << r.id << ',' << r.n << ',' << r.degree << ',' << r.anf_text << "\n";
    return 0;
  }
  // plain form doubles as a loadable representative file
  for (const auto& r : reps) std::cout << r.id << ": " << r.anf_text << "\n";
  return 0;
}

// ------------------------------------------------------------- bounds ------

struct BoundsCmd {
  int n = 0;
  int k = 0;
};

int run_bounds(const BoundsCmd& c, const GlobalOpts& g) {
  BoundPair b = bounds(c.n, c.k);
  const std::string floor = pochhammer_floor(g.precision);
  if (g.output == "json") {
    nlohmann::ordered_json obj;
    obj["n"] = c.n;
    obj["k"] = c.k;
    obj["lower_rational"] = b.lower.rational_string();
    obj["lower"] = b.lower.decimal(g.precision);
    obj["upper_rational"] = b.upper.rational_string();
    obj["upper"] = b.upper.decimal(g.precision);
    obj["floor"] = floor;
    std::cout << obj.dump(2) << "\n";
  } else if (g.output == "csv") {
    std::cout << "n,k,lower_rational,lower,upper_rational,upper,floor\n"
              << c.n << ',' << c.k << ',' << b.lower.rational_string() << ','
              << b.lower.decimal(g.precision) << ',' << b.upper.rational_string() << ','
              << b.upper.decimal(g.precision) << ',' << floor << "\n";
  } else {
    std::cout << "n: " << c.n << "\n"
              << "k: " << c.k << "\n"
              << "lower: " << prob_pair(b.lower, g.precision) << "\n"
              << "upper: " << prob_pair(b.upper, g.precision) << "\n"
              << "floor: " << floor << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deg(f)<k probabilistic degree testing for Boolean functions"};
  app.require_subcommand(1);

  GlobalOpts g;
  const auto add_globals = [&g](CLI::App* cmd) {
    cmd->add_option("--seed", g.seed_text,
                    "RNG seed (integer, 0x-hex, or \"random\"; default 0x5eedc0de)");
    cmd->add_option("--output", g.output, "output form: plain, csv, or json")
        ->check(CLI::IsMember({"plain", "csv", "json"}));
    cmd->add_option("--precision", g.precision, "decimal digits printed (default 6)")
        ->check(CLI::Range(1, 50));
    cmd->add_option("--parallelism", g.parallelism, "worker threads for sweeps (default 1)")
        ->check(CLI::Range(1, 256));
  };

  AnfCmd anf_cmd;
  auto* anf_app = app.add_subcommand("anf", "convert between ANF and truth table");
  add_function_opts(anf_app, anf_cmd.fn, &anf_cmd.n_given);
  add_globals(anf_app);

  ExactCmd exact_cmd;
  auto* exact_app = app.add_subcommand("exact", "exact dt_k and add_k of a function");
  add_function_opts(exact_app, exact_cmd.fn, &exact_cmd.n_given);
  exact_app->add_option("--k", exact_cmd.k, "test order k")->required();
  exact_app->add_option("--method", exact_cmd.method,
                        "auto, tuples, subspaces, or recursion (default auto)");
  exact_app->add_flag("--self-check", exact_cmd.self_check,
                      "run every feasible method and require identical rationals");
  add_globals(exact_app);

  TestCmd test_cmd;
  auto* test_app = app.add_subcommand("test", "run the t-round deg(f)<k decision procedure");
  add_function_opts(test_app, test_cmd.fn, &test_cmd.n_given);
  test_app->add_option("--k", test_cmd.k, "test order k")->required();
  test_app->add_option("--t", test_cmd.t, "number of test rounds (default 9)");
  add_globals(test_app);

  EstimateCmd est_cmd;
  auto* est_app = app.add_subcommand("estimate", "Monte-Carlo estimate of dt_k");
  add_function_opts(est_app, est_cmd.fn, &est_cmd.n_given);
  est_app->add_option("--k", est_cmd.k, "test order k")->required();
  est_app->add_option("--trials", est_cmd.trials, "number of sampled tuples (default 100000)");
  est_app->add_flag("--independent", est_cmd.independent,
                    "resample until u_1..u_k are independent (estimates add_k)");
  add_globals(est_app);

  SweepCmd sweep_cmd;
  auto* sweep_app = app.add_subcommand("sweep", "exact add_k/dt_k over a representative list");
  add_source_opts(sweep_app, sweep_cmd.src, "--reps");
  sweep_app->add_option("--k", sweep_cmd.k, "test order k")->required();
  sweep_app->add_option("--out", sweep_cmd.out_path, "also write the table to this file");
  sweep_app->add_flag("--check", sweep_cmd.check,
                      "compare against embedded reference values; exit 4 on mismatch");
  sweep_app->add_option("--hist", sweep_cmd.hist_mode,
                        "print a histogram instead of the table: distinct, equal, equal:<bins>");
  add_globals(sweep_app);

  HistCmd hist_cmd;
  auto* hist_app = app.add_subcommand("hist", "histogram of exact dt_k over a representative list");
  add_source_opts(hist_app, hist_cmd.src, "--reps");
  hist_app->add_option("--k", hist_cmd.k, "test order k")->required();
  hist_app->add_option("--mode", hist_cmd.mode, "distinct, equal, or equal:<bins> (default equal:20)");
  add_globals(hist_app);

  RepsCmd reps_cmd;
  auto* reps_app = app.add_subcommand("reps", "list a representative set");
  add_source_opts(reps_app, reps_cmd.src, "--source");
  add_globals(reps_app);

  BoundsCmd bounds_cmd;
  auto* bounds_app = app.add_subcommand("bounds", "dt_k range for degree-k functions");
  bounds_app->add_option("--n", bounds_cmd.n, "number of variables")->required();
  bounds_app->add_option("--k", bounds_cmd.k, "degree k")->required();
  add_globals(bounds_app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    parse_seed(g.seed_text);  // validate eagerly; commands re-parse when they need it
    if (app.got_subcommand(anf_app)) return run_anf(anf_cmd, g);
    if (app.got_subcommand(exact_app)) return run_exact(exact_cmd, g);
    if (app.got_subcommand(test_app)) return run_test_cmd(test_cmd, g);
    if (app.got_subcommand(est_app)) return run_estimate(est_cmd, g);
    if (app.got_subcommand(sweep_app)) return run_sweep(sweep_cmd, g);
    if (app.got_subcommand(hist_app)) return run_hist(hist_cmd, g);
    if (app.got_subcommand(reps_app)) return run_reps(reps_cmd, g);
    if (app.got_subcommand(bounds_app)) return run_bounds(bounds_cmd, g);
    std::cerr << "error: no command selected\n";
    return kExitParse;
  } catch (const SizeGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const AnfParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const RepParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
