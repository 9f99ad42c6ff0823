#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "esf/densities.hpp"
#include "esf/ewens.hpp"
#include "esf/io.hpp"
#include "esf/montecarlo.hpp"
#include "esf/oracle.hpp"

// Command-line front end. run() never calls exit(); it returns 0 on success, 1 when a verification
// fails and 2 on usage errors.
namespace esf::cli {

inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Decimal or "p/q"; used by the simulation paths.
inline double parse_alpha_decimal(const std::string& s) {
  double v = 0;
  if (s.find('/') != std::string::npos) {
    v = to_double(parse_rational(s));
  } else {
    std::size_t used = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError("invalid alpha '" + s + "'");
    }
    if (used != s.size()) throw UsageError("invalid alpha '" + s + "'");
  }
  if (!(v >= 0) || !std::isfinite(v)) throw UsageError("alpha must be finite and >= 0, got '" + s + "'");
  return v;
}

inline bool is_exact_literal(const std::string& s) {
  return !s.empty() && s.find_first_of(".eE") == std::string::npos;
}

// Exact rational literal; decimals are refused so oracle comparisons stay exact.
inline BigRational parse_alpha_exact(const std::string& s) {
  if (!is_exact_literal(s))
    throw UsageError("alpha '" + s + "' must be an exact literal (integer or p/q) for exact computations");
  BigRational a;
  try {
    a = parse_rational(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a < 0) throw UsageError("alpha must be >= 0");
  return a;
}

inline std::uint64_t resolve_seed(const std::string& s) {
  if (s.empty()) throw UsageError("a seed is required: pass --seed <u64> or --seed auto");
  if (s == "auto") {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &used, 0);
  } catch (const std::exception&) {
    throw UsageError("invalid seed '" + s + "'");
  }
  if (used != s.size() || s[0] == '-') throw UsageError("invalid seed '" + s + "'");
  return v;
}

struct RunConfig {
  std::size_t n = 0;
  std::string alpha = "1";
  std::vector<std::string> alphas{"1"};
  std::size_t t = 2;
  std::vector<std::size_t> t_list{2};
  std::uint64_t trials = 10000;
  std::string seed;
  std::vector<std::size_t> n_list;
  std::vector<double> theta_grid;
  std::optional<double> theta;
  double p_coeff = 1.0;
  std::string event = "generate";
  std::string format;
  std::string output;
  unsigned workers = 0;
  std::size_t count = 1;
  std::string notation = "one-line";
  std::string kind = "all";
  std::optional<std::size_t> k;
  std::optional<std::size_t> r;
  std::size_t n_max = 5;
  std::optional<std::string> pmf_alpha;
};

namespace detail {

inline void emit_sample(const RunConfig& c, std::ostream& out) {
  const double alpha = parse_alpha_decimal(c.alpha);
  if (c.n < 1) throw UsageError("--n must be >= 1");
  const std::uint64_t seed = resolve_seed(c.seed);
  const EwensParams params(alpha, c.n);
  std::vector<std::string> perms;
  for (std::size_t i = 0; i < c.count; ++i) {
    Engine rng(stream_seed(seed, i));
    const Permutation p = sample(params, rng);
    perms.push_back(c.notation == "cycles" ? format_cycles(p) : format_one_line(p));
  }
  if (c.format == "json") {
    out << json{{"n", c.n}, {"alpha", alpha}, {"seed", seed}, {"count", c.count}, {"notation", c.notation},
                {"permutations", perms}}.dump()
        << '\n';
  } else {
    out << "# seed=" << seed << " n=" << c.n << " alpha=" << format_double(alpha) << '\n';
    for (const auto& p : perms) out << p << '\n';
  }
}

inline void emit_predict(const RunConfig& c, std::ostream& out) {
  const double alpha = parse_alpha_decimal(c.alpha);
  const Prediction p = predict(alpha, c.n, c.t);
  std::optional<double> limit;
  if (c.theta) limit = corollary_limit(*c.theta, c.p_coeff, c.t);
  if (c.format == "json") {
    json j = to_json(p);
    if (limit) j["limit"] = *limit;
    out << j.dump() << '\n';
    return;
  }
  out << std::fixed << std::setprecision(4);
  out << "n=" << c.n << " alpha=" << format_double(alpha) << " t=" << c.t << '\n';
  out << "e_n1         " << p.e_n1 << '\n';
  out << "p_sharp      " << p.p_sharp << '\n';
  out << "p_generate   " << p.p_generate << '\n';
  out << "p_transitive " << p.p_transitive << '\n';
  if (limit) out << "limit        " << *limit << '\n';
}

inline void emit_estimate(const RunConfig& c, std::ostream& out) {
  const double alpha = parse_alpha_decimal(c.alpha);
  const std::uint64_t seed = resolve_seed(c.seed);
  mc::RunOptions opts;
  opts.workers = c.workers;
  std::vector<mc::Estimate> results;
  if (c.event == "all")
    results = mc::estimate_all(c.n, alpha, c.t, c.trials, seed, opts);
  else
    results.push_back(mc::estimate_event(c.n, alpha, c.t, c.trials, seed, mc::parse_event(c.event), opts));
  if (c.format == "text") {
    for (const auto& e : results)
      out << e.event << " n=" << e.n << " alpha=" << format_double(e.alpha) << " t=" << e.t << " trials=" << e.trials
          << " successes=" << e.successes << " p_hat=" << format_double(e.p_hat)
          << " stderr=" << format_double(e.stderr_) << " seed=" << e.seed << '\n';
    return;
  }
  if (results.size() == 1) {
    out << mc::to_json(results[0]).dump() << '\n';
  } else {
    json arr = json::array();
    for (const auto& e : results) arr.push_back(mc::to_json(e));
    out << arr.dump() << '\n';
  }
}

inline void emit_sweep(const RunConfig& c, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(c.seed);
  if (c.n_list.empty()) throw UsageError("--n needs at least one degree");
  if (c.theta_grid.empty()) throw UsageError("--theta needs at least one value");
  mc::RunOptions opts;
  opts.workers = c.workers;
  const auto rows = mc::sweep(c.n_list, c.t, c.theta_grid, c.p_coeff, c.trials, seed, mc::parse_event(c.event), opts);
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(mc::to_json(r));
    out << arr.dump() << '\n';
    return;
  }
  out << mc::sweep_csv_header << '\n';
  for (const auto& r : rows) out << mc::to_csv(r) << '\n';
}

inline int emit_verify(const RunConfig& c, std::ostream& out) {
  std::vector<BigRational> alphas;
  for (const auto& s : c.alphas) alphas.push_back(parse_alpha_exact(s));
  const auto reports = oracle::verify_all(c.n_max, alphas, c.t_list);
  std::size_t failed = 0;
  for (const auto& r : reports) failed += r.pass ? 0 : 1;
  if (c.format == "json") {
    for (const auto& r : reports) out << oracle::to_json(r).dump() << '\n';
  } else {
    for (const auto& r : reports) {
      out << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(20) << r.check << " n=" << r.n
          << " alpha=" << std::setw(5) << to_string(r.alpha) << " t=" << r.t << ' ' << std::setw(4) << r.param << "  "
          << to_string(r.oracle_value) << ' ' << r.relation << ' ' << to_string(r.formula_value) << '\n';
    }
    out << reports.size() << " checks, " << failed << " failed\n";
  }
  return failed == 0 ? kOk : kVerificationFailed;
}

inline void emit_density(const RunConfig& c, std::ostream& out) {
  if (c.n < 1) throw UsageError("--n must be >= 1");
  const bool exact = is_exact_literal(c.alpha) && c.n <= 200;
  const double a = parse_alpha_decimal(c.alpha);
  const BigRational ax = exact ? parse_alpha_exact(c.alpha) : BigRational(0);
  const std::size_t n = c.n, t = c.t;
  const std::string alpha_text = is_exact_literal(c.alpha) ? c.alpha : format_double(a);
  auto row = [&](const std::string& k, const char* quantity, const std::string& exact_value, double v) {
    out << n << ',' << alpha_text << ',' << t << ',' << k << ',' << quantity << ',' << exact_value << ','
        << format_double(v) << '\n';
  };
  auto want = [&](const char* kind) { return c.kind == "all" || c.kind == kind; };
  auto k_range = [&](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> ks;
    if (c.k) {
      if (*c.k >= lo && *c.k <= hi) ks.push_back(*c.k);
    } else {
      for (std::size_t k = lo; k <= hi; ++k) ks.push_back(k);
    }
    return ks;
  };
  static const std::vector<std::string> kinds{"all", "stabilizer", "expected-nk", "binom-moment", "nkstar-bound",
                                              "wreath", "alternating"};
  if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end()) throw UsageError("unknown --kind '" + c.kind + "'");
  out << density_csv_header << '\n';
  if (want("stabilizer"))
    for (std::size_t k : k_range(0, n))
      row(std::to_string(k), "stabilizer_density", exact ? to_string(stabilizer_density(ax, n, k)) : "",
          stabilizer_density(a, n, k));
  if (want("expected-nk"))
    for (std::size_t k : k_range(1, n))
      row(std::to_string(k), "expected_Nk", exact ? to_string(expected_Nk(ax, n, k, t)) : "", expected_Nk(a, n, k, t));
  if (want("binom-moment"))
    for (std::size_t k : k_range(0, n))
      row(std::to_string(k), "binom_moment_N1", exact ? to_string(binom_moment_N1(ax, n, t, k)) : "",
          binom_moment_N1(a, n, t, k));
  if (want("nkstar-bound") && a > 0)
    for (std::size_t k : k_range(2, n / 2))
      row(std::to_string(k), "nkstar_bound", exact ? to_string(nkstar_bound(ax, n, k, t)) : "", nkstar_bound(a, n, k, t));
  if (want("wreath"))
    for (std::size_t r = 1; r <= n; ++r) {
      if (n % r != 0 || (c.r && *c.r != r)) continue;
      row(std::to_string(r), "wreath_density", exact ? to_string(wreath_density(ax, n, r)) : "", wreath_density(a, n, r));
    }
  if (want("alternating") && n >= 2)
    row("", "alternating_density", exact ? to_string(alternating_density(ax, n)) : "", alternating_density(a, n));
}

inline void emit_stirling(const RunConfig& c, std::ostream& out) {
  if (c.n < 1) throw UsageError("--n must be >= 1");
  if (c.pmf_alpha) {
    out << pmf_csv_header << '\n';
    if (is_exact_literal(*c.pmf_alpha)) {
      const auto pmf = cycle_count_pmf_exact(parse_alpha_exact(*c.pmf_alpha), c.n);
      for (std::size_t k = 1; k <= c.n; ++k)
        out << c.n << ',' << *c.pmf_alpha << ',' << k << ',' << format_double(to_double(pmf.probabilities[k - 1])) << '\n';
    } else {
      const double a = parse_alpha_decimal(*c.pmf_alpha);
      const auto pmf = cycle_count_pmf(EwensParams(a, c.n));
      for (std::size_t k = 1; k <= c.n; ++k)
        out << c.n << ',' << format_double(a) << ',' << k << ',' << format_double(pmf.probabilities[k - 1]) << '\n';
    }
    return;
  }
  const auto table = stirling_cycle_table(c.n);
  out << "n,k,c\n";
  for (std::size_t m = 0; m <= c.n; ++m)
    for (std::size_t k = 0; k <= m; ++k) out << m << ',' << k << ',' << table[m][k] << '\n';
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ewens sampling formula: exact densities, oracle verification and generation experiments", "esf"};
  app.require_subcommand(1);
  RunConfig c;

  auto* sample = app.add_subcommand("sample", "draw ESF(alpha, n) permutations");
  sample->add_option("--n", c.n, "degree")->required();
  sample->add_option("--alpha", c.alpha, "parameter (decimal or p/q)");
  sample->add_option("--count", c.count, "number of permutations");
  sample->add_option("--seed", c.seed, "u64 seed or 'auto'");
  sample->add_option("--notation", c.notation)->check(CLI::IsMember({"one-line", "cycles"}));
  sample->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));

  auto* pred = app.add_subcommand("predict", "leading-order generation probability");
  pred->add_option("--n", c.n)->required();
  pred->add_option("--alpha", c.alpha);
  pred->add_option("--t", c.t);
  pred->add_option("--theta", c.theta, "also report the limit along alpha = p n^theta");
  pred->add_option("--p", c.p_coeff);
  pred->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));

  auto* est = app.add_subcommand("estimate", "Monte Carlo estimate of one event");
  est->add_option("--n", c.n)->required();
  est->add_option("--alpha", c.alpha);
  est->add_option("--t", c.t);
  est->add_option("--trials", c.trials);
  est->add_option("--seed", c.seed, "u64 seed or 'auto'");
  est->add_option("--event", c.event, "generate | transitive | no-fixed-point | all");
  est->add_option("--workers", c.workers, "worker threads (results do not depend on it)");
  est->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));

  auto* swp = app.add_subcommand("sweep", "estimate along alpha = p n^theta");
  swp->add_option("--n", c.n_list, "degrees")->delimiter(',')->required();
  swp->add_option("--t", c.t);
  swp->add_option("--theta", c.theta_grid, "exponents")->delimiter(',')->required();
  swp->add_option("--p", c.p_coeff);
  swp->add_option("--trials", c.trials);
  swp->add_option("--seed", c.seed, "u64 seed or 'auto'");
  swp->add_option("--event", c.event);
  swp->add_option("--workers", c.workers);
  swp->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));

  auto* ver = app.add_subcommand("verify", "check closed forms against exact enumeration");
  ver->add_option("--n-max", c.n_max)->required();
  ver->add_option("--alpha", c.alphas, "exact literals")->delimiter(',');
  ver->add_option("--t", c.t_list)->delimiter(',');
  ver->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));

  auto* den = app.add_subcommand("density", "closed-form densities and moments as CSV");
  den->add_option("--n", c.n)->required();
  den->add_option("--alpha", c.alpha);
  den->add_option("--t", c.t);
  den->add_option("--kind", c.kind);
  den->add_option("--k", c.k);
  den->add_option("--r", c.r);

  auto* stir = app.add_subcommand("stirling", "Stirling cycle numbers, or the cycle-count pmf with --alpha");
  stir->add_option("--n", c.n)->required();
  stir->add_option("--alpha", c.pmf_alpha);

  for (auto* sub : {sample, pred, est, swp, ver, den, stir}) sub->add_option("--output", c.output, "write to file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.output.empty()) {
    file.open(c.output);
    if (!file) {
      err << "esf: cannot open " << c.output << '\n';
      return kUsage;
    }
    sink = &file;
  }
  try {
    if (sample->parsed()) {
      detail::emit_sample(c, *sink);
    } else if (pred->parsed()) {
      detail::emit_predict(c, *sink);
    } else if (est->parsed()) {
      if (c.format.empty()) c.format = "json";
      detail::emit_estimate(c, *sink);
    } else if (swp->parsed()) {
      detail::emit_sweep(c, *sink);
    } else if (ver->parsed()) {
      return detail::emit_verify(c, *sink);
    } else if (den->parsed()) {
      detail::emit_density(c, *sink);
    } else if (stir->parsed()) {
      detail::emit_stirling(c, *sink);
    }
  } catch (const std::invalid_argument& e) {
    err << "esf: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "esf: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"esf"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace esf::cli
