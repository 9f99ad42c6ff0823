// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "esf/cli.hpp"
#include "esf/esf.hpp"

using namespace esf;

namespace {

BigRational q(long a, long b = 1) { return BigRational(a, b); }

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> body;
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

Outcome exact_identities() {
  const std::vector<BigRational> alphas{q(1, 2), q(1), q(2), q(5)};
  const auto reports = oracle::verify_all(6, alphas, {2});
  std::size_t checked = 0, failed = 0;
  for (const auto& r : reports) {
    if (r.relation != "==") continue;
    ++checked;
    if (!r.pass) {
      ++failed;
      std::cerr << "  mismatch: " << r.check << " n=" << r.n << " alpha=" << to_string(r.alpha) << ' ' << r.param
                << '\n';
    }
  }
  return {failed == 0 && checked > 0, std::to_string(checked) + " equalities, " + std::to_string(failed) + " failed"};
}

Outcome signed_sum() {
  for (std::size_t n = 0; n <= 12; ++n)
    if (signed_cycle_sum(n) != falling_factorial_coefficients(n)) return {false, "mismatch at n=" + std::to_string(n)};
  return {true, "n = 0..12 coefficient-identical"};
}

Outcome inequalities() {
  std::size_t points = 0;
  double worst_gap = INFINITY;
  for (std::size_t n : {10u, 100u, 1000u})
    for (double a : {1.0, 2.0, 10.0, static_cast<double>(n) / 100.0})
      for (std::size_t t : {2u, 3u}) {
        if (!check_monotone(moment_table(a, n, t)))
          return {false, "monotonicity fails at n=" + std::to_string(n) + " alpha=" + fmt(a)};
        for (std::size_t k = 1; k <= n / 2; ++k) {
          const auto b = bound_c(a, n, k, t);
          ++points;
          if (b.lhs > 0) worst_gap = std::min(worst_gap, b.log_gap);
          if (b.margin() < -1e-12 * b.rhs)
            return {false, "bound fails at n=" + std::to_string(n) + " alpha=" + fmt(a) + " k=" + std::to_string(k)};
        }
      }
  std::size_t star = 0;
  for (const auto& r : oracle::verify_all(6, {q(1, 2), q(1), q(2), q(5)}, {2})) {
    if (r.check != "nkstar_bound") continue;
    ++star;
    if (!r.pass) return {false, "N_k* bound fails at n=" + std::to_string(r.n) + " " + r.param};
  }
  for (const auto& r : oracle::verify_all(5, {q(1, 2), q(1), q(2), q(5)}, {3})) {
    if (r.check != "nkstar_bound") continue;
    ++star;
    if (!r.pass) return {false, "N_k* bound fails at n=" + std::to_string(r.n) + " t=3 " + r.param};
  }
  return {true, std::to_string(points) + " bound points (min log gap " + fmt(worst_gap) + "), " +
                    std::to_string(star) + " exact N_k* checks"};
}

Outcome stirling_bounds() {
  const auto table = stirling_cycle_table(30);
  for (std::size_t n = 1; n <= 30; ++n)
    for (std::size_t k = 1; k <= n; ++k)
      if (cnk_bound_margin_high(n, k, table) < 0)
        return {false, "c(n,k) bound fails at n=" + std::to_string(n) + " k=" + std::to_string(k)};
  std::size_t tail_points = 0;
  for (long a : {1, 2, 5})
    for (std::size_t n = 1; n <= 200; ++n) {
      const HighFloat threshold = 10 * a * (boost::multiprecision::log(HighFloat(n)) + 1);
      if (threshold > n) continue;
      const auto pmf = cycle_count_pmf_exact(q(a), n);
      for (std::size_t k = 1; k <= n; ++k) {
        if (HighFloat(k) < threshold) continue;
        ++tail_points;
        if (to_high(pmf.probabilities[k - 1]) > boost::multiprecision::exp(-HighFloat(k)))
          return {false, "tail bound fails at alpha=" + std::to_string(a) + " n=" + std::to_string(n)};
      }
    }
  return {true, "465 Stirling points, " + std::to_string(tail_points) + " tail points"};
}

Outcome sampler_fidelity() {
  const std::size_t n = 4;
  const std::uint64_t draws = 1000000;
  const auto g = oracle::enumerate_symmetric_group(n);
  std::map<std::vector<point_t>, std::size_t> index;
  for (std::size_t i = 0; i < g.elements.size(); ++i) index[g.elements[i].image()] = i;
  std::string detail;
  bool ok = true;
  for (const auto& [alpha, exact] : {std::pair{0.5, q(1, 2)}, std::pair{2.0, q(2)}}) {
    std::vector<std::uint64_t> counts(g.elements.size(), 0);
    Engine rng(stream_seed(20261019, static_cast<std::uint64_t>(alpha * 2)));
    std::vector<point_t> image;
    const EwensParams params(alpha, n);
    for (std::uint64_t s = 0; s < draws; ++s) {
      sample_into(params, rng, image);
      ++counts[index.at(image)];
    }
    double stat = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const double expected = to_double(esf_pmf(exact, g.elements[i], n)) * static_cast<double>(draws);
      const double d = static_cast<double>(counts[i]) - expected;
      stat += d * d / expected;
    }
    boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
    const double p = boost::math::cdf(boost::math::complement(dist, stat));
    ok = ok && p >= 1e-3;
    detail += "alpha=" + fmt(alpha) + " chi2=" + fmt(stat, 4) + " p=" + fmt(p, 3) + "; ";
  }
  return {ok, detail};
}

Outcome monte_carlo_vs_oracle() {
  const std::size_t n = 5, t = 2;
  bool ok = true;
  std::string detail;
  for (long a : {1, 2}) {
    const auto gen = oracle::exact_event_probability(n, q(a), t, [&](std::span<const Permutation> tuple) {
      return contains_alternating(tuple, n).contains_alternating;
    });
    const auto tra = oracle::exact_event_probability(n, q(a), t, [&](std::span<const Permutation> tuple) {
      return is_transitive(tuple, n);
    });
    const auto nfp = oracle::exact_event_probability(n, q(a), t, [&](std::span<const Permutation> tuple) {
      return !has_common_fixed_point(tuple, n);
    });
    const auto est = mc::estimate_all(n, static_cast<double>(a), t, 1000000, 555 + static_cast<std::uint64_t>(a));
    const double exact[] = {to_double(gen), to_double(tra), to_double(nfp)};
    for (std::size_t i = 0; i < 3; ++i) {
      const double z = std::abs(est[i].p_hat - exact[i]) / est[i].stderr_;
      ok = ok && z <= 4.0;
      detail += est[i].event.substr(0, 4) + "(a=" + std::to_string(a) + ") z=" + fmt(z, 3) + " ";
    }
  }
  return {ok, detail};
}

Outcome phase_transition() {
  const auto rows = mc::sweep({2000}, 2, {0.25, 0.5, 0.75}, 1.0, 10000, 2000);
  const double lo = rows[0].estimate.p_hat, mid = rows[1].estimate.p_hat, hi = rows[2].estimate.p_hat;
  const bool ok = lo > 0.9 && hi < 0.1 && std::abs(mid - std::exp(-1.0)) <= 0.15;
  return {ok, "p_hat(0.25)=" + fmt(lo, 4) + " p_hat(0.5)=" + fmt(mid, 4) + " p_hat(0.75)=" + fmt(hi, 4)};
}

Outcome sharper_prediction() {
  bool ok = true;
  std::string detail;
  for (double a : {1.0, 10.0, 31.6}) {
    const auto e = mc::estimate_event(1000, a, 2, 10000, 1000, mc::Event::generates_alternating);
    const double target = predict(a, 1000, 2).p_sharp;
    const double tol = std::max(4 * e.stderr_, 0.05);
    ok = ok && std::abs(e.p_hat - target) <= tol;
    detail += "a=" + fmt(a) + " p_hat=" + fmt(e.p_hat, 4) + " vs " + fmt(target, 4) + "; ";
  }
  return {ok, detail};
}

Outcome gap_rarity() {
  std::uint64_t gaps = 0, trials = 0;
  for (double a : {1.0, 5.0}) {
    const auto g = mc::transitive_gap_probe(50, a, 2, 100000, 50);
    gaps += g.count_transitive_not_alternating;
    trials += g.trials;
  }
  return {gaps == 0, std::to_string(gaps) + " gaps in " + std::to_string(trials) + " trials"};
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"estimate", "--n", "200", "--alpha", "3", "--t", "2", "--trials", "2000", "--seed", "7", "--event", "all",
       "--workers", "2"},
      {"sample", "--n", "30", "--alpha", "1/2", "--count", "5", "--seed", "7", "--format", "json"},
      {"sweep", "--n", "100,300", "--theta", "0.3,0.6", "--trials", "500", "--seed", "7", "--format", "json"}};
  for (const auto& cmd : commands) {
    std::ostringstream a, b, err;
    if (cli::run(cmd, a, err) != 0 || cli::run(cmd, b, err) != 0) return {false, "command failed: " + err.str()};
    if (a.str() != b.str() || a.str().empty()) return {false, "output differs for " + cmd[0]};
  }
  return {true, "estimate, sample and sweep JSON byte-identical"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact identities vs oracle (n<=6, t=2)", 60, exact_identities},
      {2, "signed cycle sum equals falling factorial (n<=12)", 5, signed_sum},
      {3, "monotonicity, moment bound and N_k* bound", 30, inequalities},
      {4, "Stirling bound and cycle-count tail", 30, stirling_bounds},
      {5, "sampler chi-square (n=4, 1e6 draws)", 60, sampler_fidelity},
      {6, "Monte Carlo vs oracle (n=5, t=2, 1e6 trials)", 300, monte_carlo_vs_oracle},
      {7, "phase transition (n=2000, t=2)", 600, phase_transition},
      {8, "sharper prediction (n=1000, t=2)", 300, sharper_prediction},
      {9, "transitive-gap rarity (n=50, 1e5 trials)", 300, gap_rarity},
      {10, "CLI determinism", 60, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs <= c.budget_seconds;
    const bool pass = o.pass && in_budget;
    failures += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << fmt(secs, 3) << " s of "
              << c.budget_seconds << " s) " << o.detail << (in_budget ? "" : " OVER BUDGET") << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
