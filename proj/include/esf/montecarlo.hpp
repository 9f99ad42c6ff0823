#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "esf/densities.hpp"
#include "esf/ewens.hpp"
#include "esf/group.hpp"

// Seeded Monte Carlo estimation. Trial i draws its t permutations from Engine(stream_seed(seed, i)), so
// results depend only on (seed, parameters, trials) and never on the worker count.
namespace esf::mc {

enum class Event { generates_alternating, transitive, no_common_fixed_point };

inline std::string_view event_name(Event e) {
  switch (e) {
    case Event::generates_alternating: return "generates_alternating";
    case Event::transitive: return "transitive";
    case Event::no_common_fixed_point: return "no_common_fixed_point";
  }
  return "";
}

// Accepts the canonical names and the short CLI aliases.
inline Event parse_event(std::string_view s) {
  if (s == "generates_alternating" || s == "generate") return Event::generates_alternating;
  if (s == "transitive") return Event::transitive;
  if (s == "no_common_fixed_point" || s == "no-fixed-point" || s == "n1-zero") return Event::no_common_fixed_point;
  throw std::invalid_argument("unknown event '" + std::string(s) + "'");
}

struct Estimate {
  std::string event;
  std::size_t n;
  double alpha;
  std::size_t t;
  std::uint64_t trials;
  std::uint64_t successes;
  double p_hat;
  double stderr_;
  std::uint64_t seed;
};

inline Estimate make_estimate(Event e, std::size_t n, double alpha, std::size_t t, std::uint64_t trials,
                              std::uint64_t successes, std::uint64_t seed) {
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  return {std::string(event_name(e)), n, alpha, t, trials, successes, p,
          std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), seed};
}

struct RunOptions {
  unsigned workers = 0;  // 0 = hardware concurrency
  AlternatingTestOptions group{.prime_cycle_min_degree = 8, .prime_cycle_attempts = 2000, .compute_order = false};
};

// Success counts of the three nested events on shared samples.
struct EventCounts {
  std::uint64_t trials = 0;
  std::uint64_t no_common_fixed_point = 0;
  std::uint64_t transitive = 0;
  std::uint64_t generates_alternating = 0;
  // transitive but not containing A_n
  std::uint64_t transitive_not_alternating = 0;

  EventCounts& operator+=(const EventCounts& o) {
    trials += o.trials;
    no_common_fixed_point += o.no_common_fixed_point;
    transitive += o.transitive;
    generates_alternating += o.generates_alternating;
    transitive_not_alternating += o.transitive_not_alternating;
    return *this;
  }

  std::uint64_t of(Event e) const {
    switch (e) {
      case Event::generates_alternating: return generates_alternating;
      case Event::transitive: return transitive;
      case Event::no_common_fixed_point: return no_common_fixed_point;
    }
    return 0;
  }
};

// Which evaluations a run needs; generates_alternating is by far the most expensive.
struct EventMask {
  bool fixed_point = true;
  bool transitive = true;
  bool alternating = true;
};

namespace detail {

inline EventCounts run_range(const EwensParams& params, std::size_t t, std::uint64_t seed, std::uint64_t begin,
                             std::uint64_t end, EventMask mask, const AlternatingTestOptions& group) {
  EventCounts c;
  std::vector<Permutation> tuple;
  tuple.reserve(t);
  std::vector<point_t> image;
  for (std::uint64_t trial = begin; trial < end; ++trial) {
    Engine rng(stream_seed(seed, trial));
    tuple.clear();
    for (std::size_t i = 0; i < t; ++i) {
      sample_into(params, rng, image);
      tuple.push_back(Permutation::from_images(image));
    }
    ++c.trials;
    if (mask.fixed_point && !has_common_fixed_point(tuple, params.n)) ++c.no_common_fixed_point;
    if (!mask.transitive && !mask.alternating) continue;
    if (!is_transitive(tuple, params.n)) continue;
    ++c.transitive;
    if (!mask.alternating) continue;
    if (contains_alternating(tuple, params.n, group).contains_alternating)
      ++c.generates_alternating;
    else
      ++c.transitive_not_alternating;
  }
  return c;
}

}  // namespace detail

// Runs `trials` trials split into contiguous ranges over the workers; counts combine by addition.
inline EventCounts count_events(std::size_t n, double alpha, std::size_t t, std::uint64_t trials, std::uint64_t seed,
                                const RunOptions& opts = {}, EventMask mask = {}) {
  if (n < 3) throw DegenerateDegree("Monte Carlo events need n >= 3");
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const EwensParams params(alpha, n);
  unsigned workers = opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));
  if (workers <= 1) return detail::run_range(params, t, seed, 0, trials, mask, opts.group);
  std::vector<EventCounts> parts(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t b = trials * w / workers, e = trials * (w + 1) / workers;
    pool.emplace_back([&, w, b, e] { parts[w] = detail::run_range(params, t, seed, b, e, mask, opts.group); });
  }
  for (auto& th : pool) th.join();
  EventCounts total;
  for (const auto& p : parts) total += p;
  return total;
}

inline Estimate estimate_event(std::size_t n, double alpha, std::size_t t, std::uint64_t trials, std::uint64_t seed,
                               Event event, const RunOptions& opts = {}) {
  EventMask mask{event == Event::no_common_fixed_point, event != Event::no_common_fixed_point,
                 event == Event::generates_alternating};
  const auto c = count_events(n, alpha, t, trials, seed, opts, mask);
  return make_estimate(event, n, alpha, t, trials, c.of(event), seed);
}

// All three events from the same samples; p_hat(generate) <= p_hat(transitive) <= p_hat(no fixed point).
inline std::vector<Estimate> estimate_all(std::size_t n, double alpha, std::size_t t, std::uint64_t trials,
                                          std::uint64_t seed, const RunOptions& opts = {}) {
  const auto c = count_events(n, alpha, t, trials, seed, opts);
  std::vector<Estimate> out;
  for (Event e : {Event::generates_alternating, Event::transitive, Event::no_common_fixed_point})
    out.push_back(make_estimate(e, n, alpha, t, trials, c.of(e), seed));
  return out;
}

struct SweepRow {
  std::size_t n;
  std::size_t t;
  double theta;
  double p_coeff;
  double alpha;  // p_coeff * n^theta
  Estimate estimate;
  Prediction prediction;
  double limit;  // corollary_limit(theta, p_coeff, t)
};

// One row per (n, theta), each estimated with the master seed so a row can be reproduced on its own.
inline std::vector<SweepRow> sweep(const std::vector<std::size_t>& n_list, std::size_t t,
                                   const std::vector<double>& theta_grid, double p_coeff, std::uint64_t trials,
                                   std::uint64_t seed, Event event = Event::generates_alternating,
                                   const RunOptions& opts = {}) {
  if (n_list.empty() || theta_grid.empty()) throw std::invalid_argument("sweep grids must be nonempty");
  if (t < 2) throw std::invalid_argument("sweep needs t >= 2");
  std::vector<SweepRow> rows;
  for (std::size_t n : n_list)
    for (double theta : theta_grid) {
      const double alpha = p_coeff * std::pow(static_cast<double>(n), theta);
      rows.push_back({n, t, theta, p_coeff, alpha, estimate_event(n, alpha, t, trials, seed, event, opts),
                      predict(alpha, n, t), corollary_limit(theta, p_coeff, t)});
    }
  return rows;
}

struct GapProbe {
  std::uint64_t count_transitive_not_alternating;
  std::uint64_t trials;
};

// Trials whose generated group is transitive but does not contain A_n.
inline GapProbe transitive_gap_probe(std::size_t n, double alpha, std::size_t t, std::uint64_t trials,
                                     std::uint64_t seed, const RunOptions& opts = {}) {
  const auto c = count_events(n, alpha, t, trials, seed, opts, EventMask{false, true, true});
  return {c.transitive_not_alternating, c.trials};
}

}  // namespace esf::mc
