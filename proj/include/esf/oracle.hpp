#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "esf/densities.hpp"
#include "esf/ewens.hpp"
#include "esf/group.hpp"
#include "esf/numeric.hpp"
#include "esf/permutation.hpp"

// Exact ground truth by literal enumeration of S_n and of t-tuples in S_n^t. Weighted sums are collected
// as integer polynomials in alpha (index = total cycle count of the tuple), so a single scan serves every
// rational alpha.
namespace esf::oracle {

class SizeGuardError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using ExactProbability = BigRational;

// Largest n enumerated for t-tuples: 7, 6, 5 for t = 1, 2, 3; for t >= 4, the largest n with
// (n!)^t <= 1 728 000.
inline std::size_t max_degree(std::size_t t) {
  if (t == 0) throw SizeGuardError("t must be >= 1");
  if (t == 1) return 7;
  if (t == 2) return 6;
  if (t == 3) return 5;
  std::size_t n = 1;
  for (;;) {
    double tuples = std::pow(std::tgamma(static_cast<double>(n + 2)), static_cast<double>(t));
    if (tuples > 1728000.0) return n;
    ++n;
  }
}

inline void check_guard(std::size_t n, std::size_t t) {
  if (n < 1) throw SizeGuardError("n must be >= 1");
  if (n > max_degree(t))
    throw SizeGuardError("oracle enumeration limited to n <= " + std::to_string(max_degree(t)) + " for t = " +
                         std::to_string(t) + ", got n = " + std::to_string(n));
}

struct SymmetricGroup {
  std::size_t n;
  std::vector<Permutation> elements;  // lexicographic order of image arrays
  std::vector<std::uint8_t> cycles;   // C(elements[i])
};

inline SymmetricGroup enumerate_symmetric_group(std::size_t n) {
  if (n < 1 || n > 10) throw SizeGuardError("symmetric group enumeration limited to 1 <= n <= 10");
  SymmetricGroup g{n, {}, {}};
  std::vector<point_t> image(n);
  std::iota(image.begin(), image.end(), point_t{0});
  do {
    g.elements.push_back(Permutation::from_images(image));
    g.cycles.push_back(static_cast<std::uint8_t>(g.elements.back().cycle_count()));
  } while (std::next_permutation(image.begin(), image.end()));
  return g;
}

// Integer polynomial in alpha.
using Polynomial = std::vector<BigInt>;

// sum_e coeff[e] alpha^e / (alpha^{(n)})^t. At alpha = 0 returns the limit alpha -> 0, i.e. the ratio of
// the degree-t coefficients (the denominator's lowest term is ((n-1)!)^t alpha^t).
inline BigRational normalise(const Polynomial& coeff, const BigRational& alpha, std::size_t n, std::size_t t) {
  if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");
  if (alpha == 0) {
    for (std::size_t e = 0; e < t && e < coeff.size(); ++e)
      if (coeff[e] != 0) throw std::logic_error("weight polynomial has a term below degree t");
    BigInt den = 1;
    const BigInt f = factorial(static_cast<unsigned>(n - 1));
    for (std::size_t i = 0; i < t; ++i) den *= f;
    return t < coeff.size() ? BigRational(coeff[t], den) : BigRational(0);
  }
  BigRational num = 0;
  BigRational power = 1;
  for (std::size_t e = 0; e < coeff.size(); ++e) {
    if (coeff[e] != 0) num += BigRational(coeff[e]) * power;
    power *= alpha;
  }
  const BigRational z = rising_factorial(alpha, n);
  BigRational den = 1;
  for (std::size_t i = 0; i < t; ++i) den *= z;
  return num / den;
}

inline BigRational evaluate(const Polynomial& coeff, const BigRational& alpha) {
  BigRational r = 0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) r = r * alpha + BigRational(*it);
  return r;
}

// Calls visit(tuple, total_cycles) once for every tuple in S_n^t.
template <class Visit>
void for_each_tuple(const SymmetricGroup& g, std::size_t t, Visit&& visit) {
  const std::size_t size = g.elements.size();
  std::vector<std::size_t> idx(t, 0);
  std::vector<Permutation> tuple(t, g.elements[0]);
  for (;;) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < t; ++i) {
      tuple[i] = g.elements[idx[i]];
      total += g.cycles[idx[i]];
    }
    visit(std::span<const Permutation>(tuple), total);
    std::size_t pos = 0;
    while (pos < t && ++idx[pos] == size) idx[pos++] = 0;
    if (pos == t) break;
  }
}

using TuplePredicate = std::function<bool(std::span<const Permutation>)>;
using TupleStatistic = std::function<std::int64_t(std::span<const Permutation>)>;

// Weighted sum of statistic(tuple) as a polynomial in alpha.
inline Polynomial weighted_polynomial(std::size_t n, std::size_t t, const TupleStatistic& statistic) {
  check_guard(n, t);
  const auto g = enumerate_symmetric_group(n);
  std::vector<std::int64_t> acc(n * t + 1, 0);
  for_each_tuple(g, t, [&](std::span<const Permutation> tuple, std::size_t total) { acc[total] += statistic(tuple); });
  return Polynomial(acc.begin(), acc.end());
}

inline ExactProbability exact_event_probability(std::size_t n, const BigRational& alpha, std::size_t t,
                                                const TuplePredicate& event) {
  auto poly = weighted_polynomial(n, t, [&](std::span<const Permutation> tuple) -> std::int64_t {
    return event(tuple) ? 1 : 0;
  });
  return normalise(poly, alpha, n, t);
}

inline BigRational exact_expectation(std::size_t n, const BigRational& alpha, std::size_t t,
                                     const TupleStatistic& statistic) {
  return normalise(weighted_polynomial(n, t, statistic), alpha, n, t);
}

enum class Statistic { Nk, NkStar, BinomN1, N1Zero };

// E[N_k], E[N_k*], E[C(N_1, k)] or P(N_1 = 0) under independent ESF(alpha, n) t-tuples.
inline BigRational exact_moment(std::size_t n, const BigRational& alpha, std::size_t t, Statistic stat,
                                std::size_t k = 1) {
  if (k > n) throw std::invalid_argument("k exceeds n");
  return exact_expectation(n, alpha, t, [&](std::span<const Permutation> tuple) -> std::int64_t {
    const auto counts = fixed_subset_counts(tuple, n);
    switch (stat) {
      case Statistic::Nk: return static_cast<std::int64_t>(counts.fixed[k]);
      case Statistic::NkStar: return static_cast<std::int64_t>(counts.transitive[k]);
      case Statistic::BinomN1: return static_cast<std::int64_t>(binomial(static_cast<unsigned>(counts.fixed[1]), static_cast<unsigned>(k)));
      case Statistic::N1Zero: return counts.fixed[1] == 0 ? 1 : 0;
    }
    return 0;
  });
}

// Polynomials of every fixed-set statistic from one tuple scan.
struct MomentPolynomials {
  std::size_t n;
  std::size_t t;
  std::vector<Polynomial> nk;       // [k] -> sum weight * N_k, k = 0..n
  std::vector<Polynomial> nk_star;  // [k] -> sum weight * N_k*
  std::vector<Polynomial> binom;    // [k] -> sum weight * C(N_1, k)
  Polynomial n1_zero;               // sum weight * [N_1 = 0]
};

inline MomentPolynomials moment_polynomials(std::size_t n, std::size_t t) {
  check_guard(n, t);
  const auto g = enumerate_symmetric_group(n);
  const std::size_t deg = n * t + 1;
  using Acc = std::vector<std::int64_t>;
  std::vector<Acc> nk(n + 1, Acc(deg, 0)), star(n + 1, Acc(deg, 0)), binom(n + 1, Acc(deg, 0));
  Acc zero(deg, 0);
  for_each_tuple(g, t, [&](std::span<const Permutation> tuple, std::size_t total) {
    const auto counts = fixed_subset_counts(tuple, n);
    for (std::size_t k = 0; k <= n; ++k) {
      nk[k][total] += static_cast<std::int64_t>(counts.fixed[k]);
      star[k][total] += static_cast<std::int64_t>(counts.transitive[k]);
    }
    const std::uint64_t n1 = counts.fixed[1];
    std::int64_t b = 1;  // C(n1, k) built incrementally
    for (std::size_t k = 0; k <= n; ++k) {
      binom[k][total] += b;
      b = b * static_cast<std::int64_t>(n1 >= k ? n1 - k : 0) / static_cast<std::int64_t>(k + 1);
    }
    if (n1 == 0) ++zero[total];
  });
  auto conv = [](const std::vector<Acc>& v) {
    std::vector<Polynomial> out;
    for (const auto& a : v) out.emplace_back(a.begin(), a.end());
    return out;
  };
  return {n, t, conv(nk), conv(star), conv(binom), Polynomial(zero.begin(), zero.end())};
}

// Single-permutation weight polynomials: stabiliser of {1..k}, block systems, even permutations.
struct SinglePolynomials {
  std::size_t n;
  std::vector<Polynomial> stabilizer;         // [k], X = {1..k}
  std::vector<std::pair<std::size_t, Polynomial>> wreath;  // (r, poly) for each divisor r of n
  Polynomial even;                             // weights of A_n
  Polynomial signed_sum;                       // sum sgn(pi) alpha^{C(pi)}
  Polynomial total;                            // sum alpha^{C(pi)}
};

// True iff pi maps each block {b m, ..., b m + m - 1} onto a block.
inline bool preserves_blocks(const Permutation& pi, std::size_t m) {
  const std::size_t n = pi.degree();
  for (std::size_t b = 0; b < n; b += m) {
    const std::size_t target = pi[b] / m;
    for (std::size_t x = b + 1; x < b + m; ++x)
      if (pi[x] / m != target) return false;
  }
  return true;
}

inline SinglePolynomials single_polynomials(std::size_t n) {
  check_guard(n, 1);
  const auto g = enumerate_symmetric_group(n);
  SinglePolynomials out{n, std::vector<Polynomial>(n + 1, Polynomial(n + 1, 0)), {}, Polynomial(n + 1, 0),
                        Polynomial(n + 1, 0), Polynomial(n + 1, 0)};
  for (std::size_t r = 1; r <= n; ++r)
    if (n % r == 0) out.wreath.emplace_back(r, Polynomial(n + 1, 0));
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    const Permutation& pi = g.elements[i];
    const std::size_t c = g.cycles[i];
    out.total[c] += 1;
    const bool even = (n - c) % 2 == 0;
    if (even) out.even[c] += 1;
    out.signed_sum[c] += even ? 1 : -1;
    for (std::size_t k = 0; k <= n; ++k) {
      bool fixed = true;
      for (std::size_t x = 0; x < k && fixed; ++x) fixed = pi[x] < k;
      if (fixed) out.stabilizer[k][c] += 1;
    }
    for (auto& [r, poly] : out.wreath)
      if (preserves_blocks(pi, n / r)) poly[c] += 1;
  }
  return out;
}

// ---- verification harness -------------------------------------------------------

struct VerificationReport {
  std::string check;
  std::size_t n;
  BigRational alpha;
  std::size_t t;
  std::string param;     // e.g. "k=2", "r=3"; empty when not applicable
  std::string relation;  // "==", or "<=" meaning oracle_value <= formula_value
  BigRational formula_value;
  BigRational oracle_value;
  bool pass;
};

// The closed forms under test; replaceable so that the harness itself can be mutation-tested.
struct FormulaSet {
  std::function<BigRational(const BigRational&, std::size_t, std::size_t)> stabilizer =
      [](const BigRational& a, std::size_t n, std::size_t k) { return stabilizer_density(a, n, k); };
  std::function<BigRational(const BigRational&, std::size_t, std::size_t, std::size_t)> expected_nk =
      [](const BigRational& a, std::size_t n, std::size_t k, std::size_t t) { return expected_Nk(a, n, k, t); };
  std::function<BigRational(const BigRational&, std::size_t, std::size_t, std::size_t)> binom_moment =
      [](const BigRational& a, std::size_t n, std::size_t t, std::size_t k) { return binom_moment_N1(a, n, t, k); };
  std::function<BigRational(const BigRational&, std::size_t, std::size_t, std::size_t)> nkstar =
      [](const BigRational& a, std::size_t n, std::size_t k, std::size_t t) { return nkstar_bound(a, n, k, t); };
  std::function<BigRational(const BigRational&, std::size_t, std::size_t)> wreath =
      [](const BigRational& a, std::size_t n, std::size_t r) { return wreath_density(a, n, r); };
  std::function<BigRational(const BigRational&, std::size_t)> alternating =
      [](const BigRational& a, std::size_t n) { return alternating_density(a, n); };
};

inline std::string param(const char* name, std::size_t v) { return std::string(name) + "=" + std::to_string(v); }

// One report per (check, n, alpha, t, parameter) for n = 1..n_max. Failures are reported, never thrown;
// size-guard violations are thrown before any work is done.
inline std::vector<VerificationReport> verify_all(std::size_t n_max, const std::vector<BigRational>& alphas,
                                                  const std::vector<std::size_t>& ts,
                                                  const FormulaSet& formulas = {}) {
  for (std::size_t t : ts) check_guard(n_max, t);
  for (const auto& a : alphas)
    if (a < 0) throw std::invalid_argument("alpha must be >= 0");
  std::vector<VerificationReport> out;
  auto equal = [&](std::string check, std::size_t n, const BigRational& a, std::size_t t, std::string p,
                   BigRational formula, BigRational oracle) {
    const bool ok = formula == oracle;
    out.push_back({std::move(check), n, a, t, std::move(p), "==", std::move(formula), std::move(oracle), ok});
  };
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto single = single_polynomials(n);

    // Sum of sgn(pi) alpha^{C(pi)} over S_n against the falling factorial: alpha-free identity.
    {
      const auto ff = falling_factorial_coefficients(n);
      bool ok = ff.size() == single.signed_sum.size();
      for (std::size_t i = 0; ok && i < ff.size(); ++i) ok = ff[i] == single.signed_sum[i];
      out.push_back({"signed_cycle_sum", n, BigRational(1), 1, "", "==", BigRational(ok ? 1 : 0), BigRational(1), ok});
    }

    for (const auto& a : alphas) {
      equal("total_weight", n, a, 1, "", rising_factorial(a, n), evaluate(single.total, a));
      for (std::size_t k = 0; k <= n; ++k)
        equal("stabilizer_density", n, a, 1, param("k", k), formulas.stabilizer(a, n, k),
              normalise(single.stabilizer[k], a, n, 1));
      for (const auto& [r, poly] : single.wreath)
        equal("wreath_density", n, a, 1, param("r", r), formulas.wreath(a, n, r), normalise(poly, a, n, 1));
      if (n >= 2) equal("alternating_density", n, a, 1, "", formulas.alternating(a, n), normalise(single.even, a, n, 1));
    }

    for (std::size_t t : ts) {
      const auto mp = moment_polynomials(n, t);
      for (const auto& a : alphas) {
        for (std::size_t k = 1; k <= n; ++k)
          equal("expected_Nk", n, a, t, param("k", k), formulas.expected_nk(a, n, k, t), normalise(mp.nk[k], a, n, t));
        for (std::size_t k = 0; k <= n; ++k)
          equal("binom_moment_N1", n, a, t, param("k", k), formulas.binom_moment(a, n, t, k),
                normalise(mp.binom[k], a, n, t));
        equal("N1_equals_N1star", n, a, t, "", normalise(mp.nk[1], a, n, t), normalise(mp.nk_star[1], a, n, t));
        if (a > 0)
          for (std::size_t k = 2; k <= n / 2; ++k) {
            BigRational bound = formulas.nkstar(a, n, k, t);
            BigRational exact = normalise(mp.nk_star[k], a, n, t);
            const bool ok = exact <= bound;
            out.push_back({"nkstar_bound", n, a, t, param("k", k), "<=", std::move(bound), std::move(exact), ok});
          }
      }
    }
  }
  return out;
}

inline bool all_pass(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

}  // namespace esf::oracle
