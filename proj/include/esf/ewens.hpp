#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "esf/numeric.hpp"
#include "esf/permutation.hpp"

namespace esf {

// ESF(alpha, n). alpha = 0 is the uniform distribution on n-cycles.
struct EwensParams {
  double alpha;
  std::size_t n;

  EwensParams(double a, std::size_t degree) : alpha(a), n(degree) {
    if (!(alpha >= 0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite and >= 0");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
  }
};

// ---- factorials -----------------------------------------------------------

// a (a+1) ... (a+n-1); the empty product is 1. Works for double and BigRational.
template <class T>
T rising_factorial(const T& a, std::size_t n) {
  T r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= a + T(i);
  return r;
}

// a (a-1) ... (a-n+1).
template <class T>
T falling_factorial(const T& a, std::size_t n) {
  T r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= a - T(i);
  return r;
}

// log(a^{(n)}) = lgamma(a+n) - lgamma(a). a = 0 with n >= 1 has no logarithm.
inline double log_rising_factorial(double a, std::size_t n) {
  if (n == 0) return 0.0;
  if (a == 0) throw std::domain_error("log rising factorial undefined at alpha = 0 (value is 0)");
  if (a < 0) throw std::domain_error("log rising factorial needs alpha > 0");
  if (n <= 16) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += std::log(a + static_cast<double>(i));
    return s;
  }
  return std::lgamma(a + static_cast<double>(n)) - std::lgamma(a);
}

inline double log_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

inline double log_binomial(std::size_t n, std::size_t k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// ---- pmf ------------------------------------------------------------------

// P(pi = sigma) = alpha^{C(sigma)} / alpha^{(n)}.
template <class T>
T esf_pmf(const T& alpha, const Permutation& sigma, std::size_t n) {
  if (sigma.degree() != n)
    throw DegreeMismatch("permutation of degree " + std::to_string(sigma.degree()) + " under ESF(alpha, " +
                         std::to_string(n) + ")");
  const std::size_t c = sigma.cycle_count();
  if (alpha == T(0)) {
    if (c != 1) return T(0);
    T r = 1;
    for (std::size_t i = 2; i < n; ++i) r *= T(i);
    return T(1) / r;  // one of (n-1)! n-cycles
  }
  T num = 1;
  for (std::size_t i = 0; i < c; ++i) num *= alpha;
  return num / rising_factorial(alpha, n);
}

inline double esf_pmf(const EwensParams& p, const Permutation& sigma) { return esf_pmf<double>(p.alpha, sigma, p.n); }

inline double esf_log_pmf(const EwensParams& p, const Permutation& sigma) {
  if (sigma.degree() != p.n) throw DegreeMismatch("degree mismatch in esf_log_pmf");
  const std::size_t c = sigma.cycle_count();
  if (p.alpha == 0) {
    if (c != 1) return -std::numeric_limits<double>::infinity();
    return -log_factorial(p.n - 1);
  }
  return static_cast<double>(c) * std::log(p.alpha) - log_rising_factorial(p.alpha, p.n);
}

// ---- sampling -------------------------------------------------------------

// Derives the seed of stream `index` from a master seed (splitmix64 finaliser of seed + (index+1)*golden).
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

using Engine = std::mt19937_64;

// Exact ESF(alpha, n) sample by sequential insertion. Element i opens a new cycle with probability
// alpha/(alpha+i-1); otherwise it is placed right after one of the i-1 earlier elements, each with
// probability 1/(alpha+i-1). alpha = 0 draws a uniform n-cycle.
template <class URBG>
void sample_into(const EwensParams& p, URBG& rng, std::vector<point_t>& image) {
  const std::size_t n = p.n;
  image.resize(n);
  if (p.alpha == 0) {
    // uniform n-cycle: a uniformly random cyclic order of 0..n-1
    std::vector<point_t> order(n);
    std::iota(order.begin(), order.end(), point_t{0});
    for (std::size_t i = n; i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(order[i - 1], order[pick(rng)]);
    }
    for (std::size_t i = 0; i < n; ++i) image[order[i]] = order[(i + 1) % n];
    return;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  image[0] = 0;
  for (std::size_t i = 1; i < n; ++i) {
    // element i (0-based) sees i earlier elements
    const double u = unit(rng) * (p.alpha + static_cast<double>(i));
    if (u < p.alpha) {
      image[i] = static_cast<point_t>(i);
    } else {
      std::size_t j = static_cast<std::size_t>(u - p.alpha);
      if (j >= i) j = i - 1;
      image[i] = image[j];
      image[j] = static_cast<point_t>(i);
    }
  }
}

template <class URBG>
Permutation sample(const EwensParams& p, URBG& rng) {
  std::vector<point_t> image;
  sample_into(p, rng, image);
  return Permutation::from_images(std::move(image));
}

inline Permutation sample(const EwensParams& p, std::uint64_t seed) {
  Engine rng(seed);
  return sample(p, rng);
}

// ---- cycle counts ---------------------------------------------------------

// Unsigned Stirling numbers of the first kind c(m, k), 0 <= k <= m <= n, from
// c(m,k) = c(m-1,k-1) + (m-1) c(m-1,k).
inline std::vector<std::vector<BigInt>> stirling_cycle_table(std::size_t n) {
  std::vector<std::vector<BigInt>> c(n + 1);
  c[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    c[m].assign(m + 1, 0);
    for (std::size_t k = 1; k <= m; ++k) {
      BigInt v = c[m - 1].size() > k - 1 ? c[m - 1][k - 1] : BigInt(0);
      if (k <= m - 1) v += BigInt(m - 1) * c[m - 1][k];
      c[m][k] = std::move(v);
    }
  }
  return c;
}

// Same table from the cycle-pair recurrence k c(m,k) = sum_{j=1}^m m!/(j (m-j)!) c(m-j, k-1).
inline std::vector<std::vector<BigInt>> stirling_cycle_table_by_pairs(std::size_t n) {
  std::vector<std::vector<BigInt>> c(n + 1);
  c[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    c[m].assign(m + 1, 0);
    const BigInt mfact = factorial(static_cast<unsigned>(m));
    for (std::size_t k = 1; k <= m; ++k) {
      BigInt sum = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (k - 1 > m - j) continue;
        sum += mfact / (BigInt(j) * factorial(static_cast<unsigned>(m - j))) * c[m - j][k - 1];
      }
      if (sum % k != 0) throw std::logic_error("cycle-pair recurrence produced a non-integer");
      c[m][k] = sum / k;
    }
  }
  return c;
}

inline BigInt stirling_cycle(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  return stirling_cycle_table(n)[n][k];
}

// P(C = k) for k = 1..n.
template <class T>
struct CycleCountPmf {
  std::size_t n;
  T alpha;
  std::vector<T> probabilities;  // probabilities[k-1] = P(C = k)
};

// Exact: c(n,k) alpha^k / alpha^{(n)}.
inline CycleCountPmf<BigRational> cycle_count_pmf_exact(const BigRational& alpha, std::size_t n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");
  CycleCountPmf<BigRational> out{n, alpha, std::vector<BigRational>(n, BigRational(0))};
  if (alpha == 0) {
    out.probabilities[0] = 1;
    return out;
  }
  const auto c = stirling_cycle_table(n);
  const BigRational norm = rising_factorial(alpha, n);
  BigRational power = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    power *= alpha;
    out.probabilities[k - 1] = BigRational(c[n][k]) * power / norm;
  }
  return out;
}

// Log-space evaluation; the Stirling numbers are exact, converted through HighFloat.
inline CycleCountPmf<double> cycle_count_pmf(const EwensParams& p) {
  CycleCountPmf<double> out{p.n, p.alpha, std::vector<double>(p.n, 0.0)};
  if (p.alpha == 0) {
    out.probabilities[0] = 1.0;
    return out;
  }
  const auto c = stirling_cycle_table(p.n);
  const double log_norm = log_rising_factorial(p.alpha, p.n);
  const double log_alpha = std::log(p.alpha);
  for (std::size_t k = 1; k <= p.n; ++k) {
    const double log_c = static_cast<double>(boost::multiprecision::log(HighFloat(c[p.n][k])));
    out.probabilities[k - 1] = std::exp(log_c + static_cast<double>(k) * log_alpha - log_norm);
  }
  return out;
}

// (log n + 1)^k / k! - c(n,k)/n!, evaluated at 100-digit precision.
inline HighFloat cnk_bound_margin_high(std::size_t n, std::size_t k,
                                       const std::vector<std::vector<BigInt>>& table) {
  if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
  const HighFloat lhs = HighFloat(table[n][k]) / HighFloat(factorial(static_cast<unsigned>(n)));
  const HighFloat base = boost::multiprecision::log(HighFloat(n)) + 1;
  const HighFloat rhs = boost::multiprecision::pow(base, static_cast<int>(k)) /
                        HighFloat(factorial(static_cast<unsigned>(k)));
  return rhs - lhs;
}

inline double cnk_bound_margin(std::size_t n, std::size_t k) {
  return static_cast<double>(cnk_bound_margin_high(n, k, stirling_cycle_table(n)));
}

// E[C] = sum_{i=0}^{n-1} alpha/(alpha+i).
inline double expected_cycle_count(const EwensParams& p) {
  if (p.alpha == 0) return 1.0;
  double s = 0;
  for (std::size_t i = 0; i < p.n; ++i) s += p.alpha / (p.alpha + static_cast<double>(i));
  return s;
}

}  // namespace esf
