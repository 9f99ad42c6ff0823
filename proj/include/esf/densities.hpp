#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "esf/ewens.hpp"
#include "esf/numeric.hpp"

// Closed-form alpha-densities and moments of subgroup-membership statistics for t independent
// ESF(alpha, n) permutations. Every quantity has an exact BigRational overload and a log-space double
// overload. alpha = 0 is evaluated as the alpha -> 0 limit, i.e. under uniform n-cycles.
namespace esf {

namespace detail {

inline BigRational pow(const BigRational& x, std::size_t e) {
  BigRational r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= x;
  return r;
}

inline BigRational ceil(const BigRational& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  BigInt q = num / den;  // truncates toward zero
  if (q * den < num) ++q;
  return BigRational(q);
}

inline void require_k(std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("k must satisfy 0 <= k <= n");
}

}  // namespace detail

// ---- setwise stabiliser S_k x S_{n-k} --------------------------------------

// P(pi(X) = X) for |X| = k: alpha^{(k)} alpha^{(n-k)} / alpha^{(n)}.
inline BigRational stabilizer_density(const BigRational& alpha, std::size_t n, std::size_t k) {
  detail::require_k(n, k);
  if (alpha == 0) return (k == 0 || k == n) ? BigRational(1) : BigRational(0);
  return rising_factorial(alpha, k) * rising_factorial(alpha, n - k) / rising_factorial(alpha, n);
}

inline double log_stabilizer_density(double alpha, std::size_t n, std::size_t k) {
  detail::require_k(n, k);
  if (k == 0 || k == n) return 0.0;
  if (alpha == 0) return -std::numeric_limits<double>::infinity();
  return log_rising_factorial(alpha, k) + log_rising_factorial(alpha, n - k) - log_rising_factorial(alpha, n);
}

inline double stabilizer_density(double alpha, std::size_t n, std::size_t k) {
  return std::exp(log_stabilizer_density(alpha, n, k));
}

// ---- N_k: k-sets fixed by all of pi_1..pi_t ---------------------------------

inline BigRational expected_Nk(const BigRational& alpha, std::size_t n, std::size_t k, std::size_t t) {
  return BigRational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(k))) *
         detail::pow(stabilizer_density(alpha, n, k), t);
}

inline double log_expected_Nk(double alpha, std::size_t n, std::size_t k, std::size_t t) {
  return log_binomial(n, k) + static_cast<double>(t) * log_stabilizer_density(alpha, n, k);
}

inline double expected_Nk(double alpha, std::size_t n, std::size_t k, std::size_t t) {
  return std::exp(log_expected_Nk(alpha, n, k, t));
}

// E(N_1) = n (alpha/(n+alpha-1))^t.
inline BigRational expected_N1(const BigRational& alpha, std::size_t n, std::size_t t) {
  if (n == 1) return 1;
  return BigRational(n) * detail::pow(alpha / (BigRational(n) + alpha - 1), t);
}

inline double expected_N1(double alpha, std::size_t n, std::size_t t) {
  if (n == 1) return 1.0;
  const double nd = static_cast<double>(n);
  return nd * std::pow(alpha / (nd + alpha - 1.0), static_cast<double>(t));
}

// k-th binomial moment E(C(N_1, k)) = C(n,k) (alpha^k alpha^{(n-k)} / alpha^{(n)})^t.
inline BigRational binom_moment_N1(const BigRational& alpha, std::size_t n, std::size_t t, std::size_t k) {
  detail::require_k(n, k);
  if (k == 0) return 1;
  if (alpha == 0) return (n == 1) ? BigRational(1) : BigRational(0);
  const BigRational ratio = detail::pow(alpha, k) * rising_factorial(alpha, n - k) / rising_factorial(alpha, n);
  return BigRational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(k))) * detail::pow(ratio, t);
}

inline double binom_moment_N1(double alpha, std::size_t n, std::size_t t, std::size_t k) {
  detail::require_k(n, k);
  if (k == 0) return 1.0;
  if (alpha == 0) return n == 1 ? 1.0 : 0.0;
  const double log_ratio = static_cast<double>(k) * std::log(alpha) + log_rising_factorial(alpha, n - k) -
                           log_rising_factorial(alpha, n);
  return std::exp(log_binomial(n, k) + static_cast<double>(t) * log_ratio);
}

// E(N_k) for k = 1..floor(n/2).
template <class T>
struct MomentTable {
  std::size_t n;
  T alpha;
  std::size_t t;
  std::vector<T> values;  // values[k-1] = E(N_k)

  T at(std::size_t k) const { return values.at(k - 1); }
};

inline MomentTable<BigRational> moment_table(const BigRational& alpha, std::size_t n, std::size_t t) {
  MomentTable<BigRational> m{n, alpha, t, {}};
  for (std::size_t k = 1; k <= n / 2; ++k) m.values.push_back(expected_Nk(alpha, n, k, t));
  return m;
}

inline MomentTable<double> moment_table(double alpha, std::size_t n, std::size_t t) {
  MomentTable<double> m{n, alpha, t, {}};
  for (std::size_t k = 1; k <= n / 2; ++k) m.values.push_back(expected_Nk(alpha, n, k, t));
  return m;
}

// First k of the range max(1, ceil(alpha-1)) <= k < n/2 on which E(N_k) is nonincreasing.
inline std::size_t monotone_range_start(const BigRational& alpha) {
  const BigRational c = detail::ceil(alpha - 1);
  return c < 1 ? 1 : static_cast<std::size_t>(boost::multiprecision::numerator(c));
}

inline std::size_t monotone_range_start(double alpha) {
  const double c = std::ceil(alpha - 1.0);
  return c < 1.0 ? 1 : static_cast<std::size_t>(c);
}

// True iff the table is nonincreasing on max(1, ceil(alpha-1)) <= k < n/2. For doubles a step may rise
// by at most rel_tol times the earlier value.
inline bool check_monotone(const MomentTable<BigRational>& table) {
  for (std::size_t k = monotone_range_start(table.alpha); 2 * (k + 1) < table.n; ++k)
    if (table.at(k + 1) > table.at(k)) return false;
  return true;
}

inline bool check_monotone(const MomentTable<double>& table, double rel_tol = 1e-12) {
  for (std::size_t k = monotone_range_start(table.alpha); 2 * (k + 1) < table.n; ++k)
    if (table.at(k + 1) > table.at(k) * (1.0 + rel_tol)) return false;
  return true;
}

// ---- E(N_k) <= E(N_1)^k e^{t k^2/alpha} / k! --------------------------------

struct BoundMargin {
  double lhs;      // E(N_k)
  double rhs;      // E(N_1)^k e^{t k^2/alpha} / k!
  double log_gap;  // log(rhs) - log(lhs); +inf when lhs = 0
  double margin() const { return rhs - lhs; }
};

inline BoundMargin bound_c(double alpha, std::size_t n, std::size_t k, std::size_t t) {
  if (!(alpha > 0)) throw std::invalid_argument("moment bound requires alpha > 0");
  if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
  const double td = static_cast<double>(t), kd = static_cast<double>(k);
  const double log_lhs = log_expected_Nk(alpha, n, k, t);
  const double log_rhs = kd * std::log(expected_N1(alpha, n, t)) + td * kd * kd / alpha - std::lgamma(kd + 1.0);
  return {std::exp(log_lhs), std::exp(log_rhs), log_rhs - log_lhs};
}

inline double bound_c_margin(double alpha, std::size_t n, std::size_t k, std::size_t t) {
  return bound_c(alpha, n, k, t).margin();
}

// Exact left side against a 100-digit right side.
inline HighFloat bound_c_margin_exact(const BigRational& alpha, std::size_t n, std::size_t k, std::size_t t) {
  if (alpha <= 0) throw std::invalid_argument("moment bound requires alpha > 0");
  if (k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
  const BigRational lhs = expected_Nk(alpha, n, k, t);
  const BigRational base = detail::pow(expected_N1(alpha, n, t), k) / BigRational(factorial(static_cast<unsigned>(k)));
  const HighFloat rhs = to_high(base) * boost::multiprecision::exp(HighFloat(static_cast<double>(t * k * k)) / to_high(alpha));
  return rhs - to_high(lhs);
}

// ---- sum_{k>=2} E(N_k) against g(e^t E(N_1)) ---------------------------------

struct SumBoundReport {
  double lhs;       // sum_{k=2}^{floor(n/2)} E(N_k)
  double rhs_main;  // g(e^t E(N_1)) with g(x) = e^x - 1 - x, the main term of the bound
  double g_value;   // the argument e^t E(N_1) passed to g
};

inline SumBoundReport sum_bound_d_report(double alpha, std::size_t n, std::size_t t) {
  if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");
  if (alpha * 100.0 > static_cast<double>(n))
    throw std::invalid_argument("sum bound requires alpha <= n/100");
  SumBoundReport r{0.0, 0.0, 0.0};
  if (alpha > 0)
    for (std::size_t k = 2; k <= n / 2; ++k) r.lhs += expected_Nk(alpha, n, k, t);
  r.g_value = std::exp(static_cast<double>(t)) * (alpha > 0 ? expected_N1(alpha, n, t) : 0.0);
  r.rhs_main = std::expm1(r.g_value) - r.g_value;
  return r;
}

// ---- N_k*: fixed k-sets on which the group acts transitively ----------------

// Upper bound E(N_k) t k / alpha on E(N_k*), k > 1.
inline BigRational nkstar_bound(const BigRational& alpha, std::size_t n, std::size_t k, std::size_t t) {
  if (k <= 1) throw std::invalid_argument("N_k* bound requires k > 1");
  if (alpha <= 0) throw std::invalid_argument("N_k* bound requires alpha > 0");
  return expected_Nk(alpha, n, k, t) * BigRational(t * k) / alpha;
}

inline double nkstar_bound(double alpha, std::size_t n, std::size_t k, std::size_t t) {
  if (k <= 1) throw std::invalid_argument("N_k* bound requires k > 1");
  if (!(alpha > 0)) throw std::invalid_argument("N_k* bound requires alpha > 0");
  return expected_Nk(alpha, n, k, t) * static_cast<double>(t * k) / alpha;
}

// ---- predictions ------------------------------------------------------------

struct Prediction {
  std::size_t n;
  double alpha;
  std::size_t t;
  double e_n1;          // E(N_1)
  double p_sharp;       // e^{-E(N_1)}
  double p_generate;    // e^{-n (alpha/n)^t}
  double p_transitive;  // same leading-order value as p_generate
};

inline Prediction predict(double alpha, std::size_t n, std::size_t t) {
  if (t < 2) throw std::invalid_argument("prediction needs t >= 2");
  if (n < 3) throw std::invalid_argument("prediction needs n >= 3");
  if (!(alpha >= 0)) throw std::invalid_argument("alpha must be >= 0");
  const double nd = static_cast<double>(n);
  Prediction p{n, alpha, t, expected_N1(alpha, n, t), 0, 0, 0};
  p.p_sharp = std::exp(-p.e_n1);
  p.p_generate = std::exp(-nd * std::pow(alpha / nd, static_cast<double>(t)));
  p.p_transitive = p.p_generate;
  return p;
}

// Limit of P(<pi_1..pi_t> >= A_n) along alpha = p n^theta.
inline double corollary_limit(double theta, double p, std::size_t t) {
  if (theta < 0 || p < 0) throw std::invalid_argument("theta and p must be >= 0");
  if (t < 2) throw std::invalid_argument("t must be >= 2");
  const double critical = 1.0 - 1.0 / static_cast<double>(t);
  if (std::abs(theta - critical) <= 1e-12) return std::exp(-std::pow(p, static_cast<double>(t)));
  return theta < critical ? 1.0 : 0.0;
}

// ---- imprimitive wreath product S_{n/r} wr S_r --------------------------------

// ((n/r)!^r / alpha^{(n)}) x^{(r)} with x = alpha^{(n/r)} / (n/r)!; x^{(r)} is the literal r-term product.
inline BigRational wreath_density(const BigRational& alpha, std::size_t n, std::size_t r) {
  if (r == 0 || n % r != 0) throw std::invalid_argument("block count r must divide n");
  const std::size_t m = n / r;
  const BigInt mfact = factorial(static_cast<unsigned>(m));
  BigInt mfact_r = 1;
  for (std::size_t i = 0; i < r; ++i) mfact_r *= mfact;
  if (alpha == 0) {
    // limit: m!^r (r-1)! / (m (n-1)!)
    return BigRational(mfact_r * factorial(static_cast<unsigned>(r - 1)),
                       BigInt(m) * factorial(static_cast<unsigned>(n - 1)));
  }
  const BigRational x = rising_factorial(alpha, m) / BigRational(mfact);
  return BigRational(mfact_r) * rising_factorial(x, r) / rising_factorial(alpha, n);
}

inline double wreath_density(double alpha, std::size_t n, std::size_t r) {
  if (r == 0 || n % r != 0) throw std::invalid_argument("block count r must divide n");
  const std::size_t m = n / r;
  const double rd = static_cast<double>(r);
  if (alpha == 0)
    return std::exp(rd * log_factorial(m) + log_factorial(r - 1) - std::log(static_cast<double>(m)) -
                    log_factorial(n - 1));
  const double log_x = log_rising_factorial(alpha, m) - log_factorial(m);
  const double x = std::exp(log_x);
  double log_rx = 0;
  for (std::size_t i = 0; i < r; ++i) log_rx += log_x + std::log1p(static_cast<double>(i) / x);
  return std::exp(rd * log_factorial(m) + log_rx - log_rising_factorial(alpha, n));
}

// ---- alternating group -------------------------------------------------------

// 1/2 + alpha_{(n)} / (2 alpha^{(n)}).
inline BigRational alternating_density(const BigRational& alpha, std::size_t n) {
  if (n < 2) throw std::invalid_argument("alternating density needs n >= 2");
  if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");
  if (alpha == 0) return (n % 2 == 1) ? BigRational(1) : BigRational(0);
  return BigRational(1, 2) + falling_factorial(alpha, n) / (2 * rising_factorial(alpha, n));
}

inline double alternating_density(double alpha, std::size_t n) {
  if (n < 2) throw std::invalid_argument("alternating density needs n >= 2");
  if (!(alpha >= 0)) throw std::invalid_argument("alpha must be >= 0");
  if (alpha == 0) return (n % 2 == 1) ? 1.0 : 0.0;
  double ratio = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double id = static_cast<double>(i);
    ratio *= (alpha - id) / (alpha + id);
  }
  return 0.5 + 0.5 * ratio;
}

// ---- signed cycle sum ---------------------------------------------------------

// Coefficients (index = power of alpha) of sum_{pi in S_n} sgn(pi) alpha^{C(pi)}, summed over cycle
// types: a type with c_i cycles of length i has n!/prod(i^{c_i} c_i!) members.
inline std::vector<BigInt> signed_cycle_sum(std::size_t n) {
  if (n > 12) throw std::invalid_argument("signed cycle sum is limited to n <= 12");
  std::vector<BigInt> coeff(n + 1, 0);
  const BigInt nfact = factorial(static_cast<unsigned>(n));
  std::vector<std::size_t> parts;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t remaining, std::size_t max_part) {
    if (remaining == 0) {
      BigInt denom = 1;
      std::size_t even_parts = 0;
      for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        const std::size_t mult = j - i;
        for (std::size_t q = 0; q < mult; ++q) denom *= parts[i];
        denom *= factorial(static_cast<unsigned>(mult));
        if (parts[i] % 2 == 0) even_parts += mult;
        i = j;
      }
      BigInt count = nfact / denom;
      if (even_parts % 2) count = -count;
      coeff[parts.size()] += count;
      return;
    }
    for (std::size_t p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      walk(remaining - p, p);
      parts.pop_back();
    }
  };
  walk(n, n);
  return coeff;
}

// Coefficients of alpha (alpha-1) ... (alpha-n+1), i.e. the signed Stirling numbers s(n, k).
inline std::vector<BigInt> falling_factorial_coefficients(std::size_t n) {
  std::vector<BigInt> c{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<BigInt> next(c.size() + 1, 0);
    for (std::size_t d = 0; d < c.size(); ++d) {
      next[d + 1] += c[d];
      next[d] -= BigInt(i) * c[d];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace esf
