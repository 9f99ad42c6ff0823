#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "esf/numeric.hpp"
#include "esf/permutation.hpp"

namespace esf {

class DegenerateDegree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::size_t common_degree(std::span<const Permutation> gens, std::size_t n) {
  for (const auto& g : gens)
    if (g.degree() != n)
      throw DegreeMismatch("generator of degree " + std::to_string(g.degree()) + " in a group of degree " +
                           std::to_string(n));
  return n;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), point_t{0}); }

  point_t find(point_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(point_t a, point_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<point_t> parent_;
};

}  // namespace detail

// Orbit partition of <gens> on {1..n}, 1-based, each block sorted, blocks ordered by least point.
// An empty generator list gives n singletons.
inline std::vector<std::vector<std::size_t>> orbits(std::span<const Permutation> gens, std::size_t n) {
  detail::common_degree(gens, n);
  detail::UnionFind uf(n);
  for (const auto& g : gens)
    for (std::size_t i = 0; i < n; ++i) uf.unite(static_cast<point_t>(i), g[i]);
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> index(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    point_t r = uf.find(static_cast<point_t>(i));
    if (index[r] == SIZE_MAX) {
      index[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[index[r]].push_back(i + 1);
  }
  return blocks;
}

inline std::size_t orbit_count(std::span<const Permutation> gens, std::size_t n) {
  detail::common_degree(gens, n);
  detail::UnionFind uf(n);
  std::size_t count = n;
  for (const auto& g : gens)
    for (std::size_t i = 0; i < n; ++i)
      if (uf.unite(static_cast<point_t>(i), g[i])) --count;
  return count;
}

inline bool is_transitive(std::span<const Permutation> gens, std::size_t n) { return orbit_count(gens, n) == 1; }

// True iff some point is fixed by every generator.
inline bool has_common_fixed_point(std::span<const Permutation> gens, std::size_t n) {
  detail::common_degree(gens, n);
  for (std::size_t i = 0; i < n; ++i) {
    bool fixed = true;
    for (const auto& g : gens)
      if (g[i] != i) {
        fixed = false;
        break;
      }
    if (fixed) return true;
  }
  return false;
}

// Base and strong generating set built by the deterministic Schreier-Sims algorithm.
// Transversals are kept as Schreier vectors, so memory is O(n) per level.
class StabilizerChain {
 public:
  StabilizerChain(std::span<const Permutation> gens, std::size_t n) : n_(n) {
    detail::common_degree(gens, n);
    std::vector<Perm> strong;
    for (const auto& g : gens)
      if (!g.is_identity()) strong.push_back(g.image());
    for (const auto& g : strong) {
      bool fixes_base = true;
      for (const auto& lv : levels_)
        if (g[lv.base] != lv.base) {
          fixes_base = false;
          break;
        }
      if (fixes_base) add_level(first_moved(g));
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      for (const auto& g : strong)
        if (fixes_prefix(g, i)) levels_[i].gens.push_back(g);
      rebuild(levels_[i]);
    }
    complete();
  }

  std::size_t degree() const { return n_; }

  std::vector<std::size_t> base() const {
    std::vector<std::size_t> b;
    for (const auto& lv : levels_) b.push_back(lv.base + 1);
    return b;
  }

  std::vector<std::size_t> orbit_sizes() const {
    std::vector<std::size_t> s;
    for (const auto& lv : levels_) s.push_back(lv.orbit.size());
    return s;
  }

  BigInt order() const {
    BigInt r = 1;
    for (const auto& lv : levels_) r *= lv.orbit.size();
    return r;
  }

  bool contains(const Permutation& g) const {
    if (g.degree() != n_) throw DegreeMismatch("membership test with wrong degree");
    auto [residue, depth] = sift(g.image(), 0);
    return depth == levels_.size() && is_identity(residue);
  }

 private:
  using Perm = std::vector<point_t>;

  struct Level {
    point_t base;
    std::vector<Perm> gens;
    std::vector<Perm> inverses;
    std::vector<std::int32_t> schreier;  // -1 base point, -2 outside orbit, else index into gens
    std::vector<point_t> orbit;
  };

  static constexpr std::int32_t kRoot = -1;
  static constexpr std::int32_t kAbsent = -2;

  static bool is_identity(const Perm& g) {
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] != i) return false;
    return true;
  }

  static point_t first_moved(const Perm& g) {
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] != i) return static_cast<point_t>(i);
    return 0;
  }

  static Perm invert(const Perm& g) {
    Perm r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r[g[i]] = static_cast<point_t>(i);
    return r;
  }

  bool fixes_prefix(const Perm& g, std::size_t depth) const {
    for (std::size_t i = 0; i < depth; ++i)
      if (g[levels_[i].base] != levels_[i].base) return false;
    return true;
  }

  void add_level(point_t base) {
    Level lv;
    lv.base = base;
    lv.schreier.assign(n_, kAbsent);
    lv.schreier[base] = kRoot;
    lv.orbit.push_back(base);
    levels_.push_back(std::move(lv));
  }

  void rebuild(Level& lv) const {
    lv.inverses.clear();
    for (const auto& g : lv.gens) lv.inverses.push_back(invert(g));
    std::fill(lv.schreier.begin(), lv.schreier.end(), kAbsent);
    lv.schreier[lv.base] = kRoot;
    lv.orbit.assign(1, lv.base);
    for (std::size_t head = 0; head < lv.orbit.size(); ++head) {
      point_t y = lv.orbit[head];
      for (std::size_t s = 0; s < lv.gens.size(); ++s) {
        point_t z = lv.gens[s][y];
        if (lv.schreier[z] == kAbsent) {
          lv.schreier[z] = static_cast<std::int32_t>(s);
          lv.orbit.push_back(z);
        }
      }
    }
  }

  // Coset representative u with u(base) = y ("apply left to right": u = s_m ... s_1).
  Perm transversal(const Level& lv, point_t y) const {
    std::vector<std::int32_t> path;
    while (lv.schreier[y] != kRoot) {
      auto s = lv.schreier[y];
      path.push_back(s);
      y = lv.inverses[static_cast<std::size_t>(s)][y];
    }
    Perm u(n_);
    std::iota(u.begin(), u.end(), point_t{0});
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const Perm& s = lv.gens[static_cast<std::size_t>(*it)];
      for (auto& v : u) v = s[v];
    }
    return u;
  }

  // Strips g through levels [from, depth). Returns the residue and the level where stripping stopped.
  std::pair<Perm, std::size_t> sift(Perm g, std::size_t from) const {
    Perm tmp(n_);
    for (std::size_t l = from; l < levels_.size(); ++l) {
      const Level& lv = levels_[l];
      point_t y = g[lv.base];
      if (lv.schreier[y] == kAbsent) return {std::move(g), l};
      while (lv.schreier[y] != kRoot) {
        const Perm& inv = lv.inverses[static_cast<std::size_t>(lv.schreier[y])];
        for (std::size_t x = 0; x < n_; ++x) tmp[x] = inv[g[x]];
        g.swap(tmp);
        y = g[lv.base];
      }
    }
    return {std::move(g), levels_.size()};
  }

  void complete() {
    std::size_t i = levels_.size();
    while (i > 0) {
      const std::size_t level = i - 1;
      bool restarted = false;
      for (std::size_t oi = 0; oi < levels_[level].orbit.size() && !restarted; ++oi) {
        const point_t y = levels_[level].orbit[oi];
        const Perm u = transversal(levels_[level], y);
        for (std::size_t s = 0; s < levels_[level].gens.size(); ++s) {
          const Perm& gen = levels_[level].gens[s];
          Perm h(n_);
          for (std::size_t x = 0; x < n_; ++x) h[x] = gen[u[x]];
          auto [residue, depth] = sift(std::move(h), level);
          if (depth == levels_.size() && is_identity(residue)) continue;
          if (depth == levels_.size()) add_level(first_moved(residue));
          for (std::size_t l = level + 1; l <= depth; ++l) {
            levels_[l].gens.push_back(residue);
            rebuild(levels_[l]);
          }
          i = depth + 1;
          restarted = true;
          break;
        }
      }
      if (!restarted) --i;
    }
  }

  std::size_t n_;
  std::vector<Level> levels_;
};

inline BigInt group_order(std::span<const Permutation> gens, std::size_t n) {
  return StabilizerChain(gens, n).order();
}

struct GroupReport {
  bool transitive = false;
  // Exact |<gens>|; unset only when the caller asked to skip it.
  std::optional<BigInt> order;
  bool contains_alternating = false;
  std::size_t orbit_count = 0;
  // True when containment was settled by the prime-cycle criterion instead of the stabilizer chain.
  bool via_prime_cycle = false;
};

struct AlternatingTestOptions {
  // Degrees at or above this use the prime-cycle criterion first, with exact fallback.
  std::size_t prime_cycle_min_degree = 8;
  // Product-replacement elements examined before falling back to Schreier-Sims.
  std::size_t prime_cycle_attempts = 2000;
  bool compute_order = true;
};

namespace detail {

inline std::vector<bool> prime_sieve(std::size_t n) {
  std::vector<bool> prime(n + 1, true);
  prime[0] = false;
  if (n >= 1) prime[1] = false;
  for (std::size_t i = 2; i * i <= n; ++i)
    if (prime[i])
      for (std::size_t j = i * i; j <= n; j += i) prime[j] = false;
  return prime;
}

// True iff g has a cycle of prime length p with n/2 < p <= n-3. Some power of g is then a p-cycle.
inline bool has_large_prime_cycle(const std::vector<point_t>& g, const std::vector<bool>& prime,
                                  std::vector<char>& seen) {
  const std::size_t n = g.size();
  std::fill(seen.begin(), seen.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = g[j]) {
      seen[j] = 1;
      ++len;
    }
    if (2 * len > n && len + 3 <= n && prime[len]) return true;
  }
  return false;
}

// A transitive group containing a p-cycle with n/2 < p is primitive (the cycle cannot permute blocks
// nontrivially and does not fit inside one), and a primitive group containing a p-cycle with p <= n-3
// contains A_n (Jordan). Elements are produced by deterministic product replacement.
inline bool prime_cycle_witness(std::span<const Permutation> gens, std::size_t n, std::size_t attempts) {
  const auto prime = prime_sieve(n);
  std::vector<char> seen(n);
  std::vector<std::vector<point_t>> slots;
  for (const auto& g : gens) {
    if (has_large_prime_cycle(g.image(), prime, seen)) return true;
    slots.push_back(g.image());
  }
  if (slots.empty()) return false;
  while (slots.size() < 8) slots.push_back(slots[slots.size() % gens.size()]);
  std::uint64_t state = 0x9E3779B97F4A7C15ULL;
  auto next = [&state] {
    // splitmix64 step; a fixed internal stream keeps the answer independent of the caller's RNG.
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  std::vector<point_t> tmp(n);
  const std::size_t k = slots.size();
  for (std::size_t a = 0; a < attempts; ++a) {
    std::size_t i = next() % k;
    std::size_t j = next() % (k - 1);
    if (j >= i) ++j;
    const auto& right = slots[j];
    auto& left = slots[i];
    for (std::size_t x = 0; x < n; ++x) tmp[x] = right[left[x]];
    left.swap(tmp);
    if (has_large_prime_cycle(left, prime, seen)) return true;
  }
  return false;
}

}  // namespace detail

// Decides whether <gens> contains A_n: transitive and of order at least n!/2.
inline GroupReport contains_alternating(std::span<const Permutation> gens, std::size_t n,
                                        const AlternatingTestOptions& opts = {}) {
  if (n < 3) throw DegenerateDegree("alternating-group test needs degree n >= 3, got " + std::to_string(n));
  GroupReport r;
  r.orbit_count = orbit_count(gens, n);
  r.transitive = r.orbit_count == 1;
  if (!r.transitive) {
    if (opts.compute_order) r.order = group_order(gens, n);
    return r;
  }
  if (n >= opts.prime_cycle_min_degree && detail::prime_cycle_witness(gens, n, opts.prime_cycle_attempts)) {
    r.contains_alternating = true;
    r.via_prime_cycle = true;
    if (opts.compute_order) {
      bool odd = false;
      for (const auto& g : gens) odd = odd || g.sign() < 0;
      r.order = odd ? factorial(static_cast<unsigned>(n)) : factorial(static_cast<unsigned>(n)) / 2;
    }
    return r;
  }
  BigInt order = group_order(gens, n);
  r.contains_alternating = 2 * order >= factorial(static_cast<unsigned>(n));
  r.order = std::move(order);
  return r;
}

// Counts of k-subsets of {1..n} fixed setwise by every generator (fixed[k]) and of those on which
// <gens> additionally acts transitively (transitive[k]); k = 0..n. Exhaustive scan over all 2^n subsets.
struct FixedSubsetCounts {
  std::vector<std::uint64_t> fixed;
  std::vector<std::uint64_t> transitive;
};

inline constexpr std::size_t kMaxFixedSetDegree = 16;

inline FixedSubsetCounts fixed_subset_counts(std::span<const Permutation> gens, std::size_t n) {
  detail::common_degree(gens, n);
  if (n > kMaxFixedSetDegree)
    throw std::invalid_argument("fixed k-set scan is limited to n <= " + std::to_string(kMaxFixedSetDegree));
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  const std::size_t subsets = std::size_t{1} << n;
  // is_fixed[m] after processing every generator.
  std::vector<char> is_fixed(subsets, 1);
  std::vector<std::uint32_t> img(subsets);
  for (const auto& g : gens) {
    img[0] = 0;
    for (std::uint32_t m = 1; m <= full; ++m) {
      const std::uint32_t low = static_cast<std::uint32_t>(__builtin_ctz(m));
      img[m] = img[m & (m - 1)] | (1u << g[low]);
      if (img[m] != m) is_fixed[m] = 0;
      if (m == full) break;
    }
  }
  FixedSubsetCounts out{std::vector<std::uint64_t>(n + 1, 0), std::vector<std::uint64_t>(n + 1, 0)};
  std::vector<point_t> parent(n);
  for (std::uint32_t m = 0;; ++m) {
    if (is_fixed[m]) {
      const auto k = static_cast<std::size_t>(__builtin_popcount(m));
      ++out.fixed[k];
      if (k > 0) {
        // connectivity of the action restricted to the set
        std::iota(parent.begin(), parent.end(), point_t{0});
        auto find = [&](point_t x) {
          while (parent[x] != x) x = parent[x] = parent[parent[x]];
          return x;
        };
        std::size_t comps = k;
        for (const auto& g : gens)
          for (std::uint32_t rest = m; rest; rest &= rest - 1) {
            point_t x = static_cast<point_t>(__builtin_ctz(rest));
            point_t a = find(x), b = find(g[x]);
            if (a != b) {
              parent[a] = b;
              --comps;
            }
          }
        if (comps == 1) ++out.transitive[k];
      }
    }
    if (m == full) break;
  }
  return out;
}

enum class KSetMode { fixed, transitive };

inline std::uint64_t count_fixed_ksets(std::span<const Permutation> gens, std::size_t n, std::size_t k,
                                       KSetMode mode = KSetMode::fixed) {
  if (k > n) throw std::invalid_argument("k exceeds degree");
  auto counts = fixed_subset_counts(gens, n);
  return mode == KSetMode::fixed ? counts.fixed[k] : counts.transitive[k];
}

}  // namespace esf
