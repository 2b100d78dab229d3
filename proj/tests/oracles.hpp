#pragma once

// Brute-force reference implementations on machine integers. They share no
// code with the library.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Plain unbounded-knapsack table over 0..limit.
inline std::vector<bool> reachable(const std::vector<std::uint64_t>& gens, std::uint64_t limit) {
  std::vector<bool> r(limit + 1, false);
  r[0] = true;
  for (std::uint64_t x = 1; x <= limit; ++x) {
    for (auto g : gens) {
      if (g <= x && r[x - g]) {
        r[x] = true;
        break;
      }
    }
  }
  return r;
}

/// Largest gap of <gens> by scanning up to a generous limit; -1 when none.
inline std::int64_t frobenius(const std::vector<std::uint64_t>& gens) {
  std::uint64_t lo = gens[0], hi = gens[0];
  for (auto g : gens) {
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  const std::uint64_t limit = lo * hi + hi + 1;
  auto r = reachable(gens, limit);
  std::int64_t last = -1;
  for (std::uint64_t x = 0; x <= limit; ++x) {
    if (!r[x]) last = static_cast<std::int64_t>(x);
  }
  return last;
}

inline std::vector<std::uint64_t> minimal_generators(std::vector<std::uint64_t> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<std::uint64_t> others;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (j != i) others.push_back(gens[j]);
    }
    if (others.empty() || !reachable(others, gens[i])[gens[i]]) out.push_back(gens[i]);
  }
  return out;
}

struct Frac {
  std::int64_t num;
  std::int64_t den;
};

inline Frac reduce(std::int64_t a, std::int64_t b) {
  auto g = std::gcd(a, b);
  return {a / g, b / g};
}

/// Membership of a/b in <gens> with all denominators' lcm small.
inline bool member(Frac q, const std::vector<Frac>& gens) {
  std::int64_t l = q.den;
  for (const auto& g : gens) l = std::lcm(l, g.den);
  std::vector<std::uint64_t> ints;
  for (const auto& g : gens) ints.push_back(static_cast<std::uint64_t>(g.num * (l / g.den)));
  const auto target = static_cast<std::uint64_t>(q.num * (l / q.den));
  return reachable(ints, target)[target];
}

inline std::int64_t pval(std::uint64_t p, std::int64_t n) {
  std::int64_t v = 0;
  while (n % static_cast<std::int64_t>(p) == 0) {
    n /= static_cast<std::int64_t>(p);
    ++v;
  }
  return v;
}

/// Smallest-size index subset (1-based) after `after` with gcd 1, by search.
inline std::optional<std::size_t> min_coprime_subset_size(const std::vector<std::uint64_t>& w, std::size_t after) {
  const std::size_t n = w.size() - after;
  if (n > 16) return std::nullopt;
  std::optional<std::size_t> best;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::uint64_t g = 0;
    std::size_t size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        g = std::gcd(g, w[after + i]);
        ++size;
      }
    }
    if (g == 1 && (!best || size < *best)) best = size;
  }
  return best;
}

}  // namespace oracle
