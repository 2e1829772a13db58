#pragma once

// Seeded random generators and exhaustive enumerators shared by the unit and
// acceptance tests.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "odokit/dynsys.hpp"
#include "odokit/numtheory.hpp"
#include "odokit/odometer.hpp"
#include "odokit/supernat.hpp"

namespace odokit::testing {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline Exponent random_exponent(Rng& rng) {
  const auto r = uniform(rng, 0, 9);
  if (r == 0) return Exponent::infinity();
  return Exponent(uniform(rng, 0, 5));
}

/// Support drawn from the first few primes, default inf one time in six.
inline Supernatural random_supernatural(Rng& rng) {
  static const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13};
  std::map<std::uint64_t, Exponent> exps;
  for (auto p : primes)
    if (uniform(rng, 0, 2) != 0) exps[p] = random_exponent(rng);
  const auto fallback =
      uniform(rng, 0, 5) == 0 ? Supernatural::Default::kInfinity : Supernatural::Default::kZero;
  return Supernatural::from_exponents(std::move(exps), fallback);
}

inline FinSystem random_system(Rng& rng, std::size_t min_points, std::size_t max_points) {
  const auto n = static_cast<std::size_t>(uniform(rng, min_points, max_points));
  std::vector<Point> perm(n);
  std::iota(perm.begin(), perm.end(), Point{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return FinSystem::from_permutation(std::move(perm));
}

/// A system whose cycle lengths share the factor `g`, to make nontrivial
/// partitions likely.
inline FinSystem random_periodic_system(Rng& rng, std::size_t max_points) {
  const auto g = uniform(rng, 1, 4);
  std::vector<std::size_t> lengths;
  std::size_t total = 0;
  while (true) {
    const std::size_t len = g * uniform(rng, 1, 3);
    if (total + len > max_points) break;
    lengths.push_back(len);
    total += len;
    if (uniform(rng, 0, 2) == 0) break;
  }
  if (lengths.empty()) {
    lengths.push_back(g);
    total = g;
  }
  std::vector<Point> ids(total);
  std::iota(ids.begin(), ids.end(), Point{0});
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<std::vector<Point>> cycles;
  std::size_t pos = 0;
  for (auto len : lengths) {
    cycles.emplace_back(ids.begin() + pos, ids.begin() + pos + len);
    pos += len;
  }
  return FinSystem::from_cycles(cycles, total);
}

/// A uniformly random phase on each cycle.
inline PeriodicPartition random_partition(Rng& rng, const FinSystem& system, std::uint32_t m) {
  std::vector<std::uint32_t> labels(system.size());
  for (const auto& c : system.cycles()) {
    const auto phase = uniform(rng, 0, m - 1);
    for (std::size_t i = 0; i < c.size(); ++i) labels[c[i]] = static_cast<std::uint32_t>((i + phase) % m);
  }
  return PeriodicPartition::from_labels(system, std::move(labels), m);
}

/// Same, for a random period m.
inline PeriodicPartition random_partition(Rng& rng, const FinSystem& system) {
  const auto periods = ess_periods(system).periods;
  const auto m = static_cast<std::uint32_t>(periods[uniform(rng, 0, periods.size() - 1)]);
  return random_partition(rng, system, m);
}

/// Integer partitions of n, parts descending.
inline std::vector<std::vector<std::size_t>> cycle_types(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  auto rec = [&](auto&& self, std::size_t rest, std::size_t max_part) -> void {
    if (rest == 0) {
      out.push_back(current);
      return;
    }
    for (std::size_t part = std::min(rest, max_part); part >= 1; --part) {
      current.push_back(part);
      self(self, rest - part, part);
      current.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// Consecutive ids per cycle: lengths (3, 2) give (0 1 2)(3 4).
inline FinSystem system_of_type(const std::vector<std::size_t>& type) {
  std::vector<std::vector<Point>> cycles;
  Point next = 0;
  for (auto len : type) {
    std::vector<Point> c(len);
    std::iota(c.begin(), c.end(), next);
    next += static_cast<Point>(len);
    cycles.push_back(std::move(c));
  }
  return FinSystem::from_cycles(cycles, next);
}

/// One representative per conjugacy class for every size in [1, max_points].
inline std::vector<FinSystem> systems_up_to(std::size_t max_points) {
  std::vector<FinSystem> out;
  for (std::size_t n = 1; n <= max_points; ++n)
    for (const auto& type : cycle_types(n)) out.push_back(system_of_type(type));
  return out;
}

/// The same system with point ids relabelled by a random bijection.
inline FinSystem random_conjugate(Rng& rng, const FinSystem& system) {
  std::vector<Point> relabel(system.size());
  std::iota(relabel.begin(), relabel.end(), Point{0});
  std::shuffle(relabel.begin(), relabel.end(), rng);
  std::vector<Point> forward(system.size());
  for (Point x = 0; x < system.size(); ++x) forward[relabel[x]] = relabel[system.forward(x)];
  return FinSystem::from_permutation(std::move(forward));
}

/// Every divisibility chain of length 1..max_depth with last term <= max_top.
inline std::vector<BaseSequence> all_bases(std::uint64_t max_top, std::size_t max_depth) {
  std::vector<BaseSequence> out;
  std::vector<std::uint64_t> current;
  auto rec = [&](auto&& self) -> void {
    if (!current.empty()) out.emplace_back(current);
    if (current.size() == max_depth) return;
    const std::uint64_t last = current.empty() ? 1 : current.back();
    for (std::uint64_t next = last; next <= max_top; next += last) {
      current.push_back(next);
      self(self);
      current.pop_back();
    }
  };
  rec(rec);
  return out;
}

/// Trial-division factorization, kept separate from the library version.
inline std::map<std::uint64_t, std::uint64_t> factor_map_of(std::uint64_t n) {
  std::map<std::uint64_t, std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  if (n > 1) ++out[n];
  return out;
}

}  // namespace odokit::testing
