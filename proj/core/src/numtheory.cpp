#include "odokit/numtheory.hpp"

#include <limits>
#include <numeric>

#include "odokit/error.hpp"

namespace odokit::numtheory {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("cannot factorize 0");
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  for (std::uint64_t p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw DomainError("divisors of 0 are not finite");
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d <= n / d; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t p = 2; p <= bound; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (std::uint64_t q = p * p; q <= bound; q += p) composite[q] = true;
  }
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw DomainError("integer overflow in product");
  }
  return a * b;
}

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / std::gcd(a, b), b);
}

std::uint64_t mod(std::int64_t z, std::uint64_t n) {
  if (n == 0) throw DomainError("modulus must be positive");
  if (z >= 0) return static_cast<std::uint64_t>(z) % n;
  // -(z+1) is representable for every negative z.
  const std::uint64_t r = static_cast<std::uint64_t>(-(z + 1)) % n;
  return n - 1 - r;
}

std::optional<std::uint64_t> solve_congruences(std::int64_t r1, std::uint64_t m1,
                                               std::int64_t r2, std::uint64_t m2) {
  const std::uint64_t a = mod(r1, m1);
  const std::uint64_t b = mod(r2, m2);
  const std::uint64_t g = std::gcd(m1, m2);
  if (a % g != b % g) return std::nullopt;
  const std::uint64_t big = checked_lcm(m1, m2);
  // Walk the residue class of a mod m1; at most m2/g steps.
  for (std::uint64_t s = a; s < big; s += m1) {
    if (s % m2 == b) return s;
  }
  return std::nullopt;
}

}  // namespace odokit::numtheory
