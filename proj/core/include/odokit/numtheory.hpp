#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace odokit::numtheory {

bool is_prime(std::uint64_t n);

/// Prime factorization by trial division, primes ascending. factorize(1) is empty.
std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n);

/// Positive divisors of n in ascending order. n must be nonzero.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Primes p <= bound, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// lcm with overflow detection (throws DomainError).
std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

/// Least nonnegative representative of z mod n (n > 0).
std::uint64_t mod(std::int64_t z, std::uint64_t n);

/// Solves s = r1 (mod m1), s = r2 (mod m2). Returns the solution in
/// [0, lcm(m1, m2)) or nullopt when r1 != r2 mod gcd(m1, m2).
std::optional<std::uint64_t> solve_congruences(std::int64_t r1, std::uint64_t m1,
                                               std::int64_t r2, std::uint64_t m2);

}  // namespace odokit::numtheory
