#pragma once

// Ultranatural (supernatural) numbers: formal products over the primes with
// exponents in Z+ u {inf}, ordered by componentwise comparison.
//
// A value is stored as a finite table of exceptional exponents on top of a
// default exponent that applies to every unlisted prime. The default is
// restricted to 0 or inf, which keeps the set closed under mul/gcd/lcm while
// covering the images of the naturals, single-prime infinite powers and the
// top element. Values are canonical: no exception equals the default, so
// structural equality is semantic equality.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace odokit {

class Exponent {
 public:
  constexpr Exponent() = default;
  constexpr explicit Exponent(std::uint64_t value) : value_(value) {}

  static constexpr Exponent infinity() {
    Exponent e;
    e.infinite_ = true;
    return e;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_zero() const { return !infinite_ && value_ == 0; }
  /// Finite value; throws DomainError on infinity.
  std::uint64_t value() const;

  friend constexpr bool operator==(const Exponent& a, const Exponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

/// inf + k = inf; finite sums are overflow-checked.
Exponent operator+(Exponent a, Exponent b);

class Supernatural {
 public:
  enum class Default { kZero, kInfinity };

  /// The unit E: every exponent zero.
  Supernatural() = default;

  /// Validates that every key is prime and drops entries equal to the default.
  static Supernatural from_exponents(std::map<std::uint64_t, Exponent> exponents,
                                     Default fallback = Default::kZero);
  static Supernatural unit() { return {}; }
  static Supernatural top();
  static Supernatural prime_power(std::uint64_t prime, Exponent e);

  Exponent exponent(std::uint64_t prime) const;
  Exponent default_exponent() const;
  Default fallback() const { return fallback_; }
  const std::map<std::uint64_t, Exponent>& exceptions() const { return exceptions_; }

  /// The natural number this value equals, if it is one (default 0, all finite).
  std::optional<std::uint64_t> to_integer() const;

  friend bool operator==(const Supernatural&, const Supernatural&) = default;

 private:
  std::map<std::uint64_t, Exponent> exceptions_;
  Default fallback_ = Default::kZero;
};

/// Embedding of the positive integers by prime factorization.
Supernatural phi0(std::uint64_t n);

Supernatural mul(const Supernatural& a, const Supernatural& b);
Supernatural gcd(const Supernatural& a, const Supernatural& b);
Supernatural lcm(const Supernatural& a, const Supernatural& b);
bool leq(const Supernatural& a, const Supernatural& b);

/// Componentwise supremum of phi0 over a nonempty finite set.
Supernatural phi_of_set(std::span<const std::uint64_t> values);

/// Membership of a in the regular (divisor- and lcm-closed) set encoded by r.
bool regular_contains(const Supernatural& r, std::uint64_t a);

/// A divisibility chain b1 | b2 | ... | bK of positive integers.
class RegularSeq {
 public:
  RegularSeq() = default;
  /// Throws DomainError on zero terms or broken divisibility.
  explicit RegularSeq(std::vector<std::uint64_t> terms);

  const std::vector<std::uint64_t>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::uint64_t operator[](std::size_t i) const { return terms_[i]; }
  std::uint64_t back() const { return terms_.back(); }

  friend bool operator==(const RegularSeq&, const RegularSeq&) = default;

 private:
  std::vector<std::uint64_t> terms_;
};

/// First `depth` terms of the chain b_k = prod_{first k support primes} p^min(R_p, k).
/// Values with default inf need a finite prime horizon: only primes <= horizon
/// (plus any listed exceptions) are used as support.
RegularSeq extract_regular_sequence(const Supernatural& r, std::size_t depth,
                                    std::uint64_t prime_horizon = 0);

/// For every a_i there is some b_j with a_i | b_j.
bool seq_dominates(const RegularSeq& a, const RegularSeq& b);

/// Literal form: `p^e` factors joined by `*` (`e` may be `inf`, `^1` may be
/// omitted), optional `;default=0|inf` suffix. `1` is the unit.
Supernatural parse_supernatural(std::string_view text);
std::string to_string(const Supernatural& value);
std::string to_string(Exponent e);

}  // namespace odokit
