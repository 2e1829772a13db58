#pragma once

// Adic groups over finite divisibility chains n1 | n2 | ... | nK, the
// translation x -> x + e, the natural metric, cylinders and finite truncations.
// Level indices are 1-based throughout.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "odokit/dynsys.hpp"
#include "odokit/supernat.hpp"

namespace odokit {

class BaseSequence {
 public:
  /// Throws DomainError on an empty list, zero levels or broken divisibility.
  /// Constant tails are allowed.
  explicit BaseSequence(std::vector<std::uint64_t> levels);
  explicit BaseSequence(const RegularSeq& seq) : BaseSequence(seq.terms()) {}

  std::size_t depth() const { return levels_.size(); }
  /// n_k for 1 <= k <= depth().
  std::uint64_t level(std::size_t k) const;
  std::uint64_t top_level() const { return levels_.back(); }
  const std::vector<std::uint64_t>& levels() const { return levels_; }

  friend bool operator==(const BaseSequence&, const BaseSequence&) = default;

 private:
  std::vector<std::uint64_t> levels_;
};

class AdicInt {
 public:
  /// Throws DomainError on a size mismatch, out-of-range residues or
  /// a_{k+1} != a_k (mod n_k).
  AdicInt(BaseSequence base, std::vector<std::uint64_t> residues);

  const BaseSequence& base() const { return base_; }
  const std::vector<std::uint64_t>& residues() const { return residues_; }
  std::uint64_t residue(std::size_t k) const;
  /// Position of the point on the depth-K truncation, i.e. a_K.
  std::uint64_t index() const { return residues_.back(); }

  friend bool operator==(const AdicInt&, const AdicInt&) = default;

 private:
  BaseSequence base_;
  std::vector<std::uint64_t> residues_;
};

AdicInt from_integer(const BaseSequence& base, std::int64_t z);
AdicInt add(const AdicInt& x, const AdicInt& y);
AdicInt neg(const AdicInt& x);
/// x + e.
AdicInt translate(const AdicInt& x);

/// numerator / denominator in lowest terms. When the residues agree at every
/// working level the value is 0 and agrees_to_depth is set: the true distance
/// is then only known to be below 1 / n_K.
struct Distance {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  bool agrees_to_depth = false;

  friend bool operator==(const Distance&, const Distance&) = default;
};

Distance metric(const AdicInt& x, const AdicInt& y);

class Cylinder {
 public:
  /// {a : a_level = residue}. Throws DomainError on a bad level or residue.
  Cylinder(BaseSequence base, std::size_t level, std::uint64_t residue);

  std::size_t level() const { return level_; }
  std::uint64_t residue() const { return residue_; }
  bool contains(const AdicInt& x) const;

 private:
  BaseSequence base_;
  std::size_t level_;
  std::uint64_t residue_;
};

/// Cyclic permutation i -> i + 1 mod n_k. Point i corresponds to from_integer(base, i).
FinSystem truncate(const BaseSequence& base, std::size_t k);
/// Level-k cylinders as a periodic partition of truncate(base, depth); block i
/// holds the points whose level-k residue is i.
PeriodicPartition level_partition(const BaseSequence& base, std::size_t k);
Supernatural ess_of_odometer(const BaseSequence& base);

/// Every point of the depth-K truncation, ordered by index.
std::vector<AdicInt> truncation_points(const BaseSequence& base);

/// `2,4,8`
BaseSequence parse_base(std::string_view text);
std::string to_string(const BaseSequence& base);
/// `[1,1,5]`
AdicInt parse_adic(const BaseSequence& base, std::string_view text);
std::string to_string(const AdicInt& x);
std::string to_string(const Distance& d);

}  // namespace odokit
