#pragma once

// Finite discrete dynamical systems (a point set with a permutation) and the
// calculus of periodic partitions on them: validation, the exhaustive oracle,
// equivalence, coarsening, orbit saturation, compatibility, lcm refinement,
// compatible completion and partition chains.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odokit/supernat.hpp"

namespace odokit {

using Point = std::uint32_t;
/// Sorted, duplicate-free set of point ids.
using PointSet = std::vector<Point>;

class FinSystem {
 public:
  /// The one-point system.
  FinSystem();
  /// Throws DomainError unless `forward` is a permutation of 0..N-1, N >= 1.
  static FinSystem from_permutation(std::vector<Point> forward);
  /// Points not mentioned in any cycle are fixed. `size` defaults to max id + 1.
  static FinSystem from_cycles(const std::vector<std::vector<Point>>& cycles,
                               std::optional<std::size_t> size = std::nullopt);
  /// Single cycle 0 -> 1 -> ... -> n-1 -> 0.
  static FinSystem cycle(std::size_t n);

  std::size_t size() const { return data_->forward.size(); }
  Point forward(Point x) const { return data_->forward[x]; }
  Point backward(Point x) const { return data_->backward[x]; }
  /// f^n(x) for any integer n.
  Point iterate(Point x, std::int64_t n) const;
  std::span<const Point> permutation() const { return data_->forward; }

  /// Cycles in orbit order, each starting at its smallest id, sorted by that id.
  const std::vector<std::vector<Point>>& cycles() const { return data_->cycles; }
  /// Index into cycles() of the cycle containing x, and x's position in it.
  std::size_t cycle_of(Point x) const { return data_->cycle_index[x]; }
  std::size_t position_in_cycle(Point x) const { return data_->cycle_position[x]; }

  /// Image of a point set under f^n, sorted.
  PointSet image(const PointSet& set, std::int64_t n = 1) const;

  friend bool operator==(const FinSystem& a, const FinSystem& b) {
    return a.data_ == b.data_ || a.data_->forward == b.data_->forward;
  }

 private:
  struct Data {
    std::vector<Point> forward;
    std::vector<Point> backward;
    std::vector<std::vector<Point>> cycles;
    std::vector<std::size_t> cycle_index;
    std::vector<std::size_t> cycle_position;
  };
  explicit FinSystem(std::vector<Point> forward);
  std::shared_ptr<const Data> data_;
};

/// Cycle notation, e.g. `(0 1 2)(3 4 5 6 7 8)`; whitespace-insensitive.
FinSystem parse_cycles(std::string_view text, std::optional<std::size_t> size = std::nullopt);
/// Canonical cycle notation including fixed points, e.g. `(0)(1 2)`.
std::string to_cycle_string(const FinSystem& system);

/// A system restricted to an invariant subset, relabelled 0..k-1.
struct Subsystem {
  FinSystem system;
  std::vector<Point> original;  ///< local id -> id in the parent system
};
/// Throws DomainError if `points` is empty or not f-invariant.
Subsystem restrict_to(const FinSystem& system, const PointSet& points);

/// Which clauses of the periodic-partition definition a block list satisfies.
struct PartitionReport {
  bool clopen = true;  ///< vacuous on a finite discrete space
  bool nonempty = false;
  bool cyclic_image = false;  ///< f(W_{i-1}) = W_i and f(W_{m-1}) = W_0
  bool disjoint = false;
  bool covering = false;
  bool in_range = false;  ///< every id is a point of the system
  std::size_t length = 0;

  bool valid() const { return clopen && nonempty && cyclic_image && disjoint && covering && in_range; }
};

PartitionReport validate_partition(const FinSystem& system, std::span<const PointSet> blocks);

class PeriodicPartition {
 public:
  /// Throws DomainError unless the blocks form a periodic partition.
  static PeriodicPartition from_blocks(FinSystem system, std::vector<PointSet> blocks);
  /// labels[x] is the block index of x; same validity requirement.
  static PeriodicPartition from_labels(FinSystem system, std::vector<std::uint32_t> labels,
                                       std::uint32_t length);
  static PeriodicPartition trivial(FinSystem system);

  const FinSystem& system() const { return system_; }
  std::uint32_t length() const { return length_; }
  std::uint32_t block_of(Point x) const { return labels_[x]; }
  std::span<const std::uint32_t> labels() const { return labels_; }
  PointSet block(std::uint32_t i) const;
  std::vector<PointSet> blocks() const;

  friend bool operator==(const PeriodicPartition& a, const PeriodicPartition& b) {
    return a.length_ == b.length_ && a.labels_ == b.labels_ && a.system_ == b.system_;
  }

 private:
  PeriodicPartition(FinSystem system, std::vector<std::uint32_t> labels, std::uint32_t length)
      : system_(std::move(system)), labels_(std::move(labels)), length_(length) {}

  FinSystem system_;
  std::vector<std::uint32_t> labels_;
  std::uint32_t length_ = 1;
};

PartitionReport validate_partition(const PeriodicPartition& partition);

struct OracleConfig {
  std::size_t max_points = 12;
  std::uint32_t max_length = 12;
};

/// Exhaustive search over block assignments; every valid length-m partition,
/// sorted by label vector. Throws DomainError beyond the configured bounds.
std::vector<PeriodicPartition> all_partitions(const FinSystem& system, std::uint32_t m,
                                              const OracleConfig& config = {});

struct EssPeriods {
  std::vector<std::uint64_t> periods;  ///< ascending
  Supernatural phi;
};

/// gcd of all cycle lengths.
std::uint64_t cycle_gcd(const FinSystem& system);
/// Lengths of all periodic partitions, i.e. the divisors of cycle_gcd.
EssPeriods ess_periods(const FinSystem& system);
bool in_ess(const FinSystem& system, std::uint64_t m);

/// Re-indexes so that new block j is old block i with j = i + k (mod m).
PeriodicPartition cyclic_shift(const PeriodicPartition& p, std::int64_t k);
bool are_equivalent(const PeriodicPartition& a, const PeriodicPartition& b);
/// Shift that puts the smallest point id in block 0.
PeriodicPartition canonical_form(const PeriodicPartition& p);

/// Length-d partition whose block j is the union of blocks i = j (mod d).
PeriodicPartition coarsen(const PeriodicPartition& p, std::uint32_t d);

/// A(k, l): union of f^s(W1_k n W2_l), s = 0..D-1, D = lcm of the lengths.
PointSet saturation(const PeriodicPartition& p1, std::uint32_t k, const PeriodicPartition& p2,
                    std::uint32_t l);
bool are_compatible(const PeriodicPartition& p1, const PeriodicPartition& p2);

/// Common refinement of two compatible partitions, length lcm(m1, m2). Block 0
/// is W1_0 n W2_j for the unique j < gcd(m1, m2) giving a nonempty intersection.
PeriodicPartition lcm_partition(const PeriodicPartition& p1, const PeriodicPartition& p2);

/// Reference length-m partition: on each cycle, block = position mod m counted
/// from the cycle's smallest id. Empty when m is not a period.
std::optional<PeriodicPartition> phase_partition(const FinSystem& system, std::uint32_t m);

/// A length-m2 partition compatible with p1, built from phase_partition(m2)
/// through the orbit-saturation decomposition with all shift parameters 0.
PeriodicPartition make_compatible(const PeriodicPartition& p1, std::uint32_t m2);

struct CompatibleFamily {
  std::vector<PeriodicPartition> members;
  /// Shift parameter t_C per invariant component (cycle), multiples of m1 in [0, D).
  std::vector<std::vector<std::uint64_t>> parameters;
  /// Equivalence class index per member, classes numbered by first appearance.
  std::vector<std::size_t> class_of;
  std::size_t class_count = 0;
};

/// The shifted-union family of length-m2 partitions compatible with p1, one
/// shift parameter per cycle. Covers every compatibility class.
CompatibleFamily enumerate_compatible(const PeriodicPartition& p1, std::uint32_t m2);

std::vector<PointSet> invariant_components(const FinSystem& system);
bool is_indecomposable(const FinSystem& system);

/// A regular sequence of periodic partitions: lengths form a divisibility
/// chain and each level refines the previous one.
class PartitionChain {
 public:
  /// Throws DomainError on an empty list, mixed systems, broken divisibility
  /// or a level that does not refine its predecessor.
  explicit PartitionChain(std::vector<PeriodicPartition> levels);

  const std::vector<PeriodicPartition>& levels() const { return levels_; }
  std::size_t depth() const { return levels_.size(); }
  const FinSystem& system() const { return levels_.front().system(); }
  RegularSeq lengths() const;

  friend bool operator==(const PartitionChain&, const PartitionChain&) = default;

 private:
  std::vector<PeriodicPartition> levels_;
};

struct ChainReport {
  bool nonempty = false;
  bool same_system = false;
  bool divisibility = false;
  bool consecutive_compatible = false;
  bool pairwise_compatible = false;
  bool refinement = false;

  bool valid() const {
    return nonempty && same_system && divisibility && consecutive_compatible &&
           pairwise_compatible && refinement;
  }
};

ChainReport validate_chain(std::span<const PeriodicPartition> levels);

/// Iterated make_compatible starting from the trivial partition.
PartitionChain build_chain(const FinSystem& system, const RegularSeq& lengths);
/// Inserts a level of length m where it keeps the divisibility chain, compatible
/// with every existing level.
PartitionChain extend_chain(const PartitionChain& chain, std::uint32_t m);

bool refines(const PeriodicPartition& fine, const PeriodicPartition& coarse);

/// Partition of the cycle through x with x in W_0, W_0 inside `neighborhood`,
/// of minimal length m such that f^{mk}(x) stays in the neighborhood.
struct ReturnPartition {
  std::uint64_t period = 1;
  Subsystem cycle;
  PeriodicPartition partition;  ///< on cycle.system, local ids
  /// Blocks translated back to ids of the parent system.
  std::vector<PointSet> global_blocks() const;
};

ReturnPartition partition_from_return(const FinSystem& system, Point x,
                                      const PointSet& neighborhood);

/// JSON array of sorted point arrays, e.g. [[0,2],[1,3]].
std::string to_json(const PeriodicPartition& p);
std::vector<PointSet> parse_blocks_json(std::string_view text);
PeriodicPartition parse_partition_json(const FinSystem& system, std::string_view text);

}  // namespace odokit
