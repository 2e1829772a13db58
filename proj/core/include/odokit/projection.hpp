#pragma once

// Projections of finite systems onto odometers: the label map
// x -> (alpha_1(x), ..., alpha_L(x)) of a partition chain, its fibers, the
// ordered family of such maps and the maximal element.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "odokit/dynsys.hpp"
#include "odokit/odometer.hpp"
#include "odokit/supernat.hpp"

namespace odokit {

/// Some point lies in block 0 at every level.
bool is_coherent(const PartitionChain& chain);
/// Shifts every level so that x lies in block 0.
PartitionChain normalize_coherent(const PartitionChain& chain, Point x);

class FactorMap {
 public:
  const FinSystem& source() const { return chain_.system(); }
  const PartitionChain& chain() const { return chain_; }
  const BaseSequence& target() const { return target_; }
  const AdicInt& labels(Point x) const { return labels_[x]; }

  /// Preimage of a label vector, possibly empty. Throws DomainError when the
  /// vector lives over a different base.
  PointSet fiber(const AdicInt& a) const;
  /// Nonempty fibers, ordered by smallest member.
  std::vector<PointSet> fibers() const;
  /// Fiber index of every point, numbered as in fibers().
  std::vector<std::size_t> fiber_index() const;
  /// Distinct label vectors hit, ordered by index on the truncation.
  std::vector<AdicInt> image() const;
  /// The image is the whole depth-L truncation.
  bool is_surjective() const;

 private:
  friend FactorMap build_factor_map(const FinSystem& source, const PartitionChain& chain);
  FactorMap(PartitionChain chain, BaseSequence target, std::vector<AdicInt> labels)
      : chain_(std::move(chain)), target_(std::move(target)), labels_(std::move(labels)) {}

  PartitionChain chain_;
  BaseSequence target_;
  std::vector<AdicInt> labels_;
};

/// Throws DomainError when the chain lives on another system. A chain that is
/// not coherent is first normalized at point 0.
FactorMap build_factor_map(const FinSystem& source, const PartitionChain& chain);

/// The down-set {N : N <= top}.
struct SigmaDownSet {
  Supernatural top;
  bool contains(const Supernatural& n) const { return leq(n, top); }
};

SigmaDownSet sigma_of_system(const FinSystem& system);
bool projection_exists(const FinSystem& system, const BaseSequence& base);

enum class ProjectionOrder {
  kEquivalent,
  kFirstFactorsThroughSecond,  ///< fibers of the second refine those of the first
  kSecondFactorsThroughFirst,  ///< fibers of the first refine those of the second
  kIncomparable,
};

ProjectionOrder compare_projections(const FactorMap& f1, const FactorMap& f2);
std::string to_string(ProjectionOrder order);

struct MaximalityReport {
  bool maximal = false;
  /// Always set: the verdict concerns the chain at its working depth, not the
  /// full inverse limit.
  bool truncation_caveat = true;
  std::size_t depth = 0;
};

MaximalityReport is_maximal_projection(const FactorMap& f);

struct MaxFactor {
  BaseSequence base;
  FactorMap map;
};

/// Number of support primes of top plus its largest exponent, at least 1.
std::size_t default_factor_depth(const Supernatural& top);
/// Chain realizing extract_regular_sequence(top, depth) and its label map.
MaxFactor max_odometer_factor(const FinSystem& system, std::optional<std::size_t> depth = {});

struct FactorMapFamily {
  std::vector<FactorMap> maps;
  std::vector<std::size_t> class_of;
  std::size_t class_count = 0;
};

/// Every chain obtained by composing enumerate_compatible level by level,
/// grouped by mutual fiber refinement.
FactorMapFamily enumerate_factor_maps(const FinSystem& system, const RegularSeq& lengths);

/// Points whose fiber is a singleton.
PointSet singleton_fiber_set(const FactorMap& f);
/// Points x such that every neighbourhood U of x has some n with f^{nk}(x) in U
/// for all k. On a finite system this is every point.
PointSet almost_periodic_points(const FinSystem& system);

/// {"target_levels", "labels", "fibers", "maximal", "sigma_top"} with stable key order.
std::string factor_map_json(const FactorMap& f, int indent = 2);

}  // namespace odokit
