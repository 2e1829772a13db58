#include "odokit/projection.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "odokit/error.hpp"

namespace odokit {

namespace {

constexpr std::size_t kMaxFamilySize = 4096;

// Each fiber of `fine` lies inside a single fiber of `coarse`.
bool fibers_refine(const std::vector<std::size_t>& fine, const std::vector<std::size_t>& coarse) {
  std::map<std::size_t, std::size_t> image;
  for (std::size_t x = 0; x < fine.size(); ++x) {
    auto [it, inserted] = image.emplace(fine[x], coarse[x]);
    if (!inserted && it->second != coarse[x]) return false;
  }
  return true;
}

}  // namespace

bool is_coherent(const PartitionChain& chain) {
  const auto& levels = chain.levels();
  for (Point x = 0; x < chain.system().size(); ++x) {
    if (std::all_of(levels.begin(), levels.end(),
                    [x](const PeriodicPartition& p) { return p.block_of(x) == 0; })) {
      return true;
    }
  }
  return false;
}

PartitionChain normalize_coherent(const PartitionChain& chain, Point x) {
  if (x >= chain.system().size()) throw DomainError("anchor point out of range");
  std::vector<PeriodicPartition> levels;
  for (const auto& p : chain.levels()) {
    levels.push_back(cyclic_shift(p, -static_cast<std::int64_t>(p.block_of(x))));
  }
  return PartitionChain(std::move(levels));
}

PointSet FactorMap::fiber(const AdicInt& a) const {
  if (!(a.base() == target_)) throw DomainError("label vector lives over a different base");
  PointSet out;
  for (Point x = 0; x < labels_.size(); ++x)
    if (labels_[x] == a) out.push_back(x);
  return out;
}

std::vector<std::size_t> FactorMap::fiber_index() const {
  std::map<std::vector<std::uint64_t>, std::size_t> ids;
  std::vector<std::size_t> out;
  out.reserve(labels_.size());
  for (const auto& a : labels_) {
    auto it = ids.emplace(a.residues(), ids.size()).first;
    out.push_back(it->second);
  }
  return out;
}

std::vector<PointSet> FactorMap::fibers() const {
  const auto index = fiber_index();
  std::vector<PointSet> out;
  for (Point x = 0; x < index.size(); ++x) {
    if (index[x] == out.size()) out.emplace_back();
    out[index[x]].push_back(x);
  }
  return out;
}

std::vector<AdicInt> FactorMap::image() const {
  std::map<std::uint64_t, const AdicInt*> hit;
  for (const auto& a : labels_) hit.emplace(a.index(), &a);
  std::vector<AdicInt> out;
  for (const auto& [_, a] : hit) out.push_back(*a);
  return out;
}

bool FactorMap::is_surjective() const { return image().size() == target_.top_level(); }

FactorMap build_factor_map(const FinSystem& source, const PartitionChain& chain) {
  if (!(chain.system() == source)) throw DomainError("chain lives on a different system");
  PartitionChain coherent = is_coherent(chain) ? chain : normalize_coherent(chain, 0);
  BaseSequence target(coherent.lengths());
  std::vector<AdicInt> labels;
  labels.reserve(source.size());
  for (Point x = 0; x < source.size(); ++x) {
    std::vector<std::uint64_t> r;
    for (const auto& p : coherent.levels()) r.push_back(p.block_of(x));
    labels.emplace_back(target, std::move(r));
  }
  return FactorMap(std::move(coherent), std::move(target), std::move(labels));
}

SigmaDownSet sigma_of_system(const FinSystem& system) { return {ess_periods(system).phi}; }

bool projection_exists(const FinSystem& system, const BaseSequence& base) {
  return sigma_of_system(system).contains(ess_of_odometer(base));
}

ProjectionOrder compare_projections(const FactorMap& f1, const FactorMap& f2) {
  if (!(f1.source() == f2.source())) throw DomainError("projections of different systems");
  const auto a = f1.fiber_index();
  const auto b = f2.fiber_index();
  const bool first_finer = fibers_refine(a, b);
  const bool second_finer = fibers_refine(b, a);
  if (first_finer && second_finer) return ProjectionOrder::kEquivalent;
  if (second_finer) return ProjectionOrder::kFirstFactorsThroughSecond;
  if (first_finer) return ProjectionOrder::kSecondFactorsThroughFirst;
  return ProjectionOrder::kIncomparable;
}

std::string to_string(ProjectionOrder order) {
  switch (order) {
    case ProjectionOrder::kEquivalent:
      return "equivalent";
    case ProjectionOrder::kFirstFactorsThroughSecond:
      return "first-factors-through-second";
    case ProjectionOrder::kSecondFactorsThroughFirst:
      return "second-factors-through-first";
    case ProjectionOrder::kIncomparable:
      return "incomparable";
  }
  return "incomparable";
}

MaximalityReport is_maximal_projection(const FactorMap& f) {
  MaximalityReport r;
  r.maximal = ess_of_odometer(f.target()) == sigma_of_system(f.source()).top;
  r.depth = f.target().depth();
  return r;
}

std::size_t default_factor_depth(const Supernatural& top) {
  std::size_t support = 0;
  std::uint64_t largest = 0;
  for (const auto& [p, e] : top.exceptions()) {
    if (e.is_zero()) continue;
    ++support;
    if (!e.is_infinite()) largest = std::max(largest, e.value());
  }
  return std::max<std::size_t>(1, support + largest);
}

MaxFactor max_odometer_factor(const FinSystem& system, std::optional<std::size_t> depth) {
  const Supernatural top = sigma_of_system(system).top;
  const std::size_t k = depth.value_or(default_factor_depth(top));
  if (k == 0) throw DomainError("depth must be positive");
  const RegularSeq seq = extract_regular_sequence(top, k);
  FactorMap map = build_factor_map(system, build_chain(system, seq));
  return MaxFactor{map.target(), std::move(map)};
}

FactorMapFamily enumerate_factor_maps(const FinSystem& system, const RegularSeq& lengths) {
  if (lengths.empty()) throw DomainError("a chain needs at least one level");
  for (std::uint64_t n : lengths.terms()) {
    if (!in_ess(system, n)) throw DomainError(std::to_string(n) + " is not a period of the system");
  }

  std::vector<std::vector<PeriodicPartition>> chains{{}};
  for (std::uint64_t n : lengths.terms()) {
    std::vector<std::vector<PeriodicPartition>> next;
    for (const auto& prefix : chains) {
      const PeriodicPartition parent =
          prefix.empty() ? PeriodicPartition::trivial(system) : prefix.back();
      for (auto& member : enumerate_compatible(parent, static_cast<std::uint32_t>(n)).members) {
        if (next.size() >= kMaxFamilySize) throw DomainError("factor map family too large");
        auto chain = prefix;
        chain.push_back(std::move(member));
        next.push_back(std::move(chain));
      }
    }
    chains = std::move(next);
  }

  FactorMapFamily family;
  std::map<std::vector<std::size_t>, std::size_t> classes;
  for (auto& levels : chains) {
    FactorMap map = build_factor_map(system, PartitionChain(std::move(levels)));
    auto it = classes.emplace(map.fiber_index(), classes.size()).first;
    family.class_of.push_back(it->second);
    family.maps.push_back(std::move(map));
  }
  family.class_count = classes.size();
  return family;
}

PointSet singleton_fiber_set(const FactorMap& f) {
  PointSet out;
  for (const auto& fiber : f.fibers())
    if (fiber.size() == 1) out.push_back(fiber.front());
  std::sort(out.begin(), out.end());
  return out;
}

PointSet almost_periodic_points(const FinSystem& system) {
  // The smallest neighbourhood of x is {x}; a return time into it exists iff x is recurrent.
  PointSet out;
  for (Point x = 0; x < system.size(); ++x) {
    const PointSet u{x};
    if (partition_from_return(system, x, u).period >= 1) out.push_back(x);
  }
  return out;
}

std::string factor_map_json(const FactorMap& f, int indent) {
  nlohmann::ordered_json j;
  j["target_levels"] = f.target().levels();
  nlohmann::ordered_json labels = nlohmann::ordered_json::object();
  for (Point x = 0; x < f.source().size(); ++x) labels[std::to_string(x)] = f.labels(x).residues();
  j["labels"] = std::move(labels);
  j["fibers"] = f.fibers();
  j["maximal"] = is_maximal_projection(f).maximal;
  j["sigma_top"] = to_string(sigma_of_system(f.source()).top);
  return j.dump(indent);
}

}  // namespace odokit
