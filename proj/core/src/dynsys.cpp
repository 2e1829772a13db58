#include "odokit/dynsys.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "odokit/error.hpp"
#include "odokit/numtheory.hpp"

namespace odokit {

namespace {

constexpr std::uint32_t kUnassigned = static_cast<std::uint32_t>(-1);
constexpr std::size_t kMaxFamilySize = std::size_t{1} << 16;

std::uint32_t to_length(std::uint64_t m) {
  if (m == 0 || m > static_cast<std::uint64_t>(kUnassigned - 1)) {
    throw DomainError("partition length " + std::to_string(m) + " out of range");
  }
  return static_cast<std::uint32_t>(m);
}

void require_same_system(const PeriodicPartition& a, const PeriodicPartition& b) {
  if (!(a.system() == b.system())) throw DomainError("partitions live on different systems");
}

}  // namespace

// ---------------------------------------------------------------------------
// FinSystem

FinSystem::FinSystem() : FinSystem(std::vector<Point>{0}) {}

FinSystem::FinSystem(std::vector<Point> forward) {
  auto data = std::make_shared<Data>();
  const std::size_t n = forward.size();
  data->backward.assign(n, kUnassigned);
  for (std::size_t x = 0; x < n; ++x) {
    const Point y = forward[x];
    if (y >= n) throw DomainError("permutation image " + std::to_string(y) + " out of range");
    if (data->backward[y] != kUnassigned) {
      throw DomainError("not a permutation: " + std::to_string(y) + " has two preimages");
    }
    data->backward[y] = static_cast<Point>(x);
  }
  data->forward = std::move(forward);
  data->cycle_index.assign(n, 0);
  data->cycle_position.assign(n, 0);
  std::vector<bool> seen(n, false);
  for (Point start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<Point> cyc;
    for (Point x = start; !seen[x]; x = data->forward[x]) {
      seen[x] = true;
      data->cycle_index[x] = data->cycles.size();
      data->cycle_position[x] = cyc.size();
      cyc.push_back(x);
    }
    data->cycles.push_back(std::move(cyc));
  }
  data_ = std::move(data);
}

FinSystem FinSystem::from_permutation(std::vector<Point> forward) {
  if (forward.empty()) throw DomainError("a system needs at least one point");
  return FinSystem(std::move(forward));
}

FinSystem FinSystem::from_cycles(const std::vector<std::vector<Point>>& cycles,
                                 std::optional<std::size_t> size) {
  std::size_t n = size.value_or(0);
  if (!size) {
    for (const auto& c : cycles)
      for (Point x : c) n = std::max<std::size_t>(n, std::size_t{x} + 1);
  }
  if (n == 0) throw DomainError("a system needs at least one point");
  std::vector<Point> forward(n);
  std::iota(forward.begin(), forward.end(), Point{0});
  std::vector<bool> used(n, false);
  for (const auto& c : cycles) {
    if (c.empty()) throw DomainError("empty cycle");
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Point x = c[i];
      if (x >= n) {
        throw DomainError("point " + std::to_string(x) + " exceeds system size " +
                          std::to_string(n));
      }
      if (used[x]) throw DomainError("point " + std::to_string(x) + " appears twice");
      used[x] = true;
      forward[x] = c[(i + 1) % c.size()];
    }
  }
  return FinSystem(std::move(forward));
}

FinSystem FinSystem::cycle(std::size_t n) {
  if (n == 0) throw DomainError("a system needs at least one point");
  std::vector<Point> forward(n);
  for (std::size_t x = 0; x < n; ++x) forward[x] = static_cast<Point>((x + 1) % n);
  return FinSystem(std::move(forward));
}

Point FinSystem::iterate(Point x, std::int64_t n) const {
  const auto& cyc = data_->cycles[data_->cycle_index[x]];
  const std::uint64_t len = cyc.size();
  const std::int64_t pos = static_cast<std::int64_t>(data_->cycle_position[x]);
  // pos + n mod len, computed without overflow.
  const std::uint64_t shift = numtheory::mod(n, len);
  return cyc[(static_cast<std::uint64_t>(pos) + shift) % len];
}

PointSet FinSystem::image(const PointSet& set, std::int64_t n) const {
  PointSet out;
  out.reserve(set.size());
  for (Point x : set) out.push_back(iterate(x, n));
  std::sort(out.begin(), out.end());
  return out;
}

FinSystem parse_cycles(std::string_view text, std::optional<std::size_t> size) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') {
      throw ParseError("expected '(' at offset " + std::to_string(i) + " in cycle notation");
    }
    ++i;
    std::vector<Point> cyc;
    for (;;) {
      skip_ws();
      if (i >= text.size()) throw ParseError("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw ParseError(std::string("unexpected character '") + text[i] + "' in cycle notation");
      }
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > 1'000'000) throw ParseError("point id too large");
        ++i;
      }
      cyc.push_back(static_cast<Point>(v));
    }
    if (cyc.empty()) throw ParseError("empty cycle '()'");
    cycles.push_back(std::move(cyc));
    skip_ws();
  }
  if (cycles.empty() && !size) throw ParseError("empty cycle notation without explicit size");
  try {
    return FinSystem::from_cycles(cycles, size);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string to_cycle_string(const FinSystem& system) {
  std::string out;
  for (const auto& c : system.cycles()) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(c[i]);
    }
    out += ')';
  }
  return out;
}

Subsystem restrict_to(const FinSystem& system, const PointSet& points) {
  if (points.empty()) throw DomainError("cannot restrict to an empty set");
  if (system.image(points) != points) throw DomainError("point set is not invariant");
  std::map<Point, Point> local;
  for (std::size_t i = 0; i < points.size(); ++i) local.emplace(points[i], static_cast<Point>(i));
  std::vector<Point> forward(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    forward[i] = local.at(system.forward(points[i]));
  }
  return Subsystem{FinSystem::from_permutation(std::move(forward)), points};
}

// ---------------------------------------------------------------------------
// Periodic partitions

PartitionReport validate_partition(const FinSystem& system, std::span<const PointSet> blocks) {
  PartitionReport r;
  r.length = blocks.size();
  const std::size_t n = system.size();

  r.in_range = std::all_of(blocks.begin(), blocks.end(), [n](const PointSet& b) {
    return std::all_of(b.begin(), b.end(), [n](Point x) { return x < n; });
  });
  r.nonempty = !blocks.empty() && std::none_of(blocks.begin(), blocks.end(),
                                               [](const PointSet& b) { return b.empty(); });
  if (!r.in_range || blocks.empty()) return r;

  std::vector<std::size_t> hits(n, 0);
  for (const auto& b : blocks) {
    PointSet sorted = b;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (Point x : sorted) ++hits[x];
  }
  r.disjoint = std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h <= 1; });
  r.covering = std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h >= 1; });

  r.cyclic_image = true;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    PointSet from = blocks[i];
    std::sort(from.begin(), from.end());
    from.erase(std::unique(from.begin(), from.end()), from.end());
    PointSet to = blocks[(i + 1) % blocks.size()];
    std::sort(to.begin(), to.end());
    to.erase(std::unique(to.begin(), to.end()), to.end());
    if (system.image(from) != to) {
      r.cyclic_image = false;
      break;
    }
  }
  return r;
}

PeriodicPartition PeriodicPartition::from_blocks(FinSystem system, std::vector<PointSet> blocks) {
  const PartitionReport r = validate_partition(system, blocks);
  if (!r.valid()) throw DomainError("blocks do not form a periodic partition");
  std::vector<std::uint32_t> labels(system.size(), 0);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (Point x : blocks[i]) labels[x] = static_cast<std::uint32_t>(i);
  return PeriodicPartition(std::move(system), std::move(labels),
                           static_cast<std::uint32_t>(blocks.size()));
}

PeriodicPartition PeriodicPartition::from_labels(FinSystem system,
                                                 std::vector<std::uint32_t> labels,
                                                 std::uint32_t length) {
  if (length == 0) throw DomainError("partition length must be positive");
  if (labels.size() != system.size()) throw DomainError("label vector size mismatch");
  std::vector<bool> used(length, false);
  for (Point x = 0; x < labels.size(); ++x) {
    if (labels[x] >= length) throw DomainError("label out of range");
    used[labels[x]] = true;
    if (labels[system.forward(x)] != (labels[x] + 1) % length) {
      throw DomainError("labels are not shifted by the map");
    }
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw DomainError("empty block in partition");
  }
  return PeriodicPartition(std::move(system), std::move(labels), length);
}

PeriodicPartition PeriodicPartition::trivial(FinSystem system) {
  std::vector<std::uint32_t> labels(system.size(), 0);
  return PeriodicPartition(std::move(system), std::move(labels), 1);
}

PointSet PeriodicPartition::block(std::uint32_t i) const {
  if (i >= length_) throw DomainError("block index out of range");
  PointSet out;
  for (Point x = 0; x < labels_.size(); ++x)
    if (labels_[x] == i) out.push_back(x);
  return out;
}

std::vector<PointSet> PeriodicPartition::blocks() const {
  std::vector<PointSet> out(length_);
  for (Point x = 0; x < labels_.size(); ++x) out[labels_[x]].push_back(x);
  return out;
}

PartitionReport validate_partition(const PeriodicPartition& partition) {
  const auto blocks = partition.blocks();
  return validate_partition(partition.system(), blocks);
}

// ---------------------------------------------------------------------------
// Oracle

std::vector<PeriodicPartition> all_partitions(const FinSystem& system, std::uint32_t m,
                                              const OracleConfig& config) {
  if (m == 0) throw DomainError("partition length must be positive");
  if (system.size() > config.max_points) {
    throw DomainError("oracle bound exceeded: " + std::to_string(system.size()) + " points > " +
                      std::to_string(config.max_points));
  }
  if (m > config.max_length) {
    throw DomainError("oracle bound exceeded: length " + std::to_string(m) + " > " +
                      std::to_string(config.max_length));
  }

  const std::size_t n = system.size();
  std::vector<std::uint32_t> labels(n, kUnassigned);
  std::vector<PeriodicPartition> out;

  // Depth-first over label assignments in point order; a branch is cut as soon
  // as an assigned point and an assigned neighbour disagree with W_i -> W_{i+1}.
  auto consistent = [&](Point x) {
    const Point next = system.forward(x);
    const Point prev = system.backward(x);
    if (labels[next] != kUnassigned && labels[next] != (labels[x] + 1) % m) return false;
    if (labels[prev] != kUnassigned && (labels[prev] + 1) % m != labels[x]) return false;
    return true;
  };
  auto recurse = [&](auto&& self, Point x) -> void {
    if (x == n) {
      std::vector<PointSet> blocks(m);
      for (Point y = 0; y < n; ++y) blocks[labels[y]].push_back(y);
      if (validate_partition(system, blocks).valid()) {
        out.push_back(PeriodicPartition::from_blocks(system, std::move(blocks)));
      }
      return;
    }
    for (std::uint32_t label = 0; label < m; ++label) {
      labels[x] = label;
      if (consistent(x)) self(self, x + 1);
    }
    labels[x] = kUnassigned;
  };
  recurse(recurse, 0);
  return out;
}

std::uint64_t cycle_gcd(const FinSystem& system) {
  std::uint64_t g = 0;
  for (const auto& c : system.cycles()) g = std::gcd(g, static_cast<std::uint64_t>(c.size()));
  return g;
}

EssPeriods ess_periods(const FinSystem& system) {
  const std::uint64_t g = cycle_gcd(system);
  return EssPeriods{numtheory::divisors(g), phi0(g)};
}

bool in_ess(const FinSystem& system, std::uint64_t m) {
  return m != 0 && cycle_gcd(system) % m == 0;
}

// ---------------------------------------------------------------------------
// Equivalence, coarsening, compatibility

PeriodicPartition cyclic_shift(const PeriodicPartition& p, std::int64_t k) {
  const std::uint32_t m = p.length();
  const std::uint64_t s = numtheory::mod(k, m);
  std::vector<std::uint32_t> labels(p.labels().begin(), p.labels().end());
  for (auto& l : labels) l = static_cast<std::uint32_t>((l + s) % m);
  return PeriodicPartition::from_labels(p.system(), std::move(labels), m);
}

bool are_equivalent(const PeriodicPartition& a, const PeriodicPartition& b) {
  require_same_system(a, b);
  if (a.length() != b.length()) throw DomainError("equivalence needs equal lengths");
  const std::uint32_t m = a.length();
  const std::uint32_t k = (b.block_of(0) + m - a.block_of(0)) % m;
  return cyclic_shift(a, k) == b;
}

PeriodicPartition canonical_form(const PeriodicPartition& p) {
  return cyclic_shift(p, -static_cast<std::int64_t>(p.block_of(0)));
}

PeriodicPartition coarsen(const PeriodicPartition& p, std::uint32_t d) {
  if (d == 0 || p.length() % d != 0) {
    throw DomainError(std::to_string(d) + " does not divide the partition length " +
                      std::to_string(p.length()));
  }
  std::vector<std::uint32_t> labels(p.labels().begin(), p.labels().end());
  for (auto& l : labels) l %= d;
  return PeriodicPartition::from_labels(p.system(), std::move(labels), d);
}

namespace {

PointSet intersection(const PeriodicPartition& p1, std::uint32_t k, const PeriodicPartition& p2,
                      std::uint32_t l) {
  PointSet out;
  for (Point x = 0; x < p1.system().size(); ++x)
    if (p1.block_of(x) == k && p2.block_of(x) == l) out.push_back(x);
  return out;
}

std::uint64_t lcm_length(const PeriodicPartition& p1, const PeriodicPartition& p2) {
  return numtheory::checked_lcm(p1.length(), p2.length());
}

// Partition of length `period` whose block s is f^s(seed) for s < span,
// folded mod period. Seeds must make the union a valid partition.
PeriodicPartition unfold(const FinSystem& system, const PointSet& seed, std::uint64_t span,
                         std::uint32_t period) {
  std::vector<std::uint32_t> labels(system.size(), kUnassigned);
  for (Point x : seed) {
    Point y = x;
    for (std::uint64_t s = 0; s < span; ++s) {
      const auto label = static_cast<std::uint32_t>(s % period);
      if (labels[y] != kUnassigned && labels[y] != label) {
        throw std::logic_error("unfolded blocks overlap");
      }
      labels[y] = label;
      y = system.forward(y);
    }
  }
  if (std::find(labels.begin(), labels.end(), kUnassigned) != labels.end()) {
    throw std::logic_error("unfolded blocks do not cover the space");
  }
  return PeriodicPartition::from_labels(system, std::move(labels), period);
}

}  // namespace

PointSet saturation(const PeriodicPartition& p1, std::uint32_t k, const PeriodicPartition& p2,
                    std::uint32_t l) {
  require_same_system(p1, p2);
  if (k >= p1.length() || l >= p2.length()) throw DomainError("block index out of range");
  const FinSystem& sys = p1.system();
  const std::uint64_t big = lcm_length(p1, p2);
  std::vector<bool> in(sys.size(), false);
  for (Point x : intersection(p1, k, p2, l)) {
    Point y = x;
    for (std::uint64_t s = 0; s < big; ++s) {
      in[y] = true;
      y = sys.forward(y);
    }
  }
  PointSet out;
  for (Point x = 0; x < in.size(); ++x)
    if (in[x]) out.push_back(x);
  return out;
}

bool are_compatible(const PeriodicPartition& p1, const PeriodicPartition& p2) {
  require_same_system(p1, p2);
  const std::size_t n = p1.system().size();
  for (std::uint32_t k = 0; k < p1.length(); ++k) {
    for (std::uint32_t l = 0; l < p2.length(); ++l) {
      const std::size_t size = saturation(p1, k, p2, l).size();
      if (size != 0 && size != n) return false;
    }
  }
  return true;
}

PeriodicPartition lcm_partition(const PeriodicPartition& p1, const PeriodicPartition& p2) {
  require_same_system(p1, p2);
  if (!are_compatible(p1, p2)) throw DomainError("lcm_partition needs compatible partitions");
  const std::uint32_t d = std::gcd(p1.length(), p2.length());
  const std::uint32_t big = to_length(lcm_length(p1, p2));
  for (std::uint32_t j = 0; j < d; ++j) {
    PointSet seed = intersection(p1, 0, p2, j);
    if (!seed.empty()) return unfold(p1.system(), seed, big, big);
  }
  throw std::logic_error("block 0 meets no block of the second partition");
}

std::optional<PeriodicPartition> phase_partition(const FinSystem& system, std::uint32_t m) {
  if (m == 0) throw DomainError("partition length must be positive");
  std::vector<std::uint32_t> labels(system.size());
  for (const auto& c : system.cycles()) {
    if (c.size() % m != 0) return std::nullopt;
    for (std::size_t i = 0; i < c.size(); ++i) labels[c[i]] = static_cast<std::uint32_t>(i % m);
  }
  return PeriodicPartition::from_labels(system, std::move(labels), m);
}

PeriodicPartition make_compatible(const PeriodicPartition& p1, std::uint32_t m2) {
  const FinSystem& sys = p1.system();
  auto reference = phase_partition(sys, m2);
  if (!reference) {
    throw DomainError(std::to_string(m2) + " is not a period of the system");
  }
  const std::uint32_t d = std::gcd(p1.length(), m2);
  const std::uint64_t big = numtheory::checked_lcm(p1.length(), m2);
  // Union over the nonempty saturations A(0, j), j < d, of W1_0 n W2_j.
  PointSet seed;
  for (std::uint32_t j = 0; j < d; ++j) {
    const PointSet part = intersection(p1, 0, *reference, j);
    seed.insert(seed.end(), part.begin(), part.end());
  }
  std::sort(seed.begin(), seed.end());
  return unfold(sys, seed, big, m2);
}

CompatibleFamily enumerate_compatible(const PeriodicPartition& p1, std::uint32_t m2) {
  const FinSystem& sys = p1.system();
  const PeriodicPartition base = make_compatible(p1, m2);
  const std::uint32_t m1 = p1.length();
  const std::uint64_t big = numtheory::checked_lcm(m1, m2);
  const std::uint64_t choices = big / m1;

  // Seed per cycle: W1_0 n B_0 restricted to the cycle; nonempty because B_0
  // contains the saturation seed, which meets every cycle.
  std::vector<PointSet> seeds;
  for (const auto& c : sys.cycles()) {
    PointSet s;
    for (Point x : c)
      if (p1.block_of(x) == 0 && base.block_of(x) == 0) s.push_back(x);
    if (s.empty()) throw std::logic_error("cycle missed by compatible seed");
    std::sort(s.begin(), s.end());
    seeds.push_back(std::move(s));
  }

  std::size_t total = 1;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (total > kMaxFamilySize / choices) throw DomainError("compatible family too large");
    total *= choices;
  }

  CompatibleFamily family;
  std::map<std::vector<std::uint32_t>, std::size_t> class_ids;
  std::vector<std::uint64_t> digits(seeds.size(), 0);
  for (std::size_t index = 0; index < total; ++index) {
    std::size_t rest = index;
    for (std::size_t c = seeds.size(); c-- > 0;) {
      digits[c] = rest % choices;
      rest /= choices;
    }
    PointSet seed;
    std::vector<std::uint64_t> params;
    for (std::size_t c = 0; c < seeds.size(); ++c) {
      const std::uint64_t t = digits[c] * m1;
      params.push_back(t);
      const PointSet moved = sys.image(seeds[c], static_cast<std::int64_t>(t));
      seed.insert(seed.end(), moved.begin(), moved.end());
    }
    std::sort(seed.begin(), seed.end());
    PeriodicPartition member = unfold(sys, seed, big, m2);
    const PeriodicPartition canon = canonical_form(member);
    std::vector<std::uint32_t> key(canon.labels().begin(), canon.labels().end());
    auto [it, inserted] = class_ids.emplace(std::move(key), class_ids.size());
    family.class_of.push_back(it->second);
    family.members.push_back(std::move(member));
    family.parameters.push_back(std::move(params));
  }
  family.class_count = class_ids.size();
  return family;
}

std::vector<PointSet> invariant_components(const FinSystem& system) {
  std::vector<PointSet> out;
  for (const auto& c : system.cycles()) {
    PointSet s = c;
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
  }
  return out;
}

bool is_indecomposable(const FinSystem& system) { return system.cycles().size() == 1; }

// ---------------------------------------------------------------------------
// Chains

bool refines(const PeriodicPartition& fine, const PeriodicPartition& coarse) {
  require_same_system(fine, coarse);
  std::vector<std::uint32_t> target(fine.length(), kUnassigned);
  for (Point x = 0; x < fine.system().size(); ++x) {
    auto& t = target[fine.block_of(x)];
    if (t == kUnassigned) {
      t = coarse.block_of(x);
    } else if (t != coarse.block_of(x)) {
      return false;
    }
  }
  return true;
}

ChainReport validate_chain(std::span<const PeriodicPartition> levels) {
  ChainReport r;
  r.nonempty = !levels.empty();
  if (!r.nonempty) return r;
  r.same_system = std::all_of(levels.begin(), levels.end(), [&](const PeriodicPartition& p) {
    return p.system() == levels.front().system();
  });
  if (!r.same_system) return r;
  r.divisibility = r.consecutive_compatible = r.pairwise_compatible = r.refinement = true;
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    if (levels[k + 1].length() % levels[k].length() != 0) r.divisibility = false;
    if (!are_compatible(levels[k], levels[k + 1])) r.consecutive_compatible = false;
    if (!refines(levels[k + 1], levels[k])) r.refinement = false;
  }
  for (std::size_t a = 0; a < levels.size(); ++a)
    for (std::size_t b = a + 1; b < levels.size(); ++b)
      if (!are_compatible(levels[a], levels[b])) r.pairwise_compatible = false;
  return r;
}

PartitionChain::PartitionChain(std::vector<PeriodicPartition> levels) : levels_(std::move(levels)) {
  const ChainReport r = validate_chain(levels_);
  if (!r.nonempty) throw DomainError("a chain needs at least one level");
  if (!r.same_system) throw DomainError("chain levels live on different systems");
  if (!r.divisibility) throw DomainError("chain lengths do not form a divisibility chain");
  if (!r.refinement || !r.consecutive_compatible || !r.pairwise_compatible) {
    throw DomainError("chain levels are not compatible");
  }
}

RegularSeq PartitionChain::lengths() const {
  std::vector<std::uint64_t> out;
  for (const auto& p : levels_) out.push_back(p.length());
  return RegularSeq(std::move(out));
}

PartitionChain build_chain(const FinSystem& system, const RegularSeq& lengths) {
  if (lengths.empty()) throw DomainError("a chain needs at least one level");
  std::vector<PeriodicPartition> levels;
  PeriodicPartition previous = PeriodicPartition::trivial(system);
  for (std::uint64_t n : lengths.terms()) {
    previous = make_compatible(previous, to_length(n));
    levels.push_back(previous);
  }
  return PartitionChain(std::move(levels));
}

PartitionChain extend_chain(const PartitionChain& chain, std::uint32_t m) {
  const FinSystem& sys = chain.system();
  if (!in_ess(sys, m)) throw DomainError(std::to_string(m) + " is not a period of the system");
  const auto& levels = chain.levels();
  const std::size_t depth = levels.size();
  std::optional<std::size_t> slot;
  for (std::size_t pos = 0; pos <= depth; ++pos) {
    const bool after_ok = pos == 0 || m % levels[pos - 1].length() == 0;
    const bool before_ok = pos == depth || levels[pos].length() % m == 0;
    if (after_ok && before_ok) slot = pos;
  }
  if (!slot) {
    throw DomainError(std::to_string(m) + " does not fit the divisibility chain");
  }
  std::vector<PeriodicPartition> out(levels.begin(), levels.end());
  if (*slot < depth) {
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(*slot), coarsen(levels[*slot], m));
  } else {
    out.push_back(make_compatible(levels.back(), m));
  }
  return PartitionChain(std::move(out));
}

// ---------------------------------------------------------------------------
// Returnability

std::vector<PointSet> ReturnPartition::global_blocks() const {
  std::vector<PointSet> out;
  for (const auto& b : partition.blocks()) {
    PointSet g;
    for (Point x : b) g.push_back(cycle.original[x]);
    std::sort(g.begin(), g.end());
    out.push_back(std::move(g));
  }
  return out;
}

ReturnPartition partition_from_return(const FinSystem& system, Point x,
                                      const PointSet& neighborhood) {
  if (x >= system.size()) throw DomainError("point out of range");
  if (!std::binary_search(neighborhood.begin(), neighborhood.end(), x)) {
    throw DomainError("neighborhood does not contain the point");
  }
  const auto& cyc = system.cycles()[system.cycle_of(x)];
  const std::uint64_t len = cyc.size();
  auto inside = [&](Point y) { return std::binary_search(neighborhood.begin(), neighborhood.end(), y); };

  // The f^n-orbit of x is its f^gcd(n, len)-orbit, so the minimum is a divisor of len.
  std::uint64_t period = len;
  for (std::uint64_t n : numtheory::divisors(len)) {
    bool ok = true;
    for (std::uint64_t k = 0; k < len / n && ok; ++k) {
      ok = inside(system.iterate(x, static_cast<std::int64_t>(k * n)));
    }
    if (ok) {
      period = n;
      break;
    }
  }

  PointSet members(cyc.begin(), cyc.end());
  std::sort(members.begin(), members.end());
  Subsystem sub = restrict_to(system, members);
  std::vector<std::uint32_t> labels(members.size());
  for (std::uint64_t k = 0; k < len; ++k) {
    const Point y = system.iterate(x, static_cast<std::int64_t>(k));
    const auto local = static_cast<std::size_t>(
        std::lower_bound(members.begin(), members.end(), y) - members.begin());
    labels[local] = static_cast<std::uint32_t>(k % period);
  }
  auto partition =
      PeriodicPartition::from_labels(sub.system, std::move(labels), to_length(period));
  return ReturnPartition{period, std::move(sub), std::move(partition)};
}

// ---------------------------------------------------------------------------
// JSON

std::string to_json(const PeriodicPartition& p) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& b : p.blocks()) j.push_back(b);
  return j.dump();
}

std::vector<PointSet> parse_blocks_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid partition JSON: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("partition JSON must be an array of point arrays");
  std::vector<PointSet> blocks;
  for (const auto& b : j) {
    if (!b.is_array()) throw ParseError("partition block must be an array");
    PointSet s;
    for (const auto& x : b) {
      if (!x.is_number_unsigned()) throw ParseError("point ids must be nonnegative integers");
      s.push_back(x.get<Point>());
    }
    std::sort(s.begin(), s.end());
    blocks.push_back(std::move(s));
  }
  return blocks;
}

PeriodicPartition parse_partition_json(const FinSystem& system, std::string_view text) {
  return PeriodicPartition::from_blocks(system, parse_blocks_json(text));
}

}  // namespace odokit
