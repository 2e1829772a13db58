#include "odokit/odometer.hpp"

#include <cctype>
#include <charconv>
#include <numeric>

#include "odokit/error.hpp"
#include "odokit/numtheory.hpp"

namespace odokit {

namespace {

void require_same_base(const AdicInt& x, const AdicInt& y) {
  if (!(x.base() == y.base())) throw DomainError("adic integers over different bases");
}

std::uint32_t point_count(std::uint64_t n) {
  if (n > 1'000'000) throw DomainError("truncation of size " + std::to_string(n) + " is too large");
  return static_cast<std::uint32_t>(n);
}

std::vector<std::uint64_t> parse_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = text.find(',', pos);
    std::string_view item =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front())))
      item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back())))
      item.remove_suffix(1);
    std::uint64_t v = 0;
    const auto* end = item.data() + item.size();
    auto [ptr, ec] = std::from_chars(item.data(), end, v);
    if (item.empty() || ec != std::errc() || ptr != end) {
      throw ParseError("invalid integer '" + std::string(item) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string join(const std::vector<std::uint64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

BaseSequence::BaseSequence(std::vector<std::uint64_t> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw DomainError("a base sequence needs at least one level");
  [[maybe_unused]] const RegularSeq check(levels_);
}

std::uint64_t BaseSequence::level(std::size_t k) const {
  if (k == 0 || k > levels_.size()) {
    throw DomainError("level " + std::to_string(k) + " outside 1.." + std::to_string(levels_.size()));
  }
  return levels_[k - 1];
}

AdicInt::AdicInt(BaseSequence base, std::vector<std::uint64_t> residues)
    : base_(std::move(base)), residues_(std::move(residues)) {
  if (residues_.size() != base_.depth()) throw DomainError("residue count does not match depth");
  for (std::size_t k = 0; k < residues_.size(); ++k) {
    if (residues_[k] >= base_.levels()[k]) throw DomainError("residue out of range");
    if (k > 0 && residues_[k] % base_.levels()[k - 1] != residues_[k - 1]) {
      throw DomainError("residues are not coherent at level " + std::to_string(k + 1));
    }
  }
}

std::uint64_t AdicInt::residue(std::size_t k) const {
  base_.level(k);  // range check
  return residues_[k - 1];
}

AdicInt from_integer(const BaseSequence& base, std::int64_t z) {
  std::vector<std::uint64_t> r;
  for (std::uint64_t n : base.levels()) r.push_back(numtheory::mod(z, n));
  return AdicInt(base, std::move(r));
}

AdicInt add(const AdicInt& x, const AdicInt& y) {
  require_same_base(x, y);
  std::vector<std::uint64_t> r;
  for (std::size_t k = 0; k < x.residues().size(); ++k) {
    const std::uint64_t n = x.base().levels()[k];
    // Both residues are below n, so the sum cannot wrap for n < 2^63.
    r.push_back((x.residues()[k] + y.residues()[k]) % n);
  }
  return AdicInt(x.base(), std::move(r));
}

AdicInt neg(const AdicInt& x) {
  std::vector<std::uint64_t> r;
  for (std::size_t k = 0; k < x.residues().size(); ++k) {
    const std::uint64_t n = x.base().levels()[k];
    r.push_back((n - x.residues()[k]) % n);
  }
  return AdicInt(x.base(), std::move(r));
}

AdicInt translate(const AdicInt& x) { return add(x, from_integer(x.base(), 1)); }

Distance metric(const AdicInt& x, const AdicInt& y) {
  require_same_base(x, y);
  for (std::size_t k = 0; k < x.residues().size(); ++k) {
    if (x.residues()[k] != y.residues()[k]) return Distance{1, x.base().levels()[k], false};
  }
  return Distance{0, 1, true};
}

Cylinder::Cylinder(BaseSequence base, std::size_t level, std::uint64_t residue)
    : base_(std::move(base)), level_(level), residue_(residue) {
  if (residue_ >= base_.level(level_)) throw DomainError("cylinder residue out of range");
}

bool Cylinder::contains(const AdicInt& x) const {
  if (!(x.base() == base_)) throw DomainError("adic integer over a different base");
  return x.residue(level_) == residue_;
}

FinSystem truncate(const BaseSequence& base, std::size_t k) {
  return FinSystem::cycle(point_count(base.level(k)));
}

PeriodicPartition level_partition(const BaseSequence& base, std::size_t k) {
  const std::uint64_t n = base.level(k);
  const std::uint32_t size = point_count(base.top_level());
  std::vector<std::uint32_t> labels(size);
  for (std::uint32_t i = 0; i < size; ++i) labels[i] = static_cast<std::uint32_t>(i % n);
  return PeriodicPartition::from_labels(FinSystem::cycle(size), std::move(labels),
                                        static_cast<std::uint32_t>(n));
}

Supernatural ess_of_odometer(const BaseSequence& base) { return phi_of_set(base.levels()); }

std::vector<AdicInt> truncation_points(const BaseSequence& base) {
  const std::uint32_t size = point_count(base.top_level());
  std::vector<AdicInt> out;
  out.reserve(size);
  for (std::uint32_t i = 0; i < size; ++i) out.push_back(from_integer(base, i));
  return out;
}

BaseSequence parse_base(std::string_view text) {
  auto levels = parse_list(text);
  try {
    return BaseSequence(std::move(levels));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string to_string(const BaseSequence& base) { return join(base.levels()); }

AdicInt parse_adic(const BaseSequence& base, std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw ParseError("adic integer must be written as [a1,...,aK]");
  }
  return AdicInt(base, parse_list(text.substr(1, text.size() - 2)));
}

std::string to_string(const AdicInt& x) { return "[" + join(x.residues()) + "]"; }

std::string to_string(const Distance& d) {
  if (d.numerator == 0) return "0";
  return std::to_string(d.numerator) + "/" + std::to_string(d.denominator);
}

}  // namespace odokit
