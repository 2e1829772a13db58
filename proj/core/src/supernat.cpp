#include "odokit/supernat.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <set>

#include "odokit/error.hpp"
#include "odokit/numtheory.hpp"

namespace odokit {

std::uint64_t Exponent::value() const {
  if (infinite_) throw DomainError("exponent is infinite");
  return value_;
}

Exponent operator+(Exponent a, Exponent b) {
  if (a.is_infinite() || b.is_infinite()) return Exponent::infinity();
  if (a.value() > std::numeric_limits<std::uint64_t>::max() - b.value()) {
    throw DomainError("exponent overflow");
  }
  return Exponent(a.value() + b.value());
}

namespace {

Exponent exponent_of(Supernatural::Default d) {
  return d == Supernatural::Default::kZero ? Exponent(0) : Exponent::infinity();
}

Supernatural::Default default_of(Exponent e) {
  if (e.is_zero()) return Supernatural::Default::kZero;
  if (e.is_infinite()) return Supernatural::Default::kInfinity;
  throw DomainError("default exponent must be 0 or inf");
}

template <typename Op>
Supernatural combine(const Supernatural& a, const Supernatural& b, Op op) {
  const Exponent fallback = op(a.default_exponent(), b.default_exponent());
  std::map<std::uint64_t, Exponent> out;
  for (const auto& [p, _] : a.exceptions()) out.emplace(p, op(a.exponent(p), b.exponent(p)));
  for (const auto& [p, _] : b.exceptions()) out.emplace(p, op(a.exponent(p), b.exponent(p)));
  return Supernatural::from_exponents(std::move(out), default_of(fallback));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("invalid " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

Exponent parse_exponent(std::string_view s) {
  s = trim(s);
  if (s == "inf") return Exponent::infinity();
  return Exponent(parse_u64(s, "exponent"));
}

}  // namespace

Supernatural Supernatural::from_exponents(std::map<std::uint64_t, Exponent> exponents,
                                          Default fallback) {
  Supernatural out;
  out.fallback_ = fallback;
  const Exponent def = exponent_of(fallback);
  for (const auto& [p, e] : exponents) {
    if (!numtheory::is_prime(p)) {
      throw DomainError("exponent key " + std::to_string(p) + " is not prime");
    }
    if (e != def) out.exceptions_.emplace(p, e);
  }
  return out;
}

Supernatural Supernatural::top() { return from_exponents({}, Default::kInfinity); }

Supernatural Supernatural::prime_power(std::uint64_t prime, Exponent e) {
  return from_exponents({{prime, e}});
}

Exponent Supernatural::exponent(std::uint64_t prime) const {
  if (auto it = exceptions_.find(prime); it != exceptions_.end()) return it->second;
  return default_exponent();
}

Exponent Supernatural::default_exponent() const { return exponent_of(fallback_); }

std::optional<std::uint64_t> Supernatural::to_integer() const {
  if (fallback_ != Default::kZero) return std::nullopt;
  std::uint64_t n = 1;
  for (const auto& [p, e] : exceptions_) {
    if (e.is_infinite()) return std::nullopt;
    for (std::uint64_t i = 0; i < e.value(); ++i) {
      if (n > std::numeric_limits<std::uint64_t>::max() / p) return std::nullopt;
      n *= p;
    }
  }
  return n;
}

Supernatural phi0(std::uint64_t n) {
  if (n == 0) throw DomainError("phi0 is defined on positive integers only");
  std::map<std::uint64_t, Exponent> exps;
  for (const auto& [p, e] : numtheory::factorize(n)) exps.emplace(p, Exponent(e));
  return Supernatural::from_exponents(std::move(exps));
}

Supernatural mul(const Supernatural& a, const Supernatural& b) {
  return combine(a, b, [](Exponent x, Exponent y) { return x + y; });
}

Supernatural gcd(const Supernatural& a, const Supernatural& b) {
  return combine(a, b, [](Exponent x, Exponent y) { return std::min(x, y); });
}

Supernatural lcm(const Supernatural& a, const Supernatural& b) {
  return combine(a, b, [](Exponent x, Exponent y) { return std::max(x, y); });
}

bool leq(const Supernatural& a, const Supernatural& b) {
  if (a.default_exponent() > b.default_exponent()) {
    // Infinitely many primes sit at a's default; b lists only finitely many.
    return false;
  }
  std::set<std::uint64_t> primes;
  for (const auto& [p, _] : a.exceptions()) primes.insert(p);
  for (const auto& [p, _] : b.exceptions()) primes.insert(p);
  return std::all_of(primes.begin(), primes.end(),
                     [&](std::uint64_t p) { return a.exponent(p) <= b.exponent(p); });
}

Supernatural phi_of_set(std::span<const std::uint64_t> values) {
  if (values.empty()) throw DomainError("phi of an empty set is undefined");
  Supernatural acc = phi0(values.front());
  for (auto v : values.subspan(1)) acc = lcm(acc, phi0(v));
  return acc;
}

bool regular_contains(const Supernatural& r, std::uint64_t a) {
  if (a == 0) throw DomainError("regular sets contain positive integers only");
  return leq(phi0(a), r);
}

RegularSeq::RegularSeq(std::vector<std::uint64_t> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i] == 0) throw DomainError("regular sequence terms must be positive");
    if (i > 0 && terms_[i] % terms_[i - 1] != 0) {
      throw DomainError("regular sequence breaks divisibility: " + std::to_string(terms_[i - 1]) +
                        " does not divide " + std::to_string(terms_[i]));
    }
  }
}

RegularSeq extract_regular_sequence(const Supernatural& r, std::size_t depth,
                                    std::uint64_t prime_horizon) {
  if (depth == 0) throw DomainError("depth must be positive");
  std::set<std::uint64_t> support;
  if (r.fallback() == Supernatural::Default::kInfinity) {
    if (prime_horizon == 0) {
      throw DomainError("value has infinite support; a prime horizon is required");
    }
    for (auto p : numtheory::primes_up_to(prime_horizon)) support.insert(p);
  }
  for (const auto& [p, e] : r.exceptions()) support.insert(p);
  std::vector<std::uint64_t> primes;
  for (auto p : support) {
    if (!r.exponent(p).is_zero()) primes.push_back(p);
  }

  std::vector<std::uint64_t> terms;
  terms.reserve(depth);
  for (std::size_t k = 1; k <= depth; ++k) {
    std::uint64_t b = 1;
    const std::size_t used = std::min(k, primes.size());
    for (std::size_t i = 0; i < used; ++i) {
      const std::uint64_t p = primes[i];
      const Exponent e = std::min(r.exponent(p), Exponent(k));
      for (std::uint64_t j = 0; j < e.value(); ++j) b = numtheory::checked_mul(b, p);
    }
    terms.push_back(b);
  }
  return RegularSeq(std::move(terms));
}

bool seq_dominates(const RegularSeq& a, const RegularSeq& b) {
  return std::all_of(a.terms().begin(), a.terms().end(), [&](std::uint64_t ai) {
    return std::any_of(b.terms().begin(), b.terms().end(),
                       [ai](std::uint64_t bj) { return bj % ai == 0; });
  });
}

std::string to_string(Exponent e) {
  return e.is_infinite() ? std::string("inf") : std::to_string(e.value());
}

std::string to_string(const Supernatural& value) {
  std::string out;
  for (const auto& [p, e] : value.exceptions()) {
    if (!out.empty()) out += '*';
    out += std::to_string(p);
    if (e != Exponent(1)) out += "^" + to_string(e);
  }
  if (value.fallback() == Supernatural::Default::kInfinity) {
    out += ";default=inf";
  } else if (out.empty()) {
    out = "1";
  }
  return out;
}

Supernatural parse_supernatural(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty supernatural literal");

  auto fallback = Supernatural::Default::kZero;
  std::string_view factors = text;
  if (auto semi = text.find(';'); semi != std::string_view::npos) {
    factors = trim(text.substr(0, semi));
    std::string_view suffix = trim(text.substr(semi + 1));
    constexpr std::string_view kKey = "default=";
    if (suffix.substr(0, kKey.size()) != kKey) {
      throw ParseError("expected ';default=0|inf' suffix, got '" + std::string(suffix) + "'");
    }
    std::string_view v = trim(suffix.substr(kKey.size()));
    if (v == "0") {
      fallback = Supernatural::Default::kZero;
    } else if (v == "inf") {
      fallback = Supernatural::Default::kInfinity;
    } else {
      throw ParseError("default must be 0 or inf, got '" + std::string(v) + "'");
    }
  } else if (factors.empty()) {
    throw ParseError("empty supernatural literal");
  }

  std::map<std::uint64_t, Exponent> exps;
  if (!factors.empty() && factors != "1") {
    std::size_t pos = 0;
    while (pos <= factors.size()) {
      const std::size_t star = factors.find('*', pos);
      const std::string_view item =
          trim(factors.substr(pos, star == std::string_view::npos ? std::string_view::npos
                                                                  : star - pos));
      if (item.empty()) throw ParseError("empty factor in '" + std::string(text) + "'");
      const std::size_t caret = item.find('^');
      const std::uint64_t p = parse_u64(item.substr(0, caret), "prime");
      const Exponent e =
          caret == std::string_view::npos ? Exponent(1) : parse_exponent(item.substr(caret + 1));
      if (!numtheory::is_prime(p)) throw ParseError(std::to_string(p) + " is not prime");
      if (!exps.emplace(p, e).second) {
        throw ParseError("prime " + std::to_string(p) + " listed twice");
      }
      if (star == std::string_view::npos) break;
      pos = star + 1;
    }
  }
  return Supernatural::from_exponents(std::move(exps), fallback);
}

}  // namespace odokit
