#include <benchmark/benchmark.h>

#include "odokit/dynsys.hpp"
#include "odokit/projection.hpp"
#include "odokit/supernat.hpp"

namespace {

using namespace odokit;

FinSystem equal_cycles(std::size_t count, std::size_t length) {
  std::string text;
  for (std::size_t c = 0; c < count; ++c) {
    text += '(';
    for (std::size_t i = 0; i < length; ++i) {
      if (i) text += ' ';
      text += std::to_string(c * length + i);
    }
    text += ')';
  }
  return parse_cycles(text);
}

void BM_Oracle(benchmark::State& state) {
  const auto s = equal_cycles(2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(all_partitions(s, 2));
}
BENCHMARK(BM_Oracle)->Arg(2)->Arg(4)->Arg(6);

void BM_MakeCompatible(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = equal_cycles(4, n);
  const auto p = *phase_partition(s, 2);
  for (auto _ : state) benchmark::DoNotOptimize(make_compatible(p, static_cast<std::uint32_t>(n)));
}
BENCHMARK(BM_MakeCompatible)->Arg(4)->Arg(16)->Arg(64)->Arg(256);

void BM_SupernaturalLattice(benchmark::State& state) {
  const auto a = phi0(720720), b = mul(phi0(1024), parse_supernatural("3^inf*7"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gcd(a, b));
    benchmark::DoNotOptimize(lcm(a, b));
    benchmark::DoNotOptimize(leq(a, b));
  }
}
BENCHMARK(BM_SupernaturalLattice);

void BM_MaxFactor(benchmark::State& state) {
  const auto s = equal_cycles(3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(max_odometer_factor(s));
}
BENCHMARK(BM_MaxFactor)->Arg(12)->Arg(60);

}  // namespace

BENCHMARK_MAIN();
