// Serial reference against OpenMP version for each data-parallel kernel.
#include <benchmark/benchmark.h>

#include "heeg/heegner/heegner.hpp"
#include "heeg/kernels/aptable.hpp"
#include "heeg/kernels/qsum.hpp"
#include "heeg/kernels/sprimes.hpp"
#include "heeg/qexp/qexp.hpp"

using namespace heeg;

namespace {

WeierstrassCurve curve37a1() { return WeierstrassCurve::from_ainvs({0, 0, 1, -1, 0}, "37a1"); }

std::vector<std::uint32_t> primes_between(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = lo | 1; p < hi; p += 2) {
    if (is_prime_u64(p)) out.push_back(p);
  }
  return out;
}

void BM_ApTable(benchmark::State& st, bool parallel) {
  const auto E = curve37a1();
  const auto ps = primes_between(1000, static_cast<std::uint32_t>(st.range(0)));
  for (auto _ : st) {
    auto t = parallel ? kernels::ap_table_parallel(E, ps) : kernels::ap_table_serial(E, ps);
    benchmark::DoNotOptimize(t.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(ps.size()));
}

void BM_QSum(benchmark::State& st, bool parallel) {
  const std::size_t B = static_cast<std::size_t>(st.range(0));
  const auto f = anlist(curve37a1(), B);
  const auto taus = heegner_tau_list(37, -7);
  const BigComplex q = tau_to_q(taus.front(), 256);
  for (auto _ : st) {
    auto z = parallel ? kernels::modular_qsum_parallel(f.a, B, q) : kernels::modular_qsum_serial(f.a, B, q);
    benchmark::DoNotOptimize(z);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(B));
}

void BM_SPrimes(benchmark::State& st, bool parallel) {
  const auto E = curve37a1();
  const kernels::SPrimeQuery q{E.b2().get_num(), E.b4().get_num(), E.b6().get_num(), E.conductor(), -7};
  const auto bound = static_cast<std::uint32_t>(st.range(0));
  for (auto _ : st) {
    auto s = parallel ? kernels::s_prime_scan_parallel(q, bound) : kernels::s_prime_scan_serial(q, bound);
    benchmark::DoNotOptimize(s.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_ApTable, serial, false)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ApTable, parallel, true)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_QSum, serial, false)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_QSum, parallel, true)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SPrimes, serial, false)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SPrimes, parallel, true)->Arg(1000000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
