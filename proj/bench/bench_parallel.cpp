#include <benchmark/benchmark.h>

#include <ostream>
#include <streambuf>

#include "torbase/census.hpp"

namespace {

using torbase::Conjecture;

// Discards findings so only evaluation is timed.
class NullBuffer : public std::streambuf {
 protected:
  int overflow(int c) override { return c; }
};

torbase::ScanJob tuple_job() {
  torbase::ScanJob job;
  job.dim = 4;
  job.min = 10;
  job.max = 36;
  job.conjectures = {Conjecture::kCircuitsInMarkov, Conjecture::kGluingSplit};
  job.checkpoint_every = 2'000;
  return job;
}

void scan_bench(benchmark::State& state, bool parallel) {
  const auto job = tuple_job();
  NullBuffer buffer;
  std::ostream sink(&buffer);
  for (auto _ : state) benchmark::DoNotOptimize(torbase::scan(job, sink, parallel).hash);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * torbase::tuple_count(job)));
}

void BM_TupleScanSerial(benchmark::State& state) { scan_bench(state, false); }
void BM_TupleScanParallel(benchmark::State& state) { scan_bench(state, true); }

void census_bench(benchmark::State& state, bool parallel) {
  const auto free = torbase::enumerate_free_with_frobenius(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(torbase::census_flags(free, parallel));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * free.size()));
}

void BM_CensusSerial(benchmark::State& state) { census_bench(state, false); }
void BM_CensusParallel(benchmark::State& state) { census_bench(state, true); }

}  // namespace

BENCHMARK(BM_TupleScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TupleScanParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CensusSerial)->Arg(131)->Arg(301)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CensusParallel)->Arg(131)->Arg(301)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
