// Serial reference kernel against the OpenMP kernel.

#include <benchmark/benchmark.h>

#include "qseries/corpus.hpp"

namespace {

const char* const kIds[] = {"cor4.3", "cdqH", "cbqH"};

template <qs::VerificationReport (*Kernel)(const qs::Identity&, const qs::SamplePlan&, qs::Mode)>
void run(benchmark::State& state) {
    const qs::Identity& ident = qs::find_identity(kIds[state.range(0)]);
    qs::SamplePlan plan;
    plan.trials = 20;
    const qs::Mode mode = state.range(1) ? qs::Mode::floating : qs::Mode::exact;
    for (auto _ : state) {
        benchmark::DoNotOptimize(Kernel(ident, plan, mode));
    }
    state.SetLabel(std::string(kIds[state.range(0)]) + (state.range(1) ? " float" : " exact"));
}

void BM_VerifySerial(benchmark::State& s) { run<qs::verify_serial>(s); }
void BM_VerifyParallel(benchmark::State& s) { run<qs::verify>(s); }

}  // namespace

BENCHMARK(BM_VerifySerial)->ArgsProduct({{0, 1, 2}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyParallel)->ArgsProduct({{0, 1, 2}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
