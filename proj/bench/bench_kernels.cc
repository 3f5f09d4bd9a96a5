// Serial references against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <numbers>

#include "subplanck/estimation.h"
#include "subplanck/states.h"
#include "subplanck/wigner.h"

using namespace subplanck;

namespace {

const CoherentSuperposition &compass() {
    static const auto s = make_circular_state({0, 6}, 4);
    return s;
}

const PhaseSpaceGrid &grid() {
    static const auto g = PhaseSpaceGrid::auto_sized(compass());
    return g;
}

void BM_WignerFieldSerial(benchmark::State &st) {
    for (auto _ : st) {
        benchmark::DoNotOptimize(wigner_field_serial(compass(), grid()));
    }
    st.counters["points"] = static_cast<double>(grid().nx() * grid().ny());
}

void BM_WignerFieldParallel(benchmark::State &st) {
    for (auto _ : st) {
        benchmark::DoNotOptimize(wigner_field(compass(), grid()));
    }
    st.counters["points"] = static_cast<double>(grid().nx() * grid().ny());
}

void BM_QuadratureSerial(benchmark::State &st) {
    auto w = wigner_field(compass(), grid());
    for (auto _ : st) {
        benchmark::DoNotOptimize(phase_space_overlap_serial(w, w));
    }
}

void BM_QuadratureParallel(benchmark::State &st) {
    auto w = wigner_field(compass(), grid());
    for (auto _ : st) {
        benchmark::DoNotOptimize(phase_space_overlap(w, w));
    }
}

void BM_CalibrationSerial(benchmark::State &st) {
    for (auto _ : st) {
        benchmark::DoNotOptimize(estimator_calibration_serial(std::numbers::pi / 32, {0, 4}, 10000, 20000, 1));
    }
}

void BM_CalibrationParallel(benchmark::State &st) {
    for (auto _ : st) {
        benchmark::DoNotOptimize(estimator_calibration(std::numbers::pi / 32, {0, 4}, 10000, 20000, 1));
    }
}

}  // namespace

BENCHMARK(BM_WignerFieldSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_WignerFieldParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_QuadratureSerial)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_QuadratureParallel)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_CalibrationSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CalibrationParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
