#include <benchmark/benchmark.h>

#include "asymlat/label_fixed.hpp"
#include "asymlat/label_semitoric.hpp"

using namespace asymlat;

namespace {

struct Fixture {
    std::shared_ptr<const ChartModel> chart;
    double hbar;

    explicit Fixture(double h)
        : chart(preset_chart(SystemPreset::semitoric(0.0, 0.25), {0.2, 1.2, 0.2, 1.2})),
          hbar(h) {}

    SpectrumSnapshot snapshot() const {
        return generate_snapshot(chart, PlanckValue(hbar), {0.2, 1.2, 0.2, 1.2}).first;
    }
};

AlgoConfig config() {
    return AlgoConfig({0.71, 0.72}, Window{0.22, 1.18, 0.22, 1.18});
}

} // namespace

static void BM_GenerateSnapshot(benchmark::State& state) {
    Fixture f(1.0 / static_cast<double>(state.range(0)));
    for (auto _ : state) {
        auto snap = f.snapshot();
        benchmark::DoNotOptimize(snap.points().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GenerateSnapshot)->RangeMultiplier(2)->Range(16, 128)->Complexity();

static void BM_LabelWindow(benchmark::State& state) {
    Fixture f(1.0 / static_cast<double>(state.range(0)));
    SpectrumSnapshot snap = f.snapshot();
    for (auto _ : state) {
        LabelWindowResult res = label_window(snap, config());
        benchmark::DoNotOptimize(res.labelling.size());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LabelWindow)->RangeMultiplier(2)->Range(16, 128)->Complexity();

static void BM_LabelSemitoric(benchmark::State& state) {
    Fixture f(1.0 / static_cast<double>(state.range(0)));
    SpectrumSnapshot snap = f.snapshot();
    for (auto _ : state) {
        LabelWindowResult res = label_semitoric(snap, config());
        benchmark::DoNotOptimize(res.labelling.size());
    }
}
BENCHMARK(BM_LabelSemitoric)->Arg(32)->Arg(64);

static void BM_DetectStrips(benchmark::State& state) {
    Fixture f(1.0 / static_cast<double>(state.range(0)));
    SpectrumSnapshot snap = f.snapshot();
    for (auto _ : state) {
        auto strips = detect_strips(snap);
        benchmark::DoNotOptimize(strips.second.strip_of.size());
    }
}
BENCHMARK(BM_DetectStrips)->Arg(32)->Arg(128);
