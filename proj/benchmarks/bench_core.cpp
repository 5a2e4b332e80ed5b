#include <benchmark/benchmark.h>

#include "asymlat/geometry.hpp"
#include "asymlat/pendulum.hpp"
#include "asymlat/projective.hpp"

using namespace asymlat;

namespace {

SpectrumSnapshot lattice(int n) {
    std::vector<Point2> pts;
    double h = 1.0 / (n + 1);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) pts.push_back({h * a, h * b});
    return {PlanckValue(h), std::move(pts), Window{0, 1, 0, 1}};
}

} // namespace

static void BM_NearestPoint(benchmark::State& state) {
    SpectrumSnapshot snap = lattice(static_cast<int>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        Point2 target{0.1 + 0.8 * ((i * 37) % 100) / 100.0,
                      0.1 + 0.8 * ((i * 61) % 100) / 100.0};
        benchmark::DoNotOptimize(nearest_point(snap, target, {}));
        ++i;
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NearestPoint)->RangeMultiplier(2)->Range(16, 128)->Complexity();

static void BM_SeparationRadius(benchmark::State& state) {
    SpectrumSnapshot snap = lattice(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(separation_radius(snap));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeparationRadius)->RangeMultiplier(2)->Range(16, 128)->Complexity();

static void BM_MobiusApply(benchmark::State& state) {
    UnimodularMatrix2 A{2, 1, 1, 1};
    Projective1 w{3, 5};
    for (auto _ : state) {
        w = mobius_apply(A, w).canonical();
        benchmark::DoNotOptimize(w.p);
    }
}
BENCHMARK(BM_MobiusApply);

static void BM_PendulumRotation(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(pendulum_rotation({0.5, 0.3}));
}
BENCHMARK(BM_PendulumRotation);
