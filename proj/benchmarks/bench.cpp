#include <benchmark/benchmark.h>

#include "cgeo/detection.hpp"
#include "cgeo/separation.hpp"

using namespace cgeo;

static void bm_build_ball_plane(benchmark::State& state) {
    GroupSpec z2 = GroupSpec::free_abelian(2);
    int radius = static_cast<int>(state.range(0));
    for (auto _ : state) {
        CayleyBall b = build_ball(z2, radius);
        benchmark::DoNotOptimize(b.size());
    }
}
BENCHMARK(bm_build_ball_plane)->Arg(32)->Arg(64)->Arg(128);

static void bm_build_ball_tree(benchmark::State& state) {
    GroupSpec f2 = GroupSpec::free(2);
    int radius = static_cast<int>(state.range(0));
    for (auto _ : state) {
        CayleyBall b = build_ball(f2, radius);
        benchmark::DoNotOptimize(b.size());
    }
}
BENCHMARK(bm_build_ball_tree)->Arg(6)->Arg(8)->Arg(10);

static void bm_components(benchmark::State& state) {
    GroupSpec z2 = GroupSpec::free_abelian(2);
    CayleyBall b = build_ball(z2, static_cast<int>(state.range(0)));
    VertexSet y = realize(Pattern::digitized_line(1, 0), b);
    for (auto _ : state) {
        ComponentAnalysis a = complement_components(b, y, 1);
        benchmark::DoNotOptimize(a.deep_count);
    }
}
BENCHMARK(bm_components)->Arg(32)->Arg(64)->Arg(128);

static void bm_hausdorff(benchmark::State& state) {
    GroupSpec z2 = GroupSpec::free_abelian(2);
    CayleyBall b = build_ball(z2, static_cast<int>(state.range(0)));
    VertexSet line = realize(Pattern::digitized_line(SlopeTag::Golden), b);
    VertexSet diag = realize(Pattern::subgroup_orbit({{1, 2}}), b);
    for (auto _ : state) {
        HausdorffResult h = restricted_hausdorff(b, line, diag, 0);
        benchmark::DoNotOptimize(h.value);
    }
}
BENCHMARK(bm_hausdorff)->Arg(50)->Arg(100)->Arg(200);

static void bm_flagship_detection(benchmark::State& state) {
    GroupSpec g = GroupSpec::direct_product({GroupSpec::free(2), GroupSpec::free_abelian(1)});
    DetectParams p;
    p.k = 1;
    p.factor_caps = {5, 10};
    for (auto _ : state) {
        DetectionCertificate c = detect_subgroup(g, Pattern::fiber(1), p);
        benchmark::DoNotOptimize(c.status);
    }
}
BENCHMARK(bm_flagship_detection)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
