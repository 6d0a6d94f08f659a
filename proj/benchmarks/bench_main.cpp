// Microbenchmarks for the hot paths: horizontal lifts as a function of the
// step count, pointwise curvature, group-law primitives and the sampled
// compatibility gate.

#include <benchmark/benchmark.h>

#include "holonomy/bundle.hpp"
#include "holonomy/curvature.hpp"
#include "holonomy/groupconn.hpp"
#include "holonomy/groups.hpp"
#include "holonomy/path.hpp"
#include "holonomy/transport.hpp"

namespace {

using namespace holonomy;

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

BaseChart plane() { return BaseChart{Box({Interval{-4.0, 4.0}, Interval{-4.0, 4.0}}), nullptr}; }

Connection area_rule() {
    Connection conn;
    conn.bundle = trivial_bundle(plane(), additive_group(1));
    conn.gamma = [](const Vec& x, const Vec&) {
        Mat m(1, 2);
        m << 0.0, x[0];
        return m;
    };
    return conn;
}

Connection affine_rule() {
    Connection conn;
    conn.bundle = trivial_bundle(plane(), aff1_group());
    conn.gamma = [](const Vec& x, const Vec& g) {
        Mat m(2, 2);
        m << 0.0, 0.0, g[1] * x[1], g[1] * 0.5;
        return m;
    };
    return conn;
}

void BM_lift_steps(benchmark::State& state) {
    Connection conn = area_rule();
    PathSpec loop = square_loop(v2(0.0, 0.0), 1.0);
    Vec g0(1);
    g0 << 0.0;
    int steps = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lift_path(conn, loop, g0, steps).endpoint());
    }
    state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_lift_steps)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_lift_affine_fiber(benchmark::State& state) {
    Connection conn = affine_rule();
    PathSpec loop = circle_loop(v2(0.0, 0.0), 1.0);
    Vec g0 = conn.bundle.id(v2(0.0, 0.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lift_path(conn, loop, g0, 10000).endpoint());
    }
}
BENCHMARK(BM_lift_affine_fiber);

void BM_curvature_point(benchmark::State& state) {
    Connection conn = affine_rule();
    Vec x = v2(0.7, -0.2);
    Vec g = conn.bundle.id(x);
    for (auto _ : state) {
        benchmark::DoNotOptimize(curvature(conn, x, 0, 1, g));
    }
}
BENCHMARK(BM_curvature_point);

void BM_group_mul(benchmark::State& state) {
    LieGroupModel G = semidirect_group(0.7, -0.4);
    Vec g = G.id, h = G.id;
    g[0] = 1.5;
    g[1] = 0.3;
    h[0] = 0.8;
    h[2] = -0.2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(G.mul(g, h));
    }
}
BENCHMARK(BM_group_mul);

void BM_adjoint(benchmark::State& state) {
    LieGroupModel G = aff1_group();
    Vec g = v2(2.0, 5.0), A = v2(1.0, -1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(adjoint(G, g, A));
    }
}
BENCHMARK(BM_adjoint);

void BM_group_gate(benchmark::State& state) {
    Connection conn = affine_rule();
    int samples = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_group_connection(conn, samples, 42, 1e-6));
    }
    state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_group_gate)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
