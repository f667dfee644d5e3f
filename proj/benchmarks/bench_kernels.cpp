#include "levikit/intersection.hpp"
#include "levikit/multipoly.hpp"
#include "levikit/polygcd.hpp"
#include "levikit/puiseux.hpp"
#include "levikit/resultant.hpp"
#include "levikit/rng.hpp"

#include <benchmark/benchmark.h>

using namespace levikit;

namespace {

const std::vector<std::string> ZS{"z0", "z1", "z2"};
const std::vector<std::string> XY{"x", "y"};

MultiPoly dense_form(int degree, unsigned long seed) {
    Rng rng(seed);
    MultiPoly out(ZS);
    for (unsigned i = 0; i <= static_cast<unsigned>(degree); ++i)
        for (unsigned j = 0; i + j <= static_cast<unsigned>(degree); ++j)
            out.add_term({static_cast<unsigned>(degree) - i - j, i, j}, rng.small_gaussian(5));
    return out;
}

} // namespace

static void BM_poly_multiply(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    MultiPoly f = dense_form(d, 1), g = dense_form(d, 2);
    for (auto _ : state) {
        MultiPoly h = f * g;
        benchmark::DoNotOptimize(h);
    }
}
BENCHMARK(BM_poly_multiply)->Arg(2)->Arg(4)->Arg(6);

static void BM_resultant(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    MultiPoly f = dense_form(d, 3), g = dense_form(d, 4);
    for (auto _ : state) {
        MultiPoly r = resultant(f, g, "z2");
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_resultant)->Arg(2)->Arg(3)->Arg(4);

static void BM_poly_gcd_planted(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    MultiPoly a = dense_form(d, 5), b = dense_form(d, 6), c = dense_form(d, 7);
    MultiPoly f = a * b, g = a * c;
    for (auto _ : state) {
        MultiPoly h = poly_gcd(f, g);
        benchmark::DoNotOptimize(h);
    }
}
BENCHMARK(BM_poly_gcd_planted)->Arg(1)->Arg(2)->Arg(3);

static void BM_puiseux_cusp(benchmark::State& state) {
    auto x = MultiPoly::variable(XY, "x"), y = MultiPoly::variable(XY, "y");
    MultiPoly f = (y * y - x * x * x) * (y - x * x);
    int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto brs = puiseux_branches(f, order);
        benchmark::DoNotOptimize(brs);
    }
}
BENCHMARK(BM_puiseux_cusp)->Arg(8)->Arg(16)->Arg(32);

static void BM_intersection_points(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    MultiPoly f = dense_form(d, 8), g = dense_form(d, 9);
    HomogeneousForm F(f, d), G(g, d);
    for (auto _ : state) {
        Rng rng(11);
        auto res = intersection_points(F, G, rng);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_intersection_points)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
