#include <benchmark/benchmark.h>

#include "cmunits/analytic.hpp"
#include "cmunits/characters.hpp"
#include "cmunits/identities.hpp"
#include "cmunits/padic.hpp"
#include "cmunits/scan.hpp"

using namespace cmunits;

namespace {

void BM_theta_eval(benchmark::State& state) {
    long bits = state.range(0);
    const FieldContext& F = make_field(1);
    Lattice lat = make_lattice(F, PrecisionContext(bits));
    ThetaFn theta(lat, QuadInt(F, 3, 2));
    mpq_class x(1, 7), y(3, 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(theta(x, y));
    }
}
BENCHMARK(BM_theta_eval)->Arg(256)->Arg(1024)->Arg(2048);

void BM_lattice_setup(benchmark::State& state) {
    const FieldContext& F = make_field(163);
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_lattice(F, PrecisionContext(state.range(0))));
    }
}
BENCHMARK(BM_lattice_setup)->Arg(256)->Arg(1024);

void BM_split_prime(benchmark::State& state) {
    const FieldContext& F = make_field(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(split_prime(F, 50021));
    }
}
BENCHMARK(BM_split_prime);

void BM_hensel_embed(benchmark::State& state) {
    SplitPrime sp = split_prime(make_field(1), 50021);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hensel_embed(sp, 4));
    }
}
BENCHMARK(BM_hensel_embed);

void BM_purely_local(benchmark::State& state) {
    SplitPrime sp = split_prime(make_field(1), 50021);
    for (auto _ : state) {
        benchmark::DoNotOptimize(purely_local_test(sp, Side::pi_bar));
    }
}
BENCHMARK(BM_purely_local);

void BM_scan_field(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan_field(1, state.range(0), 1));
    }
}
BENCHMARK(BM_scan_field)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_distribution_check(benchmark::State& state) {
    const FieldContext& F = make_field(1);
    Lattice lat = make_lattice(F, PrecisionContext(state.range(0)));
    QuadInt A(F, 1, -2), B(F, 3, 2);
    Coords tau{mpq_class(1, 7), mpq_class(3, 11)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_distribution(lat, A, B, tau));
    }
}
BENCHMARK(BM_distribution_check)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_conjugate_vector(benchmark::State& state) {
    const FieldContext& F = make_field(1);
    Lattice lat = make_lattice(F, PrecisionContext(state.range(0)));
    QuadInt mu(F, 5, 0);
    TorsionPoint base = torsion_points(lat, mu, true).front();
    QuadInt alpha(F, 3, 2);
    Transversal tv = make_transversal(F, split_prime(F, 5));
    for (auto _ : state) {
        benchmark::DoNotOptimize(conjugate_vector(lat, alpha, base, tv));
    }
}
BENCHMARK(BM_conjugate_vector)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_epsilon_pipelines(benchmark::State& state) {
    const FieldContext& F = make_field(1);
    Lattice lat = make_lattice(F, PrecisionContext(512));
    SplitPrime sp = split_prime(F, 5);
    QuadInt alpha(F, 3, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(epsilon_pipelines(lat, sp, {3, 3}, alpha));
    }
}
BENCHMARK(BM_epsilon_pipelines)->Unit(benchmark::kMillisecond);

void BM_pth_power_test(benchmark::State& state) {
    const FieldContext& F = make_field(1);
    Lattice lat = make_lattice(F, PrecisionContext(2048));
    SplitPrime sp = split_prime(F, 5);
    AlgebraicUnit u = epsilon_m1a(lat, sp, {3, 3}, QuadInt(F, 3, 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pth_power_test(u, 5, 4));
    }
}
BENCHMARK(BM_pth_power_test)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
