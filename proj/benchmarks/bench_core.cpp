#include <benchmark/benchmark.h>

#include "dsm/arnold.hpp"
#include "dsm/blaschke.hpp"
#include "dsm/eigen.hpp"
#include "dsm/haar.hpp"
#include "dsm/measure.hpp"
#include "dsm/rng.hpp"
#include "dsm/verify.hpp"

namespace {

using dsm::Complex;
using dsm::ComplexMatrix;
using dsm::ComplexVector;

ComplexMatrix diag_matrix(int d) {
    ComplexVector v(d);
    double m = 1 << d;
    for (int i = 0; i < d; ++i, m *= 0.5) v[i] = Complex(m, 0.0);
    return ComplexMatrix::diagonal(v);
}

void BM_PermWeights(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    std::vector<double> moduli(d);
    double m = 1 << d;
    for (int i = 0; i < d; ++i, m *= 0.5) moduli[i] = m;
    for (auto _ : state)
        benchmark::DoNotOptimize(dsm::ds_perm_weights(moduli));
}
BENCHMARK(BM_PermWeights)->DenseRange(2, 8);

void BM_EigenByModulus(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    dsm::RngStream rng(7);
    ComplexMatrix u = dsm::haar_unitary(d, rng);
    ComplexMatrix a = u * diag_matrix(d);
    for (auto _ : state)
        benchmark::DoNotOptimize(dsm::eigen_by_modulus(a));
}
BENCHMARK(BM_EigenByModulus)->DenseRange(2, 6);

void BM_HaarUnitary(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    dsm::RngStream rng(8);
    for (auto _ : state)
        benchmark::DoNotOptimize(dsm::haar_unitary(d, rng));
}
BENCHMARK(BM_HaarUnitary)->DenseRange(2, 6);

void BM_VerifyCp(benchmark::State& state) {
    ComplexMatrix a = diag_matrix(2);
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(dsm::verify_ds_property_cp(a, n, 1, 1));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_VerifyCp)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_TraceRotationCurve(benchmark::State& state) {
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(dsm::trace_rotation_curve(0.05, 1, 2, grid));
}
BENCHMARK(BM_TraceRotationCurve)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_ThetaAveragePushforward(benchmark::State& state) {
    dsm::BlaschkeProduct b =
        dsm::BlaschkeProduct::from_factor(dsm::cayley_blaschke(2.0, 0.0));
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(dsm::theta_average_pushforward(b, 10, grid, 50, 100, 1));
}
BENCHMARK(BM_ThetaAveragePushforward)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_RotationNumber(benchmark::State& state) {
    dsm::CircleMap m(0.27, 0.05);
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(dsm::rotation_number(m, n));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_RotationNumber)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
