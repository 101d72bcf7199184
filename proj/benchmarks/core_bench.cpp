#include "minforge/generators.hpp"
#include "minforge/io.hpp"
#include "minforge/paths.hpp"
#include "minforge/render.hpp"
#include "minforge/sim.hpp"

#include <benchmark/benchmark.h>

using namespace minforge;

namespace {


void BM_GenerateOmega(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_omega(n));
}
BENCHMARK(BM_GenerateOmega)->RangeMultiplier(4)->Range(16, 1024);

void BM_DisjointPathsOmega(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const Circuit c = generate_omega(n);
    const ComponentId source = n - 1;
    const ComponentId dest = c.component_count() - 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(max_disjoint_paths(c, source, dest, 4));
}
BENCHMARK(BM_DisjointPathsOmega)->RangeMultiplier(4)->Range(16, 1024);

void BM_DisjointPathsReplicated(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto copies = static_cast<std::size_t>(state.range(1));
    const Circuit c = generate_replicated(generate_omega(n), copies);
    const ComponentId dest = c.component_count() - 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(max_disjoint_paths(c, 0, dest, copies + 1));
}
BENCHMARK(BM_DisjointPathsReplicated)->ArgsProduct({{16, 64, 256}, {2, 3}});

void BM_SimulationRun(benchmark::State& state)
{
    const Circuit c = generate_omega(64);
    const ComponentId dest = c.component_count() - 1;
    const auto route = max_disjoint_paths(c, 0, dest, 1);
    const PathSpec path = PathSpec::from_wires(route.wires.front());
    const FaultSet faults = FaultSet::from_components({route.paths.front()[2]});
    const SimConfig config{static_cast<int>(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(run(c, path, faults, config));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulationRun)->Arg(150)->Arg(10000);

void BM_RenderSvg(benchmark::State& state)
{
    const Circuit c = generate_omega(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(svg_text(plan_circuit(c)));
}
BENCHMARK(BM_RenderSvg)->Arg(16)->Arg(256);

void BM_RoundTrip(benchmark::State& state)
{
    const CircuitDocument doc{circuit_format_version, generate_omega(static_cast<std::size_t>(state.range(0)))};
    for (auto _ : state)
        benchmark::DoNotOptimize(circuit_from_text(circuit_to_text(doc)));
}
BENCHMARK(BM_RoundTrip)->Arg(16)->Arg(256);

} // namespace
BENCHMARK_MAIN();
