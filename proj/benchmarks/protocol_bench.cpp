#include <benchmark/benchmark.h>

#include "dloc/directory/route_table.hpp"
#include "dloc/explore/flooding.hpp"
#include "dloc/hash/chord.hpp"
#include "dloc/net/rng.hpp"
#include "dloc/net/topology.hpp"

using namespace dloc;

namespace {

net::Topology build(net::TopologyKind kind, std::size_t n) {
  net::TopologySpec spec;
  spec.kind = kind;
  spec.edge_probability = 0.05;
  return net::build_topology(spec, n, 1);
}

}  // namespace

static void BM_BfsAllSources(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    state.PauseTiming();
    auto t = build(net::TopologyKind::random_connected, n);  // fresh BFS cache
    state.ResumeTiming();
    benchmark::DoNotOptimize(net::diameter(t));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BfsAllSources)->RangeMultiplier(2)->Range(64, 512)->Complexity();

static void BM_ChordLookup(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto t = build(net::TopologyKind::balanced_tree, n);
  hash::ChordDht chord(t, {});
  std::vector<proto::DataId> objects;
  for (int i = 0; i < 1000; ++i) {
    objects.emplace_back("obj-" + std::to_string(i));
    chord.store({objects.back(), std::nullopt});
  }
  const auto nodes = t.nodes();
  net::Rng rng(1);
  std::uint64_t hops = 0, lookups = 0;
  for (auto _ : state) {
    const auto tr = chord.locate(objects[rng.uniform(objects.size())], nodes[rng.uniform(nodes.size())]);
    hops += tr.hops;
    ++lookups;
  }
  state.counters["hops"] = benchmark::Counter(static_cast<double>(hops) / static_cast<double>(lookups));
}
BENCHMARK(BM_ChordLookup)->RangeMultiplier(4)->Range(16, 1024);

static void BM_FloodComplete(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto t = build(net::TopologyKind::complete, n);
  explore::Flooding flood(t, {});
  flood.store({proto::DataId("obj"), net::NodeId(static_cast<std::uint32_t>(n - 1))});
  std::uint64_t q = 0, links = 0;
  for (auto _ : state) {
    links += flood.locate(explore::ExploreQuery{q++, proto::DataId("missing"), 2, 1}, net::NodeId(0)).links_used;
  }
  state.counters["links"] = benchmark::Counter(static_cast<double>(links) / static_cast<double>(q));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FloodComplete)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNSquared);

static void BM_Aggregate(benchmark::State& state) {
  const auto routes = static_cast<int>(state.range(0));
  net::Rng rng(7);
  directory::RouteTable table(16);
  for (int i = 0; i < routes; ++i) {
    const auto len = static_cast<unsigned>(8 + rng.uniform(9));
    table.set(directory::Prefix(net::Address(rng.uniform(1u << 16), 16), len),
              net::NodeId(static_cast<std::uint32_t>(rng.uniform(4))));
  }
  std::size_t after = 0;
  for (auto _ : state) {
    after = directory::aggregate(table).size();
    benchmark::DoNotOptimize(after);
  }
  state.counters["routes_after"] = static_cast<double>(after);
}
BENCHMARK(BM_Aggregate)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
