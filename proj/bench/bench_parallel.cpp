// Parallel kernels against their serial references: campaign trials and
// resolvent grid probes.

#include "linrel/campaign.hpp"
#include "linrel/generate.hpp"
#include "linrel/resolvent.hpp"

#include <benchmark/benchmark.h>

using namespace linrel;

namespace {

CampaignConfig campaign(const char* id, std::size_t trials) {
  CampaignConfig cfg;
  cfg.id = id;
  cfg.seed = 1;
  cfg.trials = trials;
  cfg.field = FieldTag::Complex;
  return cfg;
}

void BM_Campaign(benchmark::State& state, const char* id, bool serial) {
  const CampaignConfig cfg = campaign(id, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    CampaignReport r = serial ? run_campaign_serial(cfg) : run_campaign(cfg);
    benchmark::DoNotOptimize(r.passed);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

// Dense grid on a 6 x 6 pair; each point is an independent SVD.
template <bool Serial>
void BM_ProbeGrid(benchmark::State& state) {
  GenConfig g;
  g.seed = 5;
  g.field = FieldTag::Complex;
  const AdjointPair p = random_adjoint_pair(g, 6, 6);
  std::vector<double> grid;
  for (int i = 1; i <= state.range(0); ++i) {
    grid.push_back(0.05 * i);
    grid.push_back(-0.05 * i);
  }
  for (auto _ : state) {
    auto probes = Serial ? probe_grid_serial(p.s, p.t, grid) : probe_grid(p.s, p.t, grid);
    benchmark::DoNotOptimize(probes.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Campaign, von_neumann_parallel, "von-neumann", false)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Campaign, von_neumann_serial, "von-neumann", true)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Campaign, nieminen_parallel, "nieminen", false)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Campaign, nieminen_serial, "nieminen", true)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_ProbeGrid, false)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_ProbeGrid, true)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
