// Serial vs parallel kernels, and a single cached edit vs a full recompute.

#include <benchmark/benchmark.h>

#include <vector>

#include "monoord/kernels.hpp"
#include "monoord/likelihood.hpp"
#include "monoord/marks.hpp"
#include "monoord/simgen.hpp"

using namespace monoord;

namespace {

struct Fixture {
  Scenario sc;
  ModelSpec model;
  Configuration config;

  explicit Fixture(std::size_t n, int points)
      : sc(make_scenario({Family::Continuous, ScenarioMode::Nonparametric, n, 3, 0})),
        model(scenario_model({})),
        config(2, 5, model.link.range, true, enumerate_subspaces(2),
               default_origin_marks(5, model.link.range, false)) {
    Rng rng(11);
    for (int i = 0; i < points; ++i) {
      const int s = int(rng.index(3));
      std::vector<double> loc(2, 0.0);
      for (int j = 0; j < 2; ++j) {
        if (config.subspaces()[s].contains(j)) loc[j] = rng.uniform();
      }
      config.add_point(s, loc, sample_mark_vector(config, loc, rng));
    }
  }
};

void BM_EnvelopeSerial(benchmark::State& st) {
  Fixture f(std::size_t(st.range(0)), 40);
  std::vector<double> out(f.sc.data.size() * 5);
  for (auto _ : st) {
    kernels::envelope_serial(f.config, f.sc.data.x, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_EnvelopeParallel(benchmark::State& st) {
  Fixture f(std::size_t(st.range(0)), 40);
  std::vector<double> out(f.sc.data.size() * 5);
  for (auto _ : st) {
    kernels::envelope_parallel(f.config, f.sc.data.x, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_LogLikSerial(benchmark::State& st) {
  Fixture f(std::size_t(st.range(0)), 40);
  for (auto _ : st) {
    benchmark::DoNotOptimize(
        kernels::log_likelihood_serial(f.sc.data, f.config, {}, f.model.link));
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_LogLikParallel(benchmark::State& st) {
  Fixture f(std::size_t(st.range(0)), 40);
  for (auto _ : st) {
    benchmark::DoNotOptimize(
        kernels::log_likelihood_parallel(f.sc.data, f.config, {}, f.model.link));
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

// One mark change proposed and discarded through the cache.
void BM_IncrementalEdit(benchmark::State& st) {
  Fixture f(std::size_t(st.range(0)), 40);
  LikelihoodEngine eng(f.sc.data, f.model.link);
  eng.rebuild(f.config, {});
  Rng rng(5);
  for (auto _ : st) {
    const PointId id = f.config.points()[rng.index(f.config.total_points())];
    Edit e;
    e.changed = {f.config.snapshot(id)};
    f.config.set_marks(id, sample_mark_vector(f.config, e.changed[0].location, rng, id));
    benchmark::DoNotOptimize(eng.propose(e, f.config, {}));
    eng.discard();
    f.config.set_marks(id, e.changed[0].marks);
  }
}

}  // namespace

BENCHMARK(BM_EnvelopeSerial)->Arg(1000)->Arg(5000)->Arg(20000);
BENCHMARK(BM_EnvelopeParallel)->Arg(1000)->Arg(5000)->Arg(20000);
BENCHMARK(BM_LogLikSerial)->Arg(1000)->Arg(5000)->Arg(20000);
BENCHMARK(BM_LogLikParallel)->Arg(1000)->Arg(5000)->Arg(20000);
BENCHMARK(BM_IncrementalEdit)->Arg(1000)->Arg(5000)->Arg(20000);

BENCHMARK_MAIN();
