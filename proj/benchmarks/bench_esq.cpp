#include <benchmark/benchmark.h>

#include <esq/evolve.hpp>
#include <esq/expand.hpp>
#include <esq/querygen.hpp>
#include <esq/random.hpp>
#include <esq/synthetic.hpp>
#include <esq/wordlist.hpp>

namespace {

using namespace esq;

struct Fixture {
  InvertedIndex index;
  WordList words;
};

const Fixture& ng5() {
  static const Fixture f = [] {
    auto index = build_index(tokenize_all(synthetic_preset("ng5-like", 1), default_stop_set()));
    auto words = build_wordlist(index, 100);
    return Fixture{std::move(index), std::move(words)};
  }();
  return f;
}

Chromosome random_chromosome(Rng& rng) {
  Chromosome c;
  c.k_gene = 2 + static_cast<int>(uniform_index(rng, 8));
  for (int i = 0; i < 36; ++i) c.word_genes.push_back(static_cast<int>(uniform_index(rng, 100)));
  return c;
}

void BM_Decode(benchmark::State& state) {
  const auto& f = ng5();
  QueryDecoder decoder(f.index, f.words, DecodeConfig{});
  Rng rng = make_rng({1});
  std::vector<Chromosome> pool;
  for (int i = 0; i < 256; ++i) pool.push_back(random_chromosome(rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decoder.decode(pool[i++ % pool.size()]));
}
BENCHMARK(BM_Decode);

void BM_UniqueHits(benchmark::State& state) {
  const auto& f = ng5();
  QueryDecoder decoder(f.index, f.words, DecodeConfig{});
  Rng rng = make_rng({2});
  std::vector<QuerySet> pool;
  for (int i = 0; i < 256; ++i) pool.push_back(decoder.decode(random_chromosome(rng)));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(unique_hits(f.index, pool[i++ % pool.size()]));
}
BENCHMARK(BM_UniqueHits);

void BM_EvolveRun(benchmark::State& state) {
  const auto& f = ng5();
  GAConfig cfg;
  cfg.generations = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = evolve_run(f.index, f.words, cfg);
    benchmark::DoNotOptimize(r.best_fitness);
    ++cfg.seed;
  }
}
BENCHMARK(BM_EvolveRun)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_KnnExpand(benchmark::State& state) {
  const auto& f = ng5();
  GAConfig cfg;
  const auto best = evolve_run(f.index, f.words, cfg).best_query_set;
  const auto seeds = seed_clusters(f.index, best);
  for (auto _ : state) benchmark::DoNotOptimize(knn_expand(f.index, seeds, 10));
}
BENCHMARK(BM_KnnExpand)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
