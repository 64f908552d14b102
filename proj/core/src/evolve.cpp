#include "esq/evolve.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <numeric>
#include <thread>

#include "esq/error.hpp"
#include "esq/random.hpp"

namespace esq {
namespace {

class Island {
 public:
  Island(const QueryDecoder& decoder, const GAConfig& config, std::size_t island_id)
      : decoder_(&decoder), config_(&config), rng_(make_rng({config.seed, island_id})) {
    population_.resize(static_cast<std::size_t>(config.island_size()));
    for (auto& ind : population_) ind.chromosome = random_chromosome();
    evaluate();
  }

  void step() {
    breed();
    evaluate();
  }

  const std::vector<Individual>& population() const { return population_; }

  double best_fitness() const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& ind : population_) best = std::max(best, ind.fitness);
    return best;
  }

  /// Indices ordered best first; ties keep the lower index first.
  std::vector<std::size_t> ranking() const {
    std::vector<std::size_t> order(population_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return population_[a].fitness > population_[b].fitness;
    });
    return order;
  }

  std::vector<Individual> best(std::size_t count) const {
    const auto order = ranking();
    std::vector<Individual> out;
    for (std::size_t i = 0; i < count && i < order.size(); ++i) out.push_back(population_[order[i]]);
    return out;
  }

  /// Overwrites the worst individuals with the given migrants.
  void receive(const std::vector<Individual>& migrants) {
    const auto order = ranking();
    for (std::size_t i = 0; i < migrants.size(); ++i) population_[order[order.size() - 1 - i]] = migrants[i];
  }

 private:
  int random_word_gene() {
    return static_cast<int>(uniform_index(rng_, decoder_->words().size()));
  }

  int random_k_gene() {
    const auto& d = decoder_->config();
    return d.k_min + static_cast<int>(uniform_index(rng_, static_cast<std::uint64_t>(d.k_max - d.k_min + 1)));
  }

  Chromosome random_chromosome() {
    Chromosome c;
    if (decoder_->config().discover_k) c.k_gene = random_k_gene();
    c.word_genes.resize(decoder_->config().word_gene_count());
    for (auto& g : c.word_genes) g = random_word_gene();
    return c;
  }

  std::size_t tournament() {
    std::size_t winner = uniform_index(rng_, population_.size());
    for (int i = 1; i < config_->tournament_size; ++i) {
      const std::size_t rival = uniform_index(rng_, population_.size());
      const double fr = population_[rival].fitness;
      const double fw = population_[winner].fitness;
      if (fr > fw || (fr == fw && rival < winner)) winner = rival;
    }
    return winner;
  }

  // Single-point crossover over the flat genome [k gene?, word genes...].
  void crossover(Chromosome& a, Chromosome& b) {
    const bool has_k = a.k_gene.has_value();
    const std::size_t length = a.word_genes.size() + (has_k ? 1 : 0);
    if (length < 2) return;
    const std::size_t cut = 1 + uniform_index(rng_, length - 1);
    const std::size_t offset = has_k ? 1 : 0;
    // Genes at flat positions >= cut are exchanged; the k gene sits at 0 < cut.
    for (std::size_t pos = cut; pos < length; ++pos) std::swap(a.word_genes[pos - offset], b.word_genes[pos - offset]);
  }

  void mutate(Chromosome& c) {
    if (c.k_gene && bernoulli(rng_, config_->mutation_prob)) c.k_gene = random_k_gene();
    for (auto& g : c.word_genes)
      if (bernoulli(rng_, config_->mutation_prob)) g = random_word_gene();
  }

  void breed() {
    const auto order = ranking();
    const auto size = population_.size();
    std::vector<Individual> next;
    next.reserve(size);
    for (std::size_t i = 0; i < static_cast<std::size_t>(config_->elitism) && i < size; ++i)
      next.push_back(population_[order[i]]);
    while (next.size() < size) {
      Chromosome a = population_[tournament()].chromosome;
      Chromosome b = population_[tournament()].chromosome;
      if (bernoulli(rng_, config_->crossover_prob)) crossover(a, b);
      mutate(a);
      mutate(b);
      next.push_back({std::move(a), std::numeric_limits<double>::quiet_NaN()});
      if (next.size() < size) next.push_back({std::move(b), std::numeric_limits<double>::quiet_NaN()});
    }
    population_ = std::move(next);
  }

  void evaluate() {
    for (auto& ind : population_) {
      const QuerySet queries = decoder_->decode(ind.chromosome);
      ind.fitness = fitness_from_hits(unique_hits(decoder_->index(), queries), queries.declared_k, *config_);
    }
  }

  const QueryDecoder* decoder_;
  const GAConfig* config_;
  Rng rng_;
  std::vector<Individual> population_;
};

template <typename F>
void for_each_island(std::vector<Island>& islands, int threads, F&& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, std::min<int>(threads, static_cast<int>(islands.size()))));
  if (workers == 1) {
    for (auto& island : islands) fn(island);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < islands.size(); i += workers) fn(islands[i]);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

void GAConfig::validate() const {
  if (subpopulations < 1) throw Error("subpopulations must be >= 1");
  if (population_total < subpopulations || population_total % subpopulations != 0)
    throw Error("populationTotal must be a positive multiple of subpopulations");
  if (generations < 1) throw Error("generations must be >= 1");
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(crossover_prob) || !prob(mutation_prob)) throw Error("probabilities must lie in [0, 1]");
  if (elitism < 0) throw Error("elitism must be >= 0");
  if (tournament_size < 1) throw Error("tournamentSize must be >= 1");
  if (migration_interval < 1) throw Error("migrationInterval must be >= 1");
  if (migrants < 0) throw Error("migrants must be >= 0");
  if (!(k_penalty >= 0.0)) throw Error("kPenalty must be >= 0");
  decode.validate();
}

std::size_t unique_hits(const InvertedIndex& index, const QuerySet& queries) {
  DocSet once(index.doc_count());
  DocSet twice(index.doc_count());
  DocSet matched(index.doc_count());
  for (const auto& q : queries.queries) {
    if (q.empty()) continue;
    matched.clear();
    for (auto t : q.terms) matched |= index.docs_with(t);
    auto overlap = once;
    overlap &= matched;
    twice |= overlap;
    once |= matched;
  }
  return once.subtract(twice).count();
}

double fitness_from_hits(std::size_t hits, int declared_k, const GAConfig& config) {
  const auto h = static_cast<double>(hits);
  if (!config.decode.discover_k) return h;
  return h * (1.0 - config.k_penalty * static_cast<double>(declared_k));
}

double fitness(const InvertedIndex& index, const QuerySet& queries, const GAConfig& config) {
  return fitness_from_hits(unique_hits(index, queries), queries.declared_k, config);
}

EvolutionResult evolve_run(const InvertedIndex& index, const WordList& words, const GAConfig& config) {
  config.validate();
  if (words.empty()) throw Error("evolve_run needs a non-empty word list");
  const QueryDecoder decoder(index, words, config.decode);

  std::vector<Island> islands;
  islands.reserve(static_cast<std::size_t>(config.subpopulations));
  for (int i = 0; i < config.subpopulations; ++i) islands.emplace_back(decoder, config, static_cast<std::size_t>(i));

  EvolutionResult result;
  auto record = [&] {
    std::vector<double> row;
    for (const auto& island : islands) row.push_back(island.best_fitness());
    result.fitness_history.push_back(std::move(row));
  };
  record();

  // Migrants never displace an island's best individual.
  const auto migrant_count = static_cast<std::size_t>(
      std::max(0, std::min(config.migrants, config.island_size() - 1)));

  const bool migrating = islands.size() > 1 && migrant_count > 0;
  const int last_generation = config.generations - 1;
  int generation = 0;
  while (generation < last_generation) {
    int target = last_generation;
    if (migrating) {
      const int next_migration = (generation / config.migration_interval + 1) * config.migration_interval;
      target = std::min(target, next_migration);
    }
    const auto span = static_cast<std::size_t>(target - generation);
    std::vector<std::vector<double>> segment(span, std::vector<double>(islands.size()));
    for_each_island(islands, config.threads, [&](Island& island) {
      const auto i = static_cast<std::size_t>(&island - islands.data());
      for (std::size_t s = 0; s < span; ++s) {
        island.step();
        segment[s][i] = island.best_fitness();
      }
    });
    generation = target;

    if (migrating && generation % config.migration_interval == 0 && generation < last_generation) {
      std::vector<std::vector<Individual>> outgoing;
      for (const auto& island : islands) outgoing.push_back(island.best(migrant_count));
      for (std::size_t i = 0; i < islands.size(); ++i) islands[(i + 1) % islands.size()].receive(outgoing[i]);
      for (std::size_t i = 0; i < islands.size(); ++i) segment.back()[i] = islands[i].best_fitness();
    }
    for (auto& row : segment) result.fitness_history.push_back(std::move(row));
  }

  const Individual* best = nullptr;
  for (const auto& island : islands)
    for (const auto& ind : island.population())
      if (best == nullptr || ind.fitness > best->fitness) best = &ind;

  result.best_chromosome = best->chromosome;
  result.best_query_set = decoder.decode(best->chromosome);
  result.best_fitness = best->fitness;
  return result;
}

ClusterAssignment seed_clusters(const InvertedIndex& index, const QuerySet& queries) {
  std::vector<DocSet> matches;
  for (const auto& q : queries.queries)
    if (!q.empty()) matches.push_back(index.match_any(std::span<const TermId>(q.terms)));

  ClusterAssignment out(index.doc_count(), static_cast<std::uint32_t>(matches.size()));
  DocSet once(index.doc_count());
  DocSet twice(index.doc_count());
  for (const auto& m : matches) {
    twice |= (once & m);
    once |= m;
  }
  for (std::size_t j = 0; j < matches.size(); ++j) {
    auto unique = matches[j];
    unique.subtract(twice);
    unique.for_each([&](DocId d) { out.cluster_of[d] = static_cast<std::uint32_t>(j); });
  }
  return out;
}

void write_fitness_trace_csv(std::ostream& out, const EvolutionResult& result) {
  out << "generation,island,bestFitness\n";
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t g = 0; g < result.fitness_history.size(); ++g)
    for (std::size_t i = 0; i < result.fitness_history[g].size(); ++i)
      out << g << ',' << i << ',' << result.fitness_history[g][i] << '\n';
  out.precision(old_precision);
}

}  // namespace esq
