#pragma once

// Island-model GA over query-set chromosomes.

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "esq/assignment.hpp"
#include "esq/index.hpp"
#include "esq/querygen.hpp"
#include "esq/wordlist.hpp"

namespace esq {

struct GAConfig {
  int subpopulations = 4;
  int population_total = 512;  // across all islands
  int generations = 100;
  double crossover_prob = 0.8;
  double mutation_prob = 0.1;  // per gene
  int elitism = 2;
  int tournament_size = 2;
  int migration_interval = 30;
  int migrants = 3;
  double k_penalty = 0.02;
  std::uint64_t seed = 0;
  /// Worker threads for island evolution. Results do not depend on it.
  int threads = 1;
  DecodeConfig decode;

  int island_size() const { return population_total / subpopulations; }
  void validate() const;
};

struct Individual {
  Chromosome chromosome;
  double fitness = 0.0;
};

struct EvolutionResult {
  Chromosome best_chromosome;
  QuerySet best_query_set;
  double best_fitness = 0.0;
  /// fitness_history[generation][island] = best fitness on that island.
  std::vector<std::vector<double>> fitness_history;
};

/// Documents matched by exactly one non-empty query.
std::size_t unique_hits(const InvertedIndex& index, const QuerySet& queries);

/// uniqueHits (fixed k) or uniqueHits * (1 - kPenalty * declaredK) (discovered k).
double fitness(const InvertedIndex& index, const QuerySet& queries, const GAConfig& config);
double fitness_from_hits(std::size_t hits, int declared_k, const GAConfig& config);

EvolutionResult evolve_run(const InvertedIndex& index, const WordList& words, const GAConfig& config);

/// Cluster j holds the documents matched by the j-th non-empty query and by
/// no other query. Zero-hit and multi-hit documents stay unassigned.
ClusterAssignment seed_clusters(const InvertedIndex& index, const QuerySet& queries);

/// CSV `generation,island,bestFitness`.
void write_fitness_trace_csv(std::ostream& out, const EvolutionResult& result);

}  // namespace esq
