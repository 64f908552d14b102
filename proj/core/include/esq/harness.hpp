#pragma once

// Seeded multi-run experiments, aggregation and report emission.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esq/assignment.hpp"
#include "esq/corpus.hpp"
#include "esq/evolve.hpp"
#include "esq/index.hpp"
#include "esq/metrics.hpp"

namespace esq {

enum class Mode { esq_fixed, esq_discovered, kmeans };

Mode parse_mode(std::string_view name);
std::string_view to_string(Mode mode);

struct DatasetSpec {
  /// Exactly one source: a corpus path, a saved index, or a synthetic preset.
  std::string path;
  std::string index;
  CorpusFormat format = CorpusFormat::jsonl;
  LoadOptions fields;
  std::string synthetic;
  std::uint64_t synthetic_seed = 1;
  /// Stop list file; empty means the built-in list.
  std::string stop_words;
  std::optional<std::size_t> sample_per_category;
  std::uint64_t sample_seed = 1;

  friend bool operator==(const DatasetSpec&, const DatasetSpec&) = default;
};

struct ExperimentConfig {
  DatasetSpec dataset;
  Mode mode = Mode::esq_discovered;
  /// k for esq-fixed and kmeans; 0 means "number of labelled classes".
  int k = 0;
  int runs = 11;
  std::uint64_t base_run_seed = 1;
  /// Runs executed concurrently. Reports do not depend on it.
  int threads = 1;
  std::size_t wordlist_size = 100;
  std::size_t knn_k = 10;
  std::size_t max_features = 1000;
  int kmeans_max_iters = 300;
  bool include_timing = false;
  /// Decode settings live in ga.decode.
  GAConfig ga;

  void validate() const;
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

/// JSON (camelCase keys, documented in README.md). Missing keys keep their
/// defaults; unknown keys are rejected.
std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Sets one parameter by key. Recognised keys are every key of the "ga" and
/// "decode" objects plus the top-level numeric keys (see README.md).
void set_parameter(ExperimentConfig& config, std::string_view key, double value);

struct RunRecord {
  std::uint64_t run_seed = 0;
  /// Query words per non-empty query (esq modes only).
  std::vector<std::vector<std::string>> queries;
  int declared_k = 0;
  std::size_t cluster_count = 0;
  double best_fitness = 0.0;
  double coverage = 1.0;
  std::optional<ValidationScores> pre_expansion;
  std::optional<ValidationScores> post_expansion;
  double wall_time_ms = 0.0;
  double wall_time_with_index_ms = 0.0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct Statistic {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
  friend bool operator==(const Statistic&, const Statistic&) = default;
};

struct Aggregates {
  Statistic v;
  Statistic ari;
  Statistic homogeneity;
  Statistic completeness;
  Statistic count_error;
  Statistic coverage;
  Statistic pre_v;
  Statistic pre_ari;
  Statistic declared_k;
  Statistic cluster_count;
  Statistic wall_time_ms;
  Statistic wall_time_with_index_ms;

  friend bool operator==(const Aggregates&, const Aggregates&) = default;
};

Statistic summarize(const std::vector<double>& values);
Aggregates aggregate(const std::vector<RunRecord>& runs);

struct Report {
  ExperimentConfig config;
  std::size_t doc_count = 0;
  std::size_t class_count = 0;
  std::vector<RunRecord> runs;
  Aggregates aggregates;

  friend bool operator==(const Report& a, const Report& b) {
    return a.config == b.config && a.doc_count == b.doc_count && a.class_count == b.class_count &&
           a.runs == b.runs && a.aggregates == b.aggregates;
  }
};

/// Per-run outputs that are not part of the serialized report.
struct RunArtifacts {
  std::size_t run = 0;
  const InvertedIndex* index = nullptr;
  const ClusterAssignment* seeds = nullptr;  // null for kmeans
  const ClusterAssignment* assignment = nullptr;
  const EvolutionResult* evolution = nullptr;  // null for kmeans
};
using RunObserver = std::function<void(const RunArtifacts&)>;

/// Loads, tokenizes and samples the configured dataset.
Corpus load_dataset(const DatasetSpec& dataset);

/// Runs config.runs seeded runs (seed = baseRunSeed + i) and aggregates.
/// Any failing run aborts the experiment with the run number in the message.
/// The observer, when set, is called once per run in run order.
Report run_experiment(const ExperimentConfig& config, const RunObserver& observer = {});
Report run_experiment(const ExperimentConfig& config, const Corpus& corpus, const RunObserver& observer = {});

enum class ReportFormat { json, csv };

std::string report_to_json(const Report& report);
Report report_from_json(std::string_view text);
/// One row per run plus a final `mean` row.
std::string report_to_csv(const Report& report);
/// `# run <i> seed <s>` headers followed by `cluster <j>: w1 OR w2 ...` lines.
std::string report_queries_text(const Report& report);

void emit_report(const Report& report, ReportFormat format, const std::filesystem::path& path);

struct SweepPoint {
  double value = 0.0;
  Report report;
};

/// Re-runs the experiment once per value of one parameter.
std::vector<SweepPoint> run_sweep(const ExperimentConfig& base, std::string_view key,
                                  const std::vector<double>& values);
std::string sweep_to_csv(std::string_view key, const std::vector<SweepPoint>& points);

/// Scores an assignment CSV (docId,clusterIndex[,label]) against labels
/// taken from a docId,label CSV, or from the assignment file's own label
/// column when labels_path is empty.
struct FileEvaluation {
  ValidationScores scores;
  double coverage = 0.0;
  std::size_t documents = 0;
};
FileEvaluation evaluate_files(const std::filesystem::path& assignments_path,
                              const std::filesystem::path& labels_path = {});

}  // namespace esq
