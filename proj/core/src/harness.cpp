#include "esq/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "esq/baseline.hpp"
#include "esq/csv.hpp"
#include "esq/error.hpp"
#include "esq/expand.hpp"
#include "esq/synthetic.hpp"
#include "esq/wordlist.hpp"

namespace esq {
namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Config <-> JSON

template <typename T>
void read_key(const ordered_json& obj, const char* key, T& out) {
  if (auto it = obj.find(key); it != obj.end() && !it->is_null()) out = it->get<T>();
}

void reject_unknown(const ordered_json& obj, std::initializer_list<std::string_view> known, std::string_view where) {
  for (const auto& [key, value] : obj.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw Error("unknown key '" + key + "' in " + std::string(where));
}

ordered_json ga_to_json(const GAConfig& ga) {
  ordered_json j;
  j["subpopulations"] = ga.subpopulations;
  j["populationTotal"] = ga.population_total;
  j["generations"] = ga.generations;
  j["crossoverProb"] = ga.crossover_prob;
  j["mutationProb"] = ga.mutation_prob;
  j["elitism"] = ga.elitism;
  j["tournamentSize"] = ga.tournament_size;
  j["migrationInterval"] = ga.migration_interval;
  j["migrants"] = ga.migrants;
  j["kPenalty"] = ga.k_penalty;
  j["threads"] = ga.threads;
  return j;
}

void ga_from_json(const ordered_json& j, GAConfig& ga) {
  reject_unknown(j,
                 {"subpopulations", "populationTotal", "generations", "crossoverProb", "mutationProb", "elitism",
                  "tournamentSize", "migrationInterval", "migrants", "kPenalty", "threads"},
                 "ga");
  read_key(j, "subpopulations", ga.subpopulations);
  read_key(j, "populationTotal", ga.population_total);
  read_key(j, "generations", ga.generations);
  read_key(j, "crossoverProb", ga.crossover_prob);
  read_key(j, "mutationProb", ga.mutation_prob);
  read_key(j, "elitism", ga.elitism);
  read_key(j, "tournamentSize", ga.tournament_size);
  read_key(j, "migrationInterval", ga.migration_interval);
  read_key(j, "migrants", ga.migrants);
  read_key(j, "kPenalty", ga.k_penalty);
  read_key(j, "threads", ga.threads);
}

ordered_json decode_to_json(const DecodeConfig& d) {
  ordered_json j;
  j["intersectThreshold"] = d.intersect_threshold;
  j["kMin"] = d.k_min;
  j["kMax"] = d.k_max;
  j["maxWordsPerQuery"] = d.max_words_per_query;
  return j;
}

void decode_from_json(const ordered_json& j, DecodeConfig& d) {
  reject_unknown(j, {"intersectThreshold", "kMin", "kMax", "maxWordsPerQuery"}, "decode");
  read_key(j, "intersectThreshold", d.intersect_threshold);
  read_key(j, "kMin", d.k_min);
  read_key(j, "kMax", d.k_max);
  read_key(j, "maxWordsPerQuery", d.max_words_per_query);
}

ordered_json dataset_to_json(const DatasetSpec& d) {
  ordered_json j;
  j["path"] = d.path;
  j["index"] = d.index;
  j["format"] = std::string(to_string(d.format));
  j["idField"] = d.fields.id_field;
  j["textField"] = d.fields.text_field;
  j["labelField"] = d.fields.label_field;
  j["synthetic"] = d.synthetic;
  j["syntheticSeed"] = d.synthetic_seed;
  j["stopWords"] = d.stop_words;
  j["samplePerCategory"] = d.sample_per_category ? ordered_json(*d.sample_per_category) : ordered_json(nullptr);
  j["sampleSeed"] = d.sample_seed;
  return j;
}

void dataset_from_json(const ordered_json& j, DatasetSpec& d) {
  reject_unknown(j,
                 {"path", "index", "format", "idField", "textField", "labelField", "synthetic", "syntheticSeed", "stopWords",
                  "samplePerCategory", "sampleSeed"},
                 "dataset");
  read_key(j, "path", d.path);
  read_key(j, "index", d.index);
  if (auto it = j.find("format"); it != j.end() && !it->is_null()) d.format = parse_corpus_format(it->get<std::string>());
  read_key(j, "idField", d.fields.id_field);
  read_key(j, "textField", d.fields.text_field);
  read_key(j, "labelField", d.fields.label_field);
  read_key(j, "synthetic", d.synthetic);
  read_key(j, "syntheticSeed", d.synthetic_seed);
  read_key(j, "stopWords", d.stop_words);
  if (auto it = j.find("samplePerCategory"); it != j.end()) {
    if (it->is_null())
      d.sample_per_category.reset();
    else
      d.sample_per_category = it->get<std::size_t>();
  }
  read_key(j, "sampleSeed", d.sample_seed);
}

ordered_json config_json(const ExperimentConfig& c) {
  ordered_json j;
  j["dataset"] = dataset_to_json(c.dataset);
  j["mode"] = std::string(to_string(c.mode));
  j["k"] = c.k;
  j["runs"] = c.runs;
  j["baseRunSeed"] = c.base_run_seed;
  j["threads"] = c.threads;
  j["wordlistSize"] = c.wordlist_size;
  j["knnK"] = c.knn_k;
  j["maxFeatures"] = c.max_features;
  j["kmeansMaxIters"] = c.kmeans_max_iters;
  j["includeTiming"] = c.include_timing;
  j["ga"] = ga_to_json(c.ga);
  j["decode"] = decode_to_json(c.ga.decode);
  return j;
}

ExperimentConfig config_from(const ordered_json& j) {
  if (!j.is_object()) throw Error("experiment config must be a JSON object");
  reject_unknown(j,
                 {"dataset", "mode", "k", "runs", "baseRunSeed", "threads", "wordlistSize", "knnK", "maxFeatures",
                  "kmeansMaxIters", "includeTiming", "ga", "decode"},
                 "experiment config");
  ExperimentConfig c;
  if (auto it = j.find("dataset"); it != j.end()) dataset_from_json(*it, c.dataset);
  if (auto it = j.find("mode"); it != j.end()) c.mode = parse_mode(it->get<std::string>());
  read_key(j, "k", c.k);
  read_key(j, "runs", c.runs);
  read_key(j, "baseRunSeed", c.base_run_seed);
  read_key(j, "threads", c.threads);
  read_key(j, "wordlistSize", c.wordlist_size);
  read_key(j, "knnK", c.knn_k);
  read_key(j, "maxFeatures", c.max_features);
  read_key(j, "kmeansMaxIters", c.kmeans_max_iters);
  read_key(j, "includeTiming", c.include_timing);
  if (auto it = j.find("ga"); it != j.end()) ga_from_json(*it, c.ga);
  if (auto it = j.find("decode"); it != j.end()) decode_from_json(*it, c.ga.decode);
  return c;
}

// ---------------------------------------------------------------------------
// Report <-> JSON

ordered_json scores_to_json(const std::optional<ValidationScores>& s) {
  if (!s) return nullptr;
  ordered_json j;
  j["v"] = s->v;
  j["homogeneity"] = s->homogeneity;
  j["completeness"] = s->completeness;
  j["ari"] = s->ari;
  j["countError"] = s->count_error;
  j["beta"] = s->beta;
  return j;
}

std::optional<ValidationScores> scores_from_json(const ordered_json& j) {
  if (j.is_null()) return std::nullopt;
  ValidationScores s;
  s.v = j.at("v").get<double>();
  s.homogeneity = j.at("homogeneity").get<double>();
  s.completeness = j.at("completeness").get<double>();
  s.ari = j.at("ari").get<double>();
  s.count_error = j.at("countError").get<std::size_t>();
  s.beta = j.at("beta").get<double>();
  return s;
}

ordered_json stat_to_json(const Statistic& s) { return {{"mean", s.mean}, {"stddev", s.stddev}}; }
Statistic stat_from_json(const ordered_json& j) { return {j.at("mean").get<double>(), j.at("stddev").get<double>()}; }

// ---------------------------------------------------------------------------

std::size_t resolve_k(const ExperimentConfig& config, const Corpus& corpus) {
  if (config.k > 0) return static_cast<std::size_t>(config.k);
  if (corpus.label_names.empty()) throw Error("k not given and the corpus has no labels to infer it from");
  return corpus.label_names.size();
}

RunRecord execute_run(const ExperimentConfig& config, const Corpus& corpus, std::size_t run,
                      const RunObserver& observer) {
  RunRecord record;
  record.run_seed = config.base_run_seed + run;

  const auto start = Clock::now();
  const InvertedIndex index = build_index(corpus);
  const auto after_index = Clock::now();
  const bool labelled = !corpus.label_names.empty();
  const LabelSet labels = labelled ? LabelSet::from_index(index) : LabelSet{};

  if (config.mode == Mode::kmeans) {
    const auto k = resolve_k(config, corpus);
    const auto matrix = tfidf_matrix(index, config.max_features);
    const auto result = kmeans_pp(matrix, k, record.run_seed, config.kmeans_max_iters);
    record.wall_time_ms = millis_since(after_index);
    record.wall_time_with_index_ms = millis_since(start);
    record.declared_k = static_cast<int>(k);
    record.cluster_count = result.assignment.non_empty_clusters();
    record.coverage = 1.0;
    if (labelled) record.post_expansion = validate(result.assignment, labels);
    if (observer) observer({run, &index, nullptr, &result.assignment, nullptr});
    return record;
  }

  GAConfig ga = config.ga;
  ga.seed = record.run_seed;
  if (config.mode == Mode::esq_fixed) {
    ga.decode.discover_k = false;
    ga.decode.fixed_k = static_cast<int>(resolve_k(config, corpus));
  } else {
    ga.decode.discover_k = true;
  }
  const WordList words = build_wordlist(index, config.wordlist_size);
  const EvolutionResult evolution = evolve_run(index, words, ga);
  const ClusterAssignment seeds = seed_clusters(index, evolution.best_query_set);
  const ClusterAssignment expanded = knn_expand(index, seeds, config.knn_k);
  record.wall_time_ms = millis_since(after_index);
  record.wall_time_with_index_ms = millis_since(start);

  for (const auto& q : evolution.best_query_set.queries)
    if (!q.empty()) record.queries.push_back(q.words);
  record.declared_k = evolution.best_query_set.declared_k;
  record.cluster_count = expanded.non_empty_clusters();
  record.best_fitness = evolution.best_fitness;
  record.coverage = seeds.coverage();
  if (labelled) {
    record.pre_expansion = validate(seeds, labels);
    record.post_expansion = validate(expanded, labels);
  }
  if (observer) observer({run, &index, &seeds, &expanded, &evolution});
  return record;
}

}  // namespace

Mode parse_mode(std::string_view name) {
  if (name == "esq-fixed" || name == "esq-fixed-k") return Mode::esq_fixed;
  if (name == "esq-discovered" || name == "esq") return Mode::esq_discovered;
  if (name == "kmeans" || name == "kmeanspp" || name == "kmeans++") return Mode::kmeans;
  throw Error("unknown mode '" + std::string(name) + "' (expected esq-fixed, esq-discovered or kmeans)");
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::esq_fixed:
      return "esq-fixed";
    case Mode::esq_discovered:
      return "esq-discovered";
    case Mode::kmeans:
      return "kmeans";
  }
  return "esq-discovered";
}

void ExperimentConfig::validate() const {
  if (runs < 1) throw Error("runs must be >= 1");
  if (threads < 1) throw Error("threads must be >= 1");
  if (k < 0) throw Error("k must be >= 0");
  if (wordlist_size < 1) throw Error("wordlistSize must be >= 1");
  if (knn_k < 1) throw Error("knnK must be >= 1");
  if (max_features < 1) throw Error("maxFeatures must be >= 1");
  if (kmeans_max_iters < 1) throw Error("kmeansMaxIters must be >= 1");
  const int sources = !dataset.path.empty() + !dataset.index.empty() + !dataset.synthetic.empty();
  if (sources != 1) throw Error("dataset needs exactly one of 'path', 'index' or 'synthetic'");
  GAConfig check = ga;
  check.decode.discover_k = mode != Mode::esq_fixed;
  if (mode == Mode::esq_fixed) check.decode.fixed_k = std::max(k, 1);
  check.validate();
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) { return config_json(a) == config_json(b); }

std::string config_to_json(const ExperimentConfig& config) { return config_json(config).dump(2); }

ExperimentConfig config_from_json(std::string_view text) {
  try {
    return config_from(ordered_json::parse(text));
  } catch (const ordered_json::exception& e) {
    throw Error(std::string("invalid experiment config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return config_from_json(buf.str());
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void set_parameter(ExperimentConfig& config, std::string_view key, double value) {
  auto as_int = [&] {
    if (value != std::floor(value)) throw Error("parameter '" + std::string(key) + "' needs an integer value");
    return static_cast<int>(value);
  };
  auto& ga = config.ga;
  auto& d = ga.decode;
  if (key == "intersectThreshold") d.intersect_threshold = value;
  else if (key == "kPenalty") ga.k_penalty = value;
  else if (key == "kMin") d.k_min = as_int();
  else if (key == "kMax") d.k_max = as_int();
  else if (key == "maxWordsPerQuery") d.max_words_per_query = as_int();
  else if (key == "subpopulations") ga.subpopulations = as_int();
  else if (key == "populationTotal") ga.population_total = as_int();
  else if (key == "generations") ga.generations = as_int();
  else if (key == "crossoverProb") ga.crossover_prob = value;
  else if (key == "mutationProb") ga.mutation_prob = value;
  else if (key == "elitism") ga.elitism = as_int();
  else if (key == "tournamentSize") ga.tournament_size = as_int();
  else if (key == "migrationInterval") ga.migration_interval = as_int();
  else if (key == "migrants") ga.migrants = as_int();
  else if (key == "k") config.k = as_int();
  else if (key == "runs") config.runs = as_int();
  else if (key == "wordlistSize") config.wordlist_size = static_cast<std::size_t>(as_int());
  else if (key == "knnK") config.knn_k = static_cast<std::size_t>(as_int());
  else if (key == "maxFeatures") config.max_features = static_cast<std::size_t>(as_int());
  else throw Error("unknown sweep parameter '" + std::string(key) + "'");
}

Corpus load_dataset(const DatasetSpec& dataset) {
  if (!dataset.index.empty()) {
    Corpus corpus = InvertedIndex::load(dataset.index).to_corpus();
    if (dataset.sample_per_category)
      corpus = sample_per_category(corpus, *dataset.sample_per_category, dataset.sample_seed);
    return corpus;
  }
  std::vector<RawDocument> raw;
  if (!dataset.synthetic.empty()) {
    raw = synthetic_preset(dataset.synthetic, dataset.synthetic_seed);
  } else {
    raw = load_corpus(dataset.path, dataset.format, dataset.fields);
  }
  const StopSet stop = dataset.stop_words.empty() ? default_stop_set() : load_stop_set(dataset.stop_words);
  Corpus corpus = tokenize_all(raw, stop);
  if (dataset.sample_per_category) corpus = sample_per_category(corpus, *dataset.sample_per_category, dataset.sample_seed);
  if (corpus.empty()) throw Error("dataset is empty");
  return corpus;
}

Statistic summarize(const std::vector<double>& values) {
  if (values.empty()) return {};
  double sum = 0.0;
  for (double x : values) sum += x;
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size()))};
}

Aggregates aggregate(const std::vector<RunRecord>& runs) {
  auto collect = [&](auto&& get) {
    std::vector<double> xs;
    for (const auto& r : runs)
      if (auto x = get(r)) xs.push_back(*x);
    return summarize(xs);
  };
  using Opt = std::optional<double>;
  Aggregates a;
  a.v = collect([](const RunRecord& r) { return r.post_expansion ? Opt(r.post_expansion->v) : Opt(); });
  a.ari = collect([](const RunRecord& r) { return r.post_expansion ? Opt(r.post_expansion->ari) : Opt(); });
  a.homogeneity =
      collect([](const RunRecord& r) { return r.post_expansion ? Opt(r.post_expansion->homogeneity) : Opt(); });
  a.completeness =
      collect([](const RunRecord& r) { return r.post_expansion ? Opt(r.post_expansion->completeness) : Opt(); });
  a.count_error = collect([](const RunRecord& r) {
    return r.post_expansion ? Opt(static_cast<double>(r.post_expansion->count_error)) : Opt();
  });
  a.coverage = collect([](const RunRecord& r) { return Opt(r.coverage); });
  a.pre_v = collect([](const RunRecord& r) { return r.pre_expansion ? Opt(r.pre_expansion->v) : Opt(); });
  a.pre_ari = collect([](const RunRecord& r) { return r.pre_expansion ? Opt(r.pre_expansion->ari) : Opt(); });
  a.declared_k = collect([](const RunRecord& r) { return Opt(static_cast<double>(r.declared_k)); });
  a.cluster_count = collect([](const RunRecord& r) { return Opt(static_cast<double>(r.cluster_count)); });
  a.wall_time_ms = collect([](const RunRecord& r) { return Opt(r.wall_time_ms); });
  a.wall_time_with_index_ms = collect([](const RunRecord& r) { return Opt(r.wall_time_with_index_ms); });
  return a;
}

Report run_experiment(const ExperimentConfig& config, const RunObserver& observer) {
  config.validate();
  return run_experiment(config, load_dataset(config.dataset), observer);
}

Report run_experiment(const ExperimentConfig& config, const Corpus& corpus, const RunObserver& observer) {
  config.validate();
  if (corpus.empty()) throw Error("cannot run an experiment on an empty corpus");
  Report report;
  report.config = config;
  report.doc_count = corpus.size();
  report.class_count = corpus.label_names.size();
  const auto runs = static_cast<std::size_t>(config.runs);
  report.runs.resize(runs);

  auto guarded = [&](std::size_t run, const RunObserver& obs) {
    try {
      report.runs[run] = execute_run(config, corpus, run, obs);
    } catch (const std::exception& e) {
      throw Error("run " + std::to_string(run) + " (seed " + std::to_string(config.base_run_seed + run) +
                  ") failed: " + e.what());
    }
  };

  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(config.threads), runs);
  if (workers <= 1) {
    for (std::size_t run = 0; run < runs; ++run) guarded(run, observer);
  } else {
    // Observers see runs in order, so they run after the parallel phase.
    std::vector<std::exception_ptr> errors(runs);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t run = w; run < runs; run += workers) {
          try {
            guarded(run, {});
          } catch (...) {
            errors[run] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    if (observer)
      for (std::size_t run = 0; run < runs; ++run) execute_run(config, corpus, run, observer);
  }
  if (!config.include_timing) {
    for (auto& r : report.runs) {
      r.wall_time_ms = 0.0;
      r.wall_time_with_index_ms = 0.0;
    }
  }
  report.aggregates = aggregate(report.runs);
  return report;
}

std::string report_to_json(const Report& report) {
  ordered_json j;
  j["format"] = "esq-report";
  j["version"] = 1;
  j["config"] = config_json(report.config);
  j["docCount"] = report.doc_count;
  j["classCount"] = report.class_count;
  auto& runs = j["runs"] = ordered_json::array();
  const bool timing = report.config.include_timing;
  for (const auto& r : report.runs) {
    ordered_json run;
    run["runSeed"] = r.run_seed;
    run["queries"] = r.queries;
    run["declaredK"] = r.declared_k;
    run["clusterCount"] = r.cluster_count;
    run["bestFitness"] = r.best_fitness;
    run["coverage"] = r.coverage;
    run["preExpansion"] = scores_to_json(r.pre_expansion);
    run["postExpansion"] = scores_to_json(r.post_expansion);
    if (timing) {
      run["wallTimeMs"] = r.wall_time_ms;
      run["wallTimeWithIndexMs"] = r.wall_time_with_index_ms;
    }
    runs.push_back(std::move(run));
  }
  const auto& a = report.aggregates;
  ordered_json agg;
  agg["v"] = stat_to_json(a.v);
  agg["ari"] = stat_to_json(a.ari);
  agg["homogeneity"] = stat_to_json(a.homogeneity);
  agg["completeness"] = stat_to_json(a.completeness);
  agg["countError"] = stat_to_json(a.count_error);
  agg["coverage"] = stat_to_json(a.coverage);
  // No pre-expansion scores at all (k-means runs) is written as null.
  const bool has_pre = std::any_of(report.runs.begin(), report.runs.end(),
                                   [](const RunRecord& r) { return r.pre_expansion.has_value(); });
  agg["preV"] = has_pre ? stat_to_json(a.pre_v) : ordered_json(nullptr);
  agg["preAri"] = has_pre ? stat_to_json(a.pre_ari) : ordered_json(nullptr);
  agg["declaredK"] = stat_to_json(a.declared_k);
  agg["clusterCount"] = stat_to_json(a.cluster_count);
  if (timing) {
    agg["wallTimeMs"] = stat_to_json(a.wall_time_ms);
    agg["wallTimeWithIndexMs"] = stat_to_json(a.wall_time_with_index_ms);
  }
  j["aggregates"] = std::move(agg);
  return j.dump(2) + "\n";
}

Report report_from_json(std::string_view text) {
  try {
    const auto j = ordered_json::parse(text);
    if (j.at("format") != "esq-report" || j.at("version") != 1) throw Error("not an esq-report v1 document");
    Report report;
    report.config = config_from(j.at("config"));
    report.doc_count = j.at("docCount").get<std::size_t>();
    report.class_count = j.at("classCount").get<std::size_t>();
    for (const auto& run : j.at("runs")) {
      RunRecord r;
      r.run_seed = run.at("runSeed").get<std::uint64_t>();
      r.queries = run.at("queries").get<std::vector<std::vector<std::string>>>();
      r.declared_k = run.at("declaredK").get<int>();
      r.cluster_count = run.at("clusterCount").get<std::size_t>();
      r.best_fitness = run.at("bestFitness").get<double>();
      r.coverage = run.at("coverage").get<double>();
      r.pre_expansion = scores_from_json(run.at("preExpansion"));
      r.post_expansion = scores_from_json(run.at("postExpansion"));
      read_key(run, "wallTimeMs", r.wall_time_ms);
      read_key(run, "wallTimeWithIndexMs", r.wall_time_with_index_ms);
      report.runs.push_back(std::move(r));
    }
    const auto& agg = j.at("aggregates");
    auto& a = report.aggregates;
    a.v = stat_from_json(agg.at("v"));
    a.ari = stat_from_json(agg.at("ari"));
    a.homogeneity = stat_from_json(agg.at("homogeneity"));
    a.completeness = stat_from_json(agg.at("completeness"));
    a.count_error = stat_from_json(agg.at("countError"));
    a.coverage = stat_from_json(agg.at("coverage"));
    if (!agg.at("preV").is_null()) a.pre_v = stat_from_json(agg.at("preV"));
    if (!agg.at("preAri").is_null()) a.pre_ari = stat_from_json(agg.at("preAri"));
    a.declared_k = stat_from_json(agg.at("declaredK"));
    a.cluster_count = stat_from_json(agg.at("clusterCount"));
    if (agg.contains("wallTimeMs")) {
      a.wall_time_ms = stat_from_json(agg.at("wallTimeMs"));
      a.wall_time_with_index_ms = stat_from_json(agg.at("wallTimeWithIndexMs"));
    }
    return report;
  } catch (const ordered_json::exception& e) {
    throw Error(std::string("malformed report JSON: ") + e.what());
  }
}

std::string report_to_csv(const Report& report) {
  std::ostringstream out;
  out.precision(17);
  const bool timing = report.config.include_timing;
  out << "run,runSeed,declaredK,clusterCount,coverage,preV,preAri,v,homogeneity,completeness,ari,countError";
  if (timing) out << ",wallTimeMs,wallTimeWithIndexMs";
  out << '\n';
  auto opt = [&](const std::optional<ValidationScores>& s, auto&& field) {
    if (s) out << field(*s);
  };
  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    const auto& r = report.runs[i];
    out << i << ',' << r.run_seed << ',' << r.declared_k << ',' << r.cluster_count << ',' << r.coverage << ',';
    opt(r.pre_expansion, [](const ValidationScores& s) { return s.v; });
    out << ',';
    opt(r.pre_expansion, [](const ValidationScores& s) { return s.ari; });
    out << ',';
    opt(r.post_expansion, [](const ValidationScores& s) { return s.v; });
    out << ',';
    opt(r.post_expansion, [](const ValidationScores& s) { return s.homogeneity; });
    out << ',';
    opt(r.post_expansion, [](const ValidationScores& s) { return s.completeness; });
    out << ',';
    opt(r.post_expansion, [](const ValidationScores& s) { return s.ari; });
    out << ',';
    opt(r.post_expansion, [](const ValidationScores& s) { return s.count_error; });
    if (timing) out << ',' << r.wall_time_ms << ',' << r.wall_time_with_index_ms;
    out << '\n';
  }
  const auto& a = report.aggregates;
  const bool has_pre = std::any_of(report.runs.begin(), report.runs.end(),
                                   [](const RunRecord& r) { return r.pre_expansion.has_value(); });
  out << "mean,," << a.declared_k.mean << ',' << a.cluster_count.mean << ',' << a.coverage.mean << ',';
  if (has_pre) out << a.pre_v.mean << ',' << a.pre_ari.mean;
  else out << ',';
  out << ',' << a.v.mean << ',' << a.homogeneity.mean << ','
      << a.completeness.mean << ',' << a.ari.mean << ',' << a.count_error.mean;
  if (timing) out << ',' << a.wall_time_ms.mean << ',' << a.wall_time_with_index_ms.mean;
  out << '\n';
  return out.str();
}

std::string report_queries_text(const Report& report) {
  std::ostringstream out;
  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    const auto& r = report.runs[i];
    out << "# run " << i << " seed " << r.run_seed << '\n';
    for (std::size_t q = 0; q < r.queries.size(); ++q) {
      out << "cluster " << q << ':';
      for (std::size_t w = 0; w < r.queries[q].size(); ++w) out << (w == 0 ? " " : " OR ") << r.queries[q][w];
      out << '\n';
    }
  }
  return out.str();
}

void emit_report(const Report& report, ReportFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << (format == ReportFormat::json ? report_to_json(report) : report_to_csv(report));
  if (!out) throw Error("write failed: " + path.string());
}

std::vector<SweepPoint> run_sweep(const ExperimentConfig& base, std::string_view key,
                                  const std::vector<double>& values) {
  if (values.empty()) throw Error("sweep needs at least one value");
  base.validate();
  const Corpus corpus = load_dataset(base.dataset);
  std::vector<SweepPoint> points;
  for (double value : values) {
    ExperimentConfig config = base;
    set_parameter(config, key, value);
    points.push_back({value, run_experiment(config, corpus)});
  }
  return points;
}

std::string sweep_to_csv(std::string_view key, const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  out.precision(17);
  out << key << ",meanV,stdV,meanAri,stdAri,meanHomogeneity,meanCompleteness,meanCountError,meanCoverage,meanPreV,"
      << "meanDeclaredK\n";
  for (const auto& p : points) {
    const auto& a = p.report.aggregates;
    out << p.value << ',' << a.v.mean << ',' << a.v.stddev << ',' << a.ari.mean << ',' << a.ari.stddev << ','
        << a.homogeneity.mean << ',' << a.completeness.mean << ',' << a.count_error.mean << ',' << a.coverage.mean
        << ',' << a.pre_v.mean << ',' << a.declared_k.mean << '\n';
  }
  return out.str();
}

FileEvaluation evaluate_files(const std::filesystem::path& assignments_path,
                              const std::filesystem::path& labels_path) {
  const auto table = read_csv(assignments_path);
  const auto id_col = table.column("docId");
  const auto cluster_col = table.column("clusterIndex");
  if (!id_col || !cluster_col) throw Error(assignments_path.string() + ": needs docId and clusterIndex columns");

  std::unordered_map<std::string, std::string> label_of;
  if (!labels_path.empty()) {
    const auto labels = read_csv(labels_path);
    const auto lid = labels.column("docId");
    const auto llabel = labels.column("label");
    if (!lid || !llabel) throw Error(labels_path.string() + ": needs docId and label columns");
    for (const auto& row : labels.rows) label_of[row.fields[*lid]] = row.fields[*llabel];
  } else {
    const auto llabel = table.column("label");
    if (!llabel) throw Error(assignments_path.string() + ": no label column and no labels file given");
    for (const auto& row : table.rows) label_of[row.fields[*id_col]] = row.fields[*llabel];
  }

  std::vector<std::string> names;
  for (const auto& [id, label] : label_of)
    if (!label.empty()) names.push_back(label);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());

  LabelSet labels;
  labels.names = names;
  ClusterAssignment assignment(table.rows.size(), 0);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const auto& id = row.fields[*id_col];
    auto it = label_of.find(id);
    if (it == label_of.end() || it->second.empty())
      throw Error(assignments_path.string() + ":" + std::to_string(row.line) + ": no label for document '" + id + "'");
    labels.class_of.push_back(static_cast<std::uint32_t>(
        std::lower_bound(names.begin(), names.end(), it->second) - names.begin()));
    const auto& cell = row.fields[*cluster_col];
    if (cell.empty()) continue;
    std::size_t pos = 0;
    unsigned long c = 0;
    try {
      c = std::stoul(cell, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != cell.size())
      throw Error(assignments_path.string() + ":" + std::to_string(row.line) + ": bad cluster index '" + cell + "'");
    assignment.cluster_of[i] = static_cast<std::uint32_t>(c);
    assignment.cluster_count = std::max(assignment.cluster_count, static_cast<std::uint32_t>(c + 1));
  }
  if (assignment.assigned_count() == 0) throw Error(assignments_path.string() + ": no assigned documents");
  FileEvaluation result;
  result.scores = validate(assignment, labels);
  result.coverage = assignment.coverage();
  result.documents = assignment.doc_count();
  return result;
}

}  // namespace esq
