// esq: command-line front end for query-based document clustering.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "esq/baseline.hpp"
#include "esq/corpus.hpp"
#include "esq/error.hpp"
#include "esq/evolve.hpp"
#include "esq/expand.hpp"
#include "esq/harness.hpp"
#include "esq/index.hpp"
#include "esq/synthetic.hpp"
#include "esq/wordlist.hpp"

namespace {

using nlohmann::ordered_json;

struct DatasetOptions {
  std::string corpus;
  std::string format = "jsonl";
  std::string index;
  std::string synthetic;
  std::uint64_t synthetic_seed = 1;
  std::string stop_words;
  std::string id_field = "id";
  std::string text_field = "text";
  std::string label_field = "label";
  std::size_t sample = 0;
  std::uint64_t sample_seed = 1;

  void attach(CLI::App* cmd, bool positional_corpus) {
    if (positional_corpus)
      cmd->add_option("corpus", corpus, "Corpus file or directory");
    else
      cmd->add_option("--corpus", corpus, "Corpus file or directory");
    cmd->add_option("--format", format, "jsonl | category-dirs | csv")->capture_default_str();
    cmd->add_option("--index", index, "Saved index JSON instead of a corpus");
    cmd->add_option("--synthetic", synthetic, "Synthetic preset instead of a corpus");
    cmd->add_option("--synthetic-seed", synthetic_seed, "Seed for the synthetic preset")->capture_default_str();
    cmd->add_option("--stop-words", stop_words, "Stop list file (one word per line)");
    cmd->add_option("--id-field", id_field, "Id field/column")->capture_default_str();
    cmd->add_option("--text-field", text_field, "Text field/column")->capture_default_str();
    cmd->add_option("--label-field", label_field, "Label field/column")->capture_default_str();
    cmd->add_option("--sample", sample, "Documents sampled per category (0 = all)");
    cmd->add_option("--sample-seed", sample_seed, "Sampling seed")->capture_default_str();
  }

  bool given() const { return !corpus.empty() || !index.empty() || !synthetic.empty(); }

  esq::DatasetSpec spec() const {
    esq::DatasetSpec d;
    d.path = corpus;
    d.index = index;
    d.synthetic = synthetic;
    d.synthetic_seed = synthetic_seed;
    d.format = esq::parse_corpus_format(format);
    d.fields = {id_field, text_field, label_field};
    d.stop_words = stop_words;
    if (sample > 0) d.sample_per_category = sample;
    d.sample_seed = sample_seed;
    return d;
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw esq::Error("cannot write " + path);
  out << text;
  if (!out) throw esq::Error("write failed: " + path);
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size()) throw esq::Error("bad sweep value '" + item + "'");
    values.push_back(v);
  }
  return values;
}

std::string scores_line(const char* name, const esq::Report& r) {
  const auto& a = r.aggregates;
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << name << "  V " << a.v.mean << " (sd " << a.v.stddev << ")  ARI " << a.ari.mean << " (sd " << a.ari.stddev
      << ")  countError " << a.count_error.mean << "  coverage " << a.coverage.mean;
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"esq - document clustering with evolved disjunctive search queries"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "Write a synthetic labelled corpus as JSONL");
  std::string preset = "ng3-like";
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  generate->add_option("--preset", preset, "blocks3 | ng3-like | ng5-like | ng6-like | r4-like")->capture_default_str();
  generate->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  generate->add_option("--out", gen_out, "Output JSONL path")->required();

  // index
  auto* index_cmd = app.add_subcommand("index", "Tokenize a corpus and save its inverted index");
  DatasetOptions index_data;
  index_data.attach(index_cmd, true);
  std::string index_out;
  index_cmd->add_option("--out", index_out, "Index JSON path")->required();

  // wordlist
  auto* wordlist_cmd = app.add_subcommand("wordlist", "Print the ranked candidate word list as CSV");
  DatasetOptions wordlist_data;
  wordlist_data.attach(wordlist_cmd, true);
  std::size_t wordlist_size = 100;
  std::string wordlist_out;
  wordlist_cmd->add_option("--size", wordlist_size, "Word list length")->capture_default_str();
  wordlist_cmd->add_option("--out", wordlist_out, "CSV path (default stdout)");

  // cluster
  auto* cluster = app.add_subcommand("cluster", "Run seeded clustering experiments");
  DatasetOptions cluster_data;
  cluster_data.attach(cluster, true);
  std::string config_path;
  std::string mode;
  int k = -1;
  int runs = -1;
  long long seed = -1;
  double threshold = -1;
  double penalty = -1;
  int threads = -1;
  bool timing = false;
  std::string report_out, csv_out, queries_out, assignments_out, trace_out;
  std::size_t assignments_run = 0;
  cluster->add_option("--config", config_path, "Experiment config JSON");
  cluster->add_option("--mode", mode, "esq-fixed | esq-discovered | kmeans");
  cluster->add_option("--k", k, "Cluster count for esq-fixed / kmeans (0 = number of classes)");
  cluster->add_option("--runs", runs, "Number of seeded runs");
  cluster->add_option("--seed", seed, "Base run seed");
  cluster->add_option("--threshold", threshold, "Intersect ratio threshold");
  cluster->add_option("--k-penalty", penalty, "Penalty per declared cluster");
  cluster->add_option("--threads", threads, "Concurrent runs");
  cluster->add_flag("--timing", timing, "Record wall-clock times in the report");
  cluster->add_option("--out", report_out, "Report JSON path (default stdout)");
  cluster->add_option("--csv", csv_out, "Report CSV path");
  cluster->add_option("--queries", queries_out, "Query text path");
  cluster->add_option("--assignments", assignments_out, "Assignment CSV path for one run");
  cluster->add_option("--assignments-run", assignments_run, "Run whose assignments are written")->capture_default_str();
  cluster->add_option("--trace", trace_out, "Per-generation fitness CSV path for --assignments-run");

  // compare
  auto* compare = app.add_subcommand("compare", "Run eSQ and k-means++ on the same data");
  std::string compare_config;
  std::string compare_out;
  compare->add_option("--config", compare_config, "Experiment config JSON")->required();
  compare->add_option("--out", compare_out, "Joint JSON path (default stdout)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Vary one parameter over a list of values");
  std::string sweep_config;
  DatasetOptions sweep_data;
  sweep_data.attach(sweep, false);
  std::string sweep_param;
  std::string sweep_values;
  std::string sweep_out;
  int sweep_runs = -1;
  sweep->add_option("--config", sweep_config, "Experiment config JSON");
  sweep->add_option("--param", sweep_param, "Parameter key, e.g. intersectThreshold or kPenalty")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
  sweep->add_option("--runs", sweep_runs, "Runs per value");
  sweep->add_option("--out", sweep_out, "CSV path (default stdout)");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score an assignment CSV against labels");
  std::string eval_assignments, eval_labels;
  evaluate->add_option("--assignments", eval_assignments, "CSV with docId,clusterIndex")->required();
  evaluate->add_option("--labels", eval_labels, "CSV with docId,label (default: label column of assignments)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      esq::write_jsonl(gen_out, esq::synthetic_preset(preset, gen_seed));
      return 0;
    }

    if (index_cmd->parsed()) {
      const auto corpus = esq::load_dataset(index_data.spec());
      esq::build_index(corpus).save(index_out);
      return 0;
    }

    if (wordlist_cmd->parsed()) {
      const auto index = esq::build_index(esq::load_dataset(wordlist_data.spec()));
      const auto words = esq::build_wordlist(index, wordlist_size);
      if (wordlist_out.empty()) {
        esq::write_wordlist_csv(std::cout, words);
      } else {
        std::ofstream out(wordlist_out);
        if (!out) throw esq::Error("cannot write " + wordlist_out);
        esq::write_wordlist_csv(out, words);
      }
      return 0;
    }

    if (cluster->parsed()) {
      esq::ExperimentConfig config = config_path.empty() ? esq::ExperimentConfig{} : esq::load_config(config_path);
      if (cluster_data.given()) config.dataset = cluster_data.spec();
      if (!mode.empty()) config.mode = esq::parse_mode(mode);
      if (k >= 0) config.k = k;
      if (runs >= 0) config.runs = runs;
      if (seed >= 0) config.base_run_seed = static_cast<std::uint64_t>(seed);
      if (threshold >= 0) config.ga.decode.intersect_threshold = threshold;
      if (penalty >= 0) config.ga.k_penalty = penalty;
      if (threads >= 0) config.threads = threads;
      if (timing) config.include_timing = true;

      esq::RunObserver observer;
      if (!assignments_out.empty() || !trace_out.empty()) {
        observer = [&](const esq::RunArtifacts& run) {
          if (run.run != assignments_run) return;
          if (!assignments_out.empty()) {
            std::ofstream out(assignments_out);
            if (!out) throw esq::Error("cannot write " + assignments_out);
            esq::write_assignment_csv(out, *run.index, run.seeds, *run.assignment);
          }
          if (!trace_out.empty() && run.evolution != nullptr) {
            std::ofstream out(trace_out);
            if (!out) throw esq::Error("cannot write " + trace_out);
            esq::write_fitness_trace_csv(out, *run.evolution);
          }
        };
      }
      const auto report = esq::run_experiment(config, observer);
      if (report_out.empty())
        std::cout << esq::report_to_json(report);
      else
        esq::emit_report(report, esq::ReportFormat::json, report_out);
      if (!csv_out.empty()) esq::emit_report(report, esq::ReportFormat::csv, csv_out);
      if (!queries_out.empty()) write_text(queries_out, esq::report_queries_text(report));
      std::cerr << scores_line(std::string(esq::to_string(config.mode)).c_str(), report) << '\n';
      return 0;
    }

    if (compare->parsed()) {
      auto config = esq::load_config(compare_config);
      const auto corpus = esq::load_dataset(config.dataset);
      auto esq_config = config;
      if (esq_config.mode == esq::Mode::kmeans) esq_config.mode = esq::Mode::esq_discovered;
      auto km_config = config;
      km_config.mode = esq::Mode::kmeans;
      const auto esq_report = esq::run_experiment(esq_config, corpus);
      const auto km_report = esq::run_experiment(km_config, corpus);

      ordered_json joint;
      joint["esq"] = ordered_json::parse(esq::report_to_json(esq_report));
      joint["kmeans"] = ordered_json::parse(esq::report_to_json(km_report));
      const std::string text = joint.dump(2) + "\n";
      if (compare_out.empty())
        std::cout << text;
      else
        write_text(compare_out, text);
      std::cerr << scores_line("esq   ", esq_report) << '\n' << scores_line("kmeans", km_report) << '\n';
      return 0;
    }

    if (sweep->parsed()) {
      esq::ExperimentConfig config = sweep_config.empty() ? esq::ExperimentConfig{} : esq::load_config(sweep_config);
      if (sweep_data.given()) config.dataset = sweep_data.spec();
      if (sweep_runs > 0) config.runs = sweep_runs;
      const auto points = esq::run_sweep(config, sweep_param, parse_values(sweep_values));
      const auto text = esq::sweep_to_csv(sweep_param, points);
      if (sweep_out.empty())
        std::cout << text;
      else
        write_text(sweep_out, text);
      return 0;
    }

    if (evaluate->parsed()) {
      const auto result = esq::evaluate_files(eval_assignments, eval_labels);
      ordered_json j;
      j["documents"] = result.documents;
      j["coverage"] = result.coverage;
      j["v"] = result.scores.v;
      j["homogeneity"] = result.scores.homogeneity;
      j["completeness"] = result.scores.completeness;
      j["ari"] = result.scores.ari;
      j["countError"] = result.scores.count_error;
      std::cout << j.dump(2) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "esq: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
