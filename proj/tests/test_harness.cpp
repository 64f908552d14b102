#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <esq/error.hpp>
#include <esq/harness.hpp>
#include <esq/synthetic.hpp>

#include "support.hpp"

using namespace esq;

namespace {

ExperimentConfig blocks_config(int runs) {
  ExperimentConfig c;
  c.dataset.synthetic = "blocks3";
  c.runs = runs;
  c.ga.population_total = 128;
  c.ga.generations = 40;
  c.ga.migration_interval = 10;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("config JSON round-trip and validation") {
  ExperimentConfig c = blocks_config(3);
  c.mode = Mode::esq_fixed;
  c.k = 3;
  c.ga.k_penalty = 0.02;
  c.ga.decode.intersect_threshold = 0.5;
  c.dataset.sample_per_category = 50;
  const auto text = config_to_json(c);
  CHECK(config_from_json(text) == c);
  CHECK(config_to_json(config_from_json(text)) == text);

  auto partial = config_from_json(R"({"dataset": {"synthetic": "ng3-like"}, "runs": 2})");
  CHECK(partial.runs == 2);
  CHECK(partial.ga.generations == GAConfig{}.generations);
  CHECK_NOTHROW(partial.validate());

  CHECK_THROWS_AS(config_from_json(R"({"runz": 2})"), Error);
  CHECK_THROWS_AS(config_from_json(R"({"ga": {"generationz": 2}})"), Error);
  CHECK_THROWS_AS(config_from_json("[1]"), Error);
  CHECK_THROWS_AS(config_from_json("{"), Error);
  CHECK_THROWS_AS(config_from_json(R"({"mode": "spectral"})"), Error);

  ExperimentConfig none;
  CHECK_THROWS_AS(none.validate(), Error);
  ExperimentConfig bad = blocks_config(0);
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("set_parameter") {
  ExperimentConfig c;
  set_parameter(c, "intersectThreshold", 0.3);
  CHECK(c.ga.decode.intersect_threshold == 0.3);
  set_parameter(c, "kPenalty", 0.05);
  CHECK(c.ga.k_penalty == 0.05);
  set_parameter(c, "generations", 7);
  CHECK(c.ga.generations == 7);
  set_parameter(c, "knnK", 4);
  CHECK(c.knn_k == 4u);
  CHECK_THROWS_AS(set_parameter(c, "generations", 7.5), Error);
  CHECK_THROWS_AS(set_parameter(c, "colour", 1), Error);
}

TEST_CASE("summaries use the population standard deviation") {
  CHECK(summarize({}) == Statistic{});
  CHECK(summarize({4.0}) == Statistic{4.0, 0.0});
  auto s = summarize({1.0, 3.0});
  CHECK(s.mean == 2.0);
  CHECK(s.stddev == 1.0);
}

TEST_CASE("blocks corpus experiment") {
  auto report = run_experiment(blocks_config(3));
  REQUIRE(report.runs.size() == 3);
  CHECK(report.doc_count == 300);
  CHECK(report.class_count == 3);
  CHECK(report.aggregates.v.mean == doctest::Approx(1.0));
  CHECK(report.aggregates.count_error.mean == 0.0);
  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    const auto& r = report.runs[i];
    CHECK(r.run_seed == 1 + i);
    CHECK(r.declared_k == 3);
    CHECK(r.queries.size() == 3);
    CHECK(r.pre_expansion.has_value());
  }

  SUBCASE("aggregates are recomputable from the runs") { CHECK(aggregate(report.runs) == report.aggregates); }

  SUBCASE("report JSON round-trips") {
    const auto json = report_to_json(report);
    CHECK(report_from_json(json) == report);
    CHECK(report_to_json(report_from_json(json)) == json);
    CHECK(json.find("wallTimeMs") == std::string::npos);
    CHECK_THROWS_AS(report_from_json(R"({"format": "other"})"), Error);
  }

  SUBCASE("queries text") {
    auto lines = lines_of(report_queries_text(report));
    REQUIRE(lines.size() >= 4);
    CHECK(lines[0] == "# run 0 seed 1");
    CHECK(lines[1].rfind("cluster 0: ", 0) == 0);
  }

  SUBCASE("CSV shape") {
    auto lines = lines_of(report_to_csv(report));
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "run,runSeed,declaredK,clusterCount,coverage,preV,preAri,v,homogeneity,completeness,ari,countError");
    CHECK(lines[4].rfind("mean,,", 0) == 0);
  }
}

TEST_CASE("reports are deterministic and thread independent") {
  auto c = blocks_config(4);
  c.dataset.synthetic = "ng3-like";
  c.dataset.sample_per_category = 60;
  c.ga.generations = 10;
  const auto a = run_experiment(c);
  CHECK(report_to_json(a) == report_to_json(run_experiment(c)));
  c.threads = 3;
  const auto b = run_experiment(c);
  CHECK(a.runs == b.runs);
  CHECK(a.aggregates == b.aggregates);
}

TEST_CASE("eleven runs give eleven rows and a mean") {
  auto c = blocks_config(11);
  c.ga.generations = 5;
  auto report = run_experiment(c);
  auto lines = lines_of(report_to_csv(report));
  CHECK(lines.size() == 13);  // header + 11 runs + mean
  for (std::size_t i = 1; i <= 11; ++i) CHECK(lines[i].rfind(std::to_string(i - 1) + ",", 0) == 0);

  c.runs = 1;
  auto single = run_experiment(c);
  CHECK(single.aggregates.v.stddev == 0.0);
  CHECK(single.aggregates.ari.stddev == 0.0);
}

TEST_CASE("k-means runs have no pre-expansion scores") {
  auto c = blocks_config(2);
  c.mode = Mode::kmeans;
  auto report = run_experiment(c);
  for (const auto& r : report.runs) {
    CHECK_FALSE(r.pre_expansion.has_value());
    CHECK(r.coverage == 1.0);
    CHECK(r.queries.empty());
  }
  const auto json = report_to_json(report);
  CHECK(json.find("\"preV\": null") != std::string::npos);
  CHECK(report_from_json(json) == report);
  auto lines = lines_of(report_to_csv(report));
  CHECK(lines.back().find(",,,") != std::string::npos);
}

TEST_CASE("timing is opt-in") {
  auto c = blocks_config(1);
  c.ga.generations = 2;
  c.include_timing = true;
  auto report = run_experiment(c);
  const auto json = report_to_json(report);
  CHECK(json.find("wallTimeMs") != std::string::npos);
  CHECK(report_from_json(json) == report);
  CHECK(lines_of(report_to_csv(report))[0].find("wallTimeWithIndexMs") != std::string::npos);
}

TEST_CASE("sweep") {
  auto c = blocks_config(1);
  c.ga.generations = 5;
  auto points = run_sweep(c, "intersectThreshold", {0.0, 0.5});
  REQUIRE(points.size() == 2);
  CHECK(points[1].report.config.ga.decode.intersect_threshold == 0.5);
  auto lines = lines_of(sweep_to_csv("intersectThreshold", points));
  CHECK(lines.size() == 3);
  CHECK(lines[0].rfind("intersectThreshold,meanV,", 0) == 0);
  CHECK_THROWS_AS(run_sweep(c, "nope", {1.0}), Error);
}

TEST_CASE("evaluate_files") {
  test::TempDir dir;
  {
    std::ofstream a(dir / "a.csv");
    a << "docId,label,clusterIndex,assignedBy\n"
         "d1,X,0,query\nd2,X,0,query\nd3,Y,1,knn\nd4,Y,,\n";
  }
  auto r = evaluate_files(dir / "a.csv");
  CHECK(r.documents == 4);
  CHECK(r.coverage == 0.75);
  CHECK(r.scores.v == doctest::Approx(1.0));

  {
    std::ofstream l(dir / "labels.csv");
    l << "docId,label\nd1,X\nd2,Y\nd3,Y\nd4,Y\n";
  }
  auto r2 = evaluate_files(dir / "a.csv", dir / "labels.csv");
  CHECK(r2.scores.v < 1.0);

  {
    std::ofstream bad(dir / "bad.csv");
    bad << "docId,label,clusterIndex\nd1,X,zero\n";
  }
  CHECK_THROWS_AS(evaluate_files(dir / "bad.csv"), Error);
  CHECK_THROWS_AS(evaluate_files(dir / "missing.csv"), Error);
}

#ifdef ESQ_CLI_PATH
namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + ESQ_CLI_PATH + "\" " + args;
  return std::system(cmd.c_str());
}

}  // namespace

TEST_CASE("command line") {
  test::TempDir dir;
  const auto p = [&](const char* name) { return "\"" + (dir / name).string() + "\""; };
  const std::string quick = " --synthetic blocks3 --runs 2 ";
  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({"ga": {"populationTotal": 64, "generations": 10, "migrationInterval": 5}})";
  }
  const std::string with_cfg = " --config " + p("cfg.json");

  CHECK(run_cli("cluster" + quick + with_cfg + " --out " + p("r1.json") + " --csv " + p("r1.csv") + " --queries " +
                p("q.txt") + " --assignments " + p("assign.csv") + " --trace " + p("trace.csv") + " 2>/dev/null") == 0);
  CHECK(run_cli("cluster" + quick + with_cfg + " --out " + p("r2.json") + " 2>/dev/null") == 0);
  CHECK(slurp(dir / "r1.json") == slurp(dir / "r2.json"));
  CHECK(run_cli("cluster" + quick + with_cfg + " --threads 2 --out " + p("r3.json") + " 2>/dev/null") == 0);
  CHECK(report_from_json(slurp(dir / "r3.json")).runs == report_from_json(slurp(dir / "r1.json")).runs);
  auto report = report_from_json(slurp(dir / "r1.json"));
  CHECK(report.runs.size() == 2);
  CHECK(lines_of(slurp(dir / "r1.csv")).size() == 4);
  CHECK(lines_of(slurp(dir / "q.txt"))[0] == "# run 0 seed 1");
  CHECK(lines_of(slurp(dir / "trace.csv"))[0] == "generation,island,bestFitness");

  CHECK(run_cli("evaluate --assignments " + p("assign.csv") + " > " + p("eval.json")) == 0);
  CHECK(slurp(dir / "eval.json").find("\"documents\": 300") != std::string::npos);

  CHECK(run_cli("sweep" + quick + with_cfg + " --param kPenalty --values 0,0.02 --out " + p("sweep.csv")) == 0);
  CHECK(lines_of(slurp(dir / "sweep.csv")).size() == 3);

  CHECK(run_cli("generate --preset blocks3 --out " + p("b.jsonl")) == 0);
  CHECK(lines_of(slurp(dir / "b.jsonl")).size() == 300);
  CHECK(run_cli("index " + p("b.jsonl") + " --out " + p("b.index.json")) == 0);
  CHECK(run_cli("wordlist --index " + p("b.index.json") + " --size 5 --out " + p("w.csv")) == 0);
  CHECK(lines_of(slurp(dir / "w.csv")).size() == 6);

  CHECK(run_cli("cluster --runs 1 2>/dev/null") != 0);
  CHECK(run_cli("cluster" + quick + " --mode bogus 2>/dev/null") != 0);
  CHECK(run_cli("frobnicate 2>/dev/null") != 0);
}
#endif
