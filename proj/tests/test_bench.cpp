#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "sukp/bench.hpp"
#include "sukp/oracle.hpp"

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("sukp_bench_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

sukp::ExperimentConfig small_config() {
  sukp::ExperimentConfig c;
  c.instances = {"gen:12:10:0.3:0.5:1", "gen:15:15:0.2:0.6:2", "gen:10:14:0.25:0.4:3"};
  c.algorithms = {*sukp::algorithm_preset("I-DTLBO"), *sukp::algorithm_preset("E-DTLBO"),
                  *sukp::algorithm_preset("S-TLBO")};
  c.runs = 3;
  c.master_seed = 11;
  return c;
}

TEST(AlgorithmSpec, Presets) {
  const auto e = *sukp::algorithm_preset("E-DTLBO");
  EXPECT_EQ(e.mode, sukp::LoadingMode::kElement);
  EXPECT_EQ(e.repair, sukp::RepairKind::kEsro);
  EXPECT_TRUE(e.elite_opposite_search);
  const auto s = *sukp::algorithm_preset("S-TLBO");
  EXPECT_EQ(s.repair, sukp::RepairKind::kStatic);
  EXPECT_FALSE(s.survival_of_fittest);
  EXPECT_FALSE(sukp::algorithm_preset("X-DTLBO"));
}

TEST(AlgorithmSpec, Parse) {
  const auto a = sukp::parse_algorithm("mine: base=I-DTLBO, eos=off, popsize=8, mfc=99, tf=two");
  EXPECT_EQ(a.name, "mine");
  EXPECT_EQ(a.repair, sukp::RepairKind::kIsro);
  EXPECT_FALSE(a.elite_opposite_search);
  EXPECT_TRUE(a.survival_of_fittest);
  EXPECT_EQ(a.popsize, 8u);
  EXPECT_EQ(a.mfc, 99u);
  EXPECT_EQ(a.tf_rule, sukp::TeachingFactorRule::kAlwaysTwo);
  EXPECT_EQ(sukp::parse_algorithm("el:mode=element").repair, sukp::RepairKind::kEsro);
  EXPECT_EQ(sukp::parse_algorithm("st:repair=static").mode, sukp::LoadingMode::kItem);
}

TEST(AlgorithmSpec, Errors) {
  EXPECT_THROW(sukp::parse_algorithm("nope"), sukp::SpecError);
  EXPECT_THROW(sukp::parse_algorithm(":mode=item"), sukp::SpecError);
  EXPECT_THROW(sukp::parse_algorithm("a:mode=element,repair=isro"), sukp::SpecError);
  EXPECT_THROW(sukp::parse_algorithm("a:colour=red"), sukp::SpecError);
  EXPECT_THROW(sukp::parse_algorithm("a:popsize=1"), sukp::SpecError);
  EXPECT_THROW(sukp::parse_algorithm("a:eos"), sukp::SpecError);
}

TEST(Config, ParsesAllKeys) {
  const auto c = sukp::parse_config(
      "# experiment\n"
      "instance = data/a.sukp\n"
      "instance = gen:10:10:0.2:0.5:7\n"
      "algorithm = I-DTLBO\n"
      "algorithm = fast: base=E-DTLBO, mfc=50   # trailing comment\n"
      "runs = 5\nmaster_seed = 123\njobs = 2\noutput = out\nformat = csv, json\nalpha = 0.10\n",
      "/base");
  ASSERT_EQ(c.instances.size(), 2u);
  EXPECT_EQ(c.instances[0], (fs::path("/base") / "data/a.sukp").string());
  EXPECT_EQ(c.instances[1], "gen:10:10:0.2:0.5:7");
  ASSERT_EQ(c.algorithms.size(), 2u);
  EXPECT_EQ(c.algorithms[1].name, "fast");
  EXPECT_EQ(c.runs, 5u);
  EXPECT_EQ(c.master_seed, 123u);
  EXPECT_EQ(c.jobs, 2u);
  EXPECT_EQ(*c.output, fs::path("/base") / "out");
  EXPECT_EQ(c.formats.size(), 2u);
  EXPECT_EQ(c.alpha, 0.10);
}

TEST(Config, ErrorsNameTheField) {
  auto field_of = [](const std::string& text) {
    try {
      sukp::parse_config(text);
    } catch (const sukp::ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field_of("instance = a\nalgorithm = I-DTLBO\nruns = 0\n"), "runs");
  EXPECT_EQ(field_of("instance = a\nalgorithm = I-DTLBO\nalgorithm = bad:mode=x\n"), "algorithm[1]");
  EXPECT_EQ(field_of("instance = a\nalgorithm = I-DTLBO\nformat = xml\n"), "format");
  EXPECT_EQ(field_of("instance = a\nalgorithm = I-DTLBO\nwidth = 3\n"), "width");
  EXPECT_EQ(field_of("algorithm = I-DTLBO\n"), "instance");
  EXPECT_EQ(field_of("instance = a\n"), "algorithm");
  EXPECT_EQ(field_of("instance = a\nalgorithm = I-DTLBO\nalgorithm = I-DTLBO\n"), "algorithm[1].name");
  EXPECT_EQ(field_of("instance = a\nalgorithm = I-DTLBO\nalpha = 0.01\n"), "alpha");
}

TEST(InstanceSpec, GeneratorAndErrors) {
  const auto inst = sukp::load_instance_spec("gen:8:9:0.3:0.5:4");
  EXPECT_EQ(inst, sukp::generate_instance(8, 9, 0.3, 0.5, 4));
  EXPECT_THROW(sukp::load_instance_spec("gen:8:9:0.3"), sukp::SpecError);
  EXPECT_THROW(sukp::load_instance_spec("/nonexistent/file.sukp"), std::runtime_error);
}

TEST(InstanceSpec, NameFallsBackToStem) {
  const auto dir = scratch("stem");
  sukp::write_file(dir / "tiny.sukp", "SUKP1\n1 1\n3\n5\n3\n1\n");
  EXPECT_EQ(sukp::load_instance_file(dir / "tiny.sukp").meta().name, "tiny");
}

TEST(RunExperiment, ShapeAndStats) {
  auto c = small_config();
  const auto res = sukp::run_experiment(c);
  ASSERT_EQ(res.runs.size(), 27u);
  ASSERT_EQ(res.rows.size(), 9u);
  for (const auto& row : res.rows) {
    ASSERT_EQ(row.per_run.size(), 3u);
    EXPECT_LE(row.worst, row.mean);
    EXPECT_LE(row.mean, row.best);
    double mean = 0, ss = 0;
    for (double v : row.per_run) mean += v / 3;
    for (double v : row.per_run) ss += (v - mean) * (v - mean);
    EXPECT_NEAR(row.std, std::sqrt(ss / 3), 1e-9 * std::max(1.0, row.std));
  }
  ASSERT_TRUE(res.ranks.has_value());
  EXPECT_EQ(res.ranks->instances, 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t r = 0; r < 3; ++r) {
        const auto& rec = res.runs[(i * 3 + a) * 3 + r];
        EXPECT_EQ(rec.seed, sukp::run_seed(11, i, a, r));
        EXPECT_EQ(rec.run, r);
      }
}

TEST(RunExperiment, DeterministicAcrossJobCounts) {
  auto c = small_config();
  const auto a = sukp::run_experiment(c);
  c.jobs = 4;
  const auto b = sukp::run_experiment(c);
  EXPECT_EQ(a.runs, b.runs);
  EXPECT_EQ(sukp::summary_csv(a.rows), sukp::summary_csv(b.rows));
}

TEST(RunExperiment, SingleAlgorithmHasNoRanks) {
  sukp::ExperimentConfig c;
  c.instances = {"gen:8:8:0.3:0.5:1", "gen:8:8:0.3:0.5:2"};
  c.algorithms = {*sukp::algorithm_preset("I-DTLBO")};
  c.runs = 2;
  const auto res = sukp::run_experiment(c);
  EXPECT_EQ(res.rows.size(), 2u);
  EXPECT_FALSE(res.ranks.has_value());
}

TEST(RunExperiment, DuplicateInstancesStayDistinct) {
  sukp::ExperimentConfig c;
  c.instances = {"gen:8:8:0.3:0.5:1", "gen:8:8:0.3:0.5:1"};
  c.algorithms = {*sukp::algorithm_preset("I-DTLBO"), *sukp::algorithm_preset("S-DTLBO")};
  c.runs = 1;
  const auto res = sukp::run_experiment(c);
  EXPECT_NE(res.rows[0].instance, res.rows[2].instance);
  EXPECT_EQ(res.ranks->instances, 2u);
}

TEST(RunExperiment, OracleSolvedInstance) {
  sukp::ExperimentConfig c;
  c.instances = {"gen:10:10:0.3:0.5:5"};
  c.algorithms = {sukp::parse_algorithm("big:base=I-DTLBO,mfc=2000")};
  c.runs = 3;
  const auto res = sukp::run_experiment(c);
  EXPECT_EQ(res.rows[0].best, sukp::exact_bruteforce(sukp::load_instance_spec(c.instances[0])).optimum);
}

TEST(Csv, RoundtripRunsAndSummary) {
  auto c = small_config();
  c.runs = 2;
  const auto res = sukp::run_experiment(c);
  EXPECT_EQ(sukp::parse_runs_csv(sukp::runs_csv(res.runs)), res.runs);
  const auto rows = sukp::parse_summary_csv(sukp::summary_csv(res.rows));
  ASSERT_EQ(rows.size(), res.rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(rows[k].instance, res.rows[k].instance);
    EXPECT_EQ(rows[k].mean, res.rows[k].mean);
    EXPECT_EQ(rows[k].std, res.rows[k].std);
  }
}

TEST(Csv, QuotedFields) {
  std::vector<sukp::RunRecord> runs{{"a,b", "say \"hi\"", 0, 1, 2.5, 3}};
  EXPECT_EQ(sukp::parse_runs_csv(sukp::runs_csv(runs)), runs);
}

TEST(Csv, OneRowAndEmpty) {
  sukp::StatsRow row{"i", "a", 3, 1, 2, 0.5, {1, 3}};
  EXPECT_EQ(sukp::summary_csv({row}), std::string(sukp::kSummaryHeader) + "\ni,a,3,1,2,0.5\n");
  EXPECT_EQ(sukp::summary_csv({}), std::string(sukp::kSummaryHeader) + "\n");
  EXPECT_EQ(sukp::runs_csv({}), std::string(sukp::kRunsHeader) + "\n");
}

TEST(Csv, MeansTableErrors) {
  EXPECT_THROW(sukp::parse_means_csv("instance,A,B\nx,1\n"), std::runtime_error);
  EXPECT_THROW(sukp::parse_means_csv("instance,A,B\nx,1,abc\n"), std::runtime_error);
}

TEST(Emit, WritesRequestedFormats) {
  const auto dir = scratch("emit");
  auto c = small_config();
  c.runs = 2;
  const auto res = sukp::run_experiment(c);
  const auto written = sukp::emit(
      res, {sukp::OutputFormat::kCsv, sukp::OutputFormat::kMarkdown, sukp::OutputFormat::kJson}, dir);
  EXPECT_EQ(written.size(), 6u);
  for (const char* f : {"runs.csv", "summary.csv", "ranks.csv", "friedman.csv", "results.md", "results.json"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  const auto json = nlohmann::json::parse(sukp::read_file(dir / "results.json"));
  EXPECT_EQ(json["metadata"]["std_convention"], "population");
  EXPECT_EQ(json["summary"].size(), 9u);
  EXPECT_EQ(json["summary"][0]["per_run"].size(), 2u);
  const auto md = sukp::read_file(dir / "results.md");
  EXPECT_NE(md.find("| Best |"), std::string::npos);
}

TEST(Emit, EmptyResultWritesHeaders) {
  const auto dir = scratch("empty");
  sukp::emit({}, {sukp::OutputFormat::kCsv}, dir);
  EXPECT_EQ(sukp::read_file(dir / "summary.csv"), std::string(sukp::kSummaryHeader) + "\n");
}

TEST(Emit, UnwritablePath) {
  const auto dir = scratch("blocked");
  sukp::write_file(dir / "file", "x");
  EXPECT_THROW(sukp::emit({}, {sukp::OutputFormat::kCsv}, dir / "file" / "sub"), std::runtime_error);
}

}  // namespace
