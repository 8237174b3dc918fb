// Command-line front end: generate | solve | oracle | bench | stats.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sukp/sukp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

/// Thrown for invalid flag values detected after CLI11 parsing.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string num(double v) { return sukp::detail::format_number(v); }

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::size_t items = 0, elements = 0;
  double density = 0, ratio = 0;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string out_dir = ".";
};

int cmd_generate(const GenerateArgs& a) {
  const std::uint64_t seed = a.seed.value_or(fresh_seed());
  sukp::SukpInstance inst;
  try {
    inst = sukp::generate_instance(a.items, a.elements, a.density, a.ratio, seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::filesystem::path path =
      a.out.empty() ? std::filesystem::path(a.out_dir) / (inst.meta().name + ".sukp")
                    : std::filesystem::path(a.out);
  sukp::write_file(path, sukp::serialize_instance(inst));
  std::cout << "wrote " << path.string() << "\n"
            << "seed: " << seed << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  std::string mode;
  std::string repair;
  std::size_t runs = 1;
  std::optional<std::uint64_t> seed;
  std::size_t popsize = 20;
  std::optional<std::size_t> mfc;
  std::string tf = "random";
  bool no_eos = false, no_sf = false;
  std::string out, history;
};

sukp::AlgorithmSpec solve_spec(const SolveArgs& a) {
  std::string text = "solve:popsize=" + std::to_string(a.popsize) + ",tf=" + a.tf +
                     ",eos=" + (a.no_eos ? "0" : "1") + ",sf=" + (a.no_sf ? "0" : "1");
  if (!a.mode.empty()) text += ",mode=" + a.mode;
  if (!a.repair.empty()) text += ",repair=" + a.repair;
  if (a.mode.empty() && a.repair.empty()) text += ",mode=item";
  if (a.mfc) text += ",mfc=" + std::to_string(*a.mfc);
  try {
    return sukp::parse_algorithm(text);
  } catch (const sukp::SpecError& e) {
    throw UsageError(e.what());
  }
}

int cmd_solve(const SolveArgs& a) {
  if (a.runs == 0) throw UsageError("--runs must be at least 1");
  const auto spec = solve_spec(a);
  const auto inst = sukp::load_instance_file(a.instance);
  const std::uint64_t master = a.seed.value_or(fresh_seed());
  const auto probe = spec.params(master);
  try {
    sukp::validate(probe, inst);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::size_t mfc = spec.mfc.value_or(sukp::default_mfc(inst));

  std::ostringstream report;
  report << "instance: " << inst.meta().name << " (" << inst.item_count() << " items, "
         << inst.element_count() << " elements, capacity " << num(inst.capacity()) << ")\n";
  report << "mode: " << sukp::to_string(spec.mode) << "  repair: " << sukp::to_string(spec.repair)
         << "  popsize: " << spec.popsize << "  mfc: " << mfc
         << "  eos: " << (spec.elite_opposite_search ? "on" : "off")
         << "  sf: " << (spec.survival_of_fittest ? "on" : "off") << "  master_seed: " << master << "\n";

  std::string history = "run,evaluation,best_fitness\n";
  std::vector<double> finals;
  for (std::size_t r = 0; r < a.runs; ++r) {
    auto params = spec.params(sukp::derive_seed(master, {r}));
    params.record_history = !a.history.empty();
    const auto res = sukp::run(inst, params);
    finals.push_back(res.best.fitness);
    std::string bits(res.best.y.size(), '0');
    for (std::size_t j = 0; j < bits.size(); ++j)
      if (res.best.y[j]) bits[j] = '1';
    report << "run " << r << " seed " << params.seed << " best " << num(res.best.fitness)
           << " evaluations " << res.evaluations_used << "\n";
    report << "solution " << bits << "\n";
    for (const auto& h : res.history)
      history += std::to_string(r) + "," + std::to_string(h.evaluation) + "," + num(h.best_fitness) + "\n";
  }
  const auto s = sukp::summarize(finals);
  report << "summary runs " << a.runs << " best " << num(s.best) << " worst " << num(s.worst) << " mean "
         << num(s.mean) << " std " << num(s.std) << "\n";

  std::cout << report.str();
  if (!a.out.empty()) sukp::write_file(a.out, report.str());
  if (!a.history.empty()) sukp::write_file(a.history, history);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct OracleArgs {
  std::string instance;
  std::string method = "bb";
};

int cmd_oracle(const OracleArgs& a) {
  const auto inst = sukp::load_instance_file(a.instance);
  sukp::ExactResult res;
  try {
    res = a.method == "brute" ? sukp::exact_bruteforce(inst) : sukp::exact_branch_bound(inst);
  } catch (const sukp::InstanceTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  std::cout << "method: " << (a.method == "brute" ? "brute" : "bb") << "\n"
            << "optimum: " << num(res.optimum) << "\n"
            << "witness: " << res.witness.to_string() << "\n"
            << "weight: " << num(sukp::total_weight_items(inst, res.witness)) << "\n"
            << "explored: " << res.explored << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string config;
  std::vector<std::string> instances;
  std::vector<std::string> algorithms;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::string out_dir;
  std::string format;
  std::string from_means;
  std::optional<double> alpha;
  std::string control;
};

int report_means(const std::string& path, double alpha, const std::string& control_name,
                 const std::string& out_dir, const std::string& format) {
  const auto table = sukp::parse_means_csv(sukp::read_file(path));
  const auto ranks = sukp::friedman_ranks(table.values, table.algorithms, alpha);
  std::size_t control = sukp::best_ranked(ranks);
  if (!control_name.empty()) {
    auto it = std::find(ranks.algorithms.begin(), ranks.algorithms.end(), control_name);
    if (it == ranks.algorithms.end()) throw UsageError("--control: unknown algorithm '" + control_name + "'");
    control = static_cast<std::size_t>(it - ranks.algorithms.begin());
  }
  std::cout << sukp::ranks_markdown(ranks, control);
  if (!out_dir.empty()) {
    const auto formats = sukp::parse_formats(format.empty() ? "csv" : format);
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    if (formats.count(sukp::OutputFormat::kCsv)) {
      sukp::write_file(dir / "ranks.csv", sukp::ranks_csv(ranks, control));
      sukp::write_file(dir / "friedman.csv", sukp::friedman_csv(ranks));
    }
    if (formats.count(sukp::OutputFormat::kMarkdown))
      sukp::write_file(dir / "ranks.md", sukp::ranks_markdown(ranks, control));
    if (formats.count(sukp::OutputFormat::kJson))
      sukp::write_file(dir / "ranks.json", sukp::to_json(ranks, control).dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_bench(const BenchArgs& a) {
  if (!a.from_means.empty())
    return report_means(a.from_means, a.alpha.value_or(0.05), a.control, a.out_dir, a.format);

  sukp::ExperimentConfig cfg;
  try {
    if (!a.config.empty()) {
      if (!a.instances.empty() || !a.algorithms.empty())
        throw UsageError("--config cannot be combined with --instance/--algorithm");
      const std::filesystem::path path(a.config);
      cfg = sukp::parse_config(sukp::read_file(path), path.parent_path());
    } else {
      cfg.instances = a.instances;
      for (const auto& s : a.algorithms) cfg.algorithms.push_back(sukp::parse_algorithm(s));
      if (cfg.algorithms.empty()) cfg.algorithms.push_back(*sukp::algorithm_preset("I-DTLBO"));
    }
    if (a.runs) cfg.runs = *a.runs;
    if (a.jobs) cfg.jobs = *a.jobs;
    if (a.alpha) cfg.alpha = *a.alpha;
    if (!a.out_dir.empty()) cfg.output = a.out_dir;
    if (!a.format.empty()) cfg.formats = sukp::parse_formats(a.format);
    if (a.seed) cfg.master_seed = *a.seed;
    else if (a.config.empty()) cfg.master_seed = fresh_seed();
    sukp::check_config(cfg);
  } catch (const sukp::SpecError& e) {
    throw UsageError(e.what());
  } catch (const sukp::ConfigError& e) {
    throw UsageError(e.what());
  }

  const auto res = sukp::run_experiment(cfg);
  nlohmann::ordered_json meta;
  meta["master_seed"] = cfg.master_seed;
  meta["runs"] = cfg.runs;
  std::vector<std::filesystem::path> written;
  if (cfg.output) written = sukp::emit(res, cfg.formats, *cfg.output, meta);

  std::cout << "master_seed: " << cfg.master_seed << "\n";
  std::cout << sukp::results_markdown(res.rows);
  if (res.ranks) std::cout << "\n" << sukp::ranks_markdown(*res.ranks, sukp::best_ranked(*res.ranks));
  for (const auto& p : written) std::cout << "wrote " << p.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set-union knapsack solver toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a random instance in the canonical format");
  g->add_option("--items", gen.items, "Number of items m")->required()->check(CLI::PositiveNumber);
  g->add_option("--elements", gen.elements, "Number of elements n")->required()->check(CLI::PositiveNumber);
  g->add_option("--density", gen.density, "Membership density a in (0,1]")->required();
  g->add_option("--ratio", gen.ratio, "Capacity ratio b in (0,1]")->required();
  g->add_option("--seed", gen.seed, "Generator seed (random and printed when omitted)");
  g->add_option("--out", gen.out, "Output file (default: <out-dir>/sukp{m}_{n}_{a}_{b}.sukp)");
  g->add_option("--out-dir", gen.out_dir, "Directory for the default file name");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Run the discrete TLBO solver");
  s->add_option("--instance", solve.instance, "Instance file")->required();
  s->add_option("--mode", solve.mode, "Loading mode (default: item, or the repair's mode)")->check(CLI::IsMember({"item", "element"}));
  s->add_option("--repair", solve.repair, "Repair operator (default: isro for item, esro for element)")
      ->check(CLI::IsMember({"isro", "esro", "static"}));
  s->add_option("--runs", solve.runs, "Independent runs");
  s->add_option("--seed", solve.seed, "Master seed (random and printed when omitted)");
  s->add_option("--popsize", solve.popsize, "Population size");
  s->add_option("--mfc", solve.mfc, "Evaluation budget (default 20 + 20 max(m, n))");
  s->add_option("--tf", solve.tf, "Teaching factor rule")->check(CLI::IsMember({"random", "one", "two"}));
  s->add_flag("--no-eos", solve.no_eos, "Disable elite opposite search");
  s->add_flag("--no-sf", solve.no_sf, "Disable survival of the fittest");
  s->add_option("--out", solve.out, "Also write the report to this file");
  s->add_option("--history", solve.history, "Write per-evaluation best-so-far CSV");

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "Solve a small instance exactly");
  o->add_option("--instance", orc.instance, "Instance file")->required();
  o->add_option("--method", orc.method, "brute (m <= 24) or bb (m <= 40)")->check(CLI::IsMember({"brute", "bb"}));

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run an experiment and emit statistics");
  b->add_option("--config", bench.config, "Experiment config file");
  b->add_option("--instance", bench.instances, "Instance file or gen:M:N:A:B:SEED (repeatable)");
  b->add_option("--algorithm", bench.algorithms, "Preset or NAME:key=value,... (repeatable)");
  b->add_option("--runs", bench.runs, "Runs per (instance, algorithm)");
  b->add_option("--seed", bench.seed, "Master seed");
  b->add_option("--jobs", bench.jobs, "Worker threads");
  b->add_option("--out-dir", bench.out_dir, "Output directory");
  b->add_option("--format", bench.format, "Comma list of csv, markdown, json");
  b->add_option("--from-means", bench.from_means, "Rank a means matrix CSV instead of running");
  b->add_option("--alpha", bench.alpha, "Nemenyi significance level (0.05 or 0.10)");
  b->add_option("--control", bench.control, "Control algorithm for rank differences");

  BenchArgs stats;
  auto* st = app.add_subcommand("stats", "Friedman ranks and Nemenyi test on a means matrix CSV");
  st->add_option("--means", stats.from_means, "Means CSV: instance,ALG1,ALG2,...")->required();
  st->add_option("--alpha", stats.alpha, "Significance level (0.05 or 0.10)");
  st->add_option("--control", stats.control, "Control algorithm (default: best ranked)");
  st->add_option("--out-dir", stats.out_dir, "Also write rank files here");
  st->add_option("--format", stats.format, "Comma list of csv, markdown, json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*s) return cmd_solve(solve);
    if (*o) return cmd_oracle(orc);
    if (*b) return cmd_bench(bench);
    if (*st)
      return report_means(stats.from_means, stats.alpha.value_or(0.05), stats.control, stats.out_dir,
                          stats.format);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
