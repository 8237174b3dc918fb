#ifndef SUKP_BENCH_HPP
#define SUKP_BENCH_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sukp/dtlbo.hpp"
#include "sukp/instance.hpp"
#include "sukp/stats.hpp"

namespace sukp {

// ---------------------------------------------------------------------------
// Algorithm specs

/// One engine configuration: loading mode, repair operator, strategy toggles.
struct AlgorithmSpec {
  std::string name;
  LoadingMode mode = LoadingMode::kItem;
  RepairKind repair = RepairKind::kIsro;
  bool elite_opposite_search = true;
  bool survival_of_fittest = true;
  std::size_t popsize = 20;
  std::optional<std::size_t> mfc;
  TeachingFactorRule tf_rule = TeachingFactorRule::kRandomOneOrTwo;

  DtlboParams params(std::uint64_t seed) const {
    DtlboParams p;
    p.popsize = popsize;
    p.mfc = mfc;
    p.mode = mode;
    p.repair = repair;
    p.seed = seed;
    p.tf_rule = tf_rule;
    p.elite_opposite_search = elite_opposite_search;
    p.survival_of_fittest = survival_of_fittest;
    p.record_history = false;
    return p;
  }
};

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// I-DTLBO / E-DTLBO / S-DTLBO use both population strategies; the *-TLBO
/// variants switch them off.
inline std::optional<AlgorithmSpec> algorithm_preset(std::string_view name) {
  struct Row {
    std::string_view name;
    RepairKind repair;
    bool strategies;
  };
  static constexpr Row kPresets[] = {
      {"I-DTLBO", RepairKind::kIsro, true},   {"E-DTLBO", RepairKind::kEsro, true},
      {"S-DTLBO", RepairKind::kStatic, true}, {"I-TLBO", RepairKind::kIsro, false},
      {"E-TLBO", RepairKind::kEsro, false},   {"S-TLBO", RepairKind::kStatic, false},
  };
  for (const auto& r : kPresets)
    if (r.name == name) {
      AlgorithmSpec s;
      s.name = std::string(name);
      s.repair = r.repair;
      s.mode = mode_of(r.repair);
      s.elite_opposite_search = s.survival_of_fittest = r.strategies;
      return s;
    }
  return std::nullopt;
}

namespace detail {
inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline bool parse_bool(std::string_view v, bool& out) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return out = true, true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return out = false, true;
  return false;
}
}  // namespace detail

/**
 * Parses an algorithm spec: either a preset name (`I-DTLBO`) or
 * `NAME:key=value,...`, where the keys are base (a preset to start from),
 * mode, repair, eos, sf, popsize, mfc, tf. Errors name the offending key.
 */
inline AlgorithmSpec parse_algorithm(std::string_view text) {
  text = detail::trim(text);
  if (auto preset = algorithm_preset(text)) return *preset;
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw SpecError("unknown algorithm preset '" + std::string(text) + "'");
  AlgorithmSpec spec;
  spec.name = std::string(detail::trim(text.substr(0, colon)));
  if (spec.name.empty()) throw SpecError("algorithm name is empty");
  bool mode_set = false, repair_set = false;
  for (auto kv : detail::split(text.substr(colon + 1), ',')) {
    kv = detail::trim(kv);
    if (kv.empty()) continue;
    const auto eq = kv.find('=');
    if (eq == std::string_view::npos) throw SpecError("expected key=value, got '" + std::string(kv) + "'");
    const std::string key(detail::trim(kv.substr(0, eq)));
    const std::string_view value = detail::trim(kv.substr(eq + 1));
    auto bad = [&] { return SpecError(key + ": invalid value '" + std::string(value) + "'"); };
    if (key == "base") {
      auto preset = algorithm_preset(value);
      if (!preset) throw bad();
      const std::string name = spec.name;
      spec = *preset;
      spec.name = name;
      mode_set = repair_set = true;
    } else if (key == "mode") {
      if (value == "item") spec.mode = LoadingMode::kItem;
      else if (value == "element") spec.mode = LoadingMode::kElement;
      else throw bad();
      mode_set = true;
    } else if (key == "repair") {
      if (value == "isro") spec.repair = RepairKind::kIsro;
      else if (value == "esro") spec.repair = RepairKind::kEsro;
      else if (value == "static") spec.repair = RepairKind::kStatic;
      else throw bad();
      repair_set = true;
    } else if (key == "eos") {
      if (!detail::parse_bool(value, spec.elite_opposite_search)) throw bad();
    } else if (key == "sf") {
      if (!detail::parse_bool(value, spec.survival_of_fittest)) throw bad();
    } else if (key == "popsize") {
      if (!detail::parse_integer(value, spec.popsize) || spec.popsize < 2) throw bad();
    } else if (key == "mfc") {
      std::size_t v = 0;
      if (!detail::parse_integer(value, v) || v == 0) throw bad();
      spec.mfc = v;
    } else if (key == "tf") {
      if (value == "random") spec.tf_rule = TeachingFactorRule::kRandomOneOrTwo;
      else if (value == "one") spec.tf_rule = TeachingFactorRule::kAlwaysOne;
      else if (value == "two") spec.tf_rule = TeachingFactorRule::kAlwaysTwo;
      else throw bad();
    } else {
      throw SpecError("unknown key '" + key + "'");
    }
  }
  if (repair_set && !mode_set) spec.mode = mode_of(spec.repair);
  if (mode_set && !repair_set) spec.repair = default_repair(spec.mode);
  if (mode_of(spec.repair) != spec.mode)
    throw SpecError("repair: '" + std::string(to_string(spec.repair)) + "' cannot run in " +
                    std::string(to_string(spec.mode)) + " mode");
  return spec;
}

// ---------------------------------------------------------------------------
// Instances

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

/// Loads an instance file; the name defaults to the file stem when the file
/// carries no name metadata.
inline SukpInstance load_instance_file(const std::filesystem::path& path) {
  SukpInstance inst;
  try {
    inst = parse_instance(read_file(path));
  } catch (const InstanceFormatError& e) {
    throw InstanceFormatError(e.line(), path.string() + ": " + e.reason());
  }
  if (inst.meta().name.empty()) {
    auto meta = inst.meta();
    meta.name = path.stem().string();
    inst.set_meta(std::move(meta));
  }
  return inst;
}

/// `gen:M:N:DENSITY:RATIO:SEED` generates; anything else is a file path.
inline SukpInstance load_instance_spec(std::string_view spec) {
  if (spec.substr(0, 4) == "gen:") {
    auto parts = detail::split(spec.substr(4), ':');
    std::size_t m = 0, n = 0;
    double a = 0, b = 0;
    std::uint64_t seed = 0;
    if (parts.size() != 5 || !detail::parse_integer(parts[0], m) ||
        !detail::parse_integer(parts[1], n) || !detail::parse_number(parts[2], a) ||
        !detail::parse_number(parts[3], b) || !detail::parse_integer(parts[4], seed))
      throw SpecError("generator spec must be gen:M:N:DENSITY:RATIO:SEED, got '" +
                      std::string(spec) + "'");
    return generate_instance(m, n, a, b, seed);
  }
  return load_instance_file(std::filesystem::path(std::string(spec)));
}

// ---------------------------------------------------------------------------
// Experiment config

enum class OutputFormat { kCsv, kMarkdown, kJson };

struct ExperimentConfig {
  std::vector<std::string> instances;
  std::vector<AlgorithmSpec> algorithms;
  std::size_t runs = 50;
  std::uint64_t master_seed = 0;
  std::size_t jobs = 1;
  std::optional<std::filesystem::path> output;  // no files are written when absent
  std::set<OutputFormat> formats = {OutputFormat::kCsv};
  double alpha = 0.05;
};

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::size_t line, const std::string& field, const std::string& reason)
      : std::invalid_argument((line ? "line " + std::to_string(line) + ": " : std::string()) + field +
                              ": " + reason),
        line_(line),
        field_(field) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

inline std::set<OutputFormat> parse_formats(std::string_view text) {
  std::set<OutputFormat> out;
  for (auto f : detail::split(text, ',')) {
    f = detail::trim(f);
    if (f == "csv") out.insert(OutputFormat::kCsv);
    else if (f == "markdown" || f == "md") out.insert(OutputFormat::kMarkdown);
    else if (f == "json") out.insert(OutputFormat::kJson);
    else throw SpecError("unknown format '" + std::string(f) + "'");
  }
  if (out.empty()) throw SpecError("no output format given");
  return out;
}

inline void check_config(const ExperimentConfig& c) {
  if (c.instances.empty()) throw ConfigError(0, "instance", "at least one instance is required");
  if (c.algorithms.empty()) throw ConfigError(0, "algorithm", "at least one algorithm is required");
  if (c.runs == 0) throw ConfigError(0, "runs", "must be at least 1");
  if (c.jobs == 0) throw ConfigError(0, "jobs", "must be at least 1");
  if (std::abs(c.alpha - 0.05) > 1e-12 && std::abs(c.alpha - 0.10) > 1e-12)
    throw ConfigError(0, "alpha", "must be 0.05 or 0.10");
  std::set<std::string> names;
  for (std::size_t a = 0; a < c.algorithms.size(); ++a)
    if (!names.insert(c.algorithms[a].name).second)
      throw ConfigError(0, "algorithm[" + std::to_string(a) + "].name",
                        "duplicate name '" + c.algorithms[a].name + "'");
}

/**
 * Flat `key = value` config; `#` starts a comment. Keys: instance and
 * algorithm (repeatable), runs, master_seed, jobs, output, format, alpha.
 * Relative instance paths resolve against `base_dir`.
 */
inline ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {}) {
  ExperimentConfig c;
  std::size_t line_no = 0;
  for (auto raw : detail::split_lines(text)) {
    ++line_no;
    auto hash = raw.find('#');
    auto line = detail::trim(raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "<line>", "expected key = value");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    auto bad = [&](const std::string& field, const std::string& why) { return ConfigError(line_no, field, why); };
    if (key == "instance") {
      std::string v(value);
      if (v.rfind("gen:", 0) != 0 && !base_dir.empty() && std::filesystem::path(v).is_relative())
        v = (base_dir / v).string();
      c.instances.push_back(std::move(v));
    } else if (key == "algorithm") {
      try {
        c.algorithms.push_back(parse_algorithm(value));
      } catch (const SpecError& e) {
        throw bad("algorithm[" + std::to_string(c.algorithms.size()) + "]", e.what());
      }
    } else if (key == "runs") {
      if (!detail::parse_integer(value, c.runs) || c.runs == 0) throw bad("runs", "expected a positive integer");
    } else if (key == "master_seed") {
      if (!detail::parse_integer(value, c.master_seed)) throw bad("master_seed", "expected an unsigned integer");
    } else if (key == "jobs") {
      if (!detail::parse_integer(value, c.jobs) || c.jobs == 0) throw bad("jobs", "expected a positive integer");
    } else if (key == "output") {
      std::filesystem::path out{std::string(value)};
      if (!base_dir.empty() && out.is_relative()) out = base_dir / out;
      c.output = out;
    } else if (key == "format") {
      try {
        c.formats = parse_formats(value);
      } catch (const SpecError& e) {
        throw bad("format", e.what());
      }
    } else if (key == "alpha") {
      if (!detail::parse_number(value, c.alpha)) throw bad("alpha", "expected a number");
    } else {
      throw bad(key, "unknown key");
    }
  }
  check_config(c);
  return c;
}

// ---------------------------------------------------------------------------
// Running

struct RunRecord {
  std::string instance;
  std::string algorithm;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double best_fitness = 0.0;
  std::size_t evaluations = 0;

  bool operator==(const RunRecord&) const = default;
};

struct StatsRow {
  std::string instance;
  std::string algorithm;
  double best = 0.0, worst = 0.0, mean = 0.0, std = 0.0;
  std::vector<double> per_run;
};

struct ExperimentResult {
  std::vector<RunRecord> runs;  // instance-major, then algorithm, then run
  std::vector<StatsRow> rows;   // instance-major, then algorithm
  std::optional<RankTable> ranks;
};

/// Seed of run r for (instance i, algorithm a).
inline std::uint64_t run_seed(std::uint64_t master, std::size_t i, std::size_t a, std::size_t r) {
  return derive_seed(master, {i, a, r});
}

inline RankTable rank_rows(const std::vector<StatsRow>& rows, double alpha = 0.05);

/**
 * Runs every (instance, algorithm, run) triple, optionally on `jobs` worker
 * threads. Seeds depend only on indices, and results land in fixed slots, so
 * output is independent of scheduling.
 */
inline ExperimentResult run_experiment(const ExperimentConfig& config) {
  check_config(config);
  std::vector<SukpInstance> instances;
  std::map<std::string, std::size_t> seen;
  for (const auto& s : config.instances) {
    instances.push_back(load_instance_spec(s));
    if (const std::size_t k = ++seen[instances.back().meta().name]; k > 1) {
      auto meta = instances.back().meta();
      meta.name += "#" + std::to_string(k);
      instances.back().set_meta(std::move(meta));
    }
  }
  for (const auto& alg : config.algorithms)
    for (const auto& inst : instances) validate(alg.params(0), inst);

  const std::size_t ni = instances.size(), na = config.algorithms.size(), nr = config.runs;
  ExperimentResult result;
  result.runs.resize(ni * na * nr);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= result.runs.size()) return;
      const std::size_t i = task / (na * nr), a = (task / nr) % na, r = task % nr;
      try {
        const auto seed = run_seed(config.master_seed, i, a, r);
        const auto out = run(instances[i], config.algorithms[a].params(seed));
        result.runs[task] = {instances[i].meta().name, config.algorithms[a].name, r, seed,
                             out.best.fitness, out.evaluations_used};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(result.runs.size());
      }
    }
  };
  const std::size_t threads = std::min(config.jobs, result.runs.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < ni; ++i)
    for (std::size_t a = 0; a < na; ++a) {
      StatsRow row;
      row.instance = instances[i].meta().name;
      row.algorithm = config.algorithms[a].name;
      for (std::size_t r = 0; r < nr; ++r)
        row.per_run.push_back(result.runs[(i * na + a) * nr + r].best_fitness);
      const auto s = summarize(row.per_run);
      row.best = s.best;
      row.worst = s.worst;
      row.mean = s.mean;
      row.std = s.std;
      result.rows.push_back(std::move(row));
    }
  if (na >= 2 && ni >= 2) result.ranks = rank_rows(result.rows, config.alpha);
  return result;
}

// ---------------------------------------------------------------------------
// Mean matrices

/// Instance x algorithm matrix of mean values, e.g. a published results table.
struct MeansTable {
  std::vector<std::string> instances;
  std::vector<std::string> algorithms;
  std::vector<std::vector<double>> values;
};

/// Builds the mean matrix from stats rows, keeping first-seen order.
inline MeansTable means_from_rows(const std::vector<StatsRow>& rows) {
  MeansTable t;
  std::map<std::string, std::size_t> inst_idx, alg_idx;
  for (const auto& r : rows) {
    if (inst_idx.emplace(r.instance, t.instances.size()).second) t.instances.push_back(r.instance);
    if (alg_idx.emplace(r.algorithm, t.algorithms.size()).second) t.algorithms.push_back(r.algorithm);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  t.values.assign(t.instances.size(), std::vector<double>(t.algorithms.size(), nan));
  for (const auto& r : rows) t.values[inst_idx[r.instance]][alg_idx[r.algorithm]] = r.mean;
  return t;
}

inline RankTable rank_rows(const std::vector<StatsRow>& rows, double alpha) {
  auto t = means_from_rows(rows);
  return friedman_ranks(t.values, t.algorithms, alpha);
}

// ---------------------------------------------------------------------------
// CSV

namespace detail {
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cur += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

/// Rows of a CSV document with the given exact header.
inline std::vector<std::vector<std::string>> csv_rows(std::string_view text,
                                                      std::string_view header) {
  auto lines = split_lines(text);
  if (lines.empty() || lines[0] != header)
    throw std::runtime_error("csv: expected header '" + std::string(header) + "'");
  const std::size_t cols = csv_split(header).size();
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    auto fields = csv_split(lines[k]);
    if (fields.size() != cols)
      throw std::runtime_error("csv line " + std::to_string(k + 1) + ": expected " +
                               std::to_string(cols) + " fields");
    rows.push_back(std::move(fields));
  }
  return rows;
}

inline double csv_number(const std::string& s, std::size_t line) {
  double v = 0;
  if (!parse_number(s, v)) throw std::runtime_error("csv line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}
}  // namespace detail

inline constexpr std::string_view kRunsHeader = "instance,algorithm,run,seed,best_fitness,evaluations";
inline constexpr std::string_view kSummaryHeader = "instance,algorithm,best,worst,mean,std";

inline std::string runs_csv(const std::vector<RunRecord>& runs) {
  std::string out(kRunsHeader);
  out += '\n';
  for (const auto& r : runs)
    out += detail::csv_field(r.instance) + ',' + detail::csv_field(r.algorithm) + ',' +
           std::to_string(r.run) + ',' + std::to_string(r.seed) + ',' +
           detail::format_number(r.best_fitness) + ',' + std::to_string(r.evaluations) + '\n';
  return out;
}

inline std::string summary_csv(const std::vector<StatsRow>& rows) {
  std::string out(kSummaryHeader);
  out += '\n';
  for (const auto& r : rows)
    out += detail::csv_field(r.instance) + ',' + detail::csv_field(r.algorithm) + ',' +
           detail::format_number(r.best) + ',' + detail::format_number(r.worst) + ',' +
           detail::format_number(r.mean) + ',' + detail::format_number(r.std) + '\n';
  return out;
}

inline std::vector<RunRecord> parse_runs_csv(std::string_view text) {
  std::vector<RunRecord> out;
  std::size_t line = 1;
  for (auto& f : detail::csv_rows(text, kRunsHeader)) {
    ++line;
    RunRecord r;
    r.instance = f[0];
    r.algorithm = f[1];
    if (!detail::parse_integer(std::string_view(f[2]), r.run) ||
        !detail::parse_integer(std::string_view(f[3]), r.seed) ||
        !detail::parse_integer(std::string_view(f[5]), r.evaluations))
      throw std::runtime_error("csv line " + std::to_string(line) + ": bad integer field");
    r.best_fitness = detail::csv_number(f[4], line);
    out.push_back(std::move(r));
  }
  return out;
}

/// Summary rows only; per_run is left empty.
inline std::vector<StatsRow> parse_summary_csv(std::string_view text) {
  std::vector<StatsRow> out;
  std::size_t line = 1;
  for (auto& f : detail::csv_rows(text, kSummaryHeader)) {
    ++line;
    StatsRow r;
    r.instance = f[0];
    r.algorithm = f[1];
    r.best = detail::csv_number(f[2], line);
    r.worst = detail::csv_number(f[3], line);
    r.mean = detail::csv_number(f[4], line);
    r.std = detail::csv_number(f[5], line);
    out.push_back(std::move(r));
  }
  return out;
}

/// `instance,ALG1,ALG2,...` followed by one row of means per instance.
inline MeansTable parse_means_csv(std::string_view text) {
  auto lines = detail::split_lines(text);
  if (lines.empty()) throw std::runtime_error("means csv: empty input");
  auto header = detail::csv_split(lines[0]);
  if (header.size() < 2 || header[0] != "instance")
    throw std::runtime_error("means csv: header must be 'instance,ALG1,...'");
  MeansTable t;
  t.algorithms.assign(header.begin() + 1, header.end());
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    auto f = detail::csv_split(lines[k]);
    if (f.size() != header.size())
      throw std::runtime_error("means csv line " + std::to_string(k + 1) + ": expected " +
                               std::to_string(header.size()) + " fields");
    t.instances.push_back(f[0]);
    std::vector<double> row;
    for (std::size_t c = 1; c < f.size(); ++c) row.push_back(detail::csv_number(f[c], k + 1));
    t.values.push_back(std::move(row));
  }
  return t;
}

inline std::string ranks_csv(const RankTable& t, std::size_t control) {
  std::string out = "algorithm,avg_rank,difference_vs_control,significant\n";
  const auto cmp = compare_against(t, control);
  std::size_t c = 0;
  for (std::size_t a = 0; a < t.algorithms.size(); ++a) {
    out += detail::csv_field(t.algorithms[a]) + ',' + detail::format_number(t.avg_ranks[a]) + ',';
    if (a == control) {
      out += "0,control\n";
    } else {
      out += detail::format_number(cmp[c].difference) + ',' + (cmp[c].significant ? "yes" : "no") + '\n';
      ++c;
    }
  }
  return out;
}

inline std::string friedman_csv(const RankTable& t) {
  std::string out = "key,value\n";
  out += "instances," + std::to_string(t.instances) + '\n';
  out += "algorithms," + std::to_string(t.algorithms.size()) + '\n';
  out += "friedman_statistic," + detail::format_number(t.friedman_statistic) + '\n';
  out += "p_value," + detail::format_number(t.p_value) + '\n';
  out += "alpha," + detail::format_number(t.alpha) + '\n';
  out += "nemenyi_cd," + detail::format_number(t.nemenyi_cd) + '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Markdown and JSON

namespace detail {
inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}
}  // namespace detail

/// Per-instance Best/Mean/Worst/Std blocks, one column per algorithm.
inline std::string results_markdown(const std::vector<StatsRow>& rows) {
  std::vector<std::string> instances, algorithms;
  std::map<std::pair<std::string, std::string>, const StatsRow*> cell;
  for (const auto& r : rows) {
    if (std::find(instances.begin(), instances.end(), r.instance) == instances.end())
      instances.push_back(r.instance);
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end())
      algorithms.push_back(r.algorithm);
    cell[{r.instance, r.algorithm}] = &r;
  }
  std::string out = "| Instance | Result |";
  for (const auto& a : algorithms) out += " " + a + " |";
  out += "\n|---|---|";
  for (std::size_t a = 0; a < algorithms.size(); ++a) out += "---|";
  out += '\n';
  const char* labels[] = {"Best", "Mean", "Worst", "Std"};
  for (const auto& inst : instances)
    for (int k = 0; k < 4; ++k) {
      out += "| " + (k == 0 ? inst : std::string()) + " | " + labels[k] + " |";
      for (const auto& a : algorithms) {
        auto it = cell.find({inst, a});
        if (it == cell.end()) {
          out += " - |";
          continue;
        }
        const StatsRow& r = *it->second;
        const double v = k == 0 ? r.best : k == 1 ? r.mean : k == 2 ? r.worst : r.std;
        out += " " + (k == 0 || k == 2 ? detail::format_number(v) : detail::fixed(v, 2)) + " |";
      }
      out += '\n';
    }
  return out;
}

inline std::string ranks_markdown(const RankTable& t, std::size_t control) {
  std::string out = "| Algorithm | Average rank |\n|---|---|\n";
  for (std::size_t a = 0; a < t.algorithms.size(); ++a)
    out += "| " + t.algorithms[a] + " | " + detail::fixed(t.avg_ranks[a], 3) + " |\n";
  out += "| p-value | " + detail::fixed(t.p_value, 3) + " |\n\n";
  out += "Friedman statistic " + detail::fixed(t.friedman_statistic, 3) + ", Nemenyi CD " +
         detail::fixed(t.nemenyi_cd, 3) + " at alpha " + detail::fixed(t.alpha, 2) + ".\n\n";
  out += "| Algorithm | Rank difference vs " + t.algorithms[control] +
         " | Comparison | Significant |\n|---|---|---|---|\n";
  for (const auto& c : compare_against(t, control))
    out += "| " + c.algorithm + " | " + detail::fixed(c.difference, 3) + " | " +
           (c.difference > t.nemenyi_cd ? ">CD" : "<=CD") + " | " + (c.significant ? "Yes" : "No") +
           " |\n";
  return out;
}

inline nlohmann::ordered_json to_json(const RankTable& t, std::size_t control) {
  nlohmann::ordered_json j;
  j["algorithms"] = t.algorithms;
  j["avg_ranks"] = t.avg_ranks;
  j["friedman_statistic"] = t.friedman_statistic;
  j["p_value"] = t.p_value;
  j["alpha"] = t.alpha;
  j["nemenyi_cd"] = t.nemenyi_cd;
  j["instances"] = t.instances;
  j["control"] = t.algorithms[control];
  auto& cmp = j["comparisons"] = nlohmann::ordered_json::array();
  for (const auto& c : compare_against(t, control))
    cmp.push_back({{"algorithm", c.algorithm}, {"difference", c.difference}, {"significant", c.significant}});
  return j;
}

inline nlohmann::ordered_json to_json(const ExperimentResult& res,
                                      const nlohmann::ordered_json& metadata = {}) {
  nlohmann::ordered_json j;
  j["metadata"] = metadata.is_null() ? nlohmann::ordered_json::object() : metadata;
  j["metadata"]["std_convention"] = "population";
  auto& runs = j["runs"] = nlohmann::ordered_json::array();
  for (const auto& r : res.runs)
    runs.push_back({{"instance", r.instance},
                    {"algorithm", r.algorithm},
                    {"run", r.run},
                    {"seed", r.seed},
                    {"best_fitness", r.best_fitness},
                    {"evaluations", r.evaluations}});
  auto& summary = j["summary"] = nlohmann::ordered_json::array();
  for (const auto& r : res.rows)
    summary.push_back({{"instance", r.instance},
                       {"algorithm", r.algorithm},
                       {"best", r.best},
                       {"worst", r.worst},
                       {"mean", r.mean},
                       {"std", r.std},
                       {"per_run", r.per_run}});
  if (res.ranks) j["ranks"] = to_json(*res.ranks, best_ranked(*res.ranks));
  return j;
}

/// Writes the requested formats into `dir` and returns the written paths.
/// CSV: runs.csv, summary.csv (+ ranks.csv, friedman.csv when ranked).
/// Markdown: results.md. JSON: results.json.
inline std::vector<std::filesystem::path> emit(const ExperimentResult& res,
                                               const std::set<OutputFormat>& formats,
                                               const std::filesystem::path& dir,
                                               const nlohmann::ordered_json& metadata = {}) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  auto put = [&](const char* name, const std::string& content) {
    write_file(dir / name, content);
    written.push_back(dir / name);
  };
  if (formats.count(OutputFormat::kCsv)) {
    put("runs.csv", runs_csv(res.runs));
    put("summary.csv", summary_csv(res.rows));
    if (res.ranks) {
      put("ranks.csv", ranks_csv(*res.ranks, best_ranked(*res.ranks)));
      put("friedman.csv", friedman_csv(*res.ranks));
    }
  }
  if (formats.count(OutputFormat::kMarkdown)) {
    std::string md = "# Results\n\nStd is the population standard deviation.\n\n" + results_markdown(res.rows);
    if (res.ranks) md += "\n## Friedman ranks on mean\n\n" + ranks_markdown(*res.ranks, best_ranked(*res.ranks));
    put("results.md", md);
  }
  if (formats.count(OutputFormat::kJson)) put("results.json", to_json(res, metadata).dump(2) + "\n");
  return written;
}

}  // namespace sukp

#endif  // SUKP_BENCH_HPP
