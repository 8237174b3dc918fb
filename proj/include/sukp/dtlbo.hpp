#ifndef SUKP_DTLBO_HPP
#define SUKP_DTLBO_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sukp/eval.hpp"
#include "sukp/instance.hpp"
#include "sukp/repair.hpp"
#include "sukp/rng.hpp"

namespace sukp {

enum class LoadingMode { kItem, kElement };
enum class RepairKind { kIsro, kEsro, kStatic };
enum class TeachingFactorRule { kRandomOneOrTwo, kAlwaysOne, kAlwaysTwo };

inline std::string_view to_string(LoadingMode m) { return m == LoadingMode::kItem ? "item" : "element"; }
inline std::string_view to_string(RepairKind r) {
  switch (r) {
    case RepairKind::kIsro: return "isro";
    case RepairKind::kEsro: return "esro";
    case RepairKind::kStatic: return "static";
  }
  return "unknown";
}
inline std::string_view to_string(TeachingFactorRule r) {
  switch (r) {
    case TeachingFactorRule::kRandomOneOrTwo: return "random";
    case TeachingFactorRule::kAlwaysOne: return "one";
    case TeachingFactorRule::kAlwaysTwo: return "two";
  }
  return "unknown";
}

inline LoadingMode mode_of(RepairKind r) {
  return r == RepairKind::kEsro ? LoadingMode::kElement : LoadingMode::kItem;
}
inline RepairKind default_repair(LoadingMode m) {
  return m == LoadingMode::kItem ? RepairKind::kIsro : RepairKind::kEsro;
}

/// 20 + 20 * max(m, n).
inline std::size_t default_mfc(const SukpInstance& inst) {
  return 20 + 20 * std::max(inst.item_count(), inst.element_count());
}

struct DtlboParams {
  std::size_t popsize = 20;
  std::optional<std::size_t> mfc;  // evaluation budget; default_mfc() when absent
  LoadingMode mode = LoadingMode::kItem;
  std::optional<RepairKind> repair;  // default_repair(mode) when absent
  std::uint64_t seed = 0;
  TeachingFactorRule tf_rule = TeachingFactorRule::kRandomOneOrTwo;
  bool elite_opposite_search = true;
  bool survival_of_fittest = true;
  bool record_history = true;
};

/// Real position x, its binary image y (the loading vector of the mode) and
/// the companion vector z, stored post-repair.
struct Individual {
  std::vector<double> x;
  std::vector<std::uint8_t> y;
  std::vector<std::uint8_t> z;
  double fitness = -std::numeric_limits<double>::infinity();
};

struct HistoryPoint {
  std::size_t evaluation;
  double best_fitness;
};

struct RunResult {
  Individual best;
  std::size_t evaluations_used = 0;
  std::vector<HistoryPoint> history;
};

// ---------------------------------------------------------------------------
// Encoding

inline std::vector<std::uint8_t> binarize(std::span<const double> x) {
  std::vector<std::uint8_t> y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) y[j] = x[j] > 0.0 ? 1 : 0;
  return y;
}

/// Fresh real vector whose signs encode y: (0,1) for ones, (-1,0) for zeros.
inline std::vector<double> refresh_real(std::span<const std::uint8_t> y, Rng& rng) {
  std::vector<double> x(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double u = rng.uniform_open();
    x[j] = y[j] ? u : u - 1.0;
  }
  return x;
}

/// Uniform on (-1, 0) U (0, 1) per coordinate.
inline std::vector<double> random_real(std::size_t d, Rng& rng) {
  std::vector<double> x(d);
  for (auto& v : x) {
    do {
      v = 2.0 * rng.uniform_open() - 1.0;
    } while (v == 0.0);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Moves

namespace detail {
inline void require_same_length(std::size_t a, std::size_t b) {
  if (a != b)
    throw std::invalid_argument("dimension mismatch: vectors of length " + std::to_string(a) +
                                " and " + std::to_string(b));
}
}  // namespace detail

/// x + r * (teacher - tf * mean), with a single scalar r for all coordinates.
inline std::vector<double> teacher_step(std::span<const double> x, std::span<const double> teacher,
                                        std::span<const double> mean, double tf, double r) {
  detail::require_same_length(x.size(), teacher.size());
  detail::require_same_length(x.size(), mean.size());
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] + r * (teacher[j] - tf * mean[j]);
  return out;
}

inline std::vector<double> teacher_move(std::span<const double> x, std::span<const double> teacher,
                                        std::span<const double> mean, double tf, Rng& rng) {
  return teacher_step(x, teacher, mean, tf, rng.uniform());
}

/// Moves away from the partner when strictly fitter, toward it otherwise.
inline std::vector<double> learner_step(std::span<const double> x, double fit,
                                        std::span<const double> partner, double partner_fit,
                                        double r) {
  detail::require_same_length(x.size(), partner.size());
  std::vector<double> out(x.size());
  const bool fitter = fit > partner_fit;
  for (std::size_t j = 0; j < x.size(); ++j)
    out[j] = fitter ? x[j] + r * (x[j] - partner[j]) : x[j] + r * (partner[j] - x[j]);
  return out;
}

inline std::vector<double> learner_move(std::span<const double> x, double fit,
                                        std::span<const double> partner, double partner_fit,
                                        Rng& rng) {
  return learner_step(x, fit, partner, partner_fit, rng.uniform());
}

inline double draw_teaching_factor(TeachingFactorRule rule, Rng& rng) {
  switch (rule) {
    case TeachingFactorRule::kAlwaysOne: return 1.0;
    case TeachingFactorRule::kAlwaysTwo: return 2.0;
    case TeachingFactorRule::kRandomOneOrTwo: break;
  }
  return 1.0 + std::round(rng.uniform());
}

// ---------------------------------------------------------------------------
// Repair adapter and evaluation accounting

/// Binds an instance to one repair operator over raw bit vectors.
class Repairer {
 public:
  Repairer(const SukpInstance& inst, RepairKind kind)
      : inst_(&inst), kind_(kind), table_(build_density_table(inst)) {}

  RepairKind kind() const noexcept { return kind_; }
  LoadingMode mode() const noexcept { return mode_of(kind_); }
  const SukpInstance& instance() const noexcept { return *inst_; }
  std::size_t dimension() const noexcept {
    return mode() == LoadingMode::kItem ? inst_->item_count() : inst_->element_count();
  }

  /// Repairs y and returns an individual with x refreshed from the result.
  Individual make(std::vector<std::uint8_t> y, Rng& rng) const {
    Individual ind;
    switch (kind_) {
      case RepairKind::kIsro:
      case RepairKind::kStatic: {
        ItemSolution cand(std::move(y));
        auto out = kind_ == RepairKind::kIsro ? isro(*inst_, table_, cand)
                                              : static_greedy_repair(*inst_, table_, cand);
        ind.y = std::move(out.solution.bits);
        ind.z = std::move(out.derived.bits);
        ind.fitness = out.objective;
        break;
      }
      case RepairKind::kEsro: {
        auto out = esro(*inst_, table_, ElementSolution(std::move(y)));
        ind.y = std::move(out.solution.bits);
        ind.z = std::move(out.derived.bits);
        ind.fitness = out.objective;
        break;
      }
    }
    ind.x = refresh_real(ind.y, rng);
    return ind;
  }

  Individual random_individual(Rng& rng) const {
    return make(binarize(random_real(dimension(), rng)), rng);
  }

 private:
  const SukpInstance* inst_;
  RepairKind kind_;
  DensityTable table_;
};

/// Counts repair+fitness evaluations and tracks the best individual seen.
class EvaluationCounter {
 public:
  explicit EvaluationCounter(std::size_t limit, bool keep_history = true)
      : limit_(limit), keep_history_(keep_history) {}

  void charge(const Individual& evaluated) {
    ++used_;
    if (evaluated.fitness > best_.fitness) best_ = evaluated;
    if (keep_history_) history_.push_back({used_, best_.fitness});
  }

  std::size_t used() const noexcept { return used_; }
  std::size_t limit() const noexcept { return limit_; }
  bool exhausted() const noexcept { return used_ > limit_; }
  const Individual& best() const noexcept { return best_; }
  std::vector<HistoryPoint>& history() noexcept { return history_; }

 private:
  std::size_t limit_;
  bool keep_history_;
  std::size_t used_ = 0;
  Individual best_;
  std::vector<HistoryPoint> history_;
};

using Population = std::vector<Individual>;

/// Fittest member; lowest index on ties.
inline std::size_t fittest(const Population& pop) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.size(); ++i)
    if (pop[i].fitness > pop[best].fitness) best = i;
  return best;
}

/// Least fit member; highest index on ties.
inline std::size_t least_fit(const Population& pop) {
  std::size_t worst = 0;
  for (std::size_t i = 1; i < pop.size(); ++i)
    if (pop[i].fitness <= pop[worst].fitness) worst = i;
  return worst;
}

// ---------------------------------------------------------------------------
// Population strategies

/// Flips every bit of the fittest member's y, repairs, charges one
/// evaluation, and replaces that member when strictly better. Returns whether
/// a replacement happened.
inline bool elite_opposite_search(Population& pop, const Repairer& repair, Rng& rng,
                                  EvaluationCounter& counter) {
  const std::size_t elite = fittest(pop);
  std::vector<std::uint8_t> flipped(pop[elite].y.size());
  for (std::size_t j = 0; j < flipped.size(); ++j) flipped[j] = pop[elite].y[j] ? 0 : 1;
  Individual temp = repair.make(std::move(flipped), rng);
  counter.charge(temp);
  if (temp.fitness > pop[elite].fitness) {
    pop[elite] = std::move(temp);
    return true;
  }
  return false;
}

/// Replaces the least fit member with a fresh random individual (one
/// evaluation). Returns the replaced index.
inline std::size_t survival_of_fittest(Population& pop, const Repairer& repair, Rng& rng,
                                       EvaluationCounter& counter) {
  const std::size_t worst = least_fit(pop);
  pop[worst] = repair.random_individual(rng);
  counter.charge(pop[worst]);
  return worst;
}

// ---------------------------------------------------------------------------
// Engine

inline void validate(const DtlboParams& p, const SukpInstance& inst) {
  if (p.popsize < 2) throw std::invalid_argument("popsize must be at least 2");
  const std::size_t mfc = p.mfc.value_or(default_mfc(inst));
  if (mfc < p.popsize) throw std::invalid_argument("mfc must be at least popsize");
  if (p.repair && mode_of(*p.repair) != p.mode)
    throw std::invalid_argument("repair operator '" + std::string(to_string(*p.repair)) +
                                "' does not match loading mode '" +
                                std::string(to_string(p.mode)) + "'");
}

/**
 * Discrete teaching-learning-based optimization.
 *
 * Each generation runs a teacher phase and a learner phase over the whole
 * population (one evaluation per move, strict-improvement acceptance), then
 * elite opposite search and survival of the fittest, one evaluation each.
 * The run stops as soon as an evaluation pushes the count past the budget.
 */
inline RunResult run(const SukpInstance& inst, const DtlboParams& params) {
  validate(params, inst);
  const std::size_t mfc = params.mfc.value_or(default_mfc(inst));
  const Repairer repair(inst, params.repair.value_or(default_repair(params.mode)));
  Rng rng(params.seed);
  EvaluationCounter counter(mfc, params.record_history);

  Population pop;
  pop.reserve(params.popsize);
  for (std::size_t i = 0; i < params.popsize; ++i) {
    pop.push_back(repair.random_individual(rng));
    counter.charge(pop.back());
  }

  const std::size_t d = repair.dimension();
  const std::size_t size = pop.size();
  std::vector<double> mean(d);
  auto accept = [&](std::size_t i, Individual temp) {
    counter.charge(temp);
    if (temp.fitness > pop[i].fitness) pop[i] = std::move(temp);
    return !counter.exhausted();
  };

  std::size_t teacher = fittest(pop);
  while (!counter.exhausted()) {
    const std::vector<double> teacher_x = pop[teacher].x;
    std::fill(mean.begin(), mean.end(), 0.0);
    for (const auto& ind : pop)
      for (std::size_t j = 0; j < d; ++j) mean[j] += ind.x[j];
    for (auto& v : mean) v /= static_cast<double>(size);

    bool budget_left = true;
    for (std::size_t i = 0; i < size && budget_left; ++i) {
      const double tf = draw_teaching_factor(params.tf_rule, rng);
      auto moved = teacher_move(pop[i].x, teacher_x, mean, tf, rng);
      budget_left = accept(i, repair.make(binarize(moved), rng));
    }
    for (std::size_t i = 0; i < size && budget_left; ++i) {
      std::size_t k = static_cast<std::size_t>(rng.below(size - 1));
      if (k >= i) ++k;
      auto moved = learner_move(pop[i].x, pop[i].fitness, pop[k].x, pop[k].fitness, rng);
      budget_left = accept(i, repair.make(binarize(moved), rng));
    }
    if (budget_left && params.elite_opposite_search) {
      elite_opposite_search(pop, repair, rng, counter);
      budget_left = !counter.exhausted();
    }
    if (budget_left && params.survival_of_fittest) survival_of_fittest(pop, repair, rng, counter);
    teacher = fittest(pop);
  }

  RunResult result;
  result.best = counter.best();
  result.evaluations_used = counter.used();
  result.history = std::move(counter.history());
  return result;
}

}  // namespace sukp

#endif  // SUKP_DTLBO_HPP
