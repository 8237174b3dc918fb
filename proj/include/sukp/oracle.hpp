#ifndef SUKP_ORACLE_HPP
#define SUKP_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sukp/eval.hpp"
#include "sukp/instance.hpp"

namespace sukp {

struct ExactResult {
  double optimum = 0.0;
  ItemSolution witness;
  std::uint64_t explored = 0;  // leaves for brute force, nodes for branch and bound
};

inline constexpr std::size_t kBruteForceMaxItems = 24;
inline constexpr std::size_t kBranchBoundMaxItems = 40;

class InstanceTooLarge : public std::invalid_argument {
 public:
  InstanceTooLarge(std::size_t m, std::size_t limit, const char* method)
      : std::invalid_argument(std::string(method) + " refuses instances with more than " +
                              std::to_string(limit) + " items (got " + std::to_string(m) + ")") {}
};

namespace detail {

/// Union of chosen items tracked by per-element cover counts, so items can
/// be added and removed during depth-first enumeration.
class CoverCounter {
 public:
  explicit CoverCounter(const SukpInstance& inst) : inst_(inst), count_(inst.element_count(), 0) {}

  double marginal(std::size_t item) const {
    double w = 0.0;
    for (std::size_t j : inst_.elements_of(item))
      if (count_[j] == 0) w += inst_.weight(j);
    return w;
  }
  void add(std::size_t item) {
    for (std::size_t j : inst_.elements_of(item)) ++count_[j];
  }
  void remove(std::size_t item) {
    for (std::size_t j : inst_.elements_of(item)) --count_[j];
  }

 private:
  const SukpInstance& inst_;
  std::vector<std::uint32_t> count_;
};

}  // namespace detail

/// Enumerates all 2^m item subsets in lexicographic order of Y (item 0 most
/// significant), keeping the first subset that attains the maximum profit.
inline ExactResult exact_bruteforce(const SukpInstance& inst) {
  const std::size_t m = inst.item_count();
  if (m > kBruteForceMaxItems) throw InstanceTooLarge(m, kBruteForceMaxItems, "brute force");
  detail::CoverCounter cover(inst);
  ItemSolution current(m);
  ExactResult best{0.0, ItemSolution(m), 0};
  bool found = false;
  auto visit = [&](auto&& self, std::size_t i, double profit, double weight) -> void {
    if (i == m) {
      ++best.explored;
      if (weight <= inst.capacity() && (!found || profit > best.optimum)) {
        found = true;
        best.optimum = profit;
        best.witness = current;
      }
      return;
    }
    self(self, i + 1, profit, weight);
    const double add = cover.marginal(i);
    current.set(i);
    cover.add(i);
    self(self, i + 1, profit + inst.profit(i), weight + add);
    cover.remove(i);
    current.set(i, false);
  };
  visit(visit, 0, 0.0, 0.0);
  return best;
}

/**
 * Depth-first include/exclude search (exclude branch first, so the first
 * optimum found is the lexicographically smallest, matching brute force).
 *
 * Bound: current profit plus the profit of every remaining item whose
 * uncovered weight still fits the residual capacity. This is admissible: an
 * item's uncovered weight can shrink later only by weight that is also
 * charged to the residual capacity, so an item that does not fit now never
 * will.
 */
inline ExactResult exact_branch_bound(const SukpInstance& inst) {
  const std::size_t m = inst.item_count();
  if (m > kBranchBoundMaxItems) throw InstanceTooLarge(m, kBranchBoundMaxItems, "branch and bound");
  detail::CoverCounter cover(inst);
  ItemSolution current(m);
  ExactResult best{0.0, ItemSolution(m), 0};
  bool found = false;

  auto bound = [&](std::size_t from, double profit, double residual) {
    double b = profit;
    for (std::size_t i = from; i < m; ++i)
      if (cover.marginal(i) <= residual) b += inst.profit(i);
    return b;
  };

  auto search = [&](auto&& self, std::size_t i, double profit, double weight) -> void {
    ++best.explored;
    if (i == m) {
      if (!found || profit > best.optimum) {
        found = true;
        best.optimum = profit;
        best.witness = current;
      }
      return;
    }
    if (found && bound(i, profit, inst.capacity() - weight) <= best.optimum) return;
    self(self, i + 1, profit, weight);
    const double add = cover.marginal(i);
    if (weight + add <= inst.capacity()) {
      current.set(i);
      cover.add(i);
      self(self, i + 1, profit + inst.profit(i), weight + add);
      cover.remove(i);
      current.set(i, false);
    }
  };
  search(search, 0, 0.0, 0.0);
  return best;
}

/// Feasible, and the recomputed profit matches the claim (to 1e-9 relative).
inline bool verify_solution(const SukpInstance& inst, const ItemSolution& sol,
                            double claimed_profit) {
  if (sol.size() != inst.item_count()) return false;
  if (!is_feasible_items(inst, sol)) return false;
  const double actual = total_profit_items(inst, sol);
  return std::abs(actual - claimed_profit) <= 1e-9 * std::max(1.0, std::abs(actual));
}

}  // namespace sukp

#endif  // SUKP_ORACLE_HPP
