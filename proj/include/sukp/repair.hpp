#ifndef SUKP_REPAIR_HPP
#define SUKP_REPAIR_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "sukp/eval.hpp"
#include "sukp/instance.hpp"

namespace sukp {

/// Feasible solution produced by a repair operator, with its companion
/// vector (covered elements in item mode, completed items in element mode).
template <typename Solution, typename Companion>
struct RepairOutcome {
  Solution solution;
  Companion derived;
  double objective = 0.0;
};

using ItemRepairOutcome = RepairOutcome<ItemSolution, ElementSolution>;
using ElementRepairOutcome = RepairOutcome<ElementSolution, ItemSolution>;

namespace detail {

/// Index of the highest cached value among members; lowest index on ties.
inline std::size_t argmax_member(const std::vector<std::size_t>& members,
                                 const std::vector<double>& value) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < members.size(); ++k)
    if (value[members[k]] > value[members[best]]) best = k;
  return best;
}

inline std::vector<std::size_t> members_where(const std::vector<std::uint8_t>& bits, bool on) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < bits.size(); ++k)
    if ((bits[k] != 0) == on) out.push_back(k);
  return out;
}

/// Loading state shared by the item-mode operators.
struct ItemKnapsack {
  const SukpInstance& inst;
  ItemSolution chosen;
  ElementSolution covered;
  double weight = 0.0;

  explicit ItemKnapsack(const SukpInstance& in)
      : inst(in), chosen(in.item_count()), covered(in.element_count()) {}

  double added_weight(std::size_t item) const {
    double w = 0.0;
    for (std::size_t j : inst.elements_of(item))
      if (!covered[j]) w += inst.weight(j);
    return w;
  }

  /// Loads `item` if the union stays within capacity. Elements it newly
  /// covers are written to `newly_covered`.
  bool try_load(std::size_t item, std::vector<std::size_t>& newly_covered) {
    newly_covered.clear();
    const double add = added_weight(item);
    if (weight + add > inst.capacity()) return false;
    weight += add;
    chosen.set(item);
    for (std::size_t j : inst.elements_of(item))
      if (!covered[j]) {
        covered.set(j);
        newly_covered.push_back(j);
      }
    return true;
  }

  ItemRepairOutcome finish() && {
    const double objective = total_profit_items(inst, chosen);
    return {std::move(chosen), std::move(covered), objective};
  }
};

/// One ISRO pass: repeatedly take the member of highest relative value
/// density, load it when it fits, drop it from the pass. Densities of items
/// sharing newly covered elements are recomputed after each successful load.
inline void dynamic_item_pass(const DensityTable& table, ItemKnapsack& ks,
                              std::vector<std::size_t> members, std::vector<double>& value,
                              std::vector<std::uint8_t>& in_pass) {
  const auto& inst = ks.inst;
  for (std::size_t i : members) {
    in_pass[i] = 1;
    value[i] = rvdi(inst, table, i, ks.covered);
  }
  std::vector<std::size_t> newly;
  std::vector<std::size_t> dirty;
  std::vector<std::uint8_t> marked(inst.item_count(), 0);
  while (!members.empty()) {
    const std::size_t pos = argmax_member(members, value);
    const std::size_t k = members[pos];
    members.erase(members.begin() + static_cast<std::ptrdiff_t>(pos));
    in_pass[k] = 0;
    if (!ks.try_load(k, newly) || newly.empty()) continue;
    dirty.clear();
    for (std::size_t j : newly)
      for (std::size_t i : inst.items_with(j))
        if (in_pass[i] && !marked[i]) {
          marked[i] = 1;
          dirty.push_back(i);
        }
    for (std::size_t i : dirty) {
      value[i] = rvdi(inst, table, i, ks.covered);
      marked[i] = 0;
    }
  }
}

}  // namespace detail

/**
 * Item-based self-adjusting repair and optimization.
 *
 * Items selected by the candidate are offered first, then the rest; within
 * each group the next item offered is the one with the highest relative value
 * density against the elements already covered. An item is loaded iff the
 * weight of the union stays within capacity. Deterministic; ties go to the
 * lower index.
 */
inline ItemRepairOutcome isro(const SukpInstance& inst, const DensityTable& table,
                              const ItemSolution& candidate) {
  detail::require_length(candidate.size(), inst.item_count(), "candidate");
  detail::ItemKnapsack ks(inst);
  std::vector<double> value(inst.item_count(), 0.0);
  std::vector<std::uint8_t> in_pass(inst.item_count(), 0);
  detail::dynamic_item_pass(table, ks, detail::members_where(candidate.bits, true), value, in_pass);
  detail::dynamic_item_pass(table, ks, detail::members_where(candidate.bits, false), value, in_pass);
  return std::move(ks).finish();
}

/// Same two-pass structure as isro(), ranked once by static absolute value
/// density with no recomputation.
inline ItemRepairOutcome static_greedy_repair(const SukpInstance& inst, const DensityTable& table,
                                              const ItemSolution& candidate) {
  detail::require_length(candidate.size(), inst.item_count(), "candidate");
  detail::ItemKnapsack ks(inst);
  std::vector<std::size_t> newly;
  for (bool selected : {true, false}) {
    auto order = detail::members_where(candidate.bits, selected);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return table.avdi[a] > table.avdi[b]; });
    for (std::size_t i : order) ks.try_load(i, newly);
  }
  return std::move(ks).finish();
}

namespace detail {

/// Element-mode loading state. Outside weights per item are kept current so
/// an element's relative value density is a sum over its items.
struct ElementKnapsack {
  const SukpInstance& inst;
  ElementSolution loaded;
  double weight = 0.0;
  std::vector<double> outside;  // per item

  explicit ElementKnapsack(const SukpInstance& in)
      : inst(in), loaded(in.element_count()), outside(in.item_count()) {
    refresh_all();
  }

  void refresh_all() {
    for (std::size_t i = 0; i < inst.item_count(); ++i) outside[i] = outside_weight(inst, i, loaded);
    weight = total_weight_elements(inst, loaded);
  }

  /// Equals rvde(inst, table, j, loaded) bit for bit.
  double density(std::size_t j) const {
    double s = 0.0;
    for (std::size_t i : inst.items_with(j))
      if (outside[i] > 0.0) s += inst.profit(i) / outside[i];
    return s;
  }
};

/// Greedy by relative value density over `members`, capacity-checked.
inline void dynamic_element_pass(ElementKnapsack& ks, std::vector<std::size_t> members) {
  const auto& inst = ks.inst;
  const std::size_t n = inst.element_count();
  std::vector<double> value(n, 0.0);
  std::vector<std::uint8_t> in_pass(n, 0), marked(n, 0);
  for (std::size_t j : members) {
    in_pass[j] = 1;
    value[j] = ks.density(j);
  }
  std::vector<std::size_t> dirty;
  while (!members.empty()) {
    const std::size_t pos = argmax_member(members, value);
    const std::size_t t = members[pos];
    members.erase(members.begin() + static_cast<std::ptrdiff_t>(pos));
    in_pass[t] = 0;
    if (ks.weight + inst.weight(t) > inst.capacity()) continue;
    ks.weight += inst.weight(t);
    ks.loaded.set(t);
    dirty.clear();
    for (std::size_t i : inst.items_with(t)) {
      ks.outside[i] = outside_weight(inst, i, ks.loaded);
      for (std::size_t j : inst.elements_of(i))
        if (in_pass[j] && !marked[j]) {
          marked[j] = 1;
          dirty.push_back(j);
        }
    }
    for (std::size_t j : dirty) {
      value[j] = ks.density(j);
      marked[j] = 0;
    }
  }
}

/// Drops loaded elements that belong to no completed item. Returns whether
/// anything was dropped.
inline bool drop_dangling(ElementKnapsack& ks, const ItemSolution& complete) {
  bool dropped = false;
  for (std::size_t j = 0; j < ks.inst.element_count(); ++j) {
    if (!ks.loaded[j]) continue;
    bool anchored = false;
    for (std::size_t i : ks.inst.items_with(j))
      if (complete[i]) {
        anchored = true;
        break;
      }
    if (!anchored) {
      ks.loaded.set(j, false);
      dropped = true;
    }
  }
  if (dropped) ks.refresh_all();
  return dropped;
}

}  // namespace detail

/**
 * Element-based self-adjusting repair and optimization.
 *
 * Greedy element loading (candidate's elements first, then the rest) by
 * relative value density, followed by a cleanup/refill cycle: elements that
 * complete no item are dropped, the freed capacity is refilled greedily from
 * all outside elements, and newly completed items are recorded. The cycle
 * repeats while the refill completes at least one new item. When a refill
 * completes nothing, its elements are dropped again and the operator stops,
 * so the result always satisfies element-mode feasibility.
 */
inline ElementRepairOutcome esro(const SukpInstance& inst, const DensityTable& /*table*/,
                                 const ElementSolution& candidate) {
  detail::require_length(candidate.size(), inst.element_count(), "candidate");
  detail::ElementKnapsack ks(inst);
  detail::dynamic_element_pass(ks, detail::members_where(candidate.bits, true));
  detail::dynamic_element_pass(ks, detail::members_where(candidate.bits, false));

  ItemSolution complete = items_from_elements(inst, ks.loaded);
  // Each round that continues completes at least one more item, so this runs
  // at most item_count() + 1 times.
  while (detail::drop_dangling(ks, complete)) {
    detail::dynamic_element_pass(ks, detail::members_where(ks.loaded.bits, false));
    bool completed_new = false;
    for (std::size_t i = 0; i < inst.item_count(); ++i)
      if (!complete[i] && item_complete(inst, i, ks.loaded)) {
        complete.set(i);
        completed_new = true;
      }
    if (!completed_new) {
      detail::drop_dangling(ks, complete);
      break;
    }
  }
  const double objective = total_profit_items(inst, complete);
  return {std::move(ks.loaded), std::move(complete), objective};
}

}  // namespace sukp

#endif  // SUKP_REPAIR_HPP
