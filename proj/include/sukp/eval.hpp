#ifndef SUKP_EVAL_HPP
#define SUKP_EVAL_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sukp/instance.hpp"

namespace sukp {

struct ItemTag {};
struct ElementTag {};

/// Binary loading vector over items (ItemTag) or elements (ElementTag).
template <typename Tag>
struct Selection {
  std::vector<std::uint8_t> bits;

  Selection() = default;
  explicit Selection(std::size_t size) : bits(size, 0) {}
  explicit Selection(std::vector<std::uint8_t> b) : bits(std::move(b)) {}

  std::size_t size() const noexcept { return bits.size(); }
  bool operator[](std::size_t k) const { return bits[k] != 0; }
  void set(std::size_t k, bool v = true) { bits[k] = v ? 1 : 0; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto b : bits) c += b != 0;
    return c;
  }
  std::string to_string() const {
    std::string s(bits.size(), '0');
    for (std::size_t k = 0; k < bits.size(); ++k)
      if (bits[k]) s[k] = '1';
    return s;
  }
  bool operator==(const Selection&) const = default;
};

using ItemSolution = Selection<ItemTag>;
using ElementSolution = Selection<ElementTag>;

inline constexpr double kInfiniteDensity = std::numeric_limits<double>::infinity();

namespace detail {
inline void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw std::invalid_argument(std::string("dimension mismatch: ") + what + " has length " +
                                std::to_string(got) + ", expected " + std::to_string(want));
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Item encoding

inline ElementSolution covered_elements(const SukpInstance& inst, const ItemSolution& sol) {
  detail::require_length(sol.size(), inst.item_count(), "item solution");
  ElementSolution cover(inst.element_count());
  for (std::size_t i = 0; i < inst.item_count(); ++i)
    if (sol[i])
      for (std::size_t j : inst.elements_of(i)) cover.set(j);
  return cover;
}

inline double total_weight_elements(const SukpInstance& inst, const ElementSolution& sol) {
  detail::require_length(sol.size(), inst.element_count(), "element solution");
  double w = 0.0;
  for (std::size_t j = 0; j < inst.element_count(); ++j)
    if (sol[j]) w += inst.weight(j);
  return w;
}

inline double total_weight_items(const SukpInstance& inst, const ItemSolution& sol) {
  return total_weight_elements(inst, covered_elements(inst, sol));
}

inline double total_profit_items(const SukpInstance& inst, const ItemSolution& sol) {
  detail::require_length(sol.size(), inst.item_count(), "item solution");
  double p = 0.0;
  for (std::size_t i = 0; i < inst.item_count(); ++i)
    if (sol[i]) p += inst.profit(i);
  return p;
}

inline bool is_feasible_items(const SukpInstance& inst, const ItemSolution& sol) {
  return total_weight_items(inst, sol) <= inst.capacity();
}

// ---------------------------------------------------------------------------
// Densities

/// Static per-instance tables: element frequency, unit weight, item and
/// element absolute densities.
struct DensityTable {
  std::vector<std::size_t> fe;
  std::vector<double> uwe;
  std::vector<double> avdi;
  std::vector<double> ave;
};

inline DensityTable build_density_table(const SukpInstance& inst) {
  const std::size_t m = inst.item_count(), n = inst.element_count();
  DensityTable t;
  t.fe.resize(n);
  t.uwe.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    t.fe[j] = inst.items_with(j).size();
    t.uwe[j] = t.fe[j] ? inst.weight(j) / static_cast<double>(t.fe[j]) : inst.weight(j);
  }
  t.avdi.resize(m);
  std::vector<double> item_weight(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double denom = 0.0;
    for (std::size_t j : inst.elements_of(i)) {
      denom += t.uwe[j];
      item_weight[i] += inst.weight(j);
    }
    t.avdi[i] = denom > 0.0 ? inst.profit(i) / denom : kInfiniteDensity;
  }
  t.ave.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i : inst.items_with(j))
      if (item_weight[i] > 0.0) s += inst.profit(i) / item_weight[i] * inst.weight(j);
    t.ave[j] = s;
  }
  return t;
}

/// Relative weight of an item: summed unit weights of its elements not yet
/// loaded.
inline double relative_item_weight(const SukpInstance& inst, const DensityTable& table,
                                   std::size_t item, const ElementSolution& loaded) {
  double s = 0.0;
  for (std::size_t j : inst.elements_of(item))
    if (!loaded[j]) s += table.uwe[j];
  return s;
}

/// Relative value density of an item; +inf once nothing of it remains to load.
inline double rvdi(const SukpInstance& inst, const DensityTable& table, std::size_t item,
                   const ElementSolution& loaded) {
  detail::require_length(loaded.size(), inst.element_count(), "loaded element set");
  const double rwi = relative_item_weight(inst, table, item, loaded);
  return rwi > 0.0 ? inst.profit(item) / rwi : kInfiniteDensity;
}

/// Total weight of an item's elements outside the knapsack.
inline double outside_weight(const SukpInstance& inst, std::size_t item,
                             const ElementSolution& loaded) {
  double s = 0.0;
  for (std::size_t j : inst.elements_of(item))
    if (!loaded[j]) s += inst.weight(j);
  return s;
}

/// Relative value density of an element outside the knapsack. Item terms
/// with zero outside weight are skipped.
inline double rvde(const SukpInstance& inst, const DensityTable& /*table*/, std::size_t element,
                   const ElementSolution& loaded) {
  detail::require_length(loaded.size(), inst.element_count(), "loaded element set");
  double s = 0.0;
  for (std::size_t i : inst.items_with(element)) {
    const double ow = outside_weight(inst, i, loaded);
    if (ow > 0.0) s += inst.profit(i) / ow;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Element encoding

inline bool item_complete(const SukpInstance& inst, std::size_t item, const ElementSolution& sol) {
  for (std::size_t j : inst.elements_of(item))
    if (!sol[j]) return false;
  return true;
}

inline ItemSolution items_from_elements(const SukpInstance& inst, const ElementSolution& sol) {
  detail::require_length(sol.size(), inst.element_count(), "element solution");
  ItemSolution z(inst.item_count());
  for (std::size_t i = 0; i < inst.item_count(); ++i)
    if (item_complete(inst, i, sol)) z.set(i);
  return z;
}

inline double total_profit_elements(const SukpInstance& inst, const ElementSolution& sol) {
  return total_profit_items(inst, items_from_elements(inst, sol));
}

/// Capacity respected and every selected element belongs to a complete item.
inline bool is_feasible_elements(const SukpInstance& inst, const ElementSolution& sol) {
  if (total_weight_elements(inst, sol) > inst.capacity()) return false;
  const ItemSolution z = items_from_elements(inst, sol);
  for (std::size_t j = 0; j < inst.element_count(); ++j) {
    if (!sol[j]) continue;
    bool anchored = false;
    for (std::size_t i : inst.items_with(j))
      if (z[i]) {
        anchored = true;
        break;
      }
    if (!anchored) return false;
  }
  return true;
}

}  // namespace sukp

#endif  // SUKP_EVAL_HPP
