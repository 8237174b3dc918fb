#ifndef SUKP_INSTANCE_HPP
#define SUKP_INSTANCE_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "sukp/rng.hpp"

namespace sukp {

/// Optional provenance carried in `# key=value` trailer lines.
struct InstanceMeta {
  std::string name;
  std::optional<double> density;
  std::optional<double> capacity_ratio;
  std::optional<std::uint64_t> seed;

  bool operator==(const InstanceMeta&) const = default;
};

/**
 * A set-union knapsack instance: m items over n elements.
 *
 * Item i has profit p_i and is the element set U_i; element j has weight w_j.
 * Choosing a set of items costs the total weight of the union of their
 * elements. The membership relation is stored both row-wise (elements of an
 * item) and column-wise (items containing an element), each sorted ascending.
 *
 * The constructor checks only structural consistency (lengths, index ranges).
 * Semantic invariants (no empty item, no orphan element, capacity bound) are
 * reported by validate_instance() and enforced by parse_instance().
 */
class SukpInstance {
 public:
  SukpInstance() = default;

  SukpInstance(double capacity, std::vector<double> profits, std::vector<double> weights,
               std::vector<std::vector<std::size_t>> item_elements, InstanceMeta meta = {})
      : capacity_(capacity),
        profits_(std::move(profits)),
        weights_(std::move(weights)),
        item_elements_(std::move(item_elements)),
        meta_(std::move(meta)) {
    if (item_elements_.size() != profits_.size())
      throw std::invalid_argument("SukpInstance: membership has " +
                                  std::to_string(item_elements_.size()) + " rows but " +
                                  std::to_string(profits_.size()) + " profits");
    element_items_.assign(weights_.size(), {});
    for (std::size_t i = 0; i < item_elements_.size(); ++i) {
      auto& row = item_elements_[i];
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      for (std::size_t j : row) {
        if (j >= weights_.size())
          throw std::invalid_argument("SukpInstance: item " + std::to_string(i) +
                                      " references element " + std::to_string(j) +
                                      " out of range");
        element_items_[j].push_back(i);
      }
    }
  }

  /// Builds from dense 0/1 rows, e.g. {"101100", "010011"}.
  static SukpInstance from_rows(double capacity, std::vector<double> profits,
                                std::vector<double> weights,
                                const std::vector<std::string>& rows, InstanceMeta meta = {}) {
    std::vector<std::vector<std::size_t>> items(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != weights.size())
        throw std::invalid_argument("SukpInstance::from_rows: row " + std::to_string(i) +
                                    " has wrong length");
      for (std::size_t j = 0; j < rows[i].size(); ++j)
        if (rows[i][j] == '1') items[i].push_back(j);
    }
    return SukpInstance(capacity, std::move(profits), std::move(weights), std::move(items),
                        std::move(meta));
  }

  std::size_t item_count() const noexcept { return profits_.size(); }
  std::size_t element_count() const noexcept { return weights_.size(); }
  double capacity() const noexcept { return capacity_; }
  std::span<const double> profits() const noexcept { return profits_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double profit(std::size_t i) const { return profits_[i]; }
  double weight(std::size_t j) const { return weights_[j]; }
  std::span<const std::size_t> elements_of(std::size_t item) const { return item_elements_[item]; }
  std::span<const std::size_t> items_with(std::size_t element) const {
    return element_items_[element];
  }
  bool contains(std::size_t item, std::size_t element) const {
    const auto& row = item_elements_[item];
    return std::binary_search(row.begin(), row.end(), element);
  }
  double total_weight() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }
  const InstanceMeta& meta() const noexcept { return meta_; }
  void set_meta(InstanceMeta meta) { meta_ = std::move(meta); }

  bool operator==(const SukpInstance& o) const {
    return capacity_ == o.capacity_ && profits_ == o.profits_ && weights_ == o.weights_ &&
           item_elements_ == o.item_elements_ && meta_ == o.meta_;
  }

 private:
  double capacity_ = 0.0;
  std::vector<double> profits_;
  std::vector<double> weights_;
  std::vector<std::vector<std::size_t>> item_elements_;
  std::vector<std::vector<std::size_t>> element_items_;
  InstanceMeta meta_;
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationCode {
  kEmptyItem,
  kOrphanElement,
  kCapacityExceedsTotal,
  kNegativeCapacity,
  kNegativeProfit,
  kNegativeWeight,
  kNonFinite,
};

inline std::string_view to_string(ViolationCode c) {
  switch (c) {
    case ViolationCode::kEmptyItem: return "empty-item";
    case ViolationCode::kOrphanElement: return "orphan-element";
    case ViolationCode::kCapacityExceedsTotal: return "capacity-exceeds-total";
    case ViolationCode::kNegativeCapacity: return "negative-capacity";
    case ViolationCode::kNegativeProfit: return "negative-profit";
    case ViolationCode::kNegativeWeight: return "negative-weight";
    case ViolationCode::kNonFinite: return "non-finite";
  }
  return "unknown";
}

struct Violation {
  ViolationCode code;
  std::optional<std::size_t> index;  // item or element index, when applicable

  bool operator==(const Violation&) const = default;
};

inline std::string describe(const Violation& v) {
  std::string s(to_string(v.code));
  if (v.index) s += "(" + std::to_string(*v.index) + ")";
  return s;
}

inline std::vector<Violation> validate_instance(const SukpInstance& inst) {
  std::vector<Violation> out;
  if (!std::isfinite(inst.capacity())) out.push_back({ViolationCode::kNonFinite, std::nullopt});
  if (inst.capacity() < 0) out.push_back({ViolationCode::kNegativeCapacity, std::nullopt});
  for (std::size_t i = 0; i < inst.item_count(); ++i) {
    if (!std::isfinite(inst.profit(i))) out.push_back({ViolationCode::kNonFinite, i});
    else if (inst.profit(i) < 0) out.push_back({ViolationCode::kNegativeProfit, i});
    if (inst.elements_of(i).empty()) out.push_back({ViolationCode::kEmptyItem, i});
  }
  for (std::size_t j = 0; j < inst.element_count(); ++j) {
    if (!std::isfinite(inst.weight(j))) out.push_back({ViolationCode::kNonFinite, j});
    else if (inst.weight(j) < 0) out.push_back({ViolationCode::kNegativeWeight, j});
    if (inst.items_with(j).empty()) out.push_back({ViolationCode::kOrphanElement, j});
  }
  if (inst.capacity() > inst.total_weight())
    out.push_back({ViolationCode::kCapacityExceedsTotal, std::nullopt});
  return out;
}

// ---------------------------------------------------------------------------
// Canonical text format

namespace detail {

/// Shortest representation that reads back to the same double.
inline std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, end);
}

inline bool parse_number(std::string_view tok, double& out) {
  if (tok.empty()) return false;
  if (tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

template <typename Int>
bool parse_integer(std::string_view tok, Int& out) {
  if (tok.empty()) return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

}  // namespace detail

/// Thrown by parse_instance. `line()` is 1-based; 0 means "whole document".
class InstanceFormatError : public std::runtime_error {
 public:
  InstanceFormatError(std::size_t line, const std::string& reason)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + reason : reason),
        line_(line),
        reason_(reason) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

inline constexpr std::string_view kFormatTag = "SUKP1";

inline std::string serialize_instance(const SukpInstance& inst) {
  const std::size_t m = inst.item_count(), n = inst.element_count();
  std::string out;
  out.reserve(32 + m * (n + 8) + n * 4);
  out += kFormatTag;
  out += '\n';
  out += std::to_string(m) + ' ' + std::to_string(n) + '\n';
  out += detail::format_number(inst.capacity()) + '\n';
  for (std::size_t i = 0; i < m; ++i) {
    if (i) out += ' ';
    out += detail::format_number(inst.profit(i));
  }
  out += '\n';
  for (std::size_t j = 0; j < n; ++j) {
    if (j) out += ' ';
    out += detail::format_number(inst.weight(j));
  }
  out += '\n';
  std::string row;
  for (std::size_t i = 0; i < m; ++i) {
    row.assign(n, '0');
    for (std::size_t j : inst.elements_of(i)) row[j] = '1';
    out += row;
    out += '\n';
  }
  const auto& meta = inst.meta();
  if (!meta.name.empty()) out += "# name=" + meta.name + '\n';
  if (meta.density) out += "# density=" + detail::format_number(*meta.density) + '\n';
  if (meta.capacity_ratio)
    out += "# capacity_ratio=" + detail::format_number(*meta.capacity_ratio) + '\n';
  if (meta.seed) out += "# seed=" + std::to_string(*meta.seed) + '\n';
  return out;
}

inline SukpInstance parse_instance(std::string_view text) {
  using detail::parse_integer;
  using detail::parse_number;
  const auto lines = detail::split_lines(text);
  auto need = [&](std::size_t idx, const char* what) -> std::string_view {
    if (idx >= lines.size())
      throw InstanceFormatError(idx + 1, std::string("unexpected end of input, expected ") + what);
    return lines[idx];
  };

  if (need(0, "format tag") != kFormatTag)
    throw InstanceFormatError(1, "malformed header: expected '" + std::string(kFormatTag) + "'");

  auto dims = detail::split_ws(need(1, "dimensions"));
  std::size_t m = 0, n = 0;
  if (dims.size() != 2 || !parse_integer(dims[0], m) || !parse_integer(dims[1], n))
    throw InstanceFormatError(2, "malformed header: expected 'm n'");
  if (m == 0 || n == 0) throw InstanceFormatError(2, "malformed header: m and n must be positive");

  auto cap_tok = detail::split_ws(need(2, "capacity"));
  double capacity = 0;
  if (cap_tok.size() != 1 || !parse_number(cap_tok[0], capacity))
    throw InstanceFormatError(3, "malformed capacity");
  if (!std::isfinite(capacity) || capacity < 0)
    throw InstanceFormatError(3, "capacity must be finite and nonnegative");

  auto read_values = [&](std::size_t idx, std::size_t expected, const char* what) {
    auto toks = detail::split_ws(need(idx, what));
    if (toks.size() != expected)
      throw InstanceFormatError(idx + 1, std::string("dimension mismatch: expected ") +
                                             std::to_string(expected) + " " + what + ", got " +
                                             std::to_string(toks.size()));
    std::vector<double> vals(expected);
    for (std::size_t k = 0; k < expected; ++k) {
      if (!parse_number(toks[k], vals[k]))
        throw InstanceFormatError(idx + 1, std::string("malformed ") + what + " value '" +
                                               std::string(toks[k]) + "'");
      if (!std::isfinite(vals[k]) || vals[k] < 0)
        throw InstanceFormatError(idx + 1, std::string(what) + " must be finite and nonnegative");
    }
    return vals;
  };
  auto profits = read_values(3, m, "profits");
  auto weights = read_values(4, n, "weights");

  std::vector<std::vector<std::size_t>> items(m);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t idx = 5 + i;
    std::string_view row = need(idx, "membership row");
    if (row.size() != n)
      throw InstanceFormatError(idx + 1, "membership row has length " + std::to_string(row.size()) +
                                             ", expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] == '1') {
        items[i].push_back(j);
        seen[j] = true;
      } else if (row[j] != '0') {
        throw InstanceFormatError(idx + 1, "membership row contains '" + std::string(1, row[j]) +
                                               "', expected 0 or 1");
      }
    }
    if (items[i].empty())
      throw InstanceFormatError(idx + 1, "empty item " + std::to_string(i) + ": row has no elements");
  }
  for (std::size_t j = 0; j < n; ++j)
    if (!seen[j]) throw InstanceFormatError(0, "orphan element " + std::to_string(j) + ": in no item");

  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (capacity > total) throw InstanceFormatError(3, "capacity exceeds total element weight");

  InstanceMeta meta;
  for (std::size_t idx = 5 + m; idx < lines.size(); ++idx) {
    std::string_view line = lines[idx];
    if (line.empty()) continue;
    if (line.size() < 2 || line[0] != '#' || line[1] != ' ')
      throw InstanceFormatError(idx + 1, "unexpected content after membership rows");
    line.remove_prefix(2);
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw InstanceFormatError(idx + 1, "metadata line must be '# key=value'");
    std::string_view key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "name") {
      meta.name = std::string(value);
    } else if (key == "density" || key == "capacity_ratio") {
      double v = 0;
      if (!parse_number(value, v)) throw InstanceFormatError(idx + 1, "malformed " + std::string(key));
      (key == "density" ? meta.density : meta.capacity_ratio) = v;
    } else if (key == "seed") {
      std::uint64_t s = 0;
      if (!parse_integer(value, s)) throw InstanceFormatError(idx + 1, "malformed seed");
      meta.seed = s;
    } else {
      throw InstanceFormatError(idx + 1, "unknown metadata key '" + std::string(key) + "'");
    }
  }
  return SukpInstance(capacity, std::move(profits), std::move(weights), std::move(items),
                      std::move(meta));
}

// ---------------------------------------------------------------------------
// Generator

/// sukp{m}_{n}_{a}_{b} with a, b printed to two decimals.
inline std::string instance_name(std::size_t m, std::size_t n, double density, double ratio) {
  auto two = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  return "sukp" + std::to_string(m) + "_" + std::to_string(n) + "_" + two(density) + "_" + two(ratio);
}

/**
 * Random instance in the style of the standard SUKP benchmark families.
 *
 * Profits are integers in [1, 500], weights integers in [1, 100]. A random
 * permutation matching places max(m, n) entries so every row and column is
 * nonempty; the remaining cells are filled by Bernoulli draws whose rate makes
 * the expected number of ones equal round(density * m * n). Capacity is
 * round-half-up(capacity_ratio * total weight).
 */
inline SukpInstance generate_instance(std::size_t m, std::size_t n, double density,
                                      double capacity_ratio, std::uint64_t seed) {
  if (m == 0 || n == 0) throw std::invalid_argument("generate_instance: m and n must be positive");
  if (!(density > 0.0 && density <= 1.0))
    throw std::invalid_argument("generate_instance: density must be in (0, 1]");
  if (!(capacity_ratio > 0.0 && capacity_ratio <= 1.0))
    throw std::invalid_argument("generate_instance: capacity ratio must be in (0, 1]");
  const double cells = static_cast<double>(m) * static_cast<double>(n);
  const double target = std::floor(density * cells + 0.5);
  const std::size_t base = std::max(m, n);
  if (target < static_cast<double>(base))
    throw std::invalid_argument("generate_instance: density too low, need at least " +
                                std::to_string(base) + " membership entries");

  Rng rng(seed);
  std::vector<double> profits(m), weights(n);
  for (auto& p : profits) p = static_cast<double>(rng.between(1, 500));
  for (auto& w : weights) w = static_cast<double>(rng.between(1, 100));

  std::vector<std::size_t> row_perm(m), col_perm(n);
  std::iota(row_perm.begin(), row_perm.end(), std::size_t{0});
  std::iota(col_perm.begin(), col_perm.end(), std::size_t{0});
  rng.shuffle(row_perm.begin(), row_perm.end());
  rng.shuffle(col_perm.begin(), col_perm.end());

  std::vector<std::vector<char>> cell(m, std::vector<char>(n, 0));
  for (std::size_t t = 0; t < base; ++t) cell[row_perm[t % m]][col_perm[t % n]] = 1;

  const double free_cells = cells - static_cast<double>(base);
  const double rate = free_cells > 0 ? std::clamp((target - static_cast<double>(base)) / free_cells, 0.0, 1.0)
                                     : 0.0;
  std::vector<std::vector<std::size_t>> items(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!cell[i][j] && rng.bernoulli(rate)) cell[i][j] = 1;
      if (cell[i][j]) items[i].push_back(j);
    }

  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double capacity = std::floor(capacity_ratio * total + 0.5);

  InstanceMeta meta{instance_name(m, n, density, capacity_ratio), density, capacity_ratio, seed};
  return SukpInstance(std::min(capacity, total), std::move(profits), std::move(weights),
                      std::move(items), std::move(meta));
}

}  // namespace sukp

#endif  // SUKP_INSTANCE_HPP
