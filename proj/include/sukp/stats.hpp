#ifndef SUKP_STATS_HPP
#define SUKP_STATS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

namespace sukp {

/// Friedman test over an instance x algorithm matrix of higher-is-better
/// values, plus the Nemenyi critical difference at `alpha`.
struct RankTable {
  std::vector<std::string> algorithms;
  std::vector<double> avg_ranks;
  double friedman_statistic = 0.0;
  double p_value = 1.0;
  double alpha = 0.05;
  double nemenyi_cd = 0.0;
  std::size_t instances = 0;
};

struct PairwiseComparison {
  std::string algorithm;
  double difference = 0.0;  // avg rank of `algorithm` minus avg rank of the control
  bool significant = false;
};

struct BasicStats {
  double best = 0.0, worst = 0.0, mean = 0.0, std = 0.0;
};

/// Best/worst/mean and the population standard deviation (divide by R).
inline BasicStats summarize(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("summarize: no values");
  BasicStats s;
  s.best = s.worst = v.front();
  double sum = 0.0;
  for (double x : v) {
    s.best = std::max(s.best, x);
    s.worst = std::min(s.worst, x);
    sum += x;
  }
  s.mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(v.size()));
  // Keep worst <= mean <= best despite rounding in the mean.
  s.mean = std::clamp(s.mean, s.worst, s.best);
  return s;
}

/// Ranks within one row, 1 = largest value; ties share the average rank.
inline std::vector<double> rank_descending(const std::vector<double>& row) {
  const std::size_t k = row.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return row[a] > row[b]; });
  std::vector<double> ranks(k);
  for (std::size_t pos = 0; pos < k;) {
    std::size_t end = pos + 1;
    while (end < k && row[order[end]] == row[order[pos]]) ++end;
    const double shared = (static_cast<double>(pos + 1) + static_cast<double>(end)) / 2.0;
    for (std::size_t q = pos; q < end; ++q) ranks[order[q]] = shared;
    pos = end;
  }
  return ranks;
}

namespace detail {
// Studentized range quantiles q_alpha / sqrt(2) for infinite degrees of
// freedom, k = 2..10 (Demsar 2006).
inline constexpr std::array<double, 9> kNemenyiQ05 = {1.960, 2.343, 2.569, 2.728, 2.850,
                                                      2.949, 3.031, 3.102, 3.164};
inline constexpr std::array<double, 9> kNemenyiQ10 = {1.645, 2.052, 2.291, 2.459, 2.589,
                                                      2.693, 2.780, 2.855, 2.920};
}  // namespace detail

inline double nemenyi_q(std::size_t k, double alpha) {
  if (k < 2 || k > 10)
    throw std::invalid_argument("nemenyi: k=" + std::to_string(k) + " outside tabulated range 2..10");
  if (std::abs(alpha - 0.05) < 1e-12) return detail::kNemenyiQ05[k - 2];
  if (std::abs(alpha - 0.10) < 1e-12) return detail::kNemenyiQ10[k - 2];
  throw std::invalid_argument("nemenyi: unsupported alpha (use 0.05 or 0.10)");
}

/// q_alpha(k) * sqrt(k (k + 1) / (6 N)).
inline double nemenyi_cd(std::size_t k, std::size_t n_instances, double alpha) {
  if (n_instances == 0) throw std::invalid_argument("nemenyi: need at least one instance");
  const double kd = static_cast<double>(k);
  return nemenyi_q(k, alpha) * std::sqrt(kd * (kd + 1.0) / (6.0 * static_cast<double>(n_instances)));
}

/// Rows are instances, columns algorithms. The p-value uses the chi-square
/// approximation with k - 1 degrees of freedom. The critical difference is
/// left at 0 when k falls outside the Nemenyi table.
inline RankTable friedman_ranks(const std::vector<std::vector<double>>& means,
                                std::vector<std::string> names = {}, double alpha = 0.05) {
  const std::size_t n = means.size();
  if (n < 2) throw std::invalid_argument("friedman: need at least 2 instances");
  const std::size_t k = means.front().size();
  if (k < 2) throw std::invalid_argument("friedman: need at least 2 algorithms");
  for (std::size_t r = 0; r < n; ++r) {
    if (means[r].size() != k)
      throw std::invalid_argument("friedman: row " + std::to_string(r) + " has " +
                                  std::to_string(means[r].size()) + " values, expected " +
                                  std::to_string(k));
    for (double v : means[r])
      if (!std::isfinite(v))
        throw std::invalid_argument("friedman: row " + std::to_string(r) + " has a non-finite value");
  }
  if (names.empty())
    for (std::size_t a = 0; a < k; ++a) names.push_back("alg" + std::to_string(a + 1));
  if (names.size() != k) throw std::invalid_argument("friedman: name count does not match columns");

  RankTable t;
  t.algorithms = std::move(names);
  t.instances = n;
  t.alpha = alpha;
  t.avg_ranks.assign(k, 0.0);
  for (const auto& row : means) {
    const auto r = rank_descending(row);
    for (std::size_t a = 0; a < k; ++a) t.avg_ranks[a] += r[a];
  }
  for (auto& r : t.avg_ranks) r /= static_cast<double>(n);

  const double kd = static_cast<double>(k), nd = static_cast<double>(n);
  double sum_sq = 0.0;
  for (double r : t.avg_ranks) sum_sq += r * r;
  t.friedman_statistic =
      12.0 * nd / (kd * (kd + 1.0)) * (sum_sq - kd * (kd + 1.0) * (kd + 1.0) / 4.0);
  t.friedman_statistic = std::max(t.friedman_statistic, 0.0);
  t.p_value = boost::math::gamma_q((kd - 1.0) / 2.0, t.friedman_statistic / 2.0);
  if (k <= 10) t.nemenyi_cd = nemenyi_cd(k, n, alpha);
  return t;
}

/// Average-rank differences of every other algorithm against `control`,
/// flagged significant when the difference exceeds the critical difference.
inline std::vector<PairwiseComparison> compare_against(const RankTable& t, std::size_t control) {
  if (control >= t.algorithms.size()) throw std::out_of_range("compare_against: bad control index");
  std::vector<PairwiseComparison> out;
  for (std::size_t a = 0; a < t.algorithms.size(); ++a) {
    if (a == control) continue;
    const double diff = t.avg_ranks[a] - t.avg_ranks[control];
    out.push_back({t.algorithms[a], diff, t.nemenyi_cd > 0.0 && std::abs(diff) > t.nemenyi_cd});
  }
  return out;
}

/// Index of the lowest (best) average rank.
inline std::size_t best_ranked(const RankTable& t) {
  std::size_t best = 0;
  for (std::size_t a = 1; a < t.avg_ranks.size(); ++a)
    if (t.avg_ranks[a] < t.avg_ranks[best]) best = a;
  return best;
}

}  // namespace sukp

#endif  // SUKP_STATS_HPP
