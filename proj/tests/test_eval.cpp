#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sukp/eval.hpp"
#include "support/naive.hpp"
#include "support/random_instances.hpp"

namespace {

using sukp::ElementSolution;
using sukp::ItemSolution;
using sukp::SukpInstance;

// U1 = {e1, e3, e4}, U2 = {e1, e4, e5}; U3 = {e2} keeps e2 from being orphaned.
SukpInstance motif() {
  return SukpInstance::from_rows(20, {12, 9, 4}, {4, 3, 6, 2, 5}, {"10110", "10011", "01000"});
}

ItemSolution items(const std::string& s) {
  ItemSolution y(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) y.set(i, s[i] == '1');
  return y;
}

ElementSolution elements(const std::string& s) {
  ElementSolution b(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) b.set(j, s[j] == '1');
  return b;
}

TEST(CoveredElements, Motif) {
  const auto inst = motif();
  EXPECT_EQ(sukp::covered_elements(inst, items("000")).count(), 0u);
  EXPECT_EQ(sukp::covered_elements(inst, items("110")).to_string(), "10111");
  EXPECT_EQ(sukp::covered_elements(inst, items("111")).to_string(), "11111");
}

TEST(TotalWeight, SingleItemAndUnion) {
  const auto inst = motif();
  EXPECT_EQ(sukp::total_weight_items(inst, items("000")), 0);
  EXPECT_EQ(sukp::total_weight_items(inst, items("100")), 4 + 6 + 2);
  EXPECT_EQ(sukp::total_weight_items(inst, items("110")), 4 + 6 + 2 + 5);
  EXPECT_EQ(sukp::total_profit_items(inst, items("110")), 21);
  EXPECT_EQ(sukp::total_profit_items(inst, items("010")), 9);
}

TEST(TotalWeight, MatchesNaiveUnionExhaustively) {
  std::mt19937_64 gen(1);
  for (int t = 0; t < 40; ++t) {
    const auto inst = testing_support::random_instance(gen, 10, 15);
    const naive::Dense d(inst);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inst.item_count()); ++mask) {
      ItemSolution y(inst.item_count());
      naive::Bits b(inst.item_count());
      for (std::size_t i = 0; i < inst.item_count(); ++i) {
        y.set(i, (mask >> i) & 1);
        b[i] = (mask >> i) & 1;
      }
      ASSERT_EQ(sukp::total_weight_items(inst, y), naive::weight_of(d, naive::union_of(d, b)));
      ASSERT_EQ(sukp::total_profit_items(inst, y), naive::profit_of(d, b));
    }
  }
}

TEST(Feasibility, ItemMode) {
  const auto inst = motif();
  EXPECT_TRUE(sukp::is_feasible_items(inst, items("000")));
  EXPECT_TRUE(sukp::is_feasible_items(inst, items("111")));
}

TEST(Feasibility, BoundaryIsInclusive) {
  const auto inst = SukpInstance::from_rows(17, {12, 9, 4}, {4, 3, 6, 2, 5}, {"10110", "10011", "01000"});
  EXPECT_TRUE(sukp::is_feasible_items(inst, items("110")));  // weight 17 = C
  const auto tight = SukpInstance::from_rows(16, {12, 9, 4}, {4, 3, 6, 2, 5}, {"10110", "10011", "01000"});
  EXPECT_FALSE(sukp::is_feasible_items(tight, items("110")));
}

TEST(Feasibility, AllOnesAboveCapacity) {
  const auto inst = SukpInstance::from_rows(19, {12, 9, 4}, {4, 3, 6, 2, 5}, {"10110", "10011", "01000"});
  EXPECT_FALSE(sukp::is_feasible_items(inst, items("111")));
}

TEST(DensityTable, SharedSingleElement) {
  const auto inst = SukpInstance::from_rows(4, {6, 10}, {4}, {"1", "1"});
  const auto t = sukp::build_density_table(inst);
  EXPECT_EQ(t.fe[0], 2u);
  EXPECT_EQ(t.uwe[0], 2.0);
  EXPECT_EQ(t.avdi[0], 6.0 / 2.0);
  EXPECT_EQ(t.avdi[1], 10.0 / 2.0);
}

TEST(DensityTable, ElementInOneItemKeepsWeight) {
  const auto inst = motif();
  const auto t = sukp::build_density_table(inst);
  EXPECT_EQ(t.uwe[1], 3.0);
  EXPECT_EQ(t.uwe[2], 6.0);
  EXPECT_EQ(t.uwe[0], 2.0);
  EXPECT_EQ(t.avdi[0], 12.0 / (2.0 + 6.0 + 1.0));
}

TEST(DensityTable, AveWithEqualWeights) {
  // One item of k = 4 equally weighted elements.
  const auto inst = SukpInstance::from_rows(3, {20}, {3, 3, 3, 3}, {"1111"});
  const auto t = sukp::build_density_table(inst);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(t.ave[j], 20.0 / 4.0);
}

TEST(Rvdi, EmptyLoadEqualsAvdi) {
  const auto inst = motif();
  const auto t = sukp::build_density_table(inst);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(sukp::rvdi(inst, t, i, elements("00000")), t.avdi[i]);
}

TEST(Rvdi, OnlyOutsideElementsCount) {
  const auto inst = motif();
  const auto t = sukp::build_density_table(inst);
  // e1 and e4 loaded: U2 only pays for e5.
  EXPECT_EQ(sukp::rvdi(inst, t, 1, elements("10010")), 9.0 / t.uwe[4]);
  EXPECT_EQ(sukp::rvdi(inst, t, 1, elements("10011")), sukp::kInfiniteDensity);
}

TEST(Rvdi, MonotoneInLoadedSet) {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 50; ++t) {
    const auto inst = testing_support::random_instance(gen, 12, 12);
    const auto table = sukp::build_density_table(inst);
    ElementSolution loaded(inst.element_count());
    std::vector<double> prev(inst.item_count());
    for (std::size_t i = 0; i < inst.item_count(); ++i) prev[i] = sukp::rvdi(inst, table, i, loaded);
    std::vector<std::size_t> order(inst.element_count());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), gen);
    for (std::size_t j : order) {
      loaded.set(j);
      for (std::size_t i = 0; i < inst.item_count(); ++i) {
        const double now = sukp::rvdi(inst, table, i, loaded);
        ASSERT_GE(now, prev[i]);
        prev[i] = now;
      }
    }
  }
}

TEST(Rvde, EmptyLoadReducesToAve) {
  const auto inst = motif();
  const auto t = sukp::build_density_table(inst);
  for (std::size_t j = 0; j < 5; ++j)
    EXPECT_NEAR(sukp::rvde(inst, t, j, elements("00000")) * inst.weight(j), t.ave[j], 1e-12 * t.ave[j]);
}

TEST(Rvde, LastOutsideElement) {
  const auto inst = motif();
  const auto t = sukp::build_density_table(inst);
  // e3 belongs only to U1; with e1 and e4 loaded it carries all of p1 alone.
  EXPECT_EQ(sukp::rvde(inst, t, 2, elements("10010")), 12.0 / 6.0);
}

TEST(Rvde, NoUnloadableItems) {
  const auto inst = motif();
  const auto t = sukp::build_density_table(inst);
  // Every item containing e2 is already complete.
  EXPECT_EQ(sukp::rvde(inst, t, 1, elements("01000")), 0.0);
}

TEST(Densities, MatchNaive) {
  std::mt19937_64 gen(8);
  for (int t = 0; t < 100; ++t) {
    const auto inst = testing_support::random_instance(gen, 20, 20);
    const auto table = sukp::build_density_table(inst);
    const naive::Dense d(inst);
    const auto bits = naive::random_bits(inst.element_count(), gen);
    ElementSolution loaded(bits);
    for (std::size_t i = 0; i < inst.item_count(); ++i) {
      ASSERT_EQ(table.avdi[i], naive::avdi(d, i));
      ASSERT_EQ(sukp::rvdi(inst, table, i, loaded), naive::rvdi(d, i, bits));
    }
    for (std::size_t j = 0; j < inst.element_count(); ++j) {
      ASSERT_NEAR(table.ave[j], naive::ave(d, j), 1e-12 * naive::ave(d, j));
      ASSERT_EQ(sukp::rvde(inst, table, j, loaded), naive::rvde(d, j, bits));
    }
  }
}

TEST(ElementMode, ProfitCountsCompleteItems) {
  const auto inst = motif();
  EXPECT_EQ(sukp::total_profit_elements(inst, elements("00000")), 0);
  EXPECT_EQ(sukp::total_profit_elements(inst, elements("11111")), 25);
  EXPECT_EQ(sukp::total_profit_elements(inst, elements("10110")), 12);
  EXPECT_EQ(sukp::total_profit_elements(inst, elements("10010")), 0);
}

TEST(ElementMode, ProfitMatchesNaive) {
  std::mt19937_64 gen(9);
  for (int t = 0; t < 200; ++t) {
    const auto inst = testing_support::random_instance(gen, 10, 12, 10, 12);
    const naive::Dense d(inst);
    const auto bits = naive::random_bits(inst.element_count(), gen, 0.7);
    const ElementSolution b(bits);
    ASSERT_EQ(sukp::total_profit_elements(inst, b), naive::profit_of(d, naive::complete_items(d, bits)));
    ASSERT_EQ(sukp::total_profit_elements(inst, b),
              sukp::total_profit_items(inst, sukp::items_from_elements(inst, b)));
    ASSERT_EQ(sukp::is_feasible_elements(inst, b), naive::element_feasible(d, bits));
  }
}

TEST(ElementMode, Feasibility) {
  const auto inst = motif();
  EXPECT_TRUE(sukp::is_feasible_elements(inst, elements("00000")));
  EXPECT_TRUE(sukp::is_feasible_elements(inst, elements("10110")));
  EXPECT_FALSE(sukp::is_feasible_elements(inst, elements("10100")));  // dangling
}

TEST(ElementMode, ItemsFromElements) {
  // U3 = {e1} sits inside U1.
  const auto inst = SukpInstance::from_rows(20, {12, 9, 4, 1}, {4, 3, 6, 2, 5},
                                            {"10110", "10011", "01000", "10000"});
  EXPECT_EQ(sukp::items_from_elements(inst, elements("00000")).to_string(), "0000");
  EXPECT_EQ(sukp::items_from_elements(inst, elements("10110")).to_string(), "1001");
  EXPECT_EQ(sukp::items_from_elements(inst, elements("11111")).to_string(), "1111");
}

TEST(Dimensions, MismatchThrows) {
  const auto inst = motif();
  EXPECT_THROW(sukp::total_weight_items(inst, items("11")), std::invalid_argument);
  EXPECT_THROW(sukp::total_profit_elements(inst, elements("11")), std::invalid_argument);
}

}  // namespace
