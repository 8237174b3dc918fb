#include <gtest/gtest.h>

#include <random>

#include "sukp/oracle.hpp"
#include "sukp/repair.hpp"
#include "support/naive.hpp"
#include "support/random_instances.hpp"

namespace {

using sukp::ItemSolution;
using sukp::SukpInstance;

// Four items over six elements, frozen after the first verified run.
SukpInstance four_by_six() {
  return SukpInstance::from_rows(26, {30, 25, 28, 20}, {6, 4, 7, 3, 5, 8},
                                 {"110100", "011010", "000111", "101001"});
}

TEST(BruteForce, FourBySixFixture) {
  const auto r = sukp::exact_bruteforce(four_by_six());
  EXPECT_EQ(r.optimum, 58);
  EXPECT_EQ(r.witness.to_string(), "1010");
  EXPECT_EQ(r.explored, 16u);
}

TEST(BranchBound, FourBySixFixture) {
  const auto r = sukp::exact_branch_bound(four_by_six());
  EXPECT_EQ(r.optimum, 58);
  EXPECT_EQ(r.witness.to_string(), "1010");
}

TEST(BruteForce, SingleItem) {
  const auto inst = SukpInstance::from_rows(3, {5}, {3}, {"1"});
  EXPECT_EQ(sukp::exact_bruteforce(inst).optimum, 5);
  EXPECT_EQ(sukp::exact_branch_bound(inst).optimum, 5);
}

TEST(BruteForce, ZeroCapacity) {
  const auto inst = SukpInstance::from_rows(0, {5, 7}, {3, 2}, {"10", "01"});
  for (const auto& r : {sukp::exact_bruteforce(inst), sukp::exact_branch_bound(inst)}) {
    EXPECT_EQ(r.optimum, 0);
    EXPECT_EQ(r.witness.count(), 0u);
  }
}

TEST(BruteForce, TiesGoToLexicographicallySmallest) {
  const auto inst = SukpInstance::from_rows(3, {5, 5}, {3, 3}, {"10", "01"});
  EXPECT_EQ(sukp::exact_bruteforce(inst).witness.to_string(), "01");
  EXPECT_EQ(sukp::exact_branch_bound(inst).witness.to_string(), "01");
}

TEST(BranchBound, EverythingFits) {
  const auto inst = sukp::generate_instance(20, 20, 0.2, 1.0, 4);
  double total = 0;
  for (double p : inst.profits()) total += p;
  EXPECT_EQ(sukp::exact_branch_bound(inst).optimum, total);
}

TEST(Oracle, RefusesLargeInstances) {
  const auto thirty = sukp::generate_instance(30, 10, 0.3, 0.5, 1);
  EXPECT_THROW(sukp::exact_bruteforce(thirty), sukp::InstanceTooLarge);
  EXPECT_NO_THROW(sukp::exact_branch_bound(thirty));
  EXPECT_THROW(sukp::exact_branch_bound(sukp::generate_instance(41, 10, 0.3, 0.5, 1)),
               sukp::InstanceTooLarge);
}

TEST(Oracle, CrossAgreementAndNaive) {
  std::mt19937_64 gen(31);
  for (int t = 0; t < 200; ++t) {
    const auto inst = testing_support::random_instance(gen, 14, 14);
    const auto bf = sukp::exact_bruteforce(inst);
    const auto bb = sukp::exact_branch_bound(inst);
    ASSERT_EQ(bf.optimum, bb.optimum) << inst.meta().name;
    ASSERT_EQ(bf.witness, bb.witness) << inst.meta().name;
    ASSERT_EQ(bf.optimum, naive::optimum(naive::Dense(inst)));
    ASSERT_TRUE(sukp::verify_solution(inst, bf.witness, bf.optimum));
    ASSERT_LE(bb.explored, 2 * (std::uint64_t{1} << inst.item_count()));
  }
}

TEST(Oracle, HeuristicsNeverExceedOptimum) {
  std::mt19937_64 gen(32);
  for (int t = 0; t < 100; ++t) {
    const auto inst = testing_support::random_instance(gen, 12, 12);
    const auto table = sukp::build_density_table(inst);
    const double opt = sukp::exact_bruteforce(inst).optimum;
    for (int c = 0; c < 20; ++c) {
      ASSERT_LE(sukp::isro(inst, table, ItemSolution(naive::random_bits(inst.item_count(), gen))).objective, opt);
      ASSERT_LE(sukp::esro(inst, table, sukp::ElementSolution(naive::random_bits(inst.element_count(), gen)))
                    .objective,
                opt);
    }
  }
}

TEST(VerifySolution, Rejections) {
  const auto inst = four_by_six();
  ItemSolution all(4);
  for (std::size_t i = 0; i < 4; ++i) all.set(i);
  EXPECT_FALSE(sukp::verify_solution(inst, all, 103));  // weight 33 > 26
  ItemSolution good(4);
  good.set(0);
  good.set(2);
  EXPECT_TRUE(sukp::verify_solution(inst, good, 58));
  EXPECT_FALSE(sukp::verify_solution(inst, good, 57));
  EXPECT_FALSE(sukp::verify_solution(inst, ItemSolution(3), 0));
}

}  // namespace
