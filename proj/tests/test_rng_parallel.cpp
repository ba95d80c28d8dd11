#include <gtest/gtest.h>

#include <atomic>
#include <set>
#include <stdexcept>
#include <vector>

#include "ulln/parallel.hpp"
#include "ulln/rng.hpp"

namespace ulln {
namespace {

TEST(CounterRng, SameKeySameStream) {
  CounterRng a(17);
  CounterRng b(17);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(CounterRng, CounterAddressesTheStream) {
  CounterRng a(5);
  for (int i = 0; i < 10; ++i) a();
  CounterRng b(5, 10);
  EXPECT_EQ(a(), b());
}

TEST(CounterRng, UniformStaysInOpenInterval) {
  CounterRng rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(CounterRng, NormalMoments) {
  CounterRng rng(2);
  const int n = 400000;
  double m1 = 0.0, m2 = 0.0, m4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    m1 += z;
    m2 += z * z;
    m4 += z * z * z * z;
  }
  m1 /= n;
  m2 /= n;
  m4 /= n;
  // Standard errors: 1/sqrt(n), sqrt(2/n), sqrt(96/n).
  EXPECT_NEAR(m1, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(m2, 1.0, 4.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(m4, 3.0, 4.0 * std::sqrt(96.0 / n));
}

TEST(DeriveSeed, DistinctIndicesAndTags) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(9, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(derive_seed(9, "train"), derive_seed(9, "test"));
  EXPECT_NE(derive_seed(9, std::uint64_t{0}), derive_seed(10, std::uint64_t{0}));
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelFor, RethrowsBodyException) {
  EXPECT_THROW(parallel_for(50, [](std::size_t i) {
                 if (i == 31) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(ParallelFor, WorkerCountOverride) {
  set_worker_count(3);
  EXPECT_EQ(worker_count(), 3u);
  set_worker_count(0);
  EXPECT_GE(worker_count(), 1u);
}

TEST(ParallelFor, ZeroCountIsNoOp) {
  bool called = false;
  parallel_for(0, [&](std::size_t) { called = true; });
  EXPECT_FALSE(called);
}

}  // namespace
}  // namespace ulln
