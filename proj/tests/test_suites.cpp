#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>

#include "hhbv/errors.hpp"
#include "hhbv/suites.hpp"

using namespace hhbv;

TEST(ParallelFor, VisitsEveryIndexOnce) {
  for (unsigned jobs : {1u, 3u, 8u}) {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(hits.size(), jobs, [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  EXPECT_NO_THROW(parallel_for(0, 4, [](std::size_t) { FAIL(); }));
}

TEST(ParallelFor, RethrowsFirstError) {
  EXPECT_THROW(parallel_for(10, 2, [](std::size_t i) { if (i == 3) throw std::runtime_error("boom"); }), std::runtime_error);
}

TEST(Suites, CatalogCoversElevenCriteria) {
  const auto& catalog = suite_catalog();
  ASSERT_EQ(catalog.size(), 11u);
  for (std::size_t i = 0; i < catalog.size(); ++i) EXPECT_EQ(catalog[i].criterion, static_cast<int>(i) + 1);
  EXPECT_THROW(run_suite("nope", {}), DomainError);
}

TEST(Suites, BvkzPassesWithWorkers) {
  SuiteOptions o;
  o.jobs = 3;
  const auto r = run_suite("bvkz", o);
  EXPECT_TRUE(r.passed) << (r.failure_samples.empty() ? "" : r.failure_samples.front());
  EXPECT_EQ(r.cases, 70u);
}

TEST(Suites, GroupSelectionRestrictsOrSkips) {
  SuiteOptions o;
  o.group = GroupDescriptor::cyclic(4);
  const auto module = run_suite("cyclic-module", o);
  EXPECT_TRUE(module.passed);
  EXPECT_EQ(module.cases, 1u);
  EXPECT_TRUE(run_suite("bvkz", o).skipped);
  o.ring = CoeffRingTag::integers_mod(2);
  const auto charp = run_suite("charp-bv", o);
  EXPECT_TRUE(charp.passed) << (charp.failure_samples.empty() ? "" : charp.failure_samples.front());
  EXPECT_GT(charp.cases, 0u);
}
