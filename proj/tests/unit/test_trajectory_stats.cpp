#include <gtest/gtest.h>

#include "qsteer/trajectory_stats.hpp"

using namespace qsteer;

TEST(Summary, SingleRecord) {
  const auto s = summarize_steps({7}, 1, 1);
  EXPECT_EQ(s.mode, 7);
  EXPECT_EQ(s.median, 7);
  EXPECT_EQ(s.half_width, 1);
  const auto w = summarize_steps({7}, 1, 5);
  EXPECT_EQ(w.mode, 7);  // bin [5, 9]
  EXPECT_EQ(w.half_width, 5);
}

TEST(Summary, SymmetricDistribution) {
  std::vector<int> v;
  for (int k = 0; k < 9; ++k)
    for (int c = 0; c < 5 - std::abs(k - 4); ++c) v.push_back(10 + k);
  const auto s = summarize_steps(v, v.size(), 1);
  EXPECT_EQ(s.mode, 14);
  EXPECT_EQ(s.median, 14);
  // counts 1 2 3 4 5 4 3 2 1: half maximum 2.5 reached on bins 12..16
  EXPECT_EQ(s.half_width, 5);
}

TEST(Summary, EvenMedianAndTies) {
  const auto s = summarize_steps({3, 3, 8, 8, 1, 20}, 10, 1);
  EXPECT_EQ(s.median, 5.5);
  EXPECT_EQ(s.mode, 3);  // smallest of the tied bins
  EXPECT_EQ(s.converged, 6u);
  EXPECT_DOUBLE_EQ(s.converged_fraction, 0.6);
  // outermost crossing: bins 1..20 qualify with half max 1
  EXPECT_EQ(s.half_width, 20);
}

TEST(Summary, EmptyThrows) { EXPECT_THROW(summarize_steps({}, 4, 1), std::invalid_argument); }

TEST(Histogram, RebinningConservesTotal) {
  std::vector<int> v{0, 1, 2, 24, 25, 26, 49, 50, 200};
  const auto h1 = histogram_from_steps(v, 12, 1), h25 = histogram_from_steps(v, 12, 25);
  std::uint64_t a = 0, b = 0;
  for (auto c : h1.counts) a += c;
  for (auto c : h25.counts) b += c;
  EXPECT_EQ(a, v.size());
  EXPECT_EQ(b, v.size());
  EXPECT_EQ(h25.counts[0], 4u);
  EXPECT_EQ(h25.counts[1], 3u);
  EXPECT_EQ(h25.total, 12u);
}

TEST(Curves, IdenticalRecordsGiveThatRecord) {
  TrajectoryRecord r;
  r.converged = true;
  r.n_steps = 3;
  for (int t = 0; t <= 3; ++t) {
    StepMetrics m;
    m.fidelity = 0.5 + 0.1 * t;
    m.total_cost = 1.0 - 0.2 * t;
    m.entropy = 0.1 * t;
    m.costs[0] = 0.3;
    m.costs[1] = 0.4;
    r.metrics.push_back(m);
  }
  const auto c = averaged_curves({r, r, r}, 2, 5);
  ASSERT_EQ(c.size(), 6u);
  for (int t = 0; t <= 5; ++t) {
    const auto& m = r.metrics[static_cast<std::size_t>(std::min(t, 3))];
    EXPECT_DOUBLE_EQ(c[static_cast<std::size_t>(t)].mean_f2, m.fidelity * m.fidelity);
    EXPECT_NEAR(c[static_cast<std::size_t>(t)].se_f2, 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(c[static_cast<std::size_t>(t)].mean_c, m.total_cost);
    EXPECT_DOUBLE_EQ(c[static_cast<std::size_t>(t)].mean_cr[1], 0.4);
  }
}

TEST(Curves, StandardError) {
  TrajectoryRecord a, b;
  StepMetrics m;
  m.entropy = 1.0;
  a.metrics = {m};
  m.entropy = 3.0;
  b.metrics = {m};
  const auto c = averaged_curves({a, b}, 2, 0);
  EXPECT_DOUBLE_EQ(c[0].mean_s, 2.0);
  EXPECT_NEAR(c[0].se_s, 1.0, 1e-15);  // sd sqrt(2) over sqrt(2)
}
