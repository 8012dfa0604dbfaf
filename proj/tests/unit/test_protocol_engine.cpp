#include <gtest/gtest.h>

#include <set>

#include "qsteer/ensemble.hpp"
#include "qsteer/protocol_engine.hpp"
#include "qsteer/validation.hpp"

using namespace qsteer;

TEST(Schedule, Examples) {
  Rng rng = make_stream(1, 0);
  EXPECT_EQ(schedule_pairs(4, 0, Scheduler::Alternating, rng), (std::vector<QubitPair>{{1, 2}, {3, 4}}));
  EXPECT_EQ(schedule_pairs(4, 1, Scheduler::Alternating, rng), (std::vector<QubitPair>{{2, 3}, {4, 1}}));
  for (int c = 0; c < 5; ++c) EXPECT_EQ(schedule_pairs(2, c, Scheduler::Random, rng), (std::vector<QubitPair>{{1, 2}}));
  std::set<QubitPair> seen;
  for (int c = 0; c < 3; ++c) {
    const auto p = schedule_pairs(3, c, Scheduler::Alternating, rng);
    ASSERT_EQ(p.size(), 1u);
    seen.insert(p[0]);
  }
  EXPECT_EQ(seen, (std::set<QubitPair>{{1, 2}, {2, 3}, {3, 1}}));
}

TEST(Schedule, RandomMatchingsAreDisjointAdjacent) {
  Rng rng = make_stream(2, 0);
  for (int n = 3; n <= 7; ++n)
    for (int c = 0; c < 30; ++c) {
      const auto p = schedule_pairs(n, c, Scheduler::Random, rng);
      EXPECT_EQ(static_cast<int>(p.size()), n / 2);
      std::set<int> used;
      for (auto [a, b] : p) {
        EXPECT_EQ(b, a % n + 1);
        EXPECT_TRUE(used.insert(a).second);
        EXPECT_TRUE(used.insert(b).second);
      }
    }
}

TEST(Params, Validation) {
  ProtocolParams p;
  p.n_qubits = 9;
  EXPECT_THROW(resolve_params(p), std::invalid_argument);
  p = {};
  p.f_star = 1.5;
  EXPECT_THROW(resolve_params(p), std::invalid_argument);
  p = {};
  p.n_qubits = 3;  // Bell target needs N = 2
  EXPECT_THROW(resolve_params(p), std::invalid_argument);
  p = {};
  const auto r = resolve_params(p);
  EXPECT_EQ(r.max_steps, 250);
  EXPECT_EQ(r.couplings, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(r.entropy_subset, std::vector<int>{1});
}

TEST(SelectConfig, EscapeFromProductState) {
  ProtocolParams p;
  p.weights.p = {0.9, 0.1};
  p.steering_set = SteeringSet::NoBetaY;
  const ProtocolContext ctx(p);
  Rng rng = make_stream(3, 0);
  const auto sel = select_config(ctx, bloch_from_state(ctx.initial()), {1, 2}, rng);
  EXPECT_EQ(sel.pc.k_n.beta, Axis::x);
  EXPECT_EQ(sel.pc.k_m.beta, Axis::x);
  EXPECT_FALSE(sel.trapped);
  EXPECT_NEAR(sel.expected_dc, -0.014668775583162177, 2e-3);
}

TEST(SelectConfig, EscapeWithFullSetAvoidsZDetectors) {
  ProtocolParams p;
  p.weights.p = {0.9, 0.1};
  p.steering_set = SteeringSet::Full12;
  const ProtocolContext ctx(p);
  Rng rng = make_stream(3, 0);
  const auto sel = select_config(ctx, bloch_from_state(ctx.initial()), {1, 2}, rng);
  EXPECT_NE(sel.pc.k_n.beta, Axis::z);
  EXPECT_NE(sel.pc.k_m.beta, Axis::z);
  EXPECT_LT(sel.expected_dc, -1e-6);
}

TEST(SelectConfig, ConvergedStateIsTrapped) {
  ProtocolParams p;
  const ProtocolContext ctx(p);
  Rng rng = make_stream(4, 0);
  const auto sel = select_config(ctx, ctx.target_bloch(), {1, 2}, rng);
  EXPECT_TRUE(sel.trapped);
  EXPECT_GE(sel.expected_dc, -1e-12);
}

TEST(SelectConfig, TieBreakDeterministic) {
  ProtocolParams p;
  const ProtocolContext ctx(p);
  Rng a = make_stream(5, 0), b = make_stream(5, 0);
  for (int i = 0; i < 20; ++i) {
    const auto sa = select_config(ctx, ctx.target_bloch(), {1, 2}, a);
    const auto sb = select_config(ctx, ctx.target_bloch(), {1, 2}, b);
    EXPECT_EQ(sa.pc.k_n, sb.pc.k_n);
    EXPECT_EQ(sa.pc.k_m, sb.pc.k_m);
    EXPECT_GT(sa.n_ties, 1);
  }
}

TEST(RunStep, RejectsOverlappingPairs) {
  ProtocolParams p;
  const ProtocolContext ctx(p);
  Rng rng = make_stream(6, 0);
  EXPECT_THROW(run_step(ctx, ctx.initial(), bloch_from_state(ctx.initial()), {{1, 2}, {2, 1}}, rng), std::invalid_argument);
}

TEST(RunStep, BlochStaysConsistentWithState) {
  ProtocolParams p;
  p.n_qubits = 4;
  p.target = WSpec{};
  p.steering_set = SteeringSet::Full12;
  p.audit_bloch = true;  // run_step throws on drift
  const ProtocolContext ctx(p);
  Rng rng = make_stream(7, 0);
  StateVector s = ctx.initial();
  BlochTensor b = bloch_from_state(s);
  for (int c = 0; c < 30; ++c) {
    auto r = run_step(ctx, s, b, schedule_pairs(4, c, Scheduler::Alternating, rng), rng);
    s = r.state;
    b = r.bloch;
    EXPECT_EQ(r.actions.size(), 2u);
  }
}

TEST(Trajectory, InitialEqualsTarget) {
  ProtocolParams p;
  p.initial = BellSpec{};
  const auto r = run_trajectory(p);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.n_steps, 0);
  EXPECT_EQ(r.metrics.size(), 1u);
}

TEST(Trajectory, BellConvergesInTensOfSteps) {
  ProtocolParams p;
  p.weights.p = {0.9, 0.1};
  int total = 0, conv = 0;
  const auto recs = run_ensemble(p, 200, 1);
  for (const auto& r : recs) {
    conv += r.converged;
    total += r.n_steps;
  }
  EXPECT_GT(conv, 190);
  EXPECT_LT(total / 200.0, 60.0);
}

TEST(Trajectory, SeedReproducible) {
  ProtocolParams p;
  p.n_qubits = 3;
  p.target = GhzSpec{};
  p.record_level = RecordLevel::Full;
  p.seed = 99;
  EXPECT_EQ(run_trajectory(p), run_trajectory(p));
}

TEST(Trajectory, MetricsSeries) {
  ProtocolParams p;
  p.seed = 3;
  const auto r = run_trajectory(p);
  ASSERT_EQ(static_cast<int>(r.metrics.size()), r.n_steps + 1);
  EXPECT_NEAR(r.metrics[0].fidelity, 1 / std::sqrt(2.0), 1e-14);
  EXPECT_EQ(r.metrics.back(), r.final_metrics);
  p.series_limit = 2;
  const auto s = run_trajectory(p);
  EXPECT_LE(s.metrics.size(), 3u);
}

TEST(Ensemble, SingleTrajectoryMatchesRunTrajectory) {
  ProtocolParams p;
  p.seed = 12;
  EXPECT_EQ(run_ensemble(p, 1, 1).at(0), run_trajectory(p));
}

TEST(Ensemble, ParallelEqualsSerial) {
  ProtocolParams p;
  p.n_qubits = 3;
  p.target = WSpec{};
  p.steering_set = SteeringSet::Full12;
  p.scheduler = Scheduler::Random;
  p.max_steps = 200;
  p.record_level = RecordLevel::Full;
  const auto serial = run_ensemble_serial(p, 24);
  EXPECT_EQ(run_ensemble(p, 24, 4), serial);
  std::vector<TrajectoryRecord> streamed;
  for_each_trajectory(p, 24, 3, [&](TrajectoryRecord&& r) { streamed.push_back(std::move(r)); }, 5);
  EXPECT_EQ(streamed, serial);
}

TEST(Ensemble, ThreadCountFromEnvironment) {
  setenv("QSTEER_THREADS", "3", 1);
  EXPECT_EQ(default_thread_count(), 3);
  unsetenv("QSTEER_THREADS");
  EXPECT_GE(default_thread_count(), 1);
}
