#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "qsteer/bloch_tensor.hpp"
#include "qsteer/measurement_dynamics.hpp"
#include "qsteer/oracles.hpp"
#include "qsteer/validation.hpp"

using namespace qsteer;

namespace {
PairConfig make_pc(const char* kn, const char* km, double dt = 0.2, double j = 1.0) {
  PairConfig pc;
  pc.k_n = parse_steering_config(kn);
  pc.k_m = parse_steering_config(km);
  pc.j_n = pc.j_m = j;
  pc.dt = dt;
  return pc;
}
double coef(const PairOperator& op, int mn, int mm) { return std::abs(op.coef[static_cast<std::size_t>(pair_slot(mn, mm))]); }
}  // namespace

TEST(Configs, Enumeration) {
  const auto full = enumerate_configs(true);
  EXPECT_EQ(full.size(), 12u);
  std::set<std::string> names;
  for (const auto& c : full) {
    names.insert(c.to_string());
    if (c.beta != Axis::z) EXPECT_EQ(c.sign, +1);
  }
  EXPECT_EQ(names.size(), 12u);
  // without beta = y: 3 alpha x (beta = x, +z, -z)
  EXPECT_EQ(enumerate_configs(false).size(), 9u);
}

TEST(Configs, ParseRoundTrip) {
  for (const auto& c : enumerate_configs(true)) EXPECT_EQ(parse_steering_config(c.to_string()), c);
  EXPECT_THROW(parse_steering_config("+x"), std::invalid_argument);
}

TEST(Hamiltonian, Examples) {
  const auto zz = make_pc("+xz", "-yz");
  const auto hp = effective_hamiltonian(zz, +1), hm = effective_hamiltonian(zz, -1);
  EXPECT_NEAR(hp.coef[pair_slot(1, 0)].real(), 1.0, 1e-15);
  EXPECT_NEAR(hp.coef[pair_slot(0, 2)].real(), -1.0, 1e-15);
  EXPECT_EQ(hp.coef, hm.coef);
  const auto xy = make_pc("+zx", "+xy");
  const auto h = effective_hamiltonian(xy, -1);
  EXPECT_NEAR(h.coef[pair_slot(3, 1)].real(), -0.2, 1e-15);
  for (int k = 0; k < 16; ++k)
    if (k != pair_slot(3, 1)) EXPECT_EQ(std::abs(h.coef[static_cast<std::size_t>(k)]), 0.0);
  const auto xx = effective_hamiltonian(make_pc("+xx", "+yx"), 1);
  for (auto c : xx.coef) EXPECT_EQ(std::abs(c), 0.0);
}

TEST(JumpOperator, Examples) {
  for (auto c : jump_operator(make_pc("+xz", "+yz"), 1).coef) EXPECT_EQ(std::abs(c), 0.0);
  for (int eta : {1, -1}) {
    const auto c = jump_operator(make_pc("+xx", "+xx"), eta);
    EXPECT_NEAR(c.coef[pair_slot(1, 0)].imag(), -std::sqrt(0.2) * eta, 1e-15);
    EXPECT_NEAR(c.coef[pair_slot(0, 1)].imag(), -std::sqrt(0.2), 1e-15);
    EXPECT_NEAR(coef(c, 1, 1), 0.0, 1e-15);
  }
}

TEST(JumpOperator, CdcExpectation) {
  const auto zero = StateVector::basis(2, 0);
  const auto pc = make_pc("+xx", "+xx");
  for (int eta : {1, -1}) {
    EXPECT_NEAR(expectation_cdc(zero, pc, eta), 0.4, 1e-14);
    EXPECT_NEAR(expectation_cdc(bloch_from_state(zero), pc, eta), 0.4, 1e-14);
  }
  EXPECT_EQ(expectation_cdc(zero, make_pc("+xz", "+xz"), 1), 0.0);
  // |Q| = 1 with equal rates: eta = -1 cancels
  const auto bell = make_target(BellSpec{}, 2);
  EXPECT_NEAR(expectation_cdc(bell, pc, -1), 0.0, 1e-14);
  EXPECT_NEAR(expectation_cdc(bell, pc, +1), 0.8, 1e-14);
}

TEST(Probabilities, Examples) {
  const auto zero = StateVector::basis(2, 0);
  const auto pz = outcome_probabilities(zero, make_pc("+xz", "-zz"));
  EXPECT_DOUBLE_EQ(pz[0], 0.5);
  EXPECT_DOUBLE_EQ(pz[1], 0.5);
  EXPECT_EQ(pz[2], 0.0);
  EXPECT_EQ(pz[3], 0.0);
  const auto px = outcome_probabilities(zero, make_pc("+xx", "+xx"));
  EXPECT_NEAR(px[0], 0.46, 1e-14);
  EXPECT_NEAR(px[1], 0.46, 1e-14);
  EXPECT_NEAR(px[2], 0.04, 1e-14);
  EXPECT_NEAR(px[3], 0.04, 1e-14);
}

TEST(Probabilities, MeanJumpRate) {
  Rng rng = make_stream(21, 0);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + static_cast<int>(uniform_index(rng, 3));
    const auto psi = random_state(n, rng);
    const auto pc = random_pair_config(n, 0.1, rng, true);
    const auto p = outcome_probabilities(psi, pc);
    EXPECT_NEAR(p[0] + p[1] + p[2] + p[3], 1.0, 1e-13);
    const double rate = (pc.k_n.beta != Axis::z ? pc.gamma_n() : 0.0) + (pc.k_m.beta != Axis::z ? pc.gamma_m() : 0.0);
    EXPECT_NEAR(p[2] + p[3], rate * pc.dt, 1e-13);
  }
}

TEST(SseStep, HamiltonianOnly) {
  const auto zero = StateVector::basis(2, 0);
  const auto pc = make_pc("+xz", "+zz");
  const auto out = sse_step(zero, pc, {0, 1});
  // |00> - i dt (X1 + Z2)|00> = (1 - i dt)|00> - i dt |10>
  const StateVector want(2, {cplx(1, -0.2), 0, cplx(0, -0.2), 0});
  EXPECT_NEAR(state_distance(out, want), 0.0, 1e-14);
}

TEST(SseStep, SingleJump) {
  const auto out = sse_step(StateVector::basis(2, 0), make_pc("+xx", "+yz"), {1, -1});
  EXPECT_NEAR(std::abs(out[0b10]), 1.0, 1e-14);
}

TEST(SampleOutcome, Degenerate) {
  Rng rng = make_stream(1, 0);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_outcome({1, 0, 0, 0}, rng), (MeasurementOutcome{0, 1}));
}

TEST(SampleOutcome, Frequencies) {
  Rng rng = make_stream(2, 0);
  const std::array<double, 4> p{0.46, 0.3, 0.2, 0.04};
  std::array<int, 4> hits{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++hits[static_cast<std::size_t>(outcome_index(sample_outcome(p, rng)))];
  for (int i = 0; i < 4; ++i) {
    const double sigma = std::sqrt(n * p[static_cast<std::size_t>(i)] * (1 - p[static_cast<std::size_t>(i)]));
    EXPECT_LT(std::abs(hits[static_cast<std::size_t>(i)] - n * p[static_cast<std::size_t>(i)]), 3 * sigma) << i;
  }
}

TEST(SampleOutcome, SeedReproducible) {
  Rng a = make_stream(3, 7), b = make_stream(3, 7);
  const std::array<double, 4> p{0.25, 0.25, 0.25, 0.25};
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_outcome(p, a), sample_outcome(p, b));
}

TEST(LindbladAverage, UntouchedAndDecay) {
  Rng rng = make_stream(22, 0);
  const auto b = bloch_from_state(random_state(3, rng));
  auto pc = make_pc("+xx", "+yy");
  pc.n = 1, pc.m = 2;
  EXPECT_EQ(lindblad_avg_dR(b, pc, PauliString::parse("00z")), 0.0);
  // single steered qubit, beta = x, state with only R_z0 nonzero on qubit 1: pure decay
  auto one = make_pc("+xx", "+xz");
  one.n = 1, one.m = 2;
  const auto up = bloch_from_state(StateVector::basis(2, 0));
  const auto zs = PauliString::parse("z0");
  EXPECT_NEAR(lindblad_avg_dR(up, one, zs), -2 * one.dt * one.gamma_n() * up.at(zs), 1e-14);
}

TEST(LindbladAverage, MatchesOutcomeAverage) {
  // exact average of the first-order update over the four outcomes
  Rng rng = make_stream(23, 0);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + static_cast<int>(uniform_index(rng, 2));
    const auto psi = random_state(n, rng);
    const auto pc = random_pair_config(n, 0.05, rng, true);
    const auto b0 = bloch_from_state(psi);
    const auto p = outcome_probabilities(psi, pc);
    std::vector<double> avg(b0.size(), 0.0);
    for (int i = 0; i < 4; ++i) {
      if (p[static_cast<std::size_t>(i)] <= 0) continue;
      const auto o = outcome_from_index(i);
      const auto b1 = bloch_from_state(sse_step(psi, pc, o));
      for (std::uint32_t s = 0; s < b0.size(); ++s) avg[s] += p[static_cast<std::size_t>(i)] * (b1[s] - b0[s]);
    }
    for (std::uint32_t s = 0; s < b0.size(); ++s) EXPECT_NEAR(lindblad_avg_dR(b0, pc, s), avg[s], 10 * 0.05 * 0.05);
  }
}

TEST(LindbladAverage, MonteCarloAverage) {
  Rng rng = make_stream(24, 0);
  const auto psi = random_state(2, rng);
  auto pc = make_pc("+xx", "+zy", 0.05);
  const auto b0 = bloch_from_state(psi);
  const auto probs = outcome_probabilities(psi, pc);
  const auto s = PauliString::parse("zz");
  const int m = 100000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < m; ++i) {
    const auto o = sample_outcome(probs, rng);
    const double d = bloch_from_state(sse_step(psi, pc, o)).at(s) - b0.at(s);
    sum += d;
    sum2 += d * d;
  }
  const double mean = sum / m, se = std::sqrt((sum2 / m - mean * mean) / m);
  EXPECT_LT(std::abs(mean - lindblad_avg_dR(b0, pc, s)), 3 * se + 10 * pc.dt * pc.dt);
}

TEST(WeakLimit, Flag) {
  EXPECT_FALSE(make_pc("+xx", "+xx", 0.2).weak_limit_violated());
  EXPECT_TRUE(make_pc("+xx", "+xx", 0.8).weak_limit_violated());
}
