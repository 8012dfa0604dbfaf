#include <gtest/gtest.h>

#include <cmath>

#include "qsteer/bloch_tensor.hpp"
#include "qsteer/measurement_dynamics.hpp"
#include "qsteer/validation.hpp"

using namespace qsteer;

TEST(Bloch, ZeroState) {
  const auto b = bloch_from_state(StateVector::basis(3, 0));
  for (std::uint32_t s = 0; s < b.size(); ++s) {
    const auto str = PauliString::from_index(3, s);
    bool diag = true;
    for (int q = 1; q <= 3; ++q) diag = diag && (str.mu(q) == 0 || str.mu(q) == 3);
    EXPECT_EQ(b[s], diag ? 1.0 : 0.0) << str.to_string();
  }
}

TEST(Bloch, BellCorrelations) {
  const auto b = bloch_from_state(make_target(BellSpec{}, 2));
  EXPECT_NEAR(b.at(PauliString::parse("xx")), 1.0, 1e-15);
  EXPECT_NEAR(b.at(PauliString::parse("yy")), -1.0, 1e-15);
  EXPECT_NEAR(b.at(PauliString::parse("zz")), 1.0, 1e-15);
  for (const char* s : {"x0", "y0", "z0", "0x", "0y", "0z"}) EXPECT_NEAR(b.at(PauliString::parse(s)), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(b[0], 1.0);
}

TEST(Bloch, PuritySum) {
  Rng rng = make_stream(11, 0);
  for (int n = 1; n <= 5; ++n) EXPECT_NEAR(bloch_from_state(random_state(n, rng)).purity_sum(), std::ldexp(1.0, n), 1e-10);
}

TEST(Rdm, GhzSlices) {
  const auto b = bloch_from_state(make_target(GhzSpec{}, 3));
  const auto all = rdm_bloch(b, {1, 2, 3});
  EXPECT_EQ(all.coeffs, b.coeffs());
  const auto r12 = rdm_bloch(b, {1, 2});
  EXPECT_NEAR(r12.coeffs[static_cast<std::size_t>(pair_slot(3, 3))], 1.0, 1e-15);
  const auto r1 = rdm_bloch(b, {1});
  for (int a = 1; a <= 3; ++a) EXPECT_NEAR(r1.coeffs[static_cast<std::size_t>(a)], 0.0, 1e-15);
}

TEST(Rdm, MatrixFromBloch) {
  const auto up = rdm_matrix_from_bloch({{1}, {1, 0, 0, 1}});
  EXPECT_NEAR(up.matrix(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(up.matrix(1, 1)), 0.0, 1e-15);
  const auto mixed = rdm_matrix_from_bloch({{1}, {1, 0, 0, 0}});
  EXPECT_TRUE(mixed.matrix.isApprox(Eigen::MatrixXcd::Identity(2, 2) * 0.5));
  const auto bell = make_target(BellSpec{}, 2);
  const auto rt = rdm_matrix_from_bloch(rdm_bloch(bloch_from_state(bell), {1, 2}));
  Eigen::VectorXcd v(4);
  for (int i = 0; i < 4; ++i) v(i) = bell[static_cast<std::size_t>(i)];
  EXPECT_TRUE(rt.matrix.isApprox(v * v.adjoint(), 1e-14));
}

TEST(Rdm, AgreesWithPartialTrace) {
  Rng rng = make_stream(12, 0);
  const auto psi = random_state(4, rng);
  const auto b = bloch_from_state(psi);
  for (const std::vector<int>& keep : {std::vector<int>{2}, {1, 3}, {2, 4}, {1, 2, 4}}) {
    const auto m = rdm_matrix_from_bloch(rdm_bloch(b, keep)).matrix;
    EXPECT_TRUE(m.isApprox(partial_trace(psi, keep).matrix, 1e-12));
  }
}

TEST(Correlator, Examples) {
  const auto z = bloch_from_state(StateVector::basis(2, 0));
  EXPECT_DOUBLE_EQ(correlator(z, 1, 2, Axis::z, Axis::z), 1.0);
  EXPECT_DOUBLE_EQ(correlator(z, 1, 2, Axis::x, Axis::x), 0.0);
  for (double v : {0.1, 0.4, 0.7}) {
    const auto b = bloch_from_state(make_target(BellTypeSpec{std::sqrt(1 - v * v), 0.0}, 2));
    EXPECT_NEAR(correlator(b, 1, 2, Axis::x, Axis::x), 2 * v * std::sqrt(1 - v * v), 1e-14);
    EXPECT_NEAR(correlator(b, 1, 2, Axis::y, Axis::y), -2 * v * std::sqrt(1 - v * v), 1e-14);
  }
}

TEST(PairTransfer, MatchesRecompute) {
  Rng rng = make_stream(13, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(uniform_index(rng, 4));
    const auto psi = random_state(n, rng);
    const PairConfig pc = random_pair_config(n, 0.2, rng, true);
    const auto o = kOutcomes[uniform_index(rng, 4)];
    if (o.xi == 1 && expectation_cdc(psi, pc, o.eta) < 1e-10) continue;
    const PairOperator k = step_operator(psi, pc, o);
    const auto inc = apply_pair_transfer(bloch_from_state(psi), pc.n, pc.m, transfer_matrix(k));
    const auto full = bloch_from_state(StateVector(n, apply_pair_operator(k, n, psi.amplitudes())));
    for (std::uint32_t s = 0; s < full.size(); ++s) ASSERT_NEAR(inc[s], full[s], 1e-12);
  }
}

TEST(PairBackgrounds, CoverAllStrings) {
  const auto bg = pair_backgrounds(4, 2, 4);
  EXPECT_EQ(bg.size(), 16u);
  for (auto b : bg) {
    EXPECT_EQ(digit_at(b, 4, 2), 0);
    EXPECT_EQ(digit_at(b, 4, 4), 0);
  }
}
