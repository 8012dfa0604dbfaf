#include <gtest/gtest.h>

#include "qsteer/pauli.hpp"

using namespace qsteer;

TEST(Pauli, ProductTable) {
  // xy = iz, yx = -iz, zx = iy
  auto p = pauli_product(1, 2);
  EXPECT_EQ(p.mu, 3);
  EXPECT_EQ(p.phase, cplx(0, 1));
  p = pauli_product(2, 1);
  EXPECT_EQ(p.phase, cplx(0, -1));
  p = pauli_product(3, 1);
  EXPECT_EQ(p.mu, 2);
  EXPECT_EQ(p.phase, cplx(0, 1));
  for (int a = 0; a < 4; ++a) {
    EXPECT_EQ(pauli_product(a, a).mu, 0);
    EXPECT_EQ(pauli_product(a, a).phase, cplx(1, 0));
    EXPECT_EQ(pauli_product(0, a).mu, a);
  }
}

TEST(Pauli, LeviCivita) {
  EXPECT_EQ(levi_civita(1, 2, 3), 1);
  EXPECT_EQ(levi_civita(2, 1, 3), -1);
  EXPECT_EQ(levi_civita(3, 1, 2), 1);
  EXPECT_EQ(levi_civita(1, 1, 3), 0);
}

TEST(Pauli, StringIndexRoundTrip) {
  const auto s = PauliString::parse("xz0y");
  EXPECT_EQ(s.n_qubits(), 4);
  EXPECT_EQ(s.mu(1), 1);
  EXPECT_EQ(s.mu(4), 2);
  EXPECT_EQ(s.index(), (1u << 6) | (3u << 4) | 2u);
  EXPECT_EQ(s.support_size(), 3);
  EXPECT_EQ(PauliString::from_index(4, s.index()).to_string(), "xz0y");
  EXPECT_EQ(digit_at(s.index(), 4, 2), 3);
  EXPECT_EQ(with_digit(s.index(), 4, 3, 1), PauliString::parse("xzxy").index());
}

TEST(Pauli, SupportTableMatchesStrings) {
  const auto& t = support_table(3);
  ASSERT_EQ(t.size(), 64u);
  for (std::uint32_t i = 0; i < 64; ++i) EXPECT_EQ(t[i], PauliString::from_index(3, i).support_size());
}

TEST(Pauli, Masks) {
  const auto m = pauli_masks(PauliString::parse("xyz").index(), 3);
  EXPECT_EQ(m.x_mask, 0b110u);
  EXPECT_EQ(m.z_mask, 0b011u);
  EXPECT_EQ(m.n_y, 1);
}

TEST(Pauli, ParseRejectsGarbage) {
  EXPECT_THROW(PauliString::parse("xq"), std::invalid_argument);
  EXPECT_THROW(parse_axis('w'), std::invalid_argument);
}
