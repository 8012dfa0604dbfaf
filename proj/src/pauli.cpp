#include "qsteer/pauli.hpp"

#include <array>
#include <bit>
#include <map>
#include <mutex>
#include <stdexcept>

namespace qsteer {

Axis axis_from_index(int mu) {
  if (mu < 1 || mu > 3) throw std::invalid_argument("axis index must be 1, 2 or 3");
  return static_cast<Axis>(mu);
}

char axis_name(Axis a) { return "0xyz"[axis_index(a)]; }

Axis parse_axis(char c) {
  switch (c) {
    case 'x': case 'X': return Axis::x;
    case 'y': case 'Y': return Axis::y;
    case 'z': case 'Z': return Axis::z;
    default: throw std::invalid_argument(std::string("unknown axis '") + c + "'");
  }
}

int levi_civita(int a, int b, int c) {
  if (a == 0 || b == 0 || c == 0 || a == b || b == c || a == c) return 0;
  // even permutations of (1,2,3)
  if ((a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 1)) return 1;
  return -1;
}

PauliProduct pauli_product(int i, int j) {
  if (i == 0) return {1.0, static_cast<std::uint8_t>(j)};
  if (j == 0) return {1.0, static_cast<std::uint8_t>(i)};
  if (i == j) return {1.0, 0};
  const int k = 6 - i - j;
  return {cplx(0.0, levi_civita(i, j, k)), static_cast<std::uint8_t>(k)};
}

cplx i_power(int k) {
  static constexpr std::array<cplx, 4> table{cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  return table[static_cast<std::size_t>(((k % 4) + 4) % 4)];
}

PauliString::PauliString(std::vector<std::uint8_t> mu) : mu_(std::move(mu)) {
  if (mu_.empty()) throw std::invalid_argument("Pauli string must have at least one slot");
  for (auto m : mu_)
    if (m > 3) throw std::invalid_argument("Pauli index must be in 0..3");
}

PauliString PauliString::from_index(int n_qubits, std::uint32_t index) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw std::invalid_argument("bad qubit count");
  if (index >= pow4(n_qubits)) throw std::out_of_range("Pauli index out of range");
  std::vector<std::uint8_t> mu(static_cast<std::size_t>(n_qubits));
  for (int q = 1; q <= n_qubits; ++q) mu[q - 1] = static_cast<std::uint8_t>(digit_at(index, n_qubits, q));
  return PauliString(std::move(mu));
}

PauliString PauliString::parse(const std::string& text) {
  std::vector<std::uint8_t> mu;
  for (char c : text) {
    if (c == '0' || c == 'I' || c == 'i') mu.push_back(0);
    else mu.push_back(static_cast<std::uint8_t>(axis_index(parse_axis(c))));
  }
  return PauliString(std::move(mu));
}

int PauliString::mu(int qubit) const {
  if (qubit < 1 || qubit > n_qubits()) throw std::out_of_range("qubit out of range");
  return mu_[static_cast<std::size_t>(qubit - 1)];
}

std::uint32_t PauliString::index() const {
  std::uint32_t idx = 0;
  for (auto m : mu_) idx = (idx << 2) | m;
  return idx;
}

int PauliString::support_size() const {
  int k = 0;
  for (auto m : mu_) k += (m != 0);
  return k;
}

std::string PauliString::to_string() const {
  std::string s;
  for (auto m : mu_) s.push_back("0xyz"[m]);
  return s;
}

const std::vector<std::uint8_t>& support_table(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw std::invalid_argument("bad qubit count");
  static std::array<std::vector<std::uint8_t>, kMaxQubits + 1> tables;
  static std::once_flag flags[kMaxQubits + 1];
  std::call_once(flags[n_qubits], [n_qubits] {
    auto& t = tables[static_cast<std::size_t>(n_qubits)];
    t.resize(pow4(n_qubits));
    for (std::uint32_t s = 0; s < t.size(); ++s) {
      std::uint8_t k = 0;
      for (int q = 1; q <= n_qubits; ++q) k += digit_at(s, n_qubits, q) != 0;
      t[s] = k;
    }
  });
  return tables[static_cast<std::size_t>(n_qubits)];
}

PauliMasks pauli_masks(std::uint32_t index, int n_qubits) {
  PauliMasks m;
  for (int q = 1; q <= n_qubits; ++q) {
    const int mu = digit_at(index, n_qubits, q);
    const std::uint32_t bit = 1u << (n_qubits - q);
    if (mu == 1 || mu == 2) m.x_mask |= bit;
    if (mu == 2 || mu == 3) m.z_mask |= bit;
    if (mu == 2) ++m.n_y;
  }
  return m;
}

}  // namespace qsteer
