#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qsteer {

using cplx = std::complex<double>;

// Largest register the dense representations are sized for.
inline constexpr int kMaxQubits = 8;

enum class Axis : std::uint8_t { x = 1, y = 2, z = 3 };

inline constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};

constexpr int axis_index(Axis a) { return static_cast<int>(a); }
Axis axis_from_index(int mu);
char axis_name(Axis a);
Axis parse_axis(char c);

// sigma^i sigma^j = phase * sigma^k, with 0 denoting the identity.
struct PauliProduct {
  cplx phase;
  std::uint8_t mu;
};
PauliProduct pauli_product(int i, int j);

// Levi-Civita symbol on 1..3; zero if any index is 0 or repeated.
int levi_civita(int a, int b, int c);

// Pauli string over N qubits. Linear index is base 4 with qubit 1 most significant.
class PauliString {
 public:
  explicit PauliString(std::vector<std::uint8_t> mu);
  static PauliString from_index(int n_qubits, std::uint32_t index);
  static PauliString parse(const std::string& text);  // e.g. "xz0y"

  int n_qubits() const { return static_cast<int>(mu_.size()); }
  int mu(int qubit) const;  // 1-based
  const std::vector<std::uint8_t>& digits() const { return mu_; }
  std::uint32_t index() const;
  int support_size() const;
  std::string to_string() const;

 private:
  std::vector<std::uint8_t> mu_;
};

// Helpers on packed base-4 indices.
constexpr int slot_shift(int n_qubits, int qubit) { return 2 * (n_qubits - qubit); }
constexpr int digit_at(std::uint32_t index, int n_qubits, int qubit) {
  return static_cast<int>((index >> slot_shift(n_qubits, qubit)) & 3u);
}
constexpr std::uint32_t with_digit(std::uint32_t index, int n_qubits, int qubit, int mu) {
  const int sh = slot_shift(n_qubits, qubit);
  return (index & ~(3u << sh)) | (static_cast<std::uint32_t>(mu) << sh);
}
inline std::uint32_t pow4(int n) { return 1u << (2 * n); }

// Support size (number of non-identity slots) for every index of an N-qubit string.
const std::vector<std::uint8_t>& support_table(int n_qubits);

// Bit masks describing how a string acts on computational basis states:
// S|s> = i^{n_y} (-1)^{popcount(s & z_mask)} |s ^ x_mask>.
struct PauliMasks {
  std::uint32_t x_mask = 0;
  std::uint32_t z_mask = 0;
  int n_y = 0;
};
PauliMasks pauli_masks(std::uint32_t index, int n_qubits);

// i^k for integer k.
cplx i_power(int k);

}  // namespace qsteer
