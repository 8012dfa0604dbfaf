#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qsteer/pauli.hpp"
#include "qsteer/quantum_state.hpp"

namespace qsteer {

// R_S = <Psi|S|Psi> for every Pauli string S, indexed as in PauliString::index().
class BlochTensor {
 public:
  BlochTensor(int n_qubits, std::vector<double> coeffs);

  int n_qubits() const { return n_; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double operator[](std::uint32_t index) const { return coeffs_[index]; }
  double at(const PauliString& s) const;
  double purity_sum() const;  // sum of R_S^2, equals 2^N for pure states

 private:
  friend BlochTensor apply_pair_transfer(BlochTensor, int, int, const std::array<double, 256>&);
  int n_;
  std::vector<double> coeffs_;
};

struct RdmBlochTensor {
  std::vector<int> kept_qubits;
  std::vector<double> coeffs;  // 4^r entries, first kept qubit most significant
};

BlochTensor bloch_from_state(const StateVector& state);
RdmBlochTensor rdm_bloch(const BlochTensor& bloch, const std::vector<int>& keep);
ReducedDensityMatrix rdm_matrix_from_bloch(const RdmBlochTensor& rdm);

// <sigma_n^a sigma_n2^a2>
double correlator(const BlochTensor& bloch, int n, int n2, Axis a, Axis a2);

// Indices of all strings that are identity on qubits n and m, ascending.
std::vector<std::uint32_t> pair_backgrounds(int n_qubits, int n, int m);

// Pair-slot index 4*mu_n + mu_m.
constexpr int pair_slot(int mu_n, int mu_m) { return 4 * mu_n + mu_m; }

// R'_S = sum_nu T[mu(S)][nu] R_{S(nu)} / p, where mu(S), nu run over the 16
// (mu_n, mu_m) slot values and p is fixed so that R'_0 = 1. T is row-major 16x16.
BlochTensor apply_pair_transfer(BlochTensor bloch, int n, int m, const std::array<double, 256>& transfer);

}  // namespace qsteer
