#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qsteer/pauli.hpp"

namespace qsteer {

// Pure state of N qubits. Qubits are labelled 1..N and qubit 1 is the most
// significant bit of the basis index. Always normalized.
class StateVector {
 public:
  StateVector(int n_qubits, std::vector<cplx> amplitudes);
  static StateVector basis(int n_qubits, std::uint32_t index);
  static StateVector from_bits(const std::string& bits);

  int n_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }

 private:
  int n_;
  std::vector<cplx> amps_;
};

struct ReducedDensityMatrix {
  std::vector<int> kept_qubits;
  Eigen::MatrixXcd matrix;
};

struct ProductSpec {
  std::string bits;  // empty means |0...0>
};
struct BellSpec {
  int xi = 0;
  int eta = +1;
};
struct GhzSpec {};
struct WSpec {};
struct BellTypeSpec {
  double u = 1.0;
  double theta = 0.0;
};
struct CustomSpec {
  std::vector<cplx> amplitudes;
};
using TargetStateSpec = std::variant<ProductSpec, BellSpec, GhzSpec, WSpec, BellTypeSpec, CustomSpec>;

StateVector make_target(const TargetStateSpec& spec, int n_qubits);
std::string describe_target(const TargetStateSpec& spec);
// Accepts "product:0101", "zeros", "bell", "bell:1,-1", "ghz", "w", "belltype:u,theta".
TargetStateSpec parse_target(const std::string& text);

StateVector apply_pauli(const StateVector& state, int qubit, Axis axis);
cplx inner_product(const StateVector& bra, const StateVector& ket);
double fidelity(const StateVector& state, const StateVector& target);

// Throws std::invalid_argument unless subset is nonempty, strictly increasing and inside 1..n.
void check_subset(const std::vector<int>& subset, int n_qubits, bool require_proper);

ReducedDensityMatrix partial_trace(const StateVector& state, const std::vector<int>& keep);
double von_neumann_entropy(const Eigen::MatrixXcd& rho);
double entanglement_entropy(const StateVector& state, const std::vector<int>& subset_a);

// Default bipartition {1..floor(N/2)}.
std::vector<int> default_entropy_subset(int n_qubits);

}  // namespace qsteer
