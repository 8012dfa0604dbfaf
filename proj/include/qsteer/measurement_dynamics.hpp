#pragma once

#include <array>
#include <string>
#include <vector>

#include "qsteer/bloch_tensor.hpp"
#include "qsteer/pauli.hpp"
#include "qsteer/quantum_state.hpp"
#include "qsteer/rng.hpp"

namespace qsteer {

// Coupling s * J * sigma^alpha (x) tau^beta between a system qubit and its detector.
struct SteeringConfig {
  int sign = +1;
  Axis alpha = Axis::x;
  Axis beta = Axis::x;

  bool operator==(const SteeringConfig&) const = default;
  std::string to_string() const;  // e.g. "+xz"
};

SteeringConfig parse_steering_config(const std::string& text);

enum class SteeringSet { Full12, NoBetaY };

// Order: alpha in (x,y,z); within alpha, beta in (x,y,z); within beta=z, s in (+,-).
// 12 configs with beta=y allowed, 9 without.
std::vector<SteeringConfig> enumerate_configs(bool allow_beta_y);
inline std::vector<SteeringConfig> enumerate_configs(SteeringSet set) {
  return enumerate_configs(set == SteeringSet::Full12);
}

// Steering of the adjacent pair (n, m). The pair's Bell labels use the
// detector of qubit n as the first detector.
struct PairConfig {
  int n = 1;
  int m = 2;
  SteeringConfig k_n;
  SteeringConfig k_m;
  double j_n = 1.0;
  double j_m = 1.0;
  double dt = 0.2;
  // Sign of the Lamb-shift term. +1 is the physical model; -1 exists only so
  // the validation suite can prove it detects the mutation.
  int lamb_sign = +1;

  double gamma_n() const { return j_n * j_n * dt; }
  double gamma_m() const { return j_m * j_m * dt; }
  bool weak_limit_violated() const { return j_n * dt > 0.5 || j_m * dt > 0.5; }
};

// Checks labels, couplings, dt and the canonical-sign rule. Throws std::invalid_argument.
void check_pair_config(const PairConfig& pc, int n_qubits);

struct MeasurementOutcome {
  int xi = 0;   // 1 = quantum jump (odd detector parity)
  int eta = 1;  // Bell symmetry label, +1 or -1

  bool operator==(const MeasurementOutcome&) const = default;
};

// Outcome ordering (0,+), (0,-), (1,+), (1,-).
constexpr int outcome_index(MeasurementOutcome o) { return 2 * o.xi + (o.eta > 0 ? 0 : 1); }
constexpr MeasurementOutcome outcome_from_index(int i) { return {i / 2, (i % 2) == 0 ? 1 : -1}; }
inline constexpr std::array<MeasurementOutcome, 4> kOutcomes{
    MeasurementOutcome{0, 1}, MeasurementOutcome{0, -1}, MeasurementOutcome{1, 1}, MeasurementOutcome{1, -1}};

// Operator on qubits (n, m) stored as coefficients of the 16 two-qubit Pauli
// strings, slot index 4*mu_n + mu_m.
struct PairOperator {
  int n = 1;
  int m = 2;
  std::array<cplx, 16> coef{};
};

PairOperator multiply(const PairOperator& a, const PairOperator& b);
PairOperator adjoint(const PairOperator& a);
std::vector<cplx> apply_pair_operator(const PairOperator& op, int n_qubits, const std::vector<cplx>& amps);
cplx expectation(const StateVector& state, const PairOperator& op);
cplx expectation(const BlochTensor& bloch, const PairOperator& op);

PairOperator effective_hamiltonian(const PairConfig& pc, int eta);
PairOperator jump_operator(const PairConfig& pc, int eta);
// Hermitian drift D_eta of the no-jump branch, A_0 ~ 1 - i dt H - (dt/2) D.
PairOperator no_jump_damping(const PairConfig& pc, int eta);

double expectation_cdc(const StateVector& state, const PairConfig& pc, int eta);
double expectation_cdc(const BlochTensor& bloch, const PairConfig& pc, int eta);

// First-order Born probabilities in outcome order. Tiny negatives are clamped;
// anything below -1e-9 throws std::domain_error (step too large).
std::array<double, 4> outcome_probabilities(const StateVector& state, const PairConfig& pc);

// Unnormalized operator that maps |Psi> to the conditioned state for `outcome`.
PairOperator step_operator(const StateVector& state, const PairConfig& pc, MeasurementOutcome outcome);

StateVector sse_step(const StateVector& state, const PairConfig& pc, MeasurementOutcome outcome);

MeasurementOutcome sample_outcome(const std::array<double, 4>& probs, Rng& rng);

// Outcome-averaged first-order change of R_S.
double lindblad_avg_dR(const BlochTensor& bloch, const PairConfig& pc, std::uint32_t string_index);
double lindblad_avg_dR(const BlochTensor& bloch, const PairConfig& pc, const PauliString& string);

// T[mu][nu] = Tr(K^dag sigma^mu K sigma^nu) / 4 over the pair slots; feeds apply_pair_transfer.
std::array<double, 256> transfer_matrix(const PairOperator& k);

}  // namespace qsteer
