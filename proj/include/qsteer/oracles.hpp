#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>

#include "qsteer/cost_functions.hpp"
#include "qsteer/measurement_dynamics.hpp"
#include "qsteer/quantum_state.hpp"

namespace qsteer {

// System qubits 1..N followed by the detectors of qubits n and m (labels N+1, N+2),
// after the exact coupling e^{-i dt H_K} starting from |00>_d.
StateVector joint_evolved_state(const StateVector& state, const PairConfig& pc);

struct Branch {
  MeasurementOutcome outcome;
  double probability = 0.0;
  std::optional<StateVector> state;  // empty when the branch has zero weight
};

// Exact Bell-basis projection of the detector pair, outcome order as kOutcomes.
std::array<Branch, 4> exact_pair_step(const StateVector& state, const PairConfig& pc);

// sum over outcomes of P * (C(after) - C(before)), using the first-order
// probabilities and sse_step branches.
double brute_force_expected_dC(const StateVector& state, const StateVector& target, const PairConfig& pc,
                               const CostWeights& weights);

// Negativity of the two-qubit reduced state of qubits a and b.
double pair_negativity(const StateVector& state, int a, int b);

// Schmidt coefficients (descending) of a two-qubit pure state.
std::array<double, 2> schmidt_coefficients(const StateVector& two_qubit_state);

// One detector tau coupled to both qubits of an N = 2 system through
// J [cos(theta) sigma_1^a1 tau^z + sin(theta) sigma_2^a2 tau^x], detector
// prepared in cos(eta)|0> + e^{i psi} sin(eta)|1> and read out in the basis
// labelled by (eta_t, psi_t).
struct SingleDetectorAngles {
  double eta = 0.0;
  double psi = 0.0;
  double eta_t = 0.0;
  double psi_t = 0.0;
};

struct SingleDetectorResult {
  double probability = 0.0;
  std::optional<StateVector> state;
};

// 4x4 system operator for outcome xi = +1 / -1.
Eigen::Matrix4cd single_detector_kraus(double theta, const SingleDetectorAngles& angles, Axis a1, Axis a2, double j,
                                       double dt, int xi);

SingleDetectorResult single_detector_step(const StateVector& two_qubit_state, double theta,
                                          const SingleDetectorAngles& angles, Axis a1, Axis a2, double j, double dt,
                                          int xi);

// Coefficients of a 4x4 operator over the 16 two-qubit Pauli strings, slot 4*mu_1 + mu_2.
std::array<cplx, 16> pauli_decomposition(const Eigen::Matrix4cd& op);

}  // namespace qsteer
