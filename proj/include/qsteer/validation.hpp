#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qsteer/measurement_dynamics.hpp"
#include "qsteer/quantum_state.hpp"
#include "qsteer/rng.hpp"

namespace qsteer {

// Haar-like random pure state from complex Gaussian amplitudes.
StateVector random_state(int n_qubits, Rng& rng);
SteeringConfig random_steering_config(Rng& rng, bool allow_beta_y);
// Random pair of distinct qubits and random configs, J = 1.
PairConfig random_pair_config(int n_qubits, double dt, Rng& rng, bool allow_beta_y);

// Least-squares slope of log(err) against log(dt).
double fitted_order(const std::vector<double>& dts, const std::vector<double>& errors);

// Distance between two pure states, insensitive to global phase.
double state_distance(const StateVector& a, const StateVector& b);

struct ValidationOptions {
  std::uint64_t seed = 20240601;
  bool inject_lamb_sign_error = false;
};

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<PropertyResult> run_validation(const ValidationOptions& opt);

// Prints one PASS/FAIL line per property; returns 0 when all pass, 1 otherwise.
int cmd_validate(const ValidationOptions& opt, std::ostream& out);

// Largest conditioned-state error over the sampled cases at each dt. Fixed rate
// (J = sqrt(rate/dt), transverse detector axes): worst branch. Fixed coupling
// J = 1: outcome-averaged branch error.
std::vector<double> conditioned_state_errors(const std::vector<double>& dts, bool fixed_rate, double rate,
                                             int lamb_sign, std::uint64_t seed, int samples);

}  // namespace qsteer
