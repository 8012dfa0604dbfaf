#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "qsteer/bloch_tensor.hpp"
#include "qsteer/cost_functions.hpp"
#include "qsteer/measurement_dynamics.hpp"
#include "qsteer/quantum_state.hpp"
#include "qsteer/rng.hpp"

namespace qsteer {

enum class Scheduler { Alternating, Random };
enum class RecordLevel { Summary, Metrics, Full };

struct ProtocolParams {
  int n_qubits = 2;
  double dt = 0.2;
  std::vector<double> couplings;  // empty: J = 1 on every qubit
  CostWeights weights;            // empty: default_weights(N)
  double f_star = 0.99;
  int max_steps = 0;              // 0: default_max_steps
  Scheduler scheduler = Scheduler::Alternating;
  SteeringSet steering_set = SteeringSet::NoBetaY;
  std::uint64_t seed = 1;
  TargetStateSpec target = BellSpec{};
  TargetStateSpec initial = ProductSpec{};
  std::vector<int> entropy_subset;  // empty: {1..floor(N/2)}
  RecordLevel record_level = RecordLevel::Metrics;
  int series_limit = -1;            // keep per-cycle metrics up to this cycle; -1 keeps all
  double tie_tolerance = 1e-12;
  bool audit_bloch = false;         // compare the incremental tensor to a full recompute each step
};

int default_max_steps(const TargetStateSpec& target, int n_qubits);

// Fills defaults and validates; throws std::invalid_argument.
ProtocolParams resolve_params(ProtocolParams p);

using QubitPair = std::pair<int, int>;

std::vector<QubitPair> schedule_pairs(int n_qubits, int cycle, Scheduler mode, Rng& rng);

struct PairAction {
  QubitPair pair{1, 2};
  SteeringConfig k_n;
  SteeringConfig k_m;
  MeasurementOutcome outcome;
  double expected_dc = 0.0;

  bool operator==(const PairAction&) const = default;
};

struct CycleRecord {
  int cycle = 0;
  std::vector<PairAction> actions;
  bool trapped = false;

  bool operator==(const CycleRecord&) const = default;
};

struct StepMetrics {
  double fidelity = 0.0;
  double total_cost = 0.0;
  double entropy = 0.0;
  std::array<double, kMaxQubits> costs{};  // C_1..C_N

  bool operator==(const StepMetrics&) const = default;
};

struct TrajectoryRecord {
  std::uint64_t index = 0;
  bool converged = false;
  int n_steps = 0;
  int trapped_cycles = 0;
  StepMetrics final_metrics;
  std::vector<StepMetrics> metrics;  // metrics[t] after t cycles, t = 0 is the initial state
  std::vector<CycleRecord> cycles;   // RecordLevel::Full only

  bool operator==(const TrajectoryRecord&) const = default;
};

// Read-only data shared by every trajectory of a run.
class ProtocolContext {
 public:
  explicit ProtocolContext(const ProtocolParams& params);

  const ProtocolParams& params() const { return params_; }
  const StateVector& target() const { return target_; }
  const BlochTensor& target_bloch() const { return target_bloch_; }
  const StateVector& initial() const { return initial_; }
  const SupportWeights& support_weights() const { return support_; }
  const std::vector<SteeringConfig>& configs() const { return configs_; }
  double coupling(int qubit) const { return params_.couplings[static_cast<std::size_t>(qubit - 1)]; }

 private:
  ProtocolParams params_;
  StateVector target_;
  BlochTensor target_bloch_;
  StateVector initial_;
  SupportWeights support_;
  std::vector<SteeringConfig> configs_;
};

// Expected total-cost change for every (k_n, k_m) in the steering set, k_n-major.
std::vector<double> evaluate_pair_configs(const ProtocolContext& ctx, const BlochTensor& bloch, QubitPair pair);
// Same values from the string-by-string reference path.
std::vector<double> evaluate_pair_configs_reference(const ProtocolContext& ctx, const BlochTensor& bloch, QubitPair pair);

struct Selection {
  PairConfig pc;
  double expected_dc = 0.0;
  bool trapped = false;  // no configuration improves the cost
  int n_ties = 1;
};

Selection select_config(const ProtocolContext& ctx, const BlochTensor& bloch, QubitPair pair, Rng& rng);

struct StepResult {
  StateVector state;
  BlochTensor bloch;
  std::vector<PairAction> actions;
  bool trapped = false;
};

// One cycle: configurations for all pairs are chosen from the incoming state,
// then each pair is measured and updated in order.
StepResult run_step(const ProtocolContext& ctx, const StateVector& state, const BlochTensor& bloch,
                    const std::vector<QubitPair>& pairs, Rng& rng);

StepMetrics measure(const ProtocolContext& ctx, const StateVector& state, const BlochTensor& bloch);

TrajectoryRecord run_trajectory(const ProtocolContext& ctx, Rng& rng, std::uint64_t index = 0);
// Uses make_stream(params.seed, 0).
TrajectoryRecord run_trajectory(const ProtocolParams& params);

}  // namespace qsteer
