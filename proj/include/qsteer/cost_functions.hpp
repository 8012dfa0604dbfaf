#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "qsteer/bloch_tensor.hpp"
#include "qsteer/measurement_dynamics.hpp"
#include "qsteer/quantum_state.hpp"

namespace qsteer {

// Weights p_1..p_N of the local costs C_1..C_N.
struct CostWeights {
  std::vector<double> p;
};

void check_weights(const CostWeights& w, int n_qubits);
// (0.9, 0.1) for N=2, (0.9, 0.09, 0.01) for N=3, p_{r+1} = 0.1 p_r with p_N taking the rest.
CostWeights default_weights(int n_qubits);
// p = (0, ..., 0, 1)
CostWeights global_only_weights(int n_qubits);

// Per-string weight w_k (k = support size) such that the total cost is
// sum_S w_k (R_S - R^f_S)^2 / 2.
class SupportWeights {
 public:
  SupportWeights(int n_qubits, const CostWeights& weights);
  int n_qubits() const { return n_; }
  double operator()(int support) const { return w_[static_cast<std::size_t>(support)]; }

 private:
  int n_;
  std::vector<double> w_;
};

double global_cost(const BlochTensor& bloch, const BlochTensor& target);
double local_cost(const BlochTensor& bloch, const BlochTensor& target, int r);
// C_1..C_N in one pass.
std::vector<double> cost_vector(const BlochTensor& bloch, const BlochTensor& target);
double total_cost(const BlochTensor& bloch, const BlochTensor& target, const CostWeights& weights);

// Slot-wise tensors of a steered pair for one configuration, over all 4^N strings.
// F and H follow the symmetric/anticommutator definitions; E is the
// antisymmetric companion i(V-U)/2 needed for mixed x/y detector axes.
struct PairCostTensors {
  double q = 0.0;                      // <sigma_n^alpha_n sigma_m^alpha_m>
  std::array<double, 2> cdc{};         // <c_eta^dag c_eta> for eta = +1, -1
  std::vector<double> f, h, e;
  std::array<std::vector<double>, 2> g;  // G_S^(eta), eta = +1, -1
};

PairCostTensors pair_cost_tensors(const BlochTensor& bloch, const PairConfig& pc);

// Outcome-averaged second moment: (1/2) dR_S^2 = dt sum_eta G^2 / <c^dag c>.
double half_avg_dR2(const PairCostTensors& t, const PairConfig& pc, std::uint32_t string_index);

// Reference evaluation, string by string.
double expected_dC(const BlochTensor& bloch, const BlochTensor& target, const PairConfig& pc,
                   const CostWeights& weights);

// Conditioned first-order change of R_S for one outcome.
double explicit_dR(const BlochTensor& bloch, const PairConfig& pc, MeasurementOutcome outcome,
                     std::uint32_t string_index);

struct WeakValueTable {
  int n_qubits = 0;
  // entry(m, alpha) = <Psi_f| sigma_m^alpha |Psi> / <Psi_f|Psi>
  std::vector<std::array<cplx, 3>> w;
  cplx entry(int qubit, Axis a) const { return w[static_cast<std::size_t>(qubit - 1)][static_cast<std::size_t>(axis_index(a) - 1)]; }
};

// Empty when the states are orthogonal (|<Psi_f|Psi>| <= 1e-12).
std::optional<WeakValueTable> weak_values(const StateVector& state, const StateVector& target);

// Expected change of C_N from the weak-value form; uses the orthogonal-case
// expression when weak values are undefined.
double expected_dCN_weak(const StateVector& state, const StateVector& target, const PairConfig& pc);

// Closed-form dC_1 and dC_2 for N = 2 and detector axes in {x, z}.
std::pair<double, double> n2_closed_forms(const BlochTensor& bloch, const BlochTensor& target, const PairConfig& pc);

// X_{alpha_1, alpha_2} of the N = 2 closed form.
double n2_x_term(const BlochTensor& bloch, Axis a1, Axis a2);

// N = 3, pair (1,2): contribution of the subset {3} to the r = 1 cost change,
// excluding the 1/N_r average over subsets.
double n3_qubit3_cost_change(const BlochTensor& bloch, const PairConfig& pc);

// True when no configuration of the set lowers C_N: min_K expected_dCN_weak >= -1e-12.
bool is_globally_trapped(const StateVector& state, const StateVector& target, int n, int m, double j_n, double j_m,
                         double dt, SteeringSet set);

}  // namespace qsteer
