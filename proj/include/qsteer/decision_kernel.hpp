#pragma once

#include <array>

#include "qsteer/bloch_tensor.hpp"
#include "qsteer/cost_functions.hpp"
#include "qsteer/measurement_dynamics.hpp"

namespace qsteer {

// Expected total-cost change for every configuration of one steered pair.
// The constructor makes one pass over the Bloch tensor and stores a few
// dozen partial sums; evaluate() is then O(1) per configuration and agrees
// with expected_dC to rounding.
class DecisionKernel {
 public:
  DecisionKernel(const BlochTensor& bloch, const BlochTensor& target, const SupportWeights& weights, int n, int m,
                 double j_n, double j_m, double dt);

  double evaluate(const SteeringConfig& k_n, const SteeringConfig& k_m) const;
  double correlation(Axis a, Axis b) const { return q_[axis_index(a)][axis_index(b)]; }

 private:
  using Table = std::array<std::array<double, 4>, 4>;

  int n_, m_;
  double j_n_, j_m_, dt_;
  // single-qubit linear and quadratic sums, indexed [side][alpha]
  std::array<std::array<double, 4>, 2> ham_{}, decay_{}, sq_{};
  Table sq_both_{}, q_{};
  // [type][alpha_n][alpha_m]; type 0 = symmetric part, 1 = antisymmetric part
  std::array<Table, 2> mix_n_{}, mix_m_{}, mix_sq_{};
};

}  // namespace qsteer
