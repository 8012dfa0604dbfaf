#pragma once

#include <cstdint>
#include <vector>

#include "qsteer/protocol_engine.hpp"

namespace qsteer {

struct ConvergenceHistogram {
  int bin_width = 1;
  std::vector<std::uint64_t> counts;  // bin k covers n_t in [k*w, (k+1)*w - 1]
  std::uint64_t total = 0;            // M, including non-converged records
  std::uint64_t converged = 0;

  double converged_fraction() const { return total ? static_cast<double>(converged) / static_cast<double>(total) : 0.0; }
};

struct Summary {
  double mode = 0.0;        // center of the fullest bin, smallest on ties
  double median = 0.0;      // over converged n_t
  double half_width = 0.0;  // between the outermost bins reaching half the maximum
  double converged_fraction = 0.0;
  std::uint64_t converged = 0;
  std::uint64_t total = 0;
  int bin_width = 1;
};

ConvergenceHistogram histogram(const std::vector<TrajectoryRecord>& records, int bin_width);
ConvergenceHistogram histogram_from_steps(const std::vector<int>& converged_steps, std::uint64_t total, int bin_width);

Summary summarize(const std::vector<TrajectoryRecord>& records, int bin_width = 1);
Summary summarize_steps(const std::vector<int>& converged_steps, std::uint64_t total, int bin_width);

struct CurvePoint {
  int cycle = 0;
  double mean_f2 = 0.0, se_f2 = 0.0;
  double mean_c = 0.0, se_c = 0.0;
  std::vector<double> mean_cr;  // C_1..C_N
  double mean_s = 0.0, se_s = 0.0;
};

// Per-cycle means over trajectories; a trajectory that stopped early keeps
// contributing the values it had when it stopped.
class CurveAccumulator {
 public:
  CurveAccumulator(int n_qubits, int horizon);
  void add(const TrajectoryRecord& record);
  std::uint64_t count() const { return count_; }
  std::vector<CurvePoint> finish() const;

 private:
  struct Moments {
    double mean = 0.0, m2 = 0.0;
    void push(double x, std::uint64_t n);
  };
  int n_qubits_;
  int horizon_;
  std::uint64_t count_ = 0;
  std::vector<Moments> f2_, c_, s_;
  std::vector<std::vector<Moments>> cr_;
};

std::vector<CurvePoint> averaged_curves(const std::vector<TrajectoryRecord>& records, int n_qubits, int horizon);

}  // namespace qsteer
