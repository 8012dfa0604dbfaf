#include "qsteer/trajectory_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsteer {

ConvergenceHistogram histogram_from_steps(const std::vector<int>& steps, std::uint64_t total, int bin_width) {
  if (bin_width < 1) throw std::invalid_argument("bin width must be at least 1");
  if (steps.size() > total) throw std::invalid_argument("more converged records than trajectories");
  ConvergenceHistogram h;
  h.bin_width = bin_width;
  h.total = total;
  h.converged = steps.size();
  for (int n : steps) {
    if (n < 0) throw std::invalid_argument("negative step count");
    const auto bin = static_cast<std::size_t>(n / bin_width);
    if (bin >= h.counts.size()) h.counts.resize(bin + 1, 0);
    ++h.counts[bin];
  }
  return h;
}

namespace {

std::vector<int> converged_steps(const std::vector<TrajectoryRecord>& records) {
  std::vector<int> out;
  for (const auto& r : records)
    if (r.converged) out.push_back(r.n_steps);
  return out;
}

}  // namespace

ConvergenceHistogram histogram(const std::vector<TrajectoryRecord>& records, int bin_width) {
  return histogram_from_steps(converged_steps(records), records.size(), bin_width);
}

Summary summarize_steps(const std::vector<int>& steps, std::uint64_t total, int bin_width) {
  if (steps.empty()) throw std::invalid_argument("no converged trajectories to summarize");
  const ConvergenceHistogram h = histogram_from_steps(steps, total, bin_width);
  Summary s;
  s.bin_width = bin_width;
  s.total = total;
  s.converged = h.converged;
  s.converged_fraction = h.converged_fraction();

  const auto peak = std::max_element(h.counts.begin(), h.counts.end());  // first maximum
  const auto peak_bin = static_cast<double>(peak - h.counts.begin());
  s.mode = peak_bin * bin_width + 0.5 * (bin_width - 1);

  const double half = 0.5 * static_cast<double>(*peak);
  std::size_t lo = h.counts.size(), hi = 0;
  for (std::size_t k = 0; k < h.counts.size(); ++k)
    if (static_cast<double>(h.counts[k]) >= half) {
      lo = std::min(lo, k);
      hi = k;
    }
  s.half_width = static_cast<double>((hi - lo + 1) * static_cast<std::size_t>(bin_width));

  std::vector<int> sorted = steps;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  s.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return s;
}

Summary summarize(const std::vector<TrajectoryRecord>& records, int bin_width) {
  return summarize_steps(converged_steps(records), records.size(), bin_width);
}

void CurveAccumulator::Moments::push(double x, std::uint64_t n) {
  const double delta = x - mean;
  mean += delta / static_cast<double>(n);
  m2 += delta * (x - mean);
}

CurveAccumulator::CurveAccumulator(int n_qubits, int horizon) : n_qubits_(n_qubits), horizon_(horizon) {
  if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw std::invalid_argument("bad qubit count");
  const auto len = static_cast<std::size_t>(horizon + 1);
  f2_.resize(len);
  c_.resize(len);
  s_.resize(len);
  cr_.assign(static_cast<std::size_t>(n_qubits), std::vector<Moments>(len));
}

void CurveAccumulator::add(const TrajectoryRecord& rec) {
  if (rec.metrics.empty()) throw std::invalid_argument("record carries no per-cycle metrics");
  const auto last = static_cast<int>(rec.metrics.size()) - 1;
  if (last < std::min(horizon_, rec.n_steps))
    throw std::invalid_argument("record metrics end before the curve horizon");
  ++count_;
  for (int t = 0; t <= horizon_; ++t) {
    const StepMetrics& m = rec.metrics[static_cast<std::size_t>(std::min(t, last))];
    const auto i = static_cast<std::size_t>(t);
    f2_[i].push(m.fidelity * m.fidelity, count_);
    c_[i].push(m.total_cost, count_);
    s_[i].push(m.entropy, count_);
    for (int r = 0; r < n_qubits_; ++r) cr_[static_cast<std::size_t>(r)][i].push(m.costs[static_cast<std::size_t>(r)], count_);
  }
}

std::vector<CurvePoint> CurveAccumulator::finish() const {
  if (count_ == 0) throw std::invalid_argument("no records accumulated");
  auto se = [this](const Moments& mo) {
    if (count_ < 2) return 0.0;
    const double n = static_cast<double>(count_);
    return std::sqrt(mo.m2 / (n - 1.0) / n);
  };
  std::vector<CurvePoint> out;
  for (int t = 0; t <= horizon_; ++t) {
    const auto i = static_cast<std::size_t>(t);
    CurvePoint p;
    p.cycle = t;
    p.mean_f2 = f2_[i].mean;
    p.se_f2 = se(f2_[i]);
    p.mean_c = c_[i].mean;
    p.se_c = se(c_[i]);
    p.mean_s = s_[i].mean;
    p.se_s = se(s_[i]);
    for (int r = 0; r < n_qubits_; ++r) p.mean_cr.push_back(cr_[static_cast<std::size_t>(r)][i].mean);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<CurvePoint> averaged_curves(const std::vector<TrajectoryRecord>& records, int n_qubits, int horizon) {
  if (records.empty()) throw std::invalid_argument("no records");
  CurveAccumulator acc(n_qubits, horizon);
  for (const auto& r : records) acc.add(r);
  return acc.finish();
}

}  // namespace qsteer
