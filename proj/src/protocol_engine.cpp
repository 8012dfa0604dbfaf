#include "qsteer/protocol_engine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qsteer/decision_kernel.hpp"

namespace qsteer {

int default_max_steps(const TargetStateSpec& target, int n) {
  // roughly ten times the typical convergence time of each family
  if (n <= 2) return 250;
  const bool w = std::holds_alternative<WSpec>(target);
  switch (n) {
    case 3: return w ? 3000 : 600;
    case 4: return w ? 12000 : 4000;
    case 5: return w ? 20000 : 10000;
    default: return 30000;
  }
}

ProtocolParams resolve_params(ProtocolParams p) {
  if (p.n_qubits < 2 || p.n_qubits > kMaxQubits)
    throw std::invalid_argument("n_qubits must be in 2.." + std::to_string(kMaxQubits));
  if (!(p.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(p.f_star > 0.0 && p.f_star <= 1.0)) throw std::invalid_argument("f_star must lie in (0, 1]");
  if (p.couplings.empty()) p.couplings.assign(static_cast<std::size_t>(p.n_qubits), 1.0);
  if (p.couplings.size() == 1) p.couplings.assign(static_cast<std::size_t>(p.n_qubits), p.couplings.front());
  if (static_cast<int>(p.couplings.size()) != p.n_qubits) throw std::invalid_argument("need one coupling per qubit");
  for (double j : p.couplings)
    if (!(j > 0.0)) throw std::invalid_argument("couplings must be positive");
  if (p.weights.p.empty()) p.weights = default_weights(p.n_qubits);
  check_weights(p.weights, p.n_qubits);
  if (p.max_steps == 0) p.max_steps = default_max_steps(p.target, p.n_qubits);
  if (p.max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  if (p.entropy_subset.empty()) p.entropy_subset = default_entropy_subset(p.n_qubits);
  check_subset(p.entropy_subset, p.n_qubits, true);
  if (!(p.tie_tolerance >= 0.0)) throw std::invalid_argument("tie_tolerance must be nonnegative");
  make_target(p.target, p.n_qubits);
  make_target(p.initial, p.n_qubits);
  return p;
}

std::vector<QubitPair> schedule_pairs(int n, int cycle, Scheduler mode, Rng& rng) {
  if (n < 2) throw std::invalid_argument("pair scheduling needs N >= 2");
  if (n == 2) return {{1, 2}};
  // Every maximum matching of the N-ring is a shift of {(1,2),(3,4),...}:
  // two shifts for even N, N shifts (one per unmatched qubit) for odd N.
  const int n_shifts = (n % 2 == 0) ? 2 : n;
  int shift;
  if (mode == Scheduler::Alternating) shift = cycle % n_shifts;
  else shift = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n_shifts)));
  std::vector<QubitPair> pairs;
  for (int k = 0; k < n / 2; ++k) {
    const int a = (shift + 2 * k) % n + 1;
    pairs.emplace_back(a, a % n + 1);
  }
  return pairs;
}

ProtocolContext::ProtocolContext(const ProtocolParams& params)
    : params_(resolve_params(params)),
      target_(make_target(params_.target, params_.n_qubits)),
      target_bloch_(bloch_from_state(target_)),
      initial_(make_target(params_.initial, params_.n_qubits)),
      support_(params_.n_qubits, params_.weights),
      configs_(enumerate_configs(params_.steering_set)) {}

std::vector<double> evaluate_pair_configs(const ProtocolContext& ctx, const BlochTensor& bloch, QubitPair pair) {
  const auto [n, m] = pair;
  const DecisionKernel kernel(bloch, ctx.target_bloch(), ctx.support_weights(), n, m, ctx.coupling(n), ctx.coupling(m),
                              ctx.params().dt);
  const auto& cfg = ctx.configs();
  std::vector<double> out;
  out.reserve(cfg.size() * cfg.size());
  for (const auto& kn : cfg)
    for (const auto& km : cfg) out.push_back(kernel.evaluate(kn, km));
  return out;
}

std::vector<double> evaluate_pair_configs_reference(const ProtocolContext& ctx, const BlochTensor& bloch,
                                                    QubitPair pair) {
  const auto [n, m] = pair;
  const auto& cfg = ctx.configs();
  std::vector<double> out;
  out.reserve(cfg.size() * cfg.size());
  for (const auto& kn : cfg)
    for (const auto& km : cfg) {
      const PairConfig pc{n, m, kn, km, ctx.coupling(n), ctx.coupling(m), ctx.params().dt};
      out.push_back(expected_dC(bloch, ctx.target_bloch(), pc, ctx.params().weights));
    }
  return out;
}

Selection select_config(const ProtocolContext& ctx, const BlochTensor& bloch, QubitPair pair, Rng& rng) {
  const auto values = evaluate_pair_configs(ctx, bloch, pair);
  double best = std::numeric_limits<double>::infinity();
  for (double v : values) best = std::min(best, v);
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] <= best + ctx.params().tie_tolerance) ties.push_back(i);
  const std::size_t pick = ties.size() == 1 ? ties[0] : ties[uniform_index(rng, ties.size())];
  const auto& cfg = ctx.configs();
  const auto [n, m] = pair;
  Selection sel;
  sel.pc = PairConfig{n, m, cfg[pick / cfg.size()], cfg[pick % cfg.size()], ctx.coupling(n), ctx.coupling(m), ctx.params().dt};
  sel.expected_dc = values[pick];
  sel.trapped = best > -ctx.params().tie_tolerance;
  sel.n_ties = static_cast<int>(ties.size());
  return sel;
}

StepResult run_step(const ProtocolContext& ctx, const StateVector& state, const BlochTensor& bloch,
                    const std::vector<QubitPair>& pairs, Rng& rng) {
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const auto [a, b] = pairs[i];
      const auto [c, d] = pairs[j];
      if (a == c || a == d || b == c || b == d) throw std::invalid_argument("steered pairs must be disjoint");
    }
  std::vector<Selection> selections;
  selections.reserve(pairs.size());
  for (const auto& pair : pairs) selections.push_back(select_config(ctx, bloch, pair, rng));

  StepResult res{state, bloch, {}, false};
  for (const auto& sel : selections) {
    const auto probs = outcome_probabilities(res.state, sel.pc);
    const MeasurementOutcome o = sample_outcome(probs, rng);
    const PairOperator k = step_operator(res.state, sel.pc, o);
    res.state = StateVector(res.state.n_qubits(), apply_pair_operator(k, res.state.n_qubits(), res.state.amplitudes()));
    res.bloch = apply_pair_transfer(std::move(res.bloch), sel.pc.n, sel.pc.m, transfer_matrix(k));
    res.actions.push_back({{sel.pc.n, sel.pc.m}, sel.pc.k_n, sel.pc.k_m, o, sel.expected_dc});
    res.trapped = res.trapped || sel.trapped;
  }
  if (ctx.params().audit_bloch) {
    const BlochTensor fresh = bloch_from_state(res.state);
    for (std::uint32_t s = 0; s < fresh.size(); ++s)
      if (std::abs(fresh[s] - res.bloch[s]) > 1e-9) throw std::logic_error("incremental Bloch tensor drifted from the state");
  }
  return res;
}

StepMetrics measure(const ProtocolContext& ctx, const StateVector& state, const BlochTensor& bloch) {
  StepMetrics m;
  m.fidelity = fidelity(state, ctx.target());
  const auto c = cost_vector(bloch, ctx.target_bloch());
  double total = 0.0;
  for (std::size_t r = 0; r < c.size(); ++r) {
    m.costs[r] = c[r];
    total += ctx.params().weights.p[r] * c[r];
  }
  m.total_cost = total;
  m.entropy = entanglement_entropy(state, ctx.params().entropy_subset);
  return m;
}

TrajectoryRecord run_trajectory(const ProtocolContext& ctx, Rng& rng, std::uint64_t index) {
  const ProtocolParams& p = ctx.params();
  TrajectoryRecord rec;
  rec.index = index;
  StateVector state = ctx.initial();
  BlochTensor bloch = bloch_from_state(state);
  const bool keep_series = p.record_level != RecordLevel::Summary;
  auto want_metrics = [&](int t) { return keep_series && (p.series_limit < 0 || t <= p.series_limit); };

  if (want_metrics(0)) rec.metrics.push_back(measure(ctx, state, bloch));
  double f = fidelity(state, ctx.target());
  int cycle = 0;
  while (f < p.f_star && cycle < p.max_steps) {
    const auto pairs = schedule_pairs(p.n_qubits, cycle, p.scheduler, rng);
    StepResult step = run_step(ctx, state, bloch, pairs, rng);
    state = std::move(step.state);
    bloch = std::move(step.bloch);
    ++cycle;
    // keep rounding drift of the incremental update bounded
    if (cycle % 256 == 0) bloch = bloch_from_state(state);
    rec.trapped_cycles += step.trapped ? 1 : 0;
    if (p.record_level == RecordLevel::Full) rec.cycles.push_back({cycle - 1, std::move(step.actions), step.trapped});
    if (want_metrics(cycle)) rec.metrics.push_back(measure(ctx, state, bloch));
    f = fidelity(state, ctx.target());
  }
  rec.converged = f >= p.f_star;
  rec.n_steps = cycle;
  rec.final_metrics = measure(ctx, state, bloch);
  return rec;
}

TrajectoryRecord run_trajectory(const ProtocolParams& params) {
  const ProtocolContext ctx(params);
  Rng rng = make_stream(ctx.params().seed, 0);
  return run_trajectory(ctx, rng, 0);
}

}  // namespace qsteer
