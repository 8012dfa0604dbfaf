#include "qsteer/measurement_dynamics.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qsteer {

namespace {

bool perp(Axis beta) { return beta != Axis::z; }

// delta^(c)_{beta,perp}: 1 for x, i for y, 0 for z.
cplx detector_factor(Axis beta) {
  switch (beta) {
    case Axis::x: return {1.0, 0.0};
    case Axis::y: return {0.0, 1.0};
    default: return {0.0, 0.0};
  }
}

int slot_n(const PairConfig& pc) { return pair_slot(axis_index(pc.k_n.alpha), 0); }
int slot_m(const PairConfig& pc) { return pair_slot(0, axis_index(pc.k_m.alpha)); }
int slot_nm(const PairConfig& pc) { return pair_slot(axis_index(pc.k_n.alpha), axis_index(pc.k_m.alpha)); }

}  // namespace

std::string SteeringConfig::to_string() const {
  return std::string(1, sign > 0 ? '+' : '-') + axis_name(alpha) + axis_name(beta);
}

SteeringConfig parse_steering_config(const std::string& text) {
  if (text.size() != 3 || (text[0] != '+' && text[0] != '-'))
    throw std::invalid_argument("steering config must look like '+xz'");
  return {text[0] == '+' ? 1 : -1, parse_axis(text[1]), parse_axis(text[2])};
}

std::vector<SteeringConfig> enumerate_configs(bool allow_beta_y) {
  std::vector<SteeringConfig> out;
  for (Axis alpha : kAxes) {
    out.push_back({+1, alpha, Axis::x});
    if (allow_beta_y) out.push_back({+1, alpha, Axis::y});
    out.push_back({+1, alpha, Axis::z});
    out.push_back({-1, alpha, Axis::z});
  }
  return out;
}

void check_pair_config(const PairConfig& pc, int n_qubits) {
  if (pc.n < 1 || pc.n > n_qubits || pc.m < 1 || pc.m > n_qubits || pc.n == pc.m)
    throw std::invalid_argument("pair labels must be two distinct qubits in 1..N");
  if (!(pc.j_n > 0.0) || !(pc.j_m > 0.0)) throw std::invalid_argument("couplings must be positive");
  if (!(pc.dt > 0.0)) throw std::invalid_argument("time step must be positive");
  for (const auto& k : {pc.k_n, pc.k_m}) {
    if (k.sign != 1 && k.sign != -1) throw std::invalid_argument("steering sign must be +1 or -1");
    if (k.beta != Axis::z && k.sign != 1) throw std::invalid_argument("sign must be +1 unless beta = z");
  }
  if (pc.lamb_sign != 1 && pc.lamb_sign != -1) throw std::invalid_argument("lamb_sign must be +1 or -1");
}

PairOperator multiply(const PairOperator& a, const PairOperator& b) {
  if (a.n != b.n || a.m != b.m) throw std::invalid_argument("pair operators act on different pairs");
  PairOperator out{a.n, a.m, {}};
  for (int k = 0; k < 16; ++k) {
    if (a.coef[k] == 0.0) continue;
    for (int l = 0; l < 16; ++l) {
      if (b.coef[l] == 0.0) continue;
      const auto pn = pauli_product(k / 4, l / 4);
      const auto pm = pauli_product(k % 4, l % 4);
      out.coef[pair_slot(pn.mu, pm.mu)] += a.coef[k] * b.coef[l] * pn.phase * pm.phase;
    }
  }
  return out;
}

PairOperator adjoint(const PairOperator& a) {
  PairOperator out = a;
  for (auto& c : out.coef) c = std::conj(c);
  return out;
}

std::vector<cplx> apply_pair_operator(const PairOperator& op, int nq, const std::vector<cplx>& in) {
  std::vector<cplx> out(in.size());
  for (int k = 0; k < 16; ++k) {
    const cplx c = op.coef[k];
    if (c == 0.0) continue;
    std::uint32_t idx = with_digit(0, nq, op.n, k / 4);
    idx = with_digit(idx, nq, op.m, k % 4);
    const PauliMasks mk = pauli_masks(idx, nq);
    const cplx base = c * i_power(mk.n_y);
    for (std::uint32_t s = 0; s < in.size(); ++s) {
      const cplx v = base * in[s];
      out[s ^ mk.x_mask] += (std::popcount(s & mk.z_mask) & 1) ? -v : v;
    }
  }
  return out;
}

cplx expectation(const StateVector& state, const PairOperator& op) {
  const auto phi = apply_pair_operator(op, state.n_qubits(), state.amplitudes());
  cplx acc = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) acc += std::conj(state[i]) * phi[i];
  return acc;
}

cplx expectation(const BlochTensor& bloch, const PairOperator& op) {
  const int nq = bloch.n_qubits();
  cplx acc = 0.0;
  for (int k = 0; k < 16; ++k) {
    if (op.coef[k] == 0.0) continue;
    std::uint32_t idx = with_digit(0, nq, op.n, k / 4);
    idx = with_digit(idx, nq, op.m, k % 4);
    acc += op.coef[k] * bloch[idx];
  }
  return acc;
}

PairOperator effective_hamiltonian(const PairConfig& pc, int eta) {
  PairOperator h{pc.n, pc.m, {}};
  if (pc.k_n.beta == Axis::z) h.coef[slot_n(pc)] += pc.k_n.sign * pc.j_n;
  if (pc.k_m.beta == Axis::z) h.coef[slot_m(pc)] += pc.k_m.sign * pc.j_m;
  const bool mixed = (pc.k_n.beta == Axis::x && pc.k_m.beta == Axis::y) ||
                     (pc.k_n.beta == Axis::y && pc.k_m.beta == Axis::x);
  if (mixed) h.coef[slot_nm(pc)] += static_cast<double>(pc.lamb_sign * eta) * std::sqrt(pc.gamma_n() * pc.gamma_m());
  return h;
}

PairOperator jump_operator(const PairConfig& pc, int eta) {
  PairOperator c{pc.n, pc.m, {}};
  const cplx mi(0.0, -1.0);
  c.coef[slot_n(pc)] += mi * static_cast<double>(eta) * std::sqrt(pc.gamma_n()) * detector_factor(pc.k_n.beta);
  c.coef[slot_m(pc)] += mi * std::sqrt(pc.gamma_m()) * detector_factor(pc.k_m.beta);
  return c;
}

PairOperator no_jump_damping(const PairConfig& pc, int eta) {
  PairOperator d{pc.n, pc.m, {}};
  d.coef[0] = (perp(pc.k_n.beta) ? pc.gamma_n() : 0.0) + (perp(pc.k_m.beta) ? pc.gamma_m() : 0.0);
  const double kappa = (detector_factor(pc.k_n.beta) * detector_factor(pc.k_m.beta)).real();
  d.coef[slot_nm(pc)] += 2.0 * eta * std::sqrt(pc.gamma_n() * pc.gamma_m()) * kappa;
  return d;
}

namespace {

double cdc_from_q(const PairConfig& pc, int eta, double q) {
  const double rho = (std::conj(detector_factor(pc.k_n.beta)) * detector_factor(pc.k_m.beta)).real();
  double v = (perp(pc.k_n.beta) ? pc.gamma_n() : 0.0) + (perp(pc.k_m.beta) ? pc.gamma_m() : 0.0);
  v += 2.0 * eta * std::sqrt(pc.gamma_n() * pc.gamma_m()) * rho * q;
  return v;
}

double pair_correlation(const StateVector& state, const PairConfig& pc) {
  PairOperator op{pc.n, pc.m, {}};
  op.coef[slot_nm(pc)] = 1.0;
  return expectation(state, op).real();
}

double clamp_probability(double p) {
  if (p < -1e-9) throw std::domain_error("negative outcome probability: time step too large for the weak-measurement regime");
  return p < 0.0 ? 0.0 : p;
}

}  // namespace

double expectation_cdc(const StateVector& state, const PairConfig& pc, int eta) {
  return cdc_from_q(pc, eta, pair_correlation(state, pc));
}

double expectation_cdc(const BlochTensor& bloch, const PairConfig& pc, int eta) {
  return cdc_from_q(pc, eta, correlator(bloch, pc.n, pc.m, pc.k_n.alpha, pc.k_m.alpha));
}

std::array<double, 4> outcome_probabilities(const StateVector& state, const PairConfig& pc) {
  check_pair_config(pc, state.n_qubits());
  const double q = pair_correlation(state, pc);
  std::array<double, 4> p{};
  bool clamped = false;
  for (int i = 0; i < 4; ++i) {
    const auto o = kOutcomes[static_cast<std::size_t>(i)];
    double raw;
    if (o.xi == 1) {
      raw = 0.5 * pc.dt * cdc_from_q(pc, o.eta, q);
    } else {
      const double kappa = (detector_factor(pc.k_n.beta) * detector_factor(pc.k_m.beta)).real();
      const double d = (perp(pc.k_n.beta) ? pc.gamma_n() : 0.0) + (perp(pc.k_m.beta) ? pc.gamma_m() : 0.0) +
                       2.0 * o.eta * std::sqrt(pc.gamma_n() * pc.gamma_m()) * kappa * q;
      raw = 0.5 * (1.0 - pc.dt * d);
    }
    p[static_cast<std::size_t>(i)] = clamp_probability(raw);
    clamped = clamped || p[static_cast<std::size_t>(i)] != raw;
  }
  if (clamped) {
    const double total = p[0] + p[1] + p[2] + p[3];
    for (auto& v : p) v /= total;
  }
  return p;
}

PairOperator step_operator(const StateVector& state, const PairConfig& pc, MeasurementOutcome o) {
  if (o.xi == 1) {
    if (expectation_cdc(state, pc, o.eta) <= 1e-14) throw std::domain_error("jump requested with vanishing jump norm");
    return jump_operator(pc, o.eta);
  }
  const PairOperator h = effective_hamiltonian(pc, o.eta);
  const PairOperator d = no_jump_damping(pc, o.eta);
  // the -<D> scalar of the nonlinear equation only fixes the norm; exact renormalization replaces it
  PairOperator k{pc.n, pc.m, {}};
  k.coef[0] = 1.0;
  for (int i = 0; i < 16; ++i) k.coef[i] += cplx(0.0, -pc.dt) * h.coef[i] - 0.5 * pc.dt * d.coef[i];
  return k;
}

StateVector sse_step(const StateVector& state, const PairConfig& pc, MeasurementOutcome outcome) {
  check_pair_config(pc, state.n_qubits());
  const PairOperator k = step_operator(state, pc, outcome);
  return StateVector(state.n_qubits(), apply_pair_operator(k, state.n_qubits(), state.amplitudes()));
}

MeasurementOutcome sample_outcome(const std::array<double, 4>& probs, Rng& rng) {
  const double u = uniform01(rng);
  double cum = 0.0;
  int last = 0;
  for (int i = 0; i < 4; ++i) {
    if (probs[static_cast<std::size_t>(i)] <= 0.0) continue;
    last = i;
    cum += probs[static_cast<std::size_t>(i)];
    if (u < cum) return outcome_from_index(i);
  }
  return outcome_from_index(last);
}

double lindblad_avg_dR(const BlochTensor& bloch, const PairConfig& pc, std::uint32_t s) {
  const int nq = bloch.n_qubits();
  double d = 0.0;
  const std::array<std::pair<int, const SteeringConfig*>, 2> sides{{{pc.n, &pc.k_n}, {pc.m, &pc.k_m}}};
  const std::array<double, 2> js{pc.j_n, pc.j_m};
  for (int side = 0; side < 2; ++side) {
    const int q = sides[static_cast<std::size_t>(side)].first;
    const SteeringConfig& k = *sides[static_cast<std::size_t>(side)].second;
    const int a = axis_index(k.alpha);
    const int mu = digit_at(s, nq, q);
    if (mu == 0 || mu == a) continue;
    const double j = js[static_cast<std::size_t>(side)];
    if (k.beta == Axis::z) {
      const int c = 6 - a - mu;
      d += -2.0 * k.sign * j * pc.dt * levi_civita(a, mu, c) * bloch[with_digit(s, nq, q, c)];
    } else {
      d += -2.0 * j * j * pc.dt * pc.dt * bloch[s];
    }
  }
  return d;
}

double lindblad_avg_dR(const BlochTensor& bloch, const PairConfig& pc, const PauliString& string) {
  if (string.n_qubits() != bloch.n_qubits()) throw std::invalid_argument("Pauli string length mismatch");
  return lindblad_avg_dR(bloch, pc, string.index());
}

std::array<double, 256> transfer_matrix(const PairOperator& k) {
  std::array<double, 256> t{};
  for (int a = 0; a < 16; ++a) {
    if (k.coef[a] == 0.0) continue;
    for (int b = 0; b < 16; ++b) {
      if (k.coef[b] == 0.0) continue;
      const cplx w = std::conj(k.coef[a]) * k.coef[b];
      for (int mu = 0; mu < 16; ++mu) {
        // P_a sigma^mu P_b
        const auto l1 = pauli_product(a / 4, mu / 4), l2 = pauli_product(a % 4, mu % 4);
        const auto r1 = pauli_product(l1.mu, b / 4), r2 = pauli_product(l2.mu, b % 4);
        const cplx ph = l1.phase * l2.phase * r1.phase * r2.phase;
        t[static_cast<std::size_t>(16 * mu + pair_slot(r1.mu, r2.mu))] += (w * ph).real();
      }
    }
  }
  return t;
}

}  // namespace qsteer
