#include "qsteer/cost_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qsteer {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_same_size(const BlochTensor& a, const BlochTensor& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("Bloch tensors have different qubit counts");
}

cplx detector_factor(Axis beta) {
  if (beta == Axis::x) return {1.0, 0.0};
  if (beta == Axis::y) return {0.0, 1.0};
  return {0.0, 0.0};
}

struct Slots {
  std::uint32_t target;
  cplx phase;
};

// Replace pair slots of S by (left_n * mu_n * right_n, left_m * mu_m * right_m).
Slots sandwich(std::uint32_t s, int nq, int n, int m, int left_n, int right_n, int left_m, int right_m) {
  const int mn = digit_at(s, nq, n), mm = digit_at(s, nq, m);
  const auto a1 = pauli_product(left_n, mn);
  const auto a2 = pauli_product(a1.mu, right_n);
  const auto b1 = pauli_product(left_m, mm);
  const auto b2 = pauli_product(b1.mu, right_m);
  std::uint32_t t = with_digit(s, nq, n, a2.mu);
  t = with_digit(t, nq, m, b2.mu);
  return {t, a1.phase * a2.phase * b1.phase * b2.phase};
}

// Tr(rho S X) or Tr(rho X S) for a pair operator X.
cplx trace_with_operator(const BlochTensor& r, std::uint32_t s, const PairOperator& x, bool operator_right) {
  const int nq = r.n_qubits();
  cplx acc = 0.0;
  for (int k = 0; k < 16; ++k) {
    if (x.coef[k] == 0.0) continue;
    const Slots sl = operator_right ? sandwich(s, nq, x.n, x.m, 0, k / 4, 0, k % 4)
                                    : sandwich(s, nq, x.n, x.m, k / 4, 0, k % 4, 0);
    acc += x.coef[k] * sl.phase * r[sl.target];
  }
  return acc;
}

// 2 G_S^(eta) from the general jump-branch identity.
double two_g(const BlochTensor& r, const PairConfig& pc, std::uint32_t s, int eta, double q) {
  const int nq = r.n_qubits();
  const int a = axis_index(pc.k_n.alpha), b = axis_index(pc.k_m.alpha);
  const cplx ca = std::sqrt(pc.gamma_n()) * detector_factor(pc.k_n.beta);
  const cplx cb = std::sqrt(pc.gamma_m()) * detector_factor(pc.k_m.beta);
  const int mn = digit_at(s, nq, pc.n), mm = digit_at(s, nq, pc.m);
  const double eps_n = (mn == 0 || mn == a) ? 1.0 : -1.0;
  const double eps_m = (mm == 0 || mm == b) ? 1.0 : -1.0;
  const double rs = r[s];
  double v = std::norm(ca) * (eps_n - 1.0) * rs + std::norm(cb) * (eps_m - 1.0) * rs;
  if (ca != 0.0 && cb != 0.0) {
    // U = Tr(rho sigma_m S sigma_n), V = Tr(rho sigma_n S sigma_m)
    const Slots u = sandwich(s, nq, pc.n, pc.m, 0, a, b, 0);
    const Slots w = sandwich(s, nq, pc.n, pc.m, a, 0, 0, b);
    const cplx uu = u.phase * r[u.target], vv = w.phase * r[w.target];
    const cplx cross = std::conj(ca) * cb * vv + ca * std::conj(cb) * uu;
    v += eta * (cross.real() - 2.0 * (std::conj(ca) * cb).real() * q * rs);
  }
  return v;
}

double cdc_value(const PairConfig& pc, int eta, double q) {
  const cplx ca = std::sqrt(pc.gamma_n()) * detector_factor(pc.k_n.beta);
  const cplx cb = std::sqrt(pc.gamma_m()) * detector_factor(pc.k_m.beta);
  return std::norm(ca) + std::norm(cb) + 2.0 * eta * (std::conj(ca) * cb).real() * q;
}

double cross_component(const std::array<double, 3>& u, const std::array<double, 3>& v, int alpha) {
  double acc = 0.0;
  for (int b = 1; b <= 3; ++b)
    for (int c = 1; c <= 3; ++c) acc += levi_civita(alpha, b, c) * u[static_cast<std::size_t>(b - 1)] * v[static_cast<std::size_t>(c - 1)];
  return acc;
}

}  // namespace

void check_weights(const CostWeights& w, int n) {
  if (static_cast<int>(w.p.size()) != n) throw std::invalid_argument("need one weight per rank r = 1..N");
  double sum = 0.0;
  for (double p : w.p) {
    if (!(p >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("weights must sum to 1");
}

CostWeights default_weights(int n) {
  if (n < 1) throw std::invalid_argument("bad qubit count");
  if (n == 1) return {{1.0}};
  CostWeights w{std::vector<double>(static_cast<std::size_t>(n))};
  double p = 0.9, used = 0.0;
  for (int r = 0; r < n - 1; ++r) {
    w.p[static_cast<std::size_t>(r)] = p;
    used += p;
    p *= 0.1;
  }
  w.p.back() = 1.0 - used;
  return w;
}

CostWeights global_only_weights(int n) {
  CostWeights w{std::vector<double>(static_cast<std::size_t>(n), 0.0)};
  w.p.back() = 1.0;
  return w;
}

SupportWeights::SupportWeights(int n, const CostWeights& weights) : n_(n), w_(static_cast<std::size_t>(n + 1), 0.0) {
  check_weights(weights, n);
  for (int k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (int r = std::max(k, 1); r <= n; ++r)
      acc += weights.p[static_cast<std::size_t>(r - 1)] * binomial(n - k, r - k) / (std::ldexp(1.0, r) * binomial(n, r));
    w_[static_cast<std::size_t>(k)] = acc;
  }
}

double global_cost(const BlochTensor& bloch, const BlochTensor& target) {
  check_same_size(bloch, target);
  double acc = 0.0;
  for (std::uint32_t s = 0; s < bloch.size(); ++s) acc += bloch[s] * target[s];
  return 1.0 - std::ldexp(acc, -bloch.n_qubits());
}

double local_cost(const BlochTensor& bloch, const BlochTensor& target, int r) {
  check_same_size(bloch, target);
  const int n = bloch.n_qubits();
  if (r < 1 || r > n) throw std::invalid_argument("rank r must be in 1..N");
  double acc = 0.0;
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    if (std::popcount(subset) != r) continue;
    std::vector<int> keep;
    for (int q = 1; q <= n; ++q)
      if (subset & (1u << (n - q))) keep.push_back(q);
    const auto a = rdm_bloch(bloch, keep), b = rdm_bloch(target, keep);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) acc += (a.coeffs[i] - b.coeffs[i]) * (a.coeffs[i] - b.coeffs[i]);
  }
  return acc / (std::ldexp(1.0, r + 1) * binomial(n, r));
}

std::vector<double> cost_vector(const BlochTensor& bloch, const BlochTensor& target) {
  check_same_size(bloch, target);
  const int n = bloch.n_qubits();
  const auto& supp = support_table(n);
  std::vector<double> by_support(static_cast<std::size_t>(n + 1), 0.0);
  for (std::uint32_t s = 0; s < bloch.size(); ++s) {
    const double d = bloch[s] - target[s];
    by_support[supp[s]] += d * d;
  }
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  for (int r = 1; r <= n; ++r) {
    double acc = 0.0;
    for (int k = 0; k <= r; ++k) acc += by_support[static_cast<std::size_t>(k)] * binomial(n - k, r - k);
    c[static_cast<std::size_t>(r - 1)] = acc / (std::ldexp(1.0, r + 1) * binomial(n, r));
  }
  return c;
}

double total_cost(const BlochTensor& bloch, const BlochTensor& target, const CostWeights& weights) {
  check_weights(weights, bloch.n_qubits());
  const auto c = cost_vector(bloch, target);
  double acc = 0.0;
  for (std::size_t r = 0; r < c.size(); ++r) acc += weights.p[r] * c[r];
  return acc;
}

PairCostTensors pair_cost_tensors(const BlochTensor& bloch, const PairConfig& pc) {
  const int nq = bloch.n_qubits();
  check_pair_config(pc, nq);
  const int a = axis_index(pc.k_n.alpha), b = axis_index(pc.k_m.alpha);
  PairCostTensors t;
  t.q = correlator(bloch, pc.n, pc.m, pc.k_n.alpha, pc.k_m.alpha);
  t.cdc = {cdc_value(pc, +1, t.q), cdc_value(pc, -1, t.q)};
  const std::size_t size = bloch.size();
  t.f.resize(size);
  t.h.resize(size);
  t.e.resize(size);
  t.g[0].resize(size);
  t.g[1].resize(size);
  for (std::uint32_t s = 0; s < size; ++s) {
    const Slots u = sandwich(s, nq, pc.n, pc.m, 0, a, b, 0);
    const Slots v = sandwich(s, nq, pc.n, pc.m, a, 0, 0, b);
    const cplx uu = u.phase * bloch[u.target], vv = v.phase * bloch[v.target];
    t.f[s] = (0.5 * (uu + vv)).real();
    t.e[s] = (cplx(0.0, 0.5) * (vv - uu)).real();
    const Slots h1 = sandwich(s, nq, pc.n, pc.m, a, 0, b, 0);
    const Slots h2 = sandwich(s, nq, pc.n, pc.m, 0, a, 0, b);
    t.h[s] = (0.5 * (h1.phase * bloch[h1.target] + h2.phase * bloch[h2.target])).real();
    t.g[0][s] = 0.5 * two_g(bloch, pc, s, +1, t.q);
    t.g[1][s] = 0.5 * two_g(bloch, pc, s, -1, t.q);
  }
  return t;
}

double half_avg_dR2(const PairCostTensors& t, const PairConfig& pc, std::uint32_t s) {
  double acc = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double n = t.cdc[static_cast<std::size_t>(i)];
    if (n < 1e-14) continue;
    const double g = t.g[static_cast<std::size_t>(i)][s];
    acc += g * g / n;
  }
  return pc.dt * acc;
}

double expected_dC(const BlochTensor& bloch, const BlochTensor& target, const PairConfig& pc,
                   const CostWeights& weights) {
  check_same_size(bloch, target);
  const int n = bloch.n_qubits();
  const SupportWeights w(n, weights);
  const auto& supp = support_table(n);
  const PairCostTensors t = pair_cost_tensors(bloch, pc);
  double acc = 0.0;
  for (std::uint32_t s = 1; s < bloch.size(); ++s) {
    const double dr = lindblad_avg_dR(bloch, pc, s);
    acc += w(supp[s]) * ((bloch[s] - target[s]) * dr + half_avg_dR2(t, pc, s));
  }
  return acc;
}

double explicit_dR(const BlochTensor& bloch, const PairConfig& pc, MeasurementOutcome outcome, std::uint32_t s) {
  check_pair_config(pc, bloch.n_qubits());
  if (s >= bloch.size()) throw std::out_of_range("Pauli index out of range");
  const double q = correlator(bloch, pc.n, pc.m, pc.k_n.alpha, pc.k_m.alpha);
  if (outcome.xi == 1) {
    const double n = cdc_value(pc, outcome.eta, q);
    if (n <= 1e-14) throw std::domain_error("jump outcome with vanishing jump norm");
    return two_g(bloch, pc, s, outcome.eta, q) / n;
  }
  const PairOperator h = effective_hamiltonian(pc, outcome.eta);
  const PairOperator d = no_jump_damping(pc, outcome.eta);
  const cplx comm = trace_with_operator(bloch, s, h, true) - trace_with_operator(bloch, s, h, false);
  const cplx anti = trace_with_operator(bloch, s, d, true) + trace_with_operator(bloch, s, d, false);
  const double mean_d = expectation(bloch, d).real();
  return (cplx(0.0, -pc.dt) * comm).real() - 0.5 * pc.dt * (anti.real() - 2.0 * mean_d * bloch[s]);
}

std::optional<WeakValueTable> weak_values(const StateVector& state, const StateVector& target) {
  const cplx overlap = inner_product(target, state);
  if (std::abs(overlap) <= 1e-12) return std::nullopt;
  const int n = state.n_qubits();
  WeakValueTable t{n, std::vector<std::array<cplx, 3>>(static_cast<std::size_t>(n))};
  for (int q = 1; q <= n; ++q)
    for (Axis a : kAxes)
      t.w[static_cast<std::size_t>(q - 1)][static_cast<std::size_t>(axis_index(a) - 1)] =
          inner_product(target, apply_pauli(state, q, a)) / overlap;
  return t;
}

double expected_dCN_weak(const StateVector& state, const StateVector& target, const PairConfig& pc) {
  check_pair_config(pc, state.n_qubits());
  const std::array<std::pair<int, SteeringConfig>, 2> sides{{{pc.n, pc.k_n}, {pc.m, pc.k_m}}};
  const std::array<double, 2> js{pc.j_n, pc.j_m};
  const auto wv = weak_values(state, target);
  double acc = 0.0;
  if (wv) {
    const double f2 = std::norm(inner_product(target, state));
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& [q, k] = sides[i];
      const cplx w = wv->entry(q, k.alpha);
      if (k.beta == Axis::z) acc += -2.0 * k.sign * js[i] * w.imag();
      else acc += js[i] * js[i] * pc.dt * (1.0 - std::norm(w));
    }
    return f2 * pc.dt * acc;
  }
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& [q, k] = sides[i];
    if (k.beta == Axis::z) continue;
    acc += js[i] * js[i] * pc.dt * std::norm(inner_product(target, apply_pauli(state, q, k.alpha)));
  }
  return -pc.dt * acc;
}

double n2_x_term(const BlochTensor& r, Axis a1, Axis a2) {
  if (r.n_qubits() != 2) throw std::invalid_argument("closed forms require N = 2");
  std::array<double, 3> r1{}, r2{};
  for (int a = 1; a <= 3; ++a) {
    r1[static_cast<std::size_t>(a - 1)] = r[static_cast<std::uint32_t>(pair_slot(a, 0))];
    r2[static_cast<std::size_t>(a - 1)] = r[static_cast<std::uint32_t>(pair_slot(0, a))];
  }
  const int i1 = axis_index(a1), i2 = axis_index(a2);
  const double q = r[static_cast<std::uint32_t>(pair_slot(i1, i2))];
  double n1 = 0.0, n2 = 0.0;
  for (int a = 0; a < 3; ++a) {
    n1 += r1[static_cast<std::size_t>(a)] * r1[static_cast<std::size_t>(a)];
    n2 += r2[static_cast<std::size_t>(a)] * r2[static_cast<std::size_t>(a)];
  }
  const double x1 = r1[static_cast<std::size_t>(i1 - 1)], x2 = r2[static_cast<std::size_t>(i2 - 1)];
  return 0.5 * (1.0 - q * q) * (n1 + n2) - x1 * x1 - x2 * x2 + 2.0 * q * x1 * x2;
}

std::pair<double, double> n2_closed_forms(const BlochTensor& r, const BlochTensor& f, const PairConfig& pc) {
  if (r.n_qubits() != 2 || f.n_qubits() != 2) throw std::invalid_argument("closed forms require N = 2");
  check_pair_config(pc, 2);
  if (pc.k_n.beta == Axis::y || pc.k_m.beta == Axis::y)
    throw std::invalid_argument("closed forms cover detector axes x and z only");
  // orient so that "qubit 1" is pc.n
  auto comp = [&](const BlochTensor& t, int qubit, int a) {
    return qubit == 1 ? t[static_cast<std::uint32_t>(pair_slot(a, 0))] : t[static_cast<std::uint32_t>(pair_slot(0, a))];
  };
  auto two = [&](const BlochTensor& t, int q1, int a, int b) {
    // component with sigma^a on qubit q1 and sigma^b on the other qubit
    return q1 == 1 ? t[static_cast<std::uint32_t>(pair_slot(a, b))] : t[static_cast<std::uint32_t>(pair_slot(b, a))];
  };
  const std::array<std::pair<int, SteeringConfig>, 2> sides{{{pc.n, pc.k_n}, {pc.m, pc.k_m}}};
  const std::array<double, 2> js{pc.j_n, pc.j_m};
  double dc1 = 0.0, dc2 = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& [q, k] = sides[i];
    const int am = axis_index(k.alpha);
    const double gamma = js[i] * js[i] * pc.dt;
    std::array<double, 3> rm{}, rf{};
    for (int a = 1; a <= 3; ++a) {
      rm[static_cast<std::size_t>(a - 1)] = comp(r, q, a);
      rf[static_cast<std::size_t>(a - 1)] = comp(f, q, a);
    }
    if (k.beta == Axis::z) {
      double t1 = cross_component(rm, rf, am);
      double t2 = t1;
      for (int ap = 1; ap <= 3; ++ap) {
        std::array<double, 3> sm{}, sf{};
        for (int a = 1; a <= 3; ++a) {
          sm[static_cast<std::size_t>(a - 1)] = two(r, q, a, ap);
          sf[static_cast<std::size_t>(a - 1)] = two(f, q, a, ap);
        }
        t2 += cross_component(sm, sf, am);
      }
      dc1 += -k.sign * js[i] * t1;
      dc2 += -k.sign * js[i] * t2;
    } else {
      double t1 = 0.0, t2 = 0.0;
      for (int a = 1; a <= 3; ++a) {
        if (a == am) continue;
        t1 += rm[static_cast<std::size_t>(a - 1)] * rf[static_cast<std::size_t>(a - 1)];
        t2 += rm[static_cast<std::size_t>(a - 1)] * rf[static_cast<std::size_t>(a - 1)];
        for (int ap = 1; ap <= 3; ++ap) t2 += two(r, q, a, ap) * two(f, q, a, ap);
      }
      dc1 += gamma * t1;
      dc2 += gamma * t2;
    }
  }
  dc1 *= 0.5 * pc.dt;
  dc2 *= 0.5 * pc.dt;
  if (pc.k_n.beta == Axis::x && pc.k_m.beta == Axis::x) {
    const double g1 = pc.gamma_n(), g2 = pc.gamma_m();
    const double q = correlator(r, pc.n, pc.m, pc.k_n.alpha, pc.k_m.alpha);
    double inv_sum = 0.0;
    for (int eta : {+1, -1}) {
      const double n = g1 + g2 + 2.0 * eta * std::sqrt(g1 * g2) * q;
      if (n >= 1e-14) inv_sum += 1.0 / n;
    }
    const Axis a1 = pc.n == 1 ? pc.k_n.alpha : pc.k_m.alpha;
    const Axis a2 = pc.n == 1 ? pc.k_m.alpha : pc.k_n.alpha;
    dc1 -= pc.dt * 0.5 * g1 * g2 * inv_sum * n2_x_term(r, a1, a2);
  }
  return {dc1, dc2};
}

double n3_qubit3_cost_change(const BlochTensor& r, const PairConfig& pc) {
  if (r.n_qubits() != 3) throw std::invalid_argument("requires N = 3");
  if (pc.n != 1 || pc.m != 2) throw std::invalid_argument("requires the steered pair (1,2)");
  check_pair_config(pc, 3);
  const bool same_perp = (pc.k_n.beta == Axis::x && pc.k_m.beta == Axis::x) ||
                         (pc.k_n.beta == Axis::y && pc.k_m.beta == Axis::y);
  if (!same_perp) return 0.0;
  const int a1 = axis_index(pc.k_n.alpha), a2 = axis_index(pc.k_m.alpha);
  const double q = r[static_cast<std::uint32_t>((a1 << 4) | (a2 << 2))];
  const double g1 = pc.gamma_n(), g2 = pc.gamma_m();
  double inv_sum = 0.0;
  for (int eta : {+1, -1}) {
    const double n = g1 + g2 + 2.0 * eta * std::sqrt(g1 * g2) * q;
    if (n >= 1e-14) inv_sum += 1.0 / n;
  }
  double acc = 0.0;
  for (int a = 1; a <= 3; ++a) {
    const double d = r[static_cast<std::uint32_t>((a1 << 4) | (a2 << 2) | a)] - q * r[static_cast<std::uint32_t>(a)];
    acc += d * d;
  }
  return 0.5 * g1 * g2 * inv_sum * pc.dt * acc;
}

bool is_globally_trapped(const StateVector& state, const StateVector& target, int n, int m, double j_n, double j_m,
                         double dt, SteeringSet set) {
  const auto configs = enumerate_configs(set);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& kn : configs)
    for (const auto& km : configs) {
      PairConfig pc{n, m, kn, km, j_n, j_m, dt};
      best = std::min(best, expected_dCN_weak(state, target, pc));
    }
  return best >= -1e-12;
}

}  // namespace qsteer
