#include "qsteer/decision_kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace qsteer {

namespace {

struct MixEntry {
  std::uint8_t target = 0;  // pair slot of the sandwiched string
  double sym = 0.0;         // coefficient of R_target in F
  double anti = 0.0;        // coefficient of R_target in E
};

// [alpha_n][alpha_m][mu_n][mu_m]
using MixTable = std::array<std::array<std::array<std::array<MixEntry, 4>, 4>, 4>, 4>;

const MixTable& mix_table() {
  static const MixTable table = [] {
    MixTable t{};
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b)
        for (int mn = 0; mn < 4; ++mn)
          for (int mm = 0; mm < 4; ++mm) {
            const auto un = pauli_product(mn, a), um = pauli_product(b, mm);  // U
            const auto vn = pauli_product(a, mn), vm = pauli_product(mm, b);  // V
            const cplx u = un.phase * um.phase, v = vn.phase * vm.phase;
            MixEntry& e = t[a][b][mn][mm];
            e.target = static_cast<std::uint8_t>(pair_slot(un.mu, um.mu));
            e.sym = (0.5 * (u + v)).real();
            e.anti = (cplx(0.0, 0.5) * (v - u)).real();
          }
    return t;
  }();
  return table;
}

}  // namespace

DecisionKernel::DecisionKernel(const BlochTensor& bloch, const BlochTensor& target, const SupportWeights& weights,
                               int n, int m, double j_n, double j_m, double dt)
    : n_(n), m_(m), j_n_(j_n), j_m_(j_m), dt_(dt) {
  const int nq = bloch.n_qubits();
  if (target.n_qubits() != nq || weights.n_qubits() != nq) throw std::invalid_argument("size mismatch");
  if (n < 1 || n > nq || m < 1 || m > nq || n == m) throw std::invalid_argument("bad pair");

  const int sn = slot_shift(nq, n), sm = slot_shift(nq, m);
  std::array<std::uint32_t, 16> offs{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) offs[pair_slot(a, b)] = (static_cast<std::uint32_t>(a) << sn) | (static_cast<std::uint32_t>(b) << sm);
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) q_[a][b] = bloch[offs[pair_slot(a, b)]];

  const auto& supp = support_table(nq);
  const auto& mix = mix_table();
  std::array<double, 16> r{}, w{}, d{};
  for (std::uint32_t base : pair_backgrounds(nq, n, m)) {
    for (int k = 0; k < 16; ++k) {
      const std::uint32_t s = base | offs[k];
      r[k] = bloch[s];
      w[k] = weights(supp[s]);
      d[k] = w[k] * (bloch[s] - target[s]);
    }
    for (int mn = 0; mn < 4; ++mn)
      for (int mm = 0; mm < 4; ++mm) {
        const int k = pair_slot(mn, mm);
        const double rk = r[k], wk = w[k], dk = d[k], wr2 = wk * rk * rk;
        for (int a = 1; a <= 3; ++a) {
          if (mn != 0 && mn != a) {
            ham_[0][a] += dk * levi_civita(a, mn, 6 - a - mn) * r[pair_slot(6 - a - mn, mm)];
            decay_[0][a] += dk * rk;
            sq_[0][a] += wr2;
          }
          if (mm != 0 && mm != a) {
            ham_[1][a] += dk * levi_civita(a, mm, 6 - a - mm) * r[pair_slot(mn, 6 - a - mm)];
            decay_[1][a] += dk * rk;
            sq_[1][a] += wr2;
          }
        }
        for (int a = 1; a <= 3; ++a) {
          const bool chi_n = mn != 0 && mn != a;
          for (int b = 1; b <= 3; ++b) {
            const bool chi_m = mm != 0 && mm != b;
            if (chi_n && chi_m) sq_both_[a][b] += wr2;
            const MixEntry& e = mix[a][b][mn][mm];
            const double rt = r[e.target];
            const double y_sym = e.sym * rt - q_[a][b] * rk;
            const double y_anti = e.anti * rt;
            if (chi_n) {
              mix_n_[0][a][b] += wk * rk * y_sym;
              mix_n_[1][a][b] += wk * rk * y_anti;
            }
            if (chi_m) {
              mix_m_[0][a][b] += wk * rk * y_sym;
              mix_m_[1][a][b] += wk * rk * y_anti;
            }
            mix_sq_[0][a][b] += wk * y_sym * y_sym;
            mix_sq_[1][a][b] += wk * y_anti * y_anti;
          }
        }
      }
  }
}

double DecisionKernel::evaluate(const SteeringConfig& kn, const SteeringConfig& km) const {
  const int a = axis_index(kn.alpha), b = axis_index(km.alpha);
  const bool pn = kn.beta != Axis::z, pm = km.beta != Axis::z;
  const double gn = j_n_ * j_n_ * dt_, gm = j_m_ * j_m_ * dt_;

  double lin = 0.0;
  lin += pn ? -2.0 * gn * dt_ * decay_[0][a] : -2.0 * kn.sign * j_n_ * dt_ * ham_[0][a];
  lin += pm ? -2.0 * gm * dt_ * decay_[1][b] : -2.0 * km.sign * j_m_ * dt_ * ham_[1][b];
  if (!pn && !pm) return lin;

  const double g2 = 4.0 * ((pn ? gn * gn * sq_[0][a] : 0.0) + (pm ? gm * gm * sq_[1][b] : 0.0) +
                           (pn && pm ? 2.0 * gn * gm * sq_both_[a][b] : 0.0));
  double gy = 0.0, y2 = 0.0, rho = 0.0;
  if (pn && pm) {
    const bool same = kn.beta == km.beta;
    const int type = same ? 0 : 1;
    const double sigma = (kn.beta == Axis::y && km.beta == Axis::x) ? -1.0 : 1.0;
    const double root = std::sqrt(gn * gm);
    gy = -4.0 * root * sigma * (gn * mix_n_[type][a][b] + gm * mix_m_[type][a][b]);
    y2 = 4.0 * gn * gm * mix_sq_[type][a][b];
    rho = same ? 1.0 : 0.0;
  }
  const double base = (pn ? gn : 0.0) + (pm ? gm : 0.0);
  double quad = 0.0;
  for (int eta : {+1, -1}) {
    const double cdc = base + 2.0 * eta * std::sqrt(gn * gm) * rho * q_[a][b];
    if (cdc < 1e-14) continue;
    quad += 0.25 * (g2 + 2.0 * eta * gy + y2) / cdc;
  }
  return lin + dt_ * quad;
}

}  // namespace qsteer
