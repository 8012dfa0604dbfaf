#include "qsteer/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsteer {

namespace {

std::vector<cplx> axpby(cplx a, const std::vector<cplx>& x, cplx b, const std::vector<cplx>& y) {
  std::vector<cplx> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

// (cos(J dt) - i s sin(J dt) sigma_q^alpha tau_d^beta) |joint>
StateVector couple(const StateVector& joint, int q, int detector, const SteeringConfig& k, double j, double dt) {
  const StateVector flipped = apply_pauli(apply_pauli(joint, q, k.alpha), detector, k.beta);
  return StateVector(joint.n_qubits(), axpby(std::cos(j * dt), joint.amplitudes(),
                                             cplx(0.0, -k.sign * std::sin(j * dt)), flipped.amplitudes()));
}

Eigen::Matrix2cd pauli_matrix(int mu) {
  Eigen::Matrix2cd m;
  switch (mu) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

template <typename A, typename B>
Eigen::MatrixXcd kron(const A& a, const B& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

StateVector joint_evolved_state(const StateVector& state, const PairConfig& pc) {
  const int n = state.n_qubits();
  check_pair_config(pc, n);
  if (n + 2 > kMaxQubits) throw std::invalid_argument("joint register too large");
  std::vector<cplx> amps(state.dim() * 4);
  for (std::size_t s = 0; s < state.dim(); ++s) amps[s << 2] = state[s];
  StateVector joint(n + 2, std::move(amps));
  joint = couple(joint, pc.n, n + 1, pc.k_n, pc.j_n, pc.dt);
  joint = couple(joint, pc.m, n + 2, pc.k_m, pc.j_m, pc.dt);
  return joint;
}

std::array<Branch, 4> exact_pair_step(const StateVector& state, const PairConfig& pc) {
  const StateVector joint = joint_evolved_state(state, pc);
  const double r = 1.0 / std::sqrt(2.0);
  std::array<Branch, 4> out;
  for (int i = 0; i < 4; ++i) {
    const MeasurementOutcome o = kOutcomes[static_cast<std::size_t>(i)];
    // <Phi_{xi,eta}| on detector index d = 2 d_n + d_m
    std::array<double, 4> bra{};
    if (o.xi == 0) { bra[0] = r; bra[3] = o.eta * r; }
    else { bra[1] = r; bra[2] = o.eta * r; }
    std::vector<cplx> amps(state.dim());
    double p = 0.0;
    for (std::size_t s = 0; s < state.dim(); ++s) {
      cplx acc = 0.0;
      for (std::size_t d = 0; d < 4; ++d) acc += bra[d] * joint[(s << 2) | d];
      amps[s] = acc;
      p += std::norm(acc);
    }
    Branch& b = out[static_cast<std::size_t>(i)];
    b.outcome = o;
    b.probability = p;
    if (p > 1e-300) b.state = StateVector(state.n_qubits(), std::move(amps));
  }
  return out;
}

double brute_force_expected_dC(const StateVector& state, const StateVector& target, const PairConfig& pc,
                               const CostWeights& weights) {
  const BlochTensor tb = bloch_from_state(target);
  const double before = total_cost(bloch_from_state(state), tb, weights);
  const auto probs = outcome_probabilities(state, pc);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double p = probs[static_cast<std::size_t>(i)];
    if (p <= 0.0) continue;
    const MeasurementOutcome o = outcome_from_index(i);
    if (o.xi == 1 && expectation_cdc(state, pc, o.eta) <= 1e-14) continue;
    const StateVector after = sse_step(state, pc, o);
    acc += p * (total_cost(bloch_from_state(after), tb, weights) - before);
  }
  return acc;
}

double pair_negativity(const StateVector& state, int a, int b) {
  const auto rdm = partial_trace(state, {std::min(a, b), std::max(a, b)}).matrix;
  Eigen::Matrix4cd pt;
  for (int i1 = 0; i1 < 2; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) pt(2 * i1 + i2, 2 * j1 + j2) = rdm(2 * i1 + j2, 2 * j1 + i2);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(pt, Eigen::EigenvaluesOnly);
  double neg = 0.0;
  for (int i = 0; i < 4; ++i) neg += std::max(0.0, -solver.eigenvalues()[i]);
  return neg;
}

std::array<double, 2> schmidt_coefficients(const StateVector& st) {
  if (st.n_qubits() != 2) throw std::invalid_argument("Schmidt decomposition here is for two qubits");
  Eigen::Matrix2cd c;
  c << st[0], st[1], st[2], st[3];
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(c);
  return {svd.singularValues()[0], svd.singularValues()[1]};
}

Eigen::Matrix4cd single_detector_kraus(double theta, const SingleDetectorAngles& ang, Axis a1, Axis a2, double j,
                                       double dt, int xi) {
  if (xi != 1 && xi != -1) throw std::invalid_argument("single-detector outcome must be +1 or -1");
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  // ordering: qubit 1, qubit 2, detector
  const Eigen::MatrixXcd h = j * (std::cos(theta) * kron(kron(pauli_matrix(axis_index(a1)), id), pauli_matrix(3)) +
                                  std::sin(theta) * kron(kron(id, pauli_matrix(axis_index(a2))), pauli_matrix(1)));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  Eigen::VectorXcd phases(8);
  for (int i = 0; i < 8; ++i) phases[i] = std::polar(1.0, -dt * solver.eigenvalues()[i]);
  const Eigen::MatrixXcd u = solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();

  Eigen::Vector2cd init(std::cos(ang.eta), std::polar(std::sin(ang.eta), ang.psi));
  Eigen::Vector2cd out;
  if (xi == 1) out << std::cos(ang.eta_t), std::polar(std::sin(ang.eta_t), ang.psi_t);
  // orthogonal complement of the + state; a conjugated phase here would break completeness for psi_t != 0
  else out << std::sin(ang.eta_t), -std::polar(std::cos(ang.eta_t), ang.psi_t);

  Eigen::Matrix4cd k;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      cplx acc = 0.0;
      for (int dr = 0; dr < 2; ++dr)
        for (int dc = 0; dc < 2; ++dc) acc += std::conj(out[dr]) * u(2 * r + dr, 2 * c + dc) * init[dc];
      k(r, c) = acc;
    }
  return k;
}

SingleDetectorResult single_detector_step(const StateVector& st, double theta, const SingleDetectorAngles& angles,
                                          Axis a1, Axis a2, double j, double dt, int xi) {
  if (st.n_qubits() != 2) throw std::invalid_argument("single-detector protocol is defined for N = 2");
  if (theta < 0.0 || theta > std::numbers::pi / 2 + 1e-15) throw std::invalid_argument("theta must lie in [0, pi/2]");
  const Eigen::Matrix4cd k = single_detector_kraus(theta, angles, a1, a2, j, dt, xi);
  Eigen::Vector4cd psi(st[0], st[1], st[2], st[3]);
  const Eigen::Vector4cd phi = k * psi;
  SingleDetectorResult res;
  res.probability = phi.squaredNorm();
  if (res.probability > 1e-300) res.state = StateVector(2, {phi[0], phi[1], phi[2], phi[3]});
  return res;
}

std::array<cplx, 16> pauli_decomposition(const Eigen::Matrix4cd& op) {
  std::array<cplx, 16> c{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Eigen::MatrixXcd p = kron(pauli_matrix(a), pauli_matrix(b));
      c[static_cast<std::size_t>(pair_slot(a, b))] = (p.adjoint() * op).trace() / 4.0;
    }
  return c;
}

}  // namespace qsteer
