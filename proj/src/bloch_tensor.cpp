#include "qsteer/bloch_tensor.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qsteer {

BlochTensor::BlochTensor(int n_qubits, std::vector<double> coeffs) : n_(n_qubits), coeffs_(std::move(coeffs)) {
  if (n_ < 1 || n_ > kMaxQubits) throw std::invalid_argument("bad qubit count");
  if (coeffs_.size() != pow4(n_)) throw std::invalid_argument("Bloch tensor needs 4^N coefficients");
}

double BlochTensor::at(const PauliString& s) const {
  if (s.n_qubits() != n_) throw std::invalid_argument("Pauli string length mismatch");
  return coeffs_[s.index()];
}

double BlochTensor::purity_sum() const {
  double acc = 0.0;
  for (double r : coeffs_) acc += r * r;
  return acc;
}

BlochTensor bloch_from_state(const StateVector& state) {
  const int n = state.n_qubits();
  const auto& c = state.amplitudes();
  std::vector<double> r(pow4(n));
  for (std::uint32_t s = 0; s < r.size(); ++s) {
    const PauliMasks m = pauli_masks(s, n);
    cplx acc = 0.0;
    for (std::uint32_t b = 0; b < c.size(); ++b) {
      const cplx term = std::conj(c[b ^ m.x_mask]) * c[b];
      acc += (std::popcount(b & m.z_mask) & 1) ? -term : term;
    }
    r[s] = (i_power(m.n_y) * acc).real();
  }
  return BlochTensor(n, std::move(r));
}

RdmBlochTensor rdm_bloch(const BlochTensor& bloch, const std::vector<int>& keep) {
  const int n = bloch.n_qubits();
  check_subset(keep, n, false);
  const int r = static_cast<int>(keep.size());
  RdmBlochTensor out{keep, std::vector<double>(pow4(r))};
  for (std::uint32_t k = 0; k < out.coeffs.size(); ++k) {
    std::uint32_t full = 0;
    for (int j = 0; j < r; ++j) full = with_digit(full, n, keep[static_cast<std::size_t>(j)], digit_at(k, r, j + 1));
    out.coeffs[k] = bloch[full];
  }
  return out;
}

ReducedDensityMatrix rdm_matrix_from_bloch(const RdmBlochTensor& rdm) {
  int r = 0;
  while (pow4(r) < rdm.coeffs.size()) ++r;
  if (pow4(r) != rdm.coeffs.size() || static_cast<int>(rdm.kept_qubits.size()) != r)
    throw std::invalid_argument("inconsistent reduced Bloch tensor");
  const Eigen::Index dim = Eigen::Index{1} << r;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  const double scale = 1.0 / static_cast<double>(dim);
  for (std::uint32_t s = 0; s < rdm.coeffs.size(); ++s) {
    const double coef = rdm.coeffs[s];
    if (coef == 0.0) continue;
    const PauliMasks m = pauli_masks(s, r);
    const cplx ph = i_power(m.n_y) * (coef * scale);
    for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(dim); ++b) {
      const bool neg = std::popcount(b & m.z_mask) & 1;
      rho(b ^ m.x_mask, b) += neg ? -ph : ph;
    }
  }
  return {rdm.kept_qubits, rho};
}

double correlator(const BlochTensor& bloch, int n, int n2, Axis a, Axis a2) {
  const int nq = bloch.n_qubits();
  if (n < 1 || n > nq || n2 < 1 || n2 > nq) throw std::out_of_range("qubit out of range");
  if (n == n2) throw std::invalid_argument("correlator needs two distinct qubits");
  std::uint32_t idx = with_digit(0, nq, n, axis_index(a));
  idx = with_digit(idx, nq, n2, axis_index(a2));
  return bloch[idx];
}

std::vector<std::uint32_t> pair_backgrounds(int n_qubits, int n, int m) {
  std::vector<std::uint32_t> out;
  out.reserve(pow4(n_qubits - 2));
  const std::uint32_t pair_mask = (3u << slot_shift(n_qubits, n)) | (3u << slot_shift(n_qubits, m));
  for (std::uint32_t s = 0; s < pow4(n_qubits); ++s)
    if ((s & pair_mask) == 0) out.push_back(s);
  return out;
}

BlochTensor apply_pair_transfer(BlochTensor bloch, int n, int m, const std::array<double, 256>& t) {
  const int nq = bloch.n_;
  const int sn = slot_shift(nq, n), sm = slot_shift(nq, m);
  std::array<std::uint32_t, 16> offs{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) offs[pair_slot(a, b)] = (static_cast<std::uint32_t>(a) << sn) | (static_cast<std::uint32_t>(b) << sm);

  auto& r = bloch.coeffs_;
  double p = 0.0;
  for (int nu = 0; nu < 16; ++nu) p += t[static_cast<std::size_t>(nu)] * r[offs[nu]];
  if (!(p > 0.0)) throw std::domain_error("pair transfer annihilates the state");
  const double inv = 1.0 / p;

  std::array<double, 16> in{}, out{};
  for (std::uint32_t base : pair_backgrounds(nq, n, m)) {
    for (int nu = 0; nu < 16; ++nu) in[nu] = r[base | offs[nu]];
    for (int mu = 0; mu < 16; ++mu) {
      double acc = 0.0;
      const double* row = &t[static_cast<std::size_t>(16 * mu)];
      for (int nu = 0; nu < 16; ++nu) acc += row[nu] * in[nu];
      out[mu] = acc * inv;
    }
    for (int mu = 0; mu < 16; ++mu) r[base | offs[mu]] = out[mu];
  }
  r[0] = 1.0;
  return bloch;
}

}  // namespace qsteer
