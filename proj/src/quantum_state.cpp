#include "qsteer/quantum_state.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qsteer {

namespace {

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = std::stod(item, &used);
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_ < 1 || n_ > kMaxQubits) throw std::invalid_argument("qubit count must be in 1.." + std::to_string(kMaxQubits));
  if (amps_.size() != (std::size_t{1} << n_)) throw std::invalid_argument("amplitude count must be 2^N");
  double norm2 = 0.0;
  for (const auto& a : amps_) norm2 += std::norm(a);
  if (!(norm2 > 1e-300) || !std::isfinite(norm2)) throw std::invalid_argument("state has zero or non-finite norm");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amps_) a *= inv;
}

StateVector StateVector::basis(int n_qubits, std::uint32_t index) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw std::invalid_argument("bad qubit count");
  if (index >= (1u << n_qubits)) throw std::out_of_range("basis index out of range");
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  amps[index] = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::from_bits(const std::string& bits) {
  std::uint32_t idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring must contain only 0 and 1");
    idx = (idx << 1) | static_cast<std::uint32_t>(c == '1');
  }
  return basis(static_cast<int>(bits.size()), idx);
}

StateVector make_target(const TargetStateSpec& spec, int n) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("bad qubit count");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<cplx> amps(dim);
  if (auto* p = std::get_if<ProductSpec>(&spec)) {
    if (p->bits.empty()) return StateVector::basis(n, 0);
    if (static_cast<int>(p->bits.size()) != n) throw std::invalid_argument("product bitstring length must equal N");
    return StateVector::from_bits(p->bits);
  }
  if (auto* b = std::get_if<BellSpec>(&spec)) {
    if (n != 2) throw std::invalid_argument("Bell target requires N = 2");
    if ((b->xi != 0 && b->xi != 1) || (b->eta != 1 && b->eta != -1))
      throw std::invalid_argument("Bell labels must be xi in {0,1}, eta in {+1,-1}");
    if (b->xi == 0) { amps[0] = 1.0; amps[3] = static_cast<double>(b->eta); }
    else { amps[1] = 1.0; amps[2] = static_cast<double>(b->eta); }
    return StateVector(n, std::move(amps));
  }
  if (std::holds_alternative<GhzSpec>(spec)) {
    if (n < 2) throw std::invalid_argument("GHZ target requires N >= 2");
    amps[0] = 1.0;
    amps[dim - 1] = 1.0;
    return StateVector(n, std::move(amps));
  }
  if (std::holds_alternative<WSpec>(spec)) {
    if (n < 2) throw std::invalid_argument("W target requires N >= 2");
    for (int q = 0; q < n; ++q) amps[std::size_t{1} << q] = 1.0;
    return StateVector(n, std::move(amps));
  }
  if (auto* bt = std::get_if<BellTypeSpec>(&spec)) {
    if (n != 2) throw std::invalid_argument("Bell-type target requires N = 2");
    if (!(bt->u >= 0.0 && bt->u <= 1.0)) throw std::invalid_argument("Bell-type parameter u must lie in [0,1]");
    amps[0] = bt->u;
    amps[3] = std::polar(std::sqrt(1.0 - bt->u * bt->u), bt->theta);
    return StateVector(n, std::move(amps));
  }
  const auto& c = std::get<CustomSpec>(spec);
  if (c.amplitudes.size() != dim) throw std::invalid_argument("custom amplitudes must have length 2^N");
  return StateVector(n, c.amplitudes);
}

std::string describe_target(const TargetStateSpec& spec) {
  std::ostringstream os;
  if (auto* p = std::get_if<ProductSpec>(&spec)) os << (p->bits.empty() ? std::string("zeros") : "product:" + p->bits);
  else if (auto* b = std::get_if<BellSpec>(&spec)) os << "bell:" << b->xi << ',' << b->eta;
  else if (std::holds_alternative<GhzSpec>(spec)) os << "ghz";
  else if (std::holds_alternative<WSpec>(spec)) os << "w";
  else if (auto* bt = std::get_if<BellTypeSpec>(&spec)) os << "belltype:" << bt->u << ',' << bt->theta;
  else os << "custom";
  return os.str();
}

TargetStateSpec parse_target(const std::string& raw) {
  const std::string text = lower(raw);
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  if (kind == "zeros") return ProductSpec{};
  if (kind == "product") return ProductSpec{args};
  if (kind == "ghz") return GhzSpec{};
  if (kind == "w") return WSpec{};
  if (kind == "bell") {
    if (args.empty()) return BellSpec{};
    auto v = parse_number_list(args);
    if (v.size() != 2) throw std::invalid_argument("bell:<xi>,<eta> expects two values");
    return BellSpec{static_cast<int>(v[0]), static_cast<int>(v[1])};
  }
  if (kind == "belltype") {
    auto v = parse_number_list(args);
    if (v.size() != 2) throw std::invalid_argument("belltype:<u>,<theta> expects two values");
    return BellTypeSpec{v[0], v[1]};
  }
  throw std::invalid_argument("unknown state spec '" + raw + "'");
}

StateVector apply_pauli(const StateVector& state, int qubit, Axis axis) {
  const int n = state.n_qubits();
  if (qubit < 1 || qubit > n) throw std::out_of_range("qubit out of range");
  const std::uint32_t bit = 1u << (n - qubit);
  const auto& in = state.amplitudes();
  std::vector<cplx> out(in.size());
  for (std::uint32_t s = 0; s < in.size(); ++s) {
    const bool one = (s & bit) != 0;
    switch (axis) {
      case Axis::x: out[s ^ bit] = in[s]; break;
      case Axis::y: out[s ^ bit] = in[s] * cplx(0.0, one ? -1.0 : 1.0); break;
      case Axis::z: out[s] = one ? -in[s] : in[s]; break;
    }
  }
  return StateVector(n, std::move(out));
}

cplx inner_product(const StateVector& bra, const StateVector& ket) {
  if (bra.n_qubits() != ket.n_qubits()) throw std::invalid_argument("dimension mismatch");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < bra.dim(); ++i) acc += std::conj(bra[i]) * ket[i];
  return acc;
}

double fidelity(const StateVector& state, const StateVector& target) {
  return std::min(1.0, std::abs(inner_product(target, state)));
}

void check_subset(const std::vector<int>& subset, int n, bool require_proper) {
  if (subset.empty()) throw std::invalid_argument("qubit subset must be nonempty");
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 1 || subset[i] > n) throw std::invalid_argument("qubit subset entry out of range");
    if (i > 0 && subset[i] <= subset[i - 1]) throw std::invalid_argument("qubit subset must be strictly increasing");
  }
  if (require_proper && static_cast<int>(subset.size()) == n)
    throw std::invalid_argument("qubit subset must be a proper subset");
}

ReducedDensityMatrix partial_trace(const StateVector& state, const std::vector<int>& keep) {
  const int n = state.n_qubits();
  check_subset(keep, n, false);
  const int r = static_cast<int>(keep.size());
  std::uint32_t keep_mask = 0;
  for (int q : keep) keep_mask |= 1u << (n - q);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index{1} << r, Eigen::Index{1} << (n - r));
  for (std::uint32_t s = 0; s < state.dim(); ++s) {
    std::uint32_t k = 0, t = 0;
    for (int q = 1; q <= n; ++q) {
      const std::uint32_t b = (s >> (n - q)) & 1u;
      if (keep_mask & (1u << (n - q))) k = (k << 1) | b;
      else t = (t << 1) | b;
    }
    m(k, t) = state[s];
  }
  return {keep, m * m.adjoint()};
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lam = solver.eigenvalues()[i];
    if (lam > 1e-12) s -= lam * std::log(lam);
  }
  return s;
}

double entanglement_entropy(const StateVector& state, const std::vector<int>& subset_a) {
  check_subset(subset_a, state.n_qubits(), true);
  return von_neumann_entropy(partial_trace(state, subset_a).matrix);
}

std::vector<int> default_entropy_subset(int n) {
  std::vector<int> a;
  for (int q = 1; q <= std::max(1, n / 2); ++q) a.push_back(q);
  return a;
}

}  // namespace qsteer
