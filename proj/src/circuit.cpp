#include "cupset/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "cupset/errors.hpp"
#include "cupset/gates.hpp"
#include "cupset/simd/kernels.hpp"

namespace cupset {

std::string to_string(GateId g) {
  switch (g) {
    case GateId::H: return "H";
    case GateId::X: return "X";
    case GateId::SX: return "SX";
    case GateId::RY: return "RY";
    case GateId::RZ: return "RZ";
    case GateId::CNOT: return "CNOT";
    case GateId::CSWAP: return "CSWAP";
    case GateId::SWAP: return "SWAP";
    case GateId::RESET: return "RESET";
    case GateId::UNITARY: return "UNITARY";
  }
  return "?";
}

CircuitSpec& CircuitSpec::append(const CircuitSpec& other, const std::vector<int>& qubits) {
  if (static_cast<int>(qubits.size()) != other.n_qubits)
    throw DimensionError("append: qubit map size differs from circuit width");
  for (GateOp op : other.ops) {
    for (int& q : op.qubits) q = qubits.at(static_cast<std::size_t>(q));
    ops.push_back(std::move(op));
  }
  return *this;
}

namespace {

std::size_t arity(GateId g) {
  switch (g) {
    case GateId::CNOT:
    case GateId::SWAP: return 2;
    case GateId::CSWAP: return 3;
    case GateId::UNITARY: return 0;
    default: return 1;
  }
}

}  // namespace

void validate(const CircuitSpec& spec) {
  if (spec.n_qubits < 1) throw DimensionError("circuit needs at least one qubit");
  for (const auto& op : spec.ops) {
    const std::size_t k = arity(op.gate);
    if (k != 0 && op.qubits.size() != k) throw DimensionError(to_string(op.gate) + ": wrong qubit count");
    if (op.qubits.empty()) throw DimensionError(to_string(op.gate) + ": no qubits");
    std::set<int> seen;
    for (int q : op.qubits) {
      if (q < 0 || q >= spec.n_qubits) throw DimensionError(to_string(op.gate) + ": qubit out of range");
      if (!seen.insert(q).second) throw DimensionError(to_string(op.gate) + ": repeated qubit");
    }
    if (!std::isfinite(op.param)) throw DimensionError(to_string(op.gate) + ": non-finite parameter");
    if (op.gate == GateId::UNITARY) {
      const Index d = Index{1} << op.qubits.size();
      if (op.matrix.rows() != d || op.matrix.cols() != d)
        throw DimensionError("UNITARY: matrix size does not match qubit count");
      if (!is_unitary(op.matrix, 1e-9)) throw DimensionError("UNITARY: matrix is not unitary");
    }
  }
  if (spec.measured < -1 || spec.measured >= spec.n_qubits)
    throw DimensionError("measured qubit out of range");
}

DenseOperator gate_matrix(const GateOp& op) {
  switch (op.gate) {
    case GateId::H: return gates::H();
    case GateId::X: return gates::X();
    case GateId::SX: return gates::SX();
    case GateId::RY: return gates::RY(op.param);
    case GateId::RZ: return gates::RZ(op.param);
    case GateId::CNOT: return gates::CNOT_AB();
    case GateId::CSWAP: return gates::CSWAP();
    case GateId::SWAP: return gates::SWAP();
    case GateId::UNITARY: return op.matrix;
    case GateId::RESET: break;
  }
  throw Error("RESET has no gate matrix");
}

DenseOperator circuit_unitary(const CircuitSpec& spec) {
  validate(spec);
  DenseOperator u = DenseOperator::identity(Index{1} << spec.n_qubits);
  for (const auto& op : spec.ops) u = gates::embed(gate_matrix(op), op.qubits, spec.n_qubits) * u;
  return u;
}

double NoiseModel::depolarizing_for(const GateOp& op) const {
  if (!op.label.empty()) {
    auto it = gate_depolarizing.find(op.label);
    if (it != gate_depolarizing.end()) return it->second;
  }
  auto it = gate_depolarizing.find(to_string(op.gate));
  return it == gate_depolarizing.end() ? 0.0 : it->second;
}

void validate(const NoiseModel& noise) {
  auto check = [](double p, const std::string& what) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error("noise probability out of [0,1]: " + what);
  };
  for (const auto& [k, p] : noise.gate_depolarizing) check(p, k);
  check(noise.spam_prep_error, "spam_prep_error");
  check(noise.spam_meas_error, "spam_meas_error");
  if (!noise.reset_incoherent) throw Error("coherent resets are not supported");
}

DensityMatrix::DensityMatrix(const DenseOperator& rho) {
  if (!rho.square()) throw DimensionError("density matrix must be square");
  const Index d = rho.rows();
  int n = 0;
  while ((Index{1} << n) < d) ++n;
  if ((Index{1} << n) != d || n < 1) throw DimensionError("density matrix dimension must be 2^n, n >= 1");
  n_ = n;
  v_.resize(static_cast<std::size_t>(d * d));
  for (Index r = 0; r < d; ++r)
    for (Index c = 0; c < d; ++c) v_[static_cast<std::size_t>(r * d + c)] = rho(r, c);
}

DenseOperator DensityMatrix::to_operator() const {
  const Index d = Index{1} << n_;
  DenseOperator out(d, d);
  for (Index r = 0; r < d; ++r)
    for (Index c = 0; c < d; ++c) out(r, c) = v_[static_cast<std::size_t>(r * d + c)];
  return out;
}

void DensityMatrix::apply_unitary(const DenseOperator& u, const std::vector<int>& qubits) {
  const auto& k = simd::kernels();
  const unsigned bits = static_cast<unsigned>(2 * n_);
  const std::vector<cplx> m = u.row_major();
  std::vector<cplx> mc(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) mc[i] = std::conj(m[i]);
  if (qubits.size() == 1) {
    k.apply_1q(v_.data(), bits, row_bit(qubits[0]), m.data());
    k.apply_1q(v_.data(), bits, col_bit(qubits[0]), mc.data());
  } else if (qubits.size() == 2) {
    k.apply_2q(v_.data(), bits, row_bit(qubits[0]), row_bit(qubits[1]), m.data());
    k.apply_2q(v_.data(), bits, col_bit(qubits[0]), col_bit(qubits[1]), mc.data());
  } else {
    std::vector<unsigned> rb, cb;
    for (int q : qubits) {
      rb.push_back(row_bit(q));
      cb.push_back(col_bit(q));
    }
    const auto kk = static_cast<unsigned>(qubits.size());
    simd::apply_kq(v_.data(), bits, rb.data(), kk, m.data());
    simd::apply_kq(v_.data(), bits, cb.data(), kk, mc.data());
  }
}

void DensityMatrix::depolarize(const std::vector<int>& qubits, double p) {
  if (p <= 0.0) return;
  const auto& k = simd::kernels();
  const unsigned bits = static_cast<unsigned>(2 * n_);
  std::vector<cplx> mixed = v_;
  for (int q : qubits) k.full_depolarize(mixed.data(), bits, row_bit(q), col_bit(q));
  k.axpby(p, mixed.data(), 1.0 - p, v_.data(), v_.size());
}

void DensityMatrix::reset(int q) {
  simd::kernels().reset(v_.data(), static_cast<unsigned>(2 * n_), row_bit(q), col_bit(q));
}

double DensityMatrix::prob_one(int q) const {
  const std::size_t d = std::size_t{1} << n_;
  const std::size_t mask = std::size_t{1} << (n_ - 1 - q);
  double p = 0.0;
  for (std::size_t r = 0; r < d; ++r)
    if (r & mask) p += v_[r * d + r].real();
  return p;
}

double DensityMatrix::trace() const {
  const std::size_t d = std::size_t{1} << n_;
  double t = 0.0;
  for (std::size_t r = 0; r < d; ++r) t += v_[r * d + r].real();
  return t;
}

namespace {

DensityMatrix evolve_dm(const CircuitSpec& spec, const NoiseModel& noise, const DenseOperator& input_state) {
  validate(spec);
  validate(noise);
  const Index d = Index{1} << spec.n_qubits;
  if (input_state.rows() != d || input_state.cols() != d)
    throw DimensionError("input state does not match circuit width");
  DensityMatrix dm(input_state);
  for (int q = 0; q < spec.n_qubits; ++q) dm.depolarize({q}, noise.spam_prep_error);
  for (const auto& op : spec.ops) {
    if (op.gate == GateId::RESET) {
      dm.reset(op.qubits[0]);
    } else {
      dm.apply_unitary(gate_matrix(op), op.qubits);
    }
    dm.depolarize(op.qubits, noise.depolarizing_for(op));
  }
  return dm;
}

double flip(double p_one, double e) { return p_one * (1.0 - e) + (1.0 - p_one) * e; }

}  // namespace

DenseOperator evolve(const CircuitSpec& spec, const NoiseModel& noise, const DenseOperator& input_state) {
  return evolve_dm(spec, noise, input_state).to_operator();
}

double readout_prob_one(const DenseOperator& rho, int qubit, int n_qubits, double meas_error) {
  const Index d = Index{1} << n_qubits;
  if (rho.rows() != d || qubit < 0 || qubit >= n_qubits) throw DimensionError("readout: bad qubit or state");
  const Index mask = Index{1} << (n_qubits - 1 - qubit);
  double p = 0.0;
  for (Index r = 0; r < d; ++r)
    if (r & mask) p += rho(r, r).real();
  return flip(std::clamp(p, 0.0, 1.0), meas_error);
}

std::pair<std::uint64_t, double> sample_z(double p_one, std::uint64_t shots, SeededRng& rng) {
  p_one = std::clamp(p_one, 0.0, 1.0);
  if (shots == 0) return {0, 1.0 - 2.0 * p_one};
  const std::uint64_t ones = rng.binomial(shots, p_one);
  return {ones, 1.0 - 2.0 * static_cast<double>(ones) / static_cast<double>(shots)};
}

RunResult run_circuit(const CircuitSpec& spec, const NoiseModel& noise, const DenseOperator& input_state,
                      SeededRng& rng) {
  DensityMatrix dm = evolve_dm(spec, noise, input_state);
  RunResult out;
  out.state = dm.to_operator();
  out.shots = noise.shots;
  if (spec.measured >= 0) {
    out.p_one = flip(std::clamp(dm.prob_one(spec.measured), 0.0, 1.0), noise.spam_meas_error);
    out.z_exact = 1.0 - 2.0 * out.p_one;
    const auto [ones, z] = sample_z(out.p_one, noise.shots, rng);
    out.ones = ones;
    out.z_estimate = z;
  }
  return out;
}

RunResult run_circuit(const CircuitSpec& spec, const NoiseModel& noise, const DenseOperator& input_state) {
  SeededRng rng(noise.seed);
  return run_circuit(spec, noise, input_state, rng);
}

DenseOperator zero_state(int n_qubits) {
  return DenseOperator::basis_projector(Index{1} << n_qubits, 0);
}

CircuitSpec figure3_circuit(double alpha, double beta) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  CircuitSpec c(2);
  c.ry(1, half_pi - 2.0 * alpha).cnot(0, 1).ry(1, 2.0 * beta - half_pi).cnot(1, 0);
  return c;
}

}  // namespace cupset
