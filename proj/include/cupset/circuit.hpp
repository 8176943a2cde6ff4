#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cupset/dense_operator.hpp"
#include "cupset/rng.hpp"

namespace cupset {

enum class GateId { H, X, SX, RY, RZ, CNOT, CSWAP, SWAP, RESET, UNITARY };

std::string to_string(GateId g);

struct GateOp {
  GateId gate = GateId::H;
  std::vector<int> qubits;
  double param = 0.0;
  // UNITARY only; factor order follows `qubits`.
  DenseOperator matrix;
  // Optional noise key overriding the gate name (e.g. "clifford").
  std::string label;
};

// Qubit 0 is the most significant tensor factor.
struct CircuitSpec {
  int n_qubits = 1;
  std::vector<GateOp> ops;
  // Z-basis readout of one qubit; -1 means no measurement.
  int measured = -1;

  explicit CircuitSpec(int n = 1) : n_qubits(n) {}

  CircuitSpec& h(int q) { return push({GateId::H, {q}, 0.0, {}, {}}); }
  CircuitSpec& x(int q) { return push({GateId::X, {q}, 0.0, {}, {}}); }
  CircuitSpec& sx(int q) { return push({GateId::SX, {q}, 0.0, {}, {}}); }
  CircuitSpec& ry(int q, double theta) { return push({GateId::RY, {q}, theta, {}, {}}); }
  CircuitSpec& rz(int q, double theta) { return push({GateId::RZ, {q}, theta, {}, {}}); }
  CircuitSpec& cnot(int c, int t) { return push({GateId::CNOT, {c, t}, 0.0, {}, {}}); }
  CircuitSpec& cswap(int c, int a, int b) { return push({GateId::CSWAP, {c, a, b}, 0.0, {}, {}}); }
  CircuitSpec& swap(int a, int b) { return push({GateId::SWAP, {a, b}, 0.0, {}, {}}); }
  CircuitSpec& reset(int q) { return push({GateId::RESET, {q}, 0.0, {}, {}}); }
  CircuitSpec& unitary(const DenseOperator& m, std::vector<int> qubits, std::string label = "") {
    return push({GateId::UNITARY, std::move(qubits), 0.0, m, std::move(label)});
  }
  CircuitSpec& measure(int q) {
    measured = q;
    return *this;
  }
  // Appends another circuit's ops with its qubit i mapped to qubits[i].
  CircuitSpec& append(const CircuitSpec& other, const std::vector<int>& qubits);

 private:
  CircuitSpec& push(GateOp op) {
    ops.push_back(std::move(op));
    return *this;
  }
};

// Throws DimensionError on out-of-range or repeated qubits, non-finite
// parameters, or mis-shaped/non-unitary UNITARY matrices.
void validate(const CircuitSpec& spec);

// Full unitary of a circuit without RESET ops.
DenseOperator circuit_unitary(const CircuitSpec& spec);

struct NoiseModel {
  // Depolarizing probability keyed by gate name ("H", "CNOT", ...) or op label.
  std::map<std::string, double> gate_depolarizing;
  bool reset_incoherent = true;
  double spam_prep_error = 0.0;
  double spam_meas_error = 0.0;
  // 0 means exact expectation values.
  std::uint64_t shots = 200;
  std::uint64_t seed = 0;

  bool operator==(const NoiseModel&) const = default;

  static NoiseModel noiseless(std::uint64_t shots = 0) {
    NoiseModel m;
    m.shots = shots;
    return m;
  }
  // Depolarizing probability for an op (label first, then gate name).
  double depolarizing_for(const GateOp& op) const;
};

// Throws Error when a probability leaves [0,1] or the reset is marked coherent.
void validate(const NoiseModel& noise);

// Vectorized density matrix rho(r, c) -> v[r * 2^n + c].
class DensityMatrix {
 public:
  explicit DensityMatrix(const DenseOperator& rho);

  int n_qubits() const noexcept { return n_; }
  DenseOperator to_operator() const;

  void apply_unitary(const DenseOperator& u, const std::vector<int>& qubits);
  // rho -> (1-p) rho + p (tr_S rho) x I/2^|S|
  void depolarize(const std::vector<int>& qubits, double p);
  void reset(int q);
  // Probability that qubit q reads 1 in the Z basis.
  double prob_one(int q) const;
  double trace() const;

 private:
  unsigned row_bit(int q) const { return static_cast<unsigned>(2 * n_ - 1 - q); }
  unsigned col_bit(int q) const { return static_cast<unsigned>(n_ - 1 - q); }

  int n_;
  std::vector<cplx> v_;
};

struct RunResult {
  DenseOperator state;
  // Readout-noise-adjusted probability of reading 1 on the measured qubit.
  double p_one = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t ones = 0;
  // Exact <Z> when shots == 0, otherwise the shot estimate.
  double z_estimate = 0.0;
  double z_exact = 0.0;
};

// Ideal gate matrix of an op (for UNITARY the stored matrix).
DenseOperator gate_matrix(const GateOp& op);

// Evolves rho through the ops (each followed by its depolarizing noise) and
// samples the measured qubit. Uses rng for the shot draws.
RunResult run_circuit(const CircuitSpec& spec, const NoiseModel& noise, const DenseOperator& input_state,
                      SeededRng& rng);
// Same, drawing shots from a stream seeded by noise.seed.
RunResult run_circuit(const CircuitSpec& spec, const NoiseModel& noise, const DenseOperator& input_state);

// Pre-shot state only: gates, gate noise and preparation error.
DenseOperator evolve(const CircuitSpec& spec, const NoiseModel& noise, const DenseOperator& input_state);

// Readout-adjusted P(1) of the measured qubit of an evolved state.
double readout_prob_one(const DenseOperator& rho, int qubit, int n_qubits, double meas_error);

// Draws shots for a readout probability; returns (ones, <Z> estimate).
std::pair<std::uint64_t, double> sample_z(double p_one, std::uint64_t shots, SeededRng& rng);

// |0...0><0...0| on n qubits.
DenseOperator zero_state(int n_qubits);

// Two-parameter family on (A, B), built from RY and CNOT gates.
CircuitSpec figure3_circuit(double alpha, double beta);

}  // namespace cupset
