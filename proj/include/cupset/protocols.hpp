#pragma once

#include <vector>

#include "cupset/circuit.hpp"
#include "cupset/cupset.hpp"
#include "cupset/decay_fit.hpp"

namespace cupset {

struct ShotEstimate {
  double value = 0.0;
  // Shot-noise standard error (0 for exact expectations).
  double stderr_ = 0.0;
};

// Unbiased estimate of m^2 from a shot mean of +-1 outcomes; exact when shots == 0.
double unbiased_square(double m_hat, std::uint64_t shots);
// Variance estimate of a shot mean, (1 - m^2)/(N - 1); 0 when shots == 0.
double shot_mean_variance(double m_hat, std::uint64_t shots);

// SWAP test between the states prepared by two circuits from |0...0>. The first
// `state_qubits` qubits of each circuit hold the state, the rest are discarded
// (-1: all qubits). Returns the <Z> estimate of tr[rho sigma].
ShotEstimate swap_test(const CircuitSpec& rho_prep, const CircuitSpec& sigma_prep, const NoiseModel& noise,
                       SeededRng& rng, int state_qubits = -1);
ShotEstimate swap_test(const CircuitSpec& rho_prep, const CircuitSpec& sigma_prep, const NoiseModel& noise,
                       int state_qubits = -1);

struct DirectCupEstimate {
  CupSample cup;
  double u_stderr = 0.0;
  double ubar_stderr = 0.0;
  // Purities behind the estimate: outputs at the maximally mixed input for
  // (E, Ebar), and Choi-state purities for (E, Ebar) when measured.
  ShotEstimate purity_out_A, purity_out_B, purity_choi_A, purity_choi_B;
  // Width of the largest circuit used.
  int max_qubits = 0;
};

// Four-setting SWAP tests on two copies of U(|i> x |0>) for each marginal,
// combined through the complementary-channel unitarity identity.
DirectCupEstimate estimate_cup_direct_complementarity(const DenseOperator& u_ab, const NoiseModel& noise);

// Choi-state SWAP test plus four-setting output purity per marginal. The
// ancilla is |0><0| or I/2; the latter is prepared as half of a Bell pair.
DirectCupEstimate estimate_cup_direct_choi(const DenseOperator& u_ab, const DenseOperator& ancilla,
                                           const NoiseModel& noise);

enum class UrbTarget { E, Ebar };

// Interleaved block for the channel rho -> tr_B U (rho x ancilla) U^dagger on
// qubit 0 (Ebar: followed by SWAP). With mixed_ancilla a third qubit purifies
// the I/2 ancilla. Qubits other than 0 are reset by the protocol.
CircuitSpec interleave_block(const DenseOperator& u_ab, UrbTarget target, bool mixed_ancilla = false);

// Protocol circuit: cliffords[0], block, cliffords[1], ..., block, cliffords.back(),
// with every non-system qubit reset alongside each Clifford; measures qubit 0.
CircuitSpec urb_sequence(const CircuitSpec& block, const std::vector<DenseOperator>& cliffords);

struct UrbOptions {
  // Protocol 1: average (m_A)^2 over the six Pauli eigenstates and three Pauli
  // observables instead of |0> and Z only.
  bool average_states = false;
};

// Squared-signal decay over random Clifford sequences interleaved with the
// block, fitted to c0 + c1 s^(k-1).
DecayFit run_interleaved_urb_circuit(const CircuitSpec& block, const std::vector<int>& lengths, int n_sequences,
                                     const NoiseModel& noise, const UrbOptions& opts = {});
DecayFit run_interleaved_urb(const DenseOperator& u_ab, UrbTarget target, const std::vector<int>& lengths,
                             int n_sequences, const NoiseModel& noise, const UrbOptions& opts = {});

// Efficient variant: per sequence, the mean over Pauli pairs (i, j) of
// (tr[P_j C(rho_+i)] - tr[P_j C(rho_-i)])^2 / 4, fitted to c1 s^(k-1).
DecayFit run_efficient_urb(const CircuitSpec& channel_circuit, const std::vector<int>& lengths, int n_sequences,
                           const NoiseModel& noise);

}  // namespace cupset
