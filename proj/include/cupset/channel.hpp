#pragma once

#include <utility>
#include <vector>

#include "cupset/dense_operator.hpp"

namespace cupset {

// CPTP map stored as a Kraus list; each Kraus operator is d_out x d_in.
class QuantumChannel {
 public:
  QuantumChannel(Index d_in, Index d_out, std::vector<DenseOperator> kraus);

  Index d_in() const noexcept { return d_in_; }
  Index d_out() const noexcept { return d_out_; }
  const std::vector<DenseOperator>& kraus() const noexcept { return kraus_; }

  DenseOperator apply(const DenseOperator& rho) const;
  // Row-major Liouville matrix: vec(E(rho)) = L vec(rho).
  DenseOperator superoperator() const;

 private:
  Index d_in_;
  Index d_out_;
  std::vector<DenseOperator> kraus_;
};

DenseOperator apply(const QuantumChannel& ch, const DenseOperator& rho);

struct PauliTransferBlock {
  Index d_in = 0;
  Index d_out = 0;
  Eigen::MatrixXd t;        // (d_out^2 - 1) x (d_in^2 - 1)
  Eigen::VectorXd affine;   // image of the maximally mixed input, traceless coordinates
  bool trace_row_preserved = true;
};

// Orthonormal traceless Hermitian basis: X/sqrt2, Y/sqrt2, Z/sqrt2 for a qubit,
// generalized Gell-Mann matrices over sqrt2 otherwise.
std::vector<DenseOperator> traceless_basis(Index d);

PauliTransferBlock to_ptm(const QuantumChannel& ch);
// (E tensor id) applied to the normalized maximally entangled state; output factor first.
DenseOperator choi_state(const QuantumChannel& ch);

// second after first.
QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first);
// Convex mixture sum_i w_i ch_i.
QuantumChannel mix(const std::vector<std::pair<double, QuantumChannel>>& parts);
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);

QuantumChannel identity_channel(Index d);
QuantumChannel unitary_channel(const DenseOperator& u);
QuantumChannel isometry_channel(const DenseOperator& v);
// rho -> tr[rho] sigma
QuantumChannel constant_channel(Index d_in, const DenseOperator& sigma);
// (1-p) rho + p tr[rho] I/d
QuantumChannel depolarizing_channel(Index d, double p);
// Output-side depolarization of `ch` with strength p.
QuantumChannel depolarize_output(const QuantumChannel& ch, double p);

// Channel onto the `keep` subsystems of a channel whose output splits as `dims`.
QuantumChannel trace_out(const QuantumChannel& ch, const std::vector<int>& dims,
                         const std::vector<int>& keep);

// (E, Ebar) with E = tr_B[U (rho x ancilla) U^dagger] and Ebar = tr_A[...].
std::pair<QuantumChannel, QuantumChannel> marginal_channels(const DenseOperator& u_ab, Index d_A,
                                                            Index d_B, const DenseOperator& ancilla);

// Global 1 -> 2 qubit channel rho -> U (rho x ancilla) U^dagger.
QuantumChannel dilated_channel(const DenseOperator& u_ab, const DenseOperator& ancilla);

// Two-qubit unitaries of the boundary and circuit families. Qubit 0 carries the
// input, qubit 1 the ancilla.
DenseOperator isometry_family_figure3(double alpha, double beta);
DenseOperator isometry_family_generic(double alpha, double beta, double gamma);
DenseOperator family_swap_alpha(double alpha);
DenseOperator family_cnot_ab_alpha(double alpha);
DenseOperator family_cnotba_cnotab(double alpha);
// CNOT_AB^alpha . CNOT_BA . CNOT_AB
DenseOperator family_cnot_alpha_swaplike(double alpha);

// Hiding map 2 -> 8: rho -> 1/4 sum_i P_i rho P_i (x) |i><i|.
QuantumChannel pauli_hiding_channel();
// Recovery 8 -> 2 with Kraus P_i (x) <i|.
QuantumChannel pauli_recovery_channel();
// Isometry 2 -> 32 whose output splits as A (2) | B (4) | C (4); tracing C gives the hiding map.
DenseOperator pauli_hiding_dilation();

}  // namespace cupset
