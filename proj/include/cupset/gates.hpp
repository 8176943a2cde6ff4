#pragma once

#include <array>
#include <vector>

#include "cupset/dense_operator.hpp"

namespace cupset::gates {

DenseOperator I2();
DenseOperator X();
DenseOperator Y();
DenseOperator Z();
DenseOperator H();
DenseOperator SX();  // sqrt(X)
DenseOperator S();
DenseOperator RY(double theta);  // exp(-i theta Y / 2)
DenseOperator RZ(double theta);  // exp(-i theta Z / 2)
DenseOperator RX(double theta);

// Two-qubit gates on (qubit 0 = first tensor factor, qubit 1 = second).
DenseOperator CNOT_AB();  // control first, target second
DenseOperator CNOT_BA();  // control second, target first
DenseOperator SWAP();
// Controlled swap with control first, swapping the last two qubits.
DenseOperator CSWAP();

// {I, X, Y, Z}
std::array<DenseOperator, 4> paulis();

// Embed a gate on `targets` (in gate-factor order) of an n-qubit register,
// qubit 0 being the most-significant bit.
DenseOperator embed(const DenseOperator& gate, const std::vector<int>& targets, int n_qubits);

}  // namespace cupset::gates
