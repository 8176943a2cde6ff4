#include "cupset/gates.hpp"

#include <cmath>

#include "cupset/errors.hpp"

namespace cupset::gates {

namespace {
const cplx kI(0.0, 1.0);
}

DenseOperator I2() { return DenseOperator::identity(2); }
DenseOperator X() { return DenseOperator{{0, 1}, {1, 0}}; }
DenseOperator Y() { return DenseOperator{{0, -kI}, {kI, 0}}; }
DenseOperator Z() { return DenseOperator{{1, 0}, {0, -1}}; }
DenseOperator S() { return DenseOperator{{1, 0}, {0, kI}}; }

DenseOperator H() {
  const double r = 1.0 / std::sqrt(2.0);
  return DenseOperator{{r, r}, {r, -r}};
}

DenseOperator SX() {
  const cplx a = 0.5 * (1.0 + kI), b = 0.5 * (1.0 - kI);
  return DenseOperator{{a, b}, {b, a}};
}

DenseOperator RY(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return DenseOperator{{c, -s}, {s, c}};
}

DenseOperator RZ(double theta) {
  return DenseOperator{{std::polar(1.0, -theta / 2), 0}, {0, std::polar(1.0, theta / 2)}};
}

DenseOperator RX(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return DenseOperator{{c, -kI * s}, {-kI * s, c}};
}

DenseOperator CNOT_AB() {
  return DenseOperator{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
}

DenseOperator CNOT_BA() {
  return DenseOperator{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}};
}

DenseOperator SWAP() {
  return DenseOperator{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
}

DenseOperator CSWAP() {
  DenseOperator m = DenseOperator::identity(8);
  m(5, 5) = 0;
  m(6, 6) = 0;
  m(5, 6) = 1;
  m(6, 5) = 1;
  return m;
}

std::array<DenseOperator, 4> paulis() { return {I2(), X(), Y(), Z()}; }

DenseOperator embed(const DenseOperator& gate, const std::vector<int>& targets, int n_qubits) {
  const int k = static_cast<int>(targets.size());
  if (gate.rows() != (Index{1} << k) || !gate.square())
    throw DimensionError("embed: gate size does not match target count");
  for (int t : targets)
    if (t < 0 || t >= n_qubits) throw DimensionError("embed: qubit index out of range");
  const Index dim = Index{1} << n_qubits;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (Index col = 0; col < dim; ++col) {
    Index sub_in = 0;
    for (int j = 0; j < k; ++j) sub_in = (sub_in << 1) | ((col >> (n_qubits - 1 - targets[static_cast<std::size_t>(j)])) & 1);
    Index rest = col;
    for (int t : targets) rest &= ~(Index{1} << (n_qubits - 1 - t));
    for (Index sub_out = 0; sub_out < gate.rows(); ++sub_out) {
      const cplx v = gate(sub_out, sub_in);
      if (v == cplx(0.0)) continue;
      Index row = rest;
      for (int j = 0; j < k; ++j)
        if ((sub_out >> (k - 1 - j)) & 1) row |= Index{1} << (n_qubits - 1 - targets[static_cast<std::size_t>(j)]);
      out(row, col) += v;
    }
  }
  return DenseOperator(std::move(out));
}

}  // namespace cupset::gates
