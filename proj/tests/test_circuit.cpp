#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cupset/channel.hpp"
#include "cupset/circuit.hpp"
#include "cupset/clifford.hpp"
#include "cupset/errors.hpp"
#include "cupset/gates.hpp"
#include "cupset/linalg.hpp"

using namespace cupset;

namespace {

DenseOperator conj_by(const DenseOperator& u, const DenseOperator& rho) { return u * rho * u.adjoint(); }

// rho with qubit q replaced by sigma, via explicit index sums.
DenseOperator replace_qubit(const DenseOperator& rho, int q, int n, const DenseOperator& sigma) {
  const Index d = rho.rows();
  const Index mask = Index{1} << (n - 1 - q);
  DenseOperator out(d, d);
  for (Index r = 0; r < d; ++r)
    for (Index c = 0; c < d; ++c) {
      cplx acc = 0.0;
      for (int b = 0; b < 2; ++b) {
        const Index rr = (r & ~mask) | (b ? mask : 0), cc = (c & ~mask) | (b ? mask : 0);
        acc += rho(rr, cc);
      }
      out(r, c) = acc * sigma((r & mask) ? 1 : 0, (c & mask) ? 1 : 0);
    }
  return out;
}

}  // namespace

TEST(Circuit, EmptyCircuitLeavesStateUnchanged) {
  SeededRng rng(1);
  const DenseOperator rho = random_density_matrix(8, rng);
  const RunResult r = run_circuit(CircuitSpec(3), NoiseModel::noiseless(), rho);
  EXPECT_LT(r.state.max_abs_diff(rho), 1e-15);
}

TEST(Circuit, HadamardShotStatistics) {
  CircuitSpec c(1);
  c.h(0).measure(0);
  NoiseModel n = NoiseModel::noiseless(10000);
  n.seed = 4;
  const RunResult r = run_circuit(c, n, zero_state(1));
  EXPECT_NEAR(r.z_exact, 0.0, 1e-12);
  EXPECT_LE(std::abs(r.z_estimate), 4.0 / std::sqrt(1e4));
  EXPECT_EQ(r.shots, 10000u);
  EXPECT_NEAR(r.z_estimate, 1.0 - 2.0 * static_cast<double>(r.ones) / 1e4, 1e-15);
}

TEST(Circuit, ShotsAreSeedDeterministic) {
  CircuitSpec c(2);
  c.ry(0, 0.7).cnot(0, 1).measure(1);
  NoiseModel n = NoiseModel::noiseless(500);
  n.seed = 99;
  EXPECT_EQ(run_circuit(c, n, zero_state(2)).ones, run_circuit(c, n, zero_state(2)).ones);
}

TEST(Circuit, TwoParameterFamilyMatchesMatrixProduct) {
  SeededRng rng(2);
  for (auto [a, b] : {std::pair{std::numbers::pi / 4, std::numbers::pi / 4}, std::pair{0.3, 1.1},
                      std::pair{2.0, 0.4}}) {
    const DenseOperator rho_in = random_density_matrix(2, rng);
    const DenseOperator input = tensor(rho_in, DenseOperator::basis_projector(2, 0));
    const DenseOperator out = run_circuit(figure3_circuit(a, b), NoiseModel::noiseless(), input).state;
    EXPECT_LT(out.max_abs_diff(conj_by(isometry_family_figure3(a, b), input)), 1e-10);
  }
}

TEST(Circuit, AllGateKindsMatchEmbeddedUnitary) {
  SeededRng rng(3);
  const int n = 4;
  CircuitSpec c(n);
  c.h(2).x(0).sx(3).ry(1, 0.37).rz(0, -1.2).cnot(3, 0).cnot(1, 2).swap(0, 3).cswap(2, 3, 0);
  c.unitary(haar_random_unitary(4, rng), {2, 0});
  c.unitary(haar_random_unitary(8, rng), {3, 1, 0});
  const DenseOperator rho = random_density_matrix(16, rng);
  const DenseOperator out = run_circuit(c, NoiseModel::noiseless(), rho).state;
  DenseOperator u = DenseOperator::identity(16);
  for (const auto& op : c.ops) u = gates::embed(gate_matrix(op), op.qubits, n) * u;
  EXPECT_LT(out.max_abs_diff(conj_by(u, rho)), 1e-12);
  EXPECT_LT(circuit_unitary(c).max_abs_diff(u), 1e-12);
}

TEST(Circuit, SingleQubitGateNoiseIsDepolarizing) {
  SeededRng rng(4);
  const DenseOperator rho = random_density_matrix(4, rng);
  CircuitSpec c(2);
  c.h(1);
  NoiseModel n = NoiseModel::noiseless();
  n.gate_depolarizing["H"] = 0.3;
  const DenseOperator out = run_circuit(c, n, rho).state;
  const DenseOperator ideal = conj_by(gates::embed(gates::H(), {1}, 2), rho);
  const DenseOperator expect =
      0.7 * ideal + 0.3 * tensor(partial_trace(ideal, {2, 2}, {0}), DenseOperator::maximally_mixed(2));
  EXPECT_LT(out.max_abs_diff(expect), 1e-12);
}

TEST(Circuit, TwoQubitGateNoiseActsOnSupport) {
  SeededRng rng(5);
  const DenseOperator rho = random_density_matrix(8, rng);
  CircuitSpec c(3);
  c.cnot(0, 1);
  NoiseModel n = NoiseModel::noiseless();
  n.gate_depolarizing["CNOT"] = 0.2;
  const DenseOperator out = run_circuit(c, n, rho).state;
  const DenseOperator ideal = conj_by(gates::embed(gates::CNOT_AB(), {0, 1}, 3), rho);
  const DenseOperator expect =
      0.8 * ideal + 0.2 * tensor(DenseOperator::maximally_mixed(4), partial_trace(ideal, {2, 2, 2}, {2}));
  EXPECT_LT(out.max_abs_diff(expect), 1e-12);
}

TEST(Circuit, LabelOverridesGateNameForNoise) {
  GateOp op{GateId::UNITARY, {0}, 0.0, gates::X(), "clifford"};
  NoiseModel n;
  n.gate_depolarizing = {{"UNITARY", 0.1}, {"clifford", 0.2}};
  EXPECT_EQ(n.depolarizing_for(op), 0.2);
  op.label = "other";
  EXPECT_EQ(n.depolarizing_for(op), 0.1);
}

TEST(Circuit, ResetTracesOutAndReprepares) {
  SeededRng rng(6);
  const DenseOperator rho = random_density_matrix(8, rng);
  for (int q = 0; q < 3; ++q) {
    CircuitSpec c(3);
    c.reset(q);
    const DenseOperator out = run_circuit(c, NoiseModel::noiseless(), rho).state;
    EXPECT_LT(out.max_abs_diff(replace_qubit(rho, q, 3, DenseOperator::basis_projector(2, 0))), 1e-12);
  }
  CircuitSpec c(3);
  c.reset(1);
  NoiseModel n = NoiseModel::noiseless();
  n.gate_depolarizing["RESET"] = 0.4;
  const DenseOperator out = run_circuit(c, n, rho).state;
  DenseOperator sigma = 0.6 * DenseOperator::basis_projector(2, 0) + 0.4 * DenseOperator::maximally_mixed(2);
  EXPECT_LT(out.max_abs_diff(replace_qubit(rho, 1, 3, sigma)), 1e-12);
}

TEST(Circuit, SpamErrors) {
  CircuitSpec c(2);
  c.measure(1);
  NoiseModel n = NoiseModel::noiseless();
  n.spam_prep_error = 0.1;
  const RunResult r = run_circuit(c, n, zero_state(2));
  // Each qubit: 0.9 |0><0| + 0.1 I/2.
  const DenseOperator q = 0.9 * DenseOperator::basis_projector(2, 0) + 0.1 * DenseOperator::maximally_mixed(2);
  EXPECT_LT(r.state.max_abs_diff(tensor(q, q)), 1e-14);
  EXPECT_NEAR(r.p_one, 0.05, 1e-14);

  n.spam_prep_error = 0.0;
  n.spam_meas_error = 0.07;
  CircuitSpec flip(1);
  flip.x(0).measure(0);
  EXPECT_NEAR(run_circuit(flip, n, zero_state(1)).p_one, 0.93, 1e-14);
  EXPECT_NEAR(readout_prob_one(zero_state(1), 0, 1, 0.07), 0.07, 1e-15);
}

TEST(Circuit, ValidationErrors) {
  CircuitSpec c(2);
  c.cnot(0, 2);
  EXPECT_THROW(validate(c), DimensionError);
  CircuitSpec rep(2);
  rep.cnot(1, 1);
  EXPECT_THROW(validate(rep), DimensionError);
  CircuitSpec bad(2);
  bad.unitary(DenseOperator::identity(2) * cplx(2.0), {0});
  EXPECT_THROW(validate(bad), DimensionError);
  CircuitSpec shape(2);
  shape.unitary(DenseOperator::identity(2), {0, 1});
  EXPECT_THROW(validate(shape), DimensionError);
  CircuitSpec nan(1);
  nan.ry(0, std::nan(""));
  EXPECT_THROW(validate(nan), DimensionError);
  EXPECT_THROW(run_circuit(CircuitSpec(2), NoiseModel::noiseless(), zero_state(3)), DimensionError);

  NoiseModel n;
  n.spam_meas_error = 1.5;
  EXPECT_THROW(validate(n), Error);
  NoiseModel coherent;
  coherent.reset_incoherent = false;
  EXPECT_THROW(run_circuit(CircuitSpec(1), coherent, zero_state(1)), Error);
}

TEST(Circuit, NoisyEvolutionKeepsStatesValid) {
  SeededRng rng(8);
  CircuitSpec c(3);
  c.h(0).cnot(0, 1).reset(2).cswap(0, 1, 2).unitary(haar_random_unitary(4, rng), {1, 2}).measure(2);
  NoiseModel n = NoiseModel::noiseless();
  n.gate_depolarizing = {{"H", 0.05}, {"CNOT", 0.1}, {"CSWAP", 0.2}, {"UNITARY", 0.03}, {"RESET", 0.02}};
  n.spam_prep_error = 0.04;
  const DenseOperator out = evolve(c, n, random_density_matrix(8, rng));
  EXPECT_TRUE(is_density_matrix(out, 1e-10));
}

TEST(Clifford, GroupStructure) {
  const auto& g = single_qubit_cliffords();
  ASSERT_EQ(g.size(), 24u);
  EXPECT_LT(g[0].max_abs_diff(DenseOperator::identity(2)), 1e-15);
  const auto p = gates::paulis();
  auto phase_equal = [](const DenseOperator& a, const DenseOperator& b) {
    return std::abs(std::abs(hs_inner(a, b)) - 2.0) < 1e-9;
  };
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_TRUE(is_unitary(g[i]));
    for (std::size_t j = i + 1; j < g.size(); ++j) EXPECT_FALSE(phase_equal(g[i], g[j]));
    // Conjugation permutes the Paulis up to sign.
    for (int k = 1; k < 4; ++k) {
      const DenseOperator img = g[i] * p[static_cast<std::size_t>(k)] * g[i].adjoint();
      int hits = 0;
      for (int l = 1; l < 4; ++l)
        if (phase_equal(img, p[static_cast<std::size_t>(l)])) ++hits;
      EXPECT_EQ(hits, 1);
    }
    // Closure.
    for (std::size_t j = 0; j < g.size(); ++j) {
      const DenseOperator prod = g[i] * g[j];
      int found = 0;
      for (const auto& e : g)
        if (phase_equal(prod, e)) ++found;
      EXPECT_EQ(found, 1);
    }
  }
}

TEST(Clifford, UniformSampling) {
  SeededRng rng(9);
  std::vector<int> counts(24, 0);
  const auto& g = single_qubit_cliffords();
  const int draws = 24000;
  for (int i = 0; i < draws; ++i) {
    const DenseOperator& c = random_clifford(rng);
    for (std::size_t k = 0; k < g.size(); ++k)
      if (&g[k] == &c) ++counts[k];
  }
  // Chi-square with 23 dof; 99.9% quantile is about 49.7.
  double chi = 0;
  for (int c : counts) chi += (c - 1000.0) * (c - 1000.0) / 1000.0;
  EXPECT_LT(chi, 49.7);
}
