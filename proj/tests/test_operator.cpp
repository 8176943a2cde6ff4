#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cupset/errors.hpp"
#include "cupset/gates.hpp"
#include "cupset/linalg.hpp"

using namespace cupset;
namespace g = cupset::gates;

namespace {

DenseOperator bell_phi_plus() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return DenseOperator::outer(v);
}

DenseOperator plus_state() {
  Eigen::VectorXcd v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return DenseOperator::outer(v);
}

}  // namespace

TEST(Tensor, IdentityAndBasisOrdering) {
  EXPECT_LT(tensor(g::I2(), g::I2()).max_abs_diff(DenseOperator::identity(4)), 1e-15);
  const auto p = tensor(DenseOperator::basis_projector(2, 0), DenseOperator::basis_projector(2, 1));
  DenseOperator expect(4, 4);
  expect(1, 1) = 1.0;
  EXPECT_LT(p.max_abs_diff(expect), 1e-15);
  const auto flipped = tensor(g::X(), g::X()) * DenseOperator::ket(4, 0);
  EXPECT_LT(flipped.max_abs_diff(DenseOperator::ket(4, 3)), 1e-15);
}

TEST(PartialTrace, Examples) {
  EXPECT_LT(partial_trace(bell_phi_plus(), {2, 2}, {0}).max_abs_diff(DenseOperator::maximally_mixed(2)), 1e-15);

  SeededRng rng(3);
  const auto rho = random_density_matrix(2, rng);
  const auto sigma = random_density_matrix(3, rng);
  EXPECT_LT(partial_trace(tensor(rho, sigma), {2, 3}, {0}).max_abs_diff(rho), 1e-14);
  EXPECT_LT(partial_trace(tensor(rho, sigma), {2, 3}, {1}).max_abs_diff(sigma), 1e-14);

  // CNOT|+0> is a Bell state; each half is maximally mixed.
  const auto in = tensor(plus_state(), DenseOperator::basis_projector(2, 0));
  const auto out = g::CNOT_AB() * in * g::CNOT_AB().adjoint();
  EXPECT_LT(partial_trace(out, {2, 2}, {1}).max_abs_diff(DenseOperator::maximally_mixed(2)), 1e-15);
}

TEST(PartialTrace, DimensionMismatchThrows) {
  EXPECT_THROW(partial_trace(DenseOperator::identity(4), {2, 3}, {0}), DimensionError);
  EXPECT_THROW(partial_trace(DenseOperator::identity(4), {2, 2}, {2}), DimensionError);
}

TEST(PartialTrace, InvariantsAgainstBruteForce) {
  SeededRng rng(11);
  const std::vector<int> dims{2, 3, 2};
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_density_matrix(12, rng);
    EXPECT_LT(partial_trace(m, dims, {0, 1, 2}).max_abs_diff(m), 1e-15);
    for (const std::vector<int>& keep : {std::vector<int>{0}, {1}, {2}, {0, 2}, {1, 2}}) {
      const auto r = partial_trace(m, dims, keep);
      EXPECT_NEAR(std::abs(r.trace() - m.trace()), 0.0, 1e-13);
    }
    // Oracle for keep={0,2}: explicit index sum over the middle factor.
    const auto r = partial_trace(m, dims, {0, 2});
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int c2 = 0; c2 < 2; ++c2) {
            cplx acc = 0.0;
            for (int b = 0; b < 3; ++b) acc += m(a * 6 + b * 2 + c, a2 * 6 + b * 2 + c2);
            EXPECT_LT(std::abs(r(a * 2 + c, a2 * 2 + c2) - acc), 1e-14);
          }
  }
}

TEST(Eigenvalues, Ordering) {
  const auto e3 = eigenvalues(DenseOperator::identity(3));
  ASSERT_EQ(e3.size(), 3u);
  for (const auto& e : e3) EXPECT_NEAR(std::abs(e - 1.0), 0.0, 1e-14);
  DenseOperator d(2, 2);
  d(0, 0) = 0.3;
  d(1, 1) = -0.5;
  const auto e = eigenvalues(d);
  EXPECT_NEAR(e[0].real(), -0.5, 1e-15);
  EXPECT_NEAR(e[1].real(), 0.3, 1e-15);
  DenseOperator rot{{0, -1}, {1, 0}};
  const auto er = eigenvalues(rot);
  EXPECT_GT(er[0].imag(), 0.0);
}

TEST(FractionalPower, Endpoints) {
  EXPECT_LT(unitary_fractional_power(g::SWAP(), 1.0).max_abs_diff(g::SWAP()), 1e-12);
  EXPECT_LT(unitary_fractional_power(g::SWAP(), 0.0).max_abs_diff(DenseOperator::identity(4)), 1e-12);
  EXPECT_THROW(unitary_fractional_power(DenseOperator{{1, 1}, {0, 1}}, 0.5), NotUnitaryError);
}

TEST(FractionalPower, CnotClosedForm) {
  for (double alpha : {0.1, 0.5, 0.77, 1.0}) {
    const cplx ph = std::polar(1.0, std::numbers::pi * alpha);
    const cplx a = 0.5 * (1.0 + ph), b = 0.5 * (1.0 - ph);
    DenseOperator expect = DenseOperator::identity(4);
    expect(2, 2) = a;
    expect(3, 3) = a;
    expect(2, 3) = b;
    expect(3, 2) = b;
    EXPECT_LT(unitary_fractional_power(g::CNOT_AB(), alpha).max_abs_diff(expect), 1e-12) << alpha;
  }
}

TEST(FractionalPower, BranchConsistency) {
  SeededRng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto u = haar_random_unitary(4, rng);
    const double a = rng.uniform();
    const double b = rng.uniform() * (1.0 - a);
    const auto lhs = unitary_fractional_power(u, a) * unitary_fractional_power(u, b);
    EXPECT_LT(lhs.max_abs_diff(unitary_fractional_power(u, a + b)), 1e-9);
  }
}

TEST(Haar, UnitaryAndPhase) {
  SeededRng rng(1);
  const auto u1 = haar_random_unitary(1, rng);
  EXPECT_NEAR(std::abs(u1(0, 0)), 1.0, 1e-14);
  for (int d : {2, 3, 8}) EXPECT_TRUE(is_unitary(haar_random_unitary(d, rng)));
}

TEST(Haar, FirstAndSecondMoments) {
  SeededRng rng(2024);
  const int n = 100000;
  Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(2, 2);
  Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(2, 2);
  double m2 = 0.0, m2sq = 0.0;
  const Eigen::VectorXcd psi = Eigen::VectorXcd::Unit(2, 0);
  for (int i = 0; i < n; ++i) {
    const auto u = haar_random_unitary(2, rng).matrix();
    const Eigen::MatrixXcd rho = u.col(0) * u.col(0).adjoint();
    mean += rho;
    sq += rho.cwiseAbs2();
    const double f = std::norm(psi.dot(u.col(0)));
    m2 += f * f;
    m2sq += f * f * f * f;
  }
  mean /= n;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const double var = sq(r, c) / n - std::norm(mean(r, c));
      const double se = std::sqrt(std::max(var, 1e-30) / n);
      const double target = r == c ? 0.5 : 0.0;
      EXPECT_LT(std::abs(mean(r, c) - target), 3.0 * se + 1e-12) << r << c;
    }
  const double mu = m2 / n;
  const double se = std::sqrt((m2sq / n - mu * mu) / n);
  EXPECT_LT(std::abs(mu - 2.0 / (2 * 3)), 3.0 * se);
}

TEST(Haar, OverlapIsUniformKolmogorovSmirnov) {
  SeededRng rng(77);
  const int n = 100000;
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = std::norm(haar_random_unitary(2, rng)(0, 0));
  std::sort(xs.begin(), xs.end());
  double dmax = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = xs[static_cast<std::size_t>(i)];
    dmax = std::max({dmax, (i + 1.0) / n - x, x - static_cast<double>(i) / n});
  }
  EXPECT_LT(dmax, 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST(Embed, MatchesTensorProducts) {
  const auto x0 = g::embed(g::X(), {0}, 3);
  EXPECT_LT(x0.max_abs_diff(tensor({g::X(), g::I2(), g::I2()})), 1e-15);
  const auto cnot20 = g::embed(g::CNOT_AB(), {2, 0}, 3);
  // control on qubit 2, target qubit 0: |001> -> |101>
  EXPECT_LT((cnot20 * DenseOperator::ket(8, 1)).max_abs_diff(DenseOperator::ket(8, 5)), 1e-15);
  EXPECT_LT(g::embed(g::CNOT_AB(), {1, 0}, 2).max_abs_diff(g::CNOT_BA()), 1e-15);
}

TEST(DenseOperator, ChecksAndConstruction) {
  EXPECT_THROW(DenseOperator(2, 2, std::vector<cplx>{1, 2, 3}), DimensionError);
  EXPECT_TRUE(is_density_matrix(DenseOperator::maximally_mixed(3)));
  EXPECT_FALSE(is_density_matrix(g::X()));
  EXPECT_TRUE(is_unitary(g::SX() * g::SX() * g::X()));
  EXPECT_LT((g::SX() * g::SX()).max_abs_diff(g::X()), 1e-15);
}
