#include "cupset/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "cupset/errors.hpp"
#include "cupset/gates.hpp"
#include "cupset/linalg.hpp"

namespace cupset {

QuantumChannel::QuantumChannel(Index d_in, Index d_out, std::vector<DenseOperator> kraus)
    : d_in_(d_in), d_out_(d_out), kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw DimensionError("QuantumChannel: empty Kraus list");
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d_in, d_in);
  for (const auto& k : kraus_) {
    if (k.rows() != d_out || k.cols() != d_in)
      throw DimensionError("QuantumChannel: Kraus operator has shape " + std::to_string(k.rows()) + "x" +
                           std::to_string(k.cols()) + ", expected " + std::to_string(d_out) + "x" +
                           std::to_string(d_in));
    sum += k.matrix().adjoint() * k.matrix();
  }
  const double err = (sum - Eigen::MatrixXcd::Identity(d_in, d_in)).cwiseAbs().maxCoeff();
  if (err > kChannelTol) throw Error("QuantumChannel: not trace preserving (deviation " + std::to_string(err) + ")");
}

DenseOperator QuantumChannel::apply(const DenseOperator& rho) const {
  if (rho.rows() != d_in_ || rho.cols() != d_in_) throw DimensionError("apply: input dimension mismatch");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d_out_, d_out_);
  for (const auto& k : kraus_) out.noalias() += k.matrix() * rho.matrix() * k.matrix().adjoint();
  return DenseOperator(std::move(out));
}

DenseOperator QuantumChannel::superoperator() const {
  DenseOperator acc(d_out_ * d_out_, d_in_ * d_in_);
  for (const auto& k : kraus_) acc += cupset::tensor(k, k.conjugate());
  return acc;
}

DenseOperator apply(const QuantumChannel& ch, const DenseOperator& rho) { return ch.apply(rho); }

std::vector<DenseOperator> traceless_basis(Index d) {
  std::vector<DenseOperator> basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (Index j = 0; j < d; ++j)
    for (Index k = j + 1; k < d; ++k) {
      DenseOperator sym(d, d), anti(d, d);
      sym(j, k) = sym(k, j) = r;
      anti(j, k) = cplx(0, -r);
      anti(k, j) = cplx(0, r);
      basis.push_back(std::move(sym));
      basis.push_back(std::move(anti));
    }
  for (Index l = 1; l < d; ++l) {
    DenseOperator diag(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (Index m = 0; m < l; ++m) diag(m, m) = norm;
    diag(l, l) = -static_cast<double>(l) * norm;
    basis.push_back(std::move(diag));
  }
  return basis;
}

PauliTransferBlock to_ptm(const QuantumChannel& ch) {
  const auto b_in = traceless_basis(ch.d_in());
  const auto b_out = traceless_basis(ch.d_out());
  PauliTransferBlock ptm;
  ptm.d_in = ch.d_in();
  ptm.d_out = ch.d_out();
  ptm.t.resize(static_cast<Index>(b_out.size()), static_cast<Index>(b_in.size()));
  ptm.affine.resize(static_cast<Index>(b_out.size()));
  for (std::size_t j = 0; j < b_in.size(); ++j) {
    const auto img = ch.apply(b_in[j]);
    if (std::abs(img.trace()) > kChannelTol) ptm.trace_row_preserved = false;
    for (std::size_t k = 0; k < b_out.size(); ++k)
      ptm.t(static_cast<Index>(k), static_cast<Index>(j)) = hs_inner(b_out[k], img).real();
  }
  const auto centre = ch.apply(DenseOperator::maximally_mixed(ch.d_in()));
  for (std::size_t k = 0; k < b_out.size(); ++k) ptm.affine(static_cast<Index>(k)) = hs_inner(b_out[k], centre).real();
  return ptm;
}

DenseOperator choi_state(const QuantumChannel& ch) {
  const Index d = ch.d_in();
  const Index d_out = ch.d_out();
  // J = (1/d) sum_{ij} E(|i><j|) (x) |i><j|
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(d_out * d, d_out * d);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) {
      DenseOperator eij(d, d);
      eij(a, b) = 1.0;
      const auto img = ch.apply(eij).matrix();
      for (Index r = 0; r < d_out; ++r)
        for (Index c = 0; c < d_out; ++c) j(r * d + a, c * d + b) += img(r, c);
    }
  j /= static_cast<double>(d);
  return DenseOperator(std::move(j));
}

QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first) {
  if (second.d_in() != first.d_out()) throw DimensionError("compose: dimension mismatch");
  std::vector<DenseOperator> kraus;
  kraus.reserve(second.kraus().size() * first.kraus().size());
  for (const auto& k2 : second.kraus())
    for (const auto& k1 : first.kraus()) kraus.push_back(k2 * k1);
  return QuantumChannel(first.d_in(), second.d_out(), std::move(kraus));
}

QuantumChannel mix(const std::vector<std::pair<double, QuantumChannel>>& parts) {
  if (parts.empty()) throw EmptyDataError("mix: no channels");
  const Index d_in = parts.front().second.d_in(), d_out = parts.front().second.d_out();
  std::vector<DenseOperator> kraus;
  for (const auto& [w, ch] : parts) {
    if (ch.d_in() != d_in || ch.d_out() != d_out) throw DimensionError("mix: dimension mismatch");
    if (w < 0) throw Error("mix: negative weight");
    if (w == 0) continue;
    for (const auto& k : ch.kraus()) kraus.push_back(std::sqrt(w) * k);
  }
  return QuantumChannel(d_in, d_out, std::move(kraus));
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
  std::vector<DenseOperator> kraus;
  for (const auto& ka : a.kraus())
    for (const auto& kb : b.kraus()) kraus.push_back(cupset::tensor(ka, kb));
  return QuantumChannel(a.d_in() * b.d_in(), a.d_out() * b.d_out(), std::move(kraus));
}

QuantumChannel identity_channel(Index d) { return QuantumChannel(d, d, {DenseOperator::identity(d)}); }

QuantumChannel unitary_channel(const DenseOperator& u) {
  require_unitary(u, "unitary_channel");
  return QuantumChannel(u.cols(), u.rows(), {u});
}

QuantumChannel isometry_channel(const DenseOperator& v) { return QuantumChannel(v.cols(), v.rows(), {v}); }

QuantumChannel constant_channel(Index d_in, const DenseOperator& sigma) {
  if (!is_density_matrix(sigma)) throw Error("constant_channel: output is not a density matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sigma.matrix());
  std::vector<DenseOperator> kraus;
  for (Index e = 0; e < sigma.rows(); ++e) {
    const double w = es.eigenvalues()(e);
    if (w <= 1e-15) continue;
    for (Index i = 0; i < d_in; ++i) {
      Eigen::MatrixXcd k = std::sqrt(w) * es.eigenvectors().col(e) * Eigen::RowVectorXcd::Unit(d_in, i);
      kraus.emplace_back(std::move(k));
    }
  }
  return QuantumChannel(d_in, sigma.rows(), std::move(kraus));
}

QuantumChannel depolarizing_channel(Index d, double p) {
  if (p < 0 || p > 1) throw Error("depolarizing_channel: p outside [0,1]");
  return mix({{1.0 - p, identity_channel(d)}, {p, constant_channel(d, DenseOperator::maximally_mixed(d))}});
}

QuantumChannel depolarize_output(const QuantumChannel& ch, double p) {
  return compose(depolarizing_channel(ch.d_out(), p), ch);
}

QuantumChannel trace_out(const QuantumChannel& ch, const std::vector<int>& dims, const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  Index total = 1;
  for (int d : dims) total *= d;
  if (total != ch.d_out()) throw DimensionError("trace_out: dims do not match output dimension");
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw DimensionError("trace_out: subsystem index out of range");
    kept[static_cast<std::size_t>(k)] = true;
  }
  Index d_keep = 1, d_trace = 1;
  for (int i = 0; i < n; ++i) (kept[static_cast<std::size_t>(i)] ? d_keep : d_trace) *= dims[static_cast<std::size_t>(i)];

  // One contraction <t| on the traced factors per traced basis index t.
  std::vector<Eigen::MatrixXcd> bras(static_cast<std::size_t>(d_trace), Eigen::MatrixXcd::Zero(d_keep, total));
  for (Index full = 0; full < total; ++full) {
    Index rem = full, k_idx = 0, t_idx = 0, k_mul = 1, t_mul = 1;
    for (int i = n - 1; i >= 0; --i) {
      const Index d = dims[static_cast<std::size_t>(i)];
      const Index digit = rem % d;
      rem /= d;
      if (kept[static_cast<std::size_t>(i)]) {
        k_idx += digit * k_mul;
        k_mul *= d;
      } else {
        t_idx += digit * t_mul;
        t_mul *= d;
      }
    }
    bras[static_cast<std::size_t>(t_idx)](k_idx, full) = 1.0;
  }
  std::vector<DenseOperator> kraus;
  for (const auto& k : ch.kraus())
    for (const auto& b : bras) {
      Eigen::MatrixXcd m = b * k.matrix();
      if (m.cwiseAbs().maxCoeff() < 1e-15) continue;
      kraus.emplace_back(std::move(m));
    }
  if (kraus.empty()) kraus.emplace_back(Eigen::MatrixXcd::Zero(d_keep, ch.d_in()));
  return QuantumChannel(ch.d_in(), d_keep, std::move(kraus));
}

QuantumChannel dilated_channel(const DenseOperator& u_ab, const DenseOperator& ancilla) {
  require_unitary(u_ab, "marginal_channels");
  require_square(ancilla, "marginal_channels ancilla");
  if (u_ab.rows() % ancilla.rows() != 0) throw DimensionError("marginal_channels: ancilla dimension does not divide");
  if (!is_density_matrix(ancilla)) throw Error("marginal_channels: ancilla is not a density matrix");
  const Index d_x = u_ab.rows() / ancilla.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ancilla.matrix());
  std::vector<DenseOperator> kraus;
  const auto id_x = DenseOperator::identity(d_x);
  for (Index e = 0; e < ancilla.rows(); ++e) {
    const double w = es.eigenvalues()(e);
    if (w <= 1e-14) continue;
    const DenseOperator ket(Eigen::MatrixXcd(es.eigenvectors().col(e)));
    kraus.push_back(std::sqrt(w) * (u_ab * cupset::tensor(id_x, ket)));
  }
  return QuantumChannel(d_x, u_ab.rows(), std::move(kraus));
}

std::pair<QuantumChannel, QuantumChannel> marginal_channels(const DenseOperator& u_ab, Index d_A, Index d_B,
                                                            const DenseOperator& ancilla) {
  if (d_A * d_B != u_ab.rows()) throw DimensionError("marginal_channels: d_A*d_B does not match unitary");
  const auto global = dilated_channel(u_ab, ancilla);
  const std::vector<int> dims{static_cast<int>(d_A), static_cast<int>(d_B)};
  return {trace_out(global, dims, {0}), trace_out(global, dims, {1})};
}

namespace g = gates;

DenseOperator isometry_family_figure3(double alpha, double beta) {
  const auto ry_a = cupset::tensor(g::I2(), g::RY(std::numbers::pi / 2 - 2 * alpha));
  const auto ry_b = cupset::tensor(g::I2(), g::RY(2 * beta - std::numbers::pi / 2));
  return g::CNOT_BA() * ry_b * g::CNOT_AB() * ry_a;
}

DenseOperator isometry_family_generic(double alpha, double beta, double gamma) {
  const double half_pi = std::numbers::pi / 2;
  auto u = cupset::tensor(g::I2(), g::RZ(half_pi));
  u = g::CNOT_BA() * u;
  u = cupset::tensor(g::RZ(2 * gamma - half_pi), g::RY(half_pi - 2 * alpha)) * u;
  u = g::CNOT_AB() * u;
  u = cupset::tensor(g::I2(), g::RY(2 * beta - half_pi)) * u;
  u = g::CNOT_BA() * u;
  u = cupset::tensor(g::RZ(-half_pi), g::I2()) * u;
  return u;
}

DenseOperator family_swap_alpha(double alpha) { return unitary_fractional_power(g::SWAP(), alpha); }

DenseOperator family_cnot_ab_alpha(double alpha) { return unitary_fractional_power(g::CNOT_AB(), alpha); }

DenseOperator family_cnotba_cnotab(double alpha) {
  return unitary_fractional_power(g::CNOT_BA(), alpha) * g::CNOT_AB();
}

DenseOperator family_cnot_alpha_swaplike(double alpha) {
  return unitary_fractional_power(g::CNOT_AB(), alpha) * g::CNOT_BA() * g::CNOT_AB();
}

QuantumChannel pauli_hiding_channel() {
  const auto p = g::paulis();
  std::vector<DenseOperator> kraus;
  for (int i = 0; i < 4; ++i) kraus.push_back(0.5 * cupset::tensor(p[static_cast<std::size_t>(i)], DenseOperator::ket(4, i)));
  return QuantumChannel(2, 8, std::move(kraus));
}

QuantumChannel pauli_recovery_channel() {
  const auto p = g::paulis();
  std::vector<DenseOperator> kraus;
  for (int i = 0; i < 4; ++i)
    kraus.push_back(cupset::tensor(p[static_cast<std::size_t>(i)], DenseOperator::ket(4, i).adjoint()));
  return QuantumChannel(8, 2, std::move(kraus));
}

DenseOperator pauli_hiding_dilation() {
  const auto p = g::paulis();
  DenseOperator v(32, 2);
  for (int i = 0; i < 4; ++i)
    v += 0.5 * cupset::tensor({p[static_cast<std::size_t>(i)], DenseOperator::ket(4, i), DenseOperator::ket(4, i)});
  return v;
}

}  // namespace cupset
