#include "cupset/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cupset/errors.hpp"

namespace cupset {

ClassicalChannel::ClassicalChannel(Eigen::MatrixXd s) : s_(std::move(s)) {
  for (Eigen::Index c = 0; c < s_.cols(); ++c) {
    if (std::abs(s_.col(c).sum() - 1.0) > 1e-12) throw Error("ClassicalChannel: column does not sum to 1");
    if (s_.col(c).minCoeff() < -1e-15 || s_.col(c).maxCoeff() > 1.0 + 1e-15)
      throw Error("ClassicalChannel: entry outside [0,1]");
  }
}

Eigen::VectorXd classical_apply(const ClassicalChannel& ch, const Eigen::VectorXd& p) {
  if (p.size() != ch.d_in()) throw DimensionError("classical_apply: dimension mismatch");
  return ch.matrix() * p;
}

ClassicalChannel classical_compose(const ClassicalChannel& second, const ClassicalChannel& first) {
  if (second.d_in() != first.d_out()) throw DimensionError("classical_compose: dimension mismatch");
  return ClassicalChannel(second.matrix() * first.matrix());
}

ClassicalChannel classical_mix(double w, const ClassicalChannel& a, const ClassicalChannel& b) {
  if (a.d_in() != b.d_in() || a.d_out() != b.d_out()) throw DimensionError("classical_mix: dimension mismatch");
  return ClassicalChannel(w * a.matrix() + (1.0 - w) * b.matrix());
}

ClassicalChannel classical_permutation(const std::vector<int>& perm) {
  const auto d = static_cast<Eigen::Index>(perm.size());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) s(perm[static_cast<std::size_t>(i)], i) = 1.0;
  return ClassicalChannel(std::move(s));
}

ClassicalChannel classical_identity(Eigen::Index d) { return ClassicalChannel(Eigen::MatrixXd::Identity(d, d)); }

ClassicalChannel classical_constant(Eigen::Index d_in, const Eigen::VectorXd& p) {
  Eigen::MatrixXd s(p.size(), d_in);
  for (Eigen::Index c = 0; c < d_in; ++c) s.col(c) = p;
  return ClassicalChannel(std::move(s));
}

std::pair<ClassicalChannel, ClassicalChannel> classical_marginals(const ClassicalChannel& ch, Eigen::Index d_A,
                                                                  Eigen::Index d_B) {
  if (d_A * d_B != ch.d_out()) throw DimensionError("classical_marginals: dimension mismatch");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d_A, ch.d_in());
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d_B, ch.d_in());
  for (Eigen::Index r = 0; r < ch.d_out(); ++r) {
    a.row(r / d_B) += ch.matrix().row(r);
    b.row(r % d_B) += ch.matrix().row(r);
  }
  return {ClassicalChannel(std::move(a)), ClassicalChannel(std::move(b))};
}

ClassicalChannel classical_cnot_ab() { return classical_permutation({0, 1, 3, 2}); }
ClassicalChannel classical_cnot_ba() { return classical_permutation({0, 3, 2, 1}); }
ClassicalChannel classical_swap() { return classical_permutation({0, 2, 1, 3}); }

std::vector<ClassicalChannel> classical_isometries_1to2() {
  // x -> x (x) x0 sends bit x to outcome 2x.
  Eigen::MatrixXd embed = Eigen::MatrixXd::Zero(4, 2);
  embed(0, 0) = 1.0;
  embed(2, 1) = 1.0;
  const ClassicalChannel e(embed);
  std::vector<int> perm{0, 1, 2, 3};
  std::vector<ClassicalChannel> out;
  do {
    out.push_back(classical_compose(classical_permutation(perm), e));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

ClassicalChannel classical_reversible_family(ReversibleKind kind, double p) {
  if (p < 0 || p > 1) throw Error("classical_reversible_family: p outside [0,1]");
  Eigen::MatrixXd rp = Eigen::MatrixXd::Zero(4, 2);
  for (int x = 0; x < 2; ++x) {
    rp(2 * x, x) = p;
    rp(2 * x + 1, x) = 1.0 - p;
  }
  const ClassicalChannel r(rp);
  switch (kind) {
    case ReversibleKind::Hide:
      return classical_compose(classical_cnot_ab(), r);
    case ReversibleKind::Broadcast:
      return classical_compose(classical_cnot_ba(), r);
    case ReversibleKind::HideSwapped:
      return classical_compose(classical_swap(), classical_compose(classical_cnot_ab(), r));
    case ReversibleKind::BroadcastSwapped:
      return classical_compose(classical_swap(), classical_compose(classical_cnot_ba(), r));
  }
  throw Error("classical_reversible_family: unknown kind");
}

}  // namespace cupset
