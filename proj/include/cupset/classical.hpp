#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace cupset {

// Column-stochastic map between probability vectors.
class ClassicalChannel {
 public:
  explicit ClassicalChannel(Eigen::MatrixXd s);

  Eigen::Index d_in() const noexcept { return s_.cols(); }
  Eigen::Index d_out() const noexcept { return s_.rows(); }
  const Eigen::MatrixXd& matrix() const noexcept { return s_; }

 private:
  Eigen::MatrixXd s_;
};

Eigen::VectorXd classical_apply(const ClassicalChannel& ch, const Eigen::VectorXd& p);
ClassicalChannel classical_compose(const ClassicalChannel& second, const ClassicalChannel& first);
ClassicalChannel classical_mix(double w, const ClassicalChannel& a, const ClassicalChannel& b);
ClassicalChannel classical_permutation(const std::vector<int>& perm);
ClassicalChannel classical_identity(Eigen::Index d);
ClassicalChannel classical_constant(Eigen::Index d_in, const Eigen::VectorXd& p);

// Marginals on A (first factor) and B of a channel into d_A * d_B outcomes.
std::pair<ClassicalChannel, ClassicalChannel> classical_marginals(const ClassicalChannel& ch, Eigen::Index d_A,
                                                                  Eigen::Index d_B);

// The 24 permutations of x (x) x0 on two output bits.
std::vector<ClassicalChannel> classical_isometries_1to2();

enum class ReversibleKind {
  Hide,            // CNOT_AB . R_p
  Broadcast,       // CNOT_BA . R_p
  HideSwapped,     // SWAP . CNOT_AB . R_p
  BroadcastSwapped // SWAP . CNOT_BA . R_p
};

// R_p(x) = x (x) (p x0 + (1-p) x1) followed by the permutation named by kind.
ClassicalChannel classical_reversible_family(ReversibleKind kind, double p);

// CNOT on bits, control first.
ClassicalChannel classical_cnot_ab();
ClassicalChannel classical_cnot_ba();
ClassicalChannel classical_swap();

}  // namespace cupset
