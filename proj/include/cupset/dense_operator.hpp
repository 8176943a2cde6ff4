#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace cupset {

using cplx = std::complex<double>;
using Index = Eigen::Index;

inline constexpr double kStateTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kChannelTol = 1e-9;

// Dense complex matrix carrying states, unitaries and Kraus operators.
// Row-major entry order is used for construction from flat lists.
class DenseOperator {
 public:
  DenseOperator() = default;
  DenseOperator(Index rows, Index cols) : m_(Eigen::MatrixXcd::Zero(rows, cols)) {}
  DenseOperator(Index rows, Index cols, const std::vector<cplx>& row_major);
  explicit DenseOperator(Eigen::MatrixXcd m) : m_(std::move(m)) {}
  DenseOperator(std::initializer_list<std::initializer_list<cplx>> rows);

  static DenseOperator identity(Index d) { return DenseOperator(Eigen::MatrixXcd::Identity(d, d)); }
  static DenseOperator zero(Index rows, Index cols) { return DenseOperator(rows, cols); }
  // Column vector |i> in dimension d.
  static DenseOperator ket(Index d, Index i);
  // Projector |i><i| in dimension d.
  static DenseOperator basis_projector(Index d, Index i);
  // |v><v| for a (not necessarily normalized) column vector.
  static DenseOperator outer(const Eigen::VectorXcd& v);
  static DenseOperator maximally_mixed(Index d) {
    return DenseOperator(Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
  }

  Index rows() const noexcept { return m_.rows(); }
  Index cols() const noexcept { return m_.cols(); }
  bool square() const noexcept { return m_.rows() == m_.cols(); }

  cplx operator()(Index r, Index c) const { return m_(r, c); }
  cplx& operator()(Index r, Index c) { return m_(r, c); }

  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
  Eigen::MatrixXcd& matrix() noexcept { return m_; }

  std::vector<cplx> row_major() const;

  DenseOperator adjoint() const { return DenseOperator(Eigen::MatrixXcd(m_.adjoint())); }
  DenseOperator conjugate() const { return DenseOperator(Eigen::MatrixXcd(m_.conjugate())); }
  DenseOperator transpose() const { return DenseOperator(Eigen::MatrixXcd(m_.transpose())); }
  cplx trace() const { return m_.trace(); }

  // max_{ij} |a_ij - b_ij|; dimensions must agree.
  double max_abs_diff(const DenseOperator& other) const;

  DenseOperator& operator+=(const DenseOperator& o) {
    m_ += o.m_;
    return *this;
  }
  DenseOperator& operator-=(const DenseOperator& o) {
    m_ -= o.m_;
    return *this;
  }
  DenseOperator& operator*=(cplx s) {
    m_ *= s;
    return *this;
  }

  friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
    return DenseOperator(Eigen::MatrixXcd(a.m_ * b.m_));
  }
  friend DenseOperator operator+(DenseOperator a, const DenseOperator& b) { return a += b; }
  friend DenseOperator operator-(DenseOperator a, const DenseOperator& b) { return a -= b; }
  friend DenseOperator operator*(cplx s, DenseOperator a) { return a *= s; }
  friend DenseOperator operator*(DenseOperator a, cplx s) { return a *= s; }

 private:
  Eigen::MatrixXcd m_;
};

bool is_hermitian(const DenseOperator& m, double tol = kStateTol);
bool is_density_matrix(const DenseOperator& m, double tol = kStateTol);
bool is_unitary(const DenseOperator& u, double tol = kUnitaryTol);
// Throws NotUnitaryError naming `what` when the check fails.
void require_unitary(const DenseOperator& u, const char* what);
void require_square(const DenseOperator& m, const char* what);

}  // namespace cupset
