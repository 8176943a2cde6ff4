#include "cupset/dense_operator.hpp"

#include <string>

#include "cupset/errors.hpp"

namespace cupset {

DenseOperator::DenseOperator(Index rows, Index cols, const std::vector<cplx>& row_major)
    : m_(rows, cols) {
  if (static_cast<Index>(row_major.size()) != rows * cols) {
    throw DimensionError("DenseOperator: entry count " + std::to_string(row_major.size()) +
                         " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m_(r, c) = row_major[static_cast<std::size_t>(r * cols + c)];
}

DenseOperator::DenseOperator(std::initializer_list<std::initializer_list<cplx>> rows) {
  const Index n_rows = static_cast<Index>(rows.size());
  const Index n_cols = n_rows == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  m_.resize(n_rows, n_cols);
  Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != n_cols) throw DimensionError("DenseOperator: ragged rows");
    Index c = 0;
    for (const auto& v : row) m_(r, c++) = v;
    ++r;
  }
}

DenseOperator DenseOperator::ket(Index d, Index i) {
  if (i < 0 || i >= d) throw DimensionError("ket: index out of range");
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(d, 1);
  v(i, 0) = 1.0;
  return DenseOperator(std::move(v));
}

DenseOperator DenseOperator::basis_projector(Index d, Index i) {
  if (i < 0 || i >= d) throw DimensionError("basis_projector: index out of range");
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d, d);
  p(i, i) = 1.0;
  return DenseOperator(std::move(p));
}

DenseOperator DenseOperator::outer(const Eigen::VectorXcd& v) {
  return DenseOperator(Eigen::MatrixXcd(v * v.adjoint()));
}

std::vector<cplx> DenseOperator::row_major() const {
  std::vector<cplx> out(static_cast<std::size_t>(m_.size()));
  for (Index r = 0; r < m_.rows(); ++r)
    for (Index c = 0; c < m_.cols(); ++c) out[static_cast<std::size_t>(r * m_.cols() + c)] = m_(r, c);
  return out;
}

double DenseOperator::max_abs_diff(const DenseOperator& other) const {
  if (rows() != other.rows() || cols() != other.cols())
    throw DimensionError("max_abs_diff: dimension mismatch");
  if (m_.size() == 0) return 0.0;
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

bool is_hermitian(const DenseOperator& m, double tol) {
  if (!m.square()) return false;
  return m.max_abs_diff(m.adjoint()) <= tol;
}

bool is_density_matrix(const DenseOperator& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  if (std::abs(m.trace() - 1.0) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

bool is_unitary(const DenseOperator& u, double tol) {
  if (!u.square()) return false;
  const Eigen::MatrixXcd g = u.matrix().adjoint() * u.matrix();
  return (g - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

void require_unitary(const DenseOperator& u, const char* what) {
  if (!is_unitary(u)) throw NotUnitaryError(std::string(what) + ": operator is not unitary");
}

void require_square(const DenseOperator& m, const char* what) {
  if (!m.square()) throw DimensionError(std::string(what) + ": operator is not square");
}

}  // namespace cupset
