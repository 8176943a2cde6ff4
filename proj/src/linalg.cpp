#include "cupset/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "cupset/errors.hpp"

namespace cupset {

DenseOperator tensor(const DenseOperator& a, const DenseOperator& b) {
  const auto& am = a.matrix();
  const auto& bm = b.matrix();
  Eigen::MatrixXcd out(am.rows() * bm.rows(), am.cols() * bm.cols());
  for (Index i = 0; i < am.rows(); ++i)
    for (Index j = 0; j < am.cols(); ++j)
      out.block(i * bm.rows(), j * bm.cols(), bm.rows(), bm.cols()) = am(i, j) * bm;
  return DenseOperator(std::move(out));
}

DenseOperator tensor(std::initializer_list<DenseOperator> factors) {
  if (factors.size() == 0) return DenseOperator::identity(1);
  auto it = factors.begin();
  DenseOperator acc = *it++;
  for (; it != factors.end(); ++it) acc = tensor(acc, *it);
  return acc;
}

DenseOperator partial_trace(const DenseOperator& m, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  Index total = 1;
  for (int d : dims) {
    if (d <= 0) throw DimensionError("partial_trace: nonpositive subsystem dimension");
    total *= d;
  }
  if (!m.square() || m.rows() != total)
    throw DimensionError("partial_trace: product of dims does not match operator size");
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw DimensionError("partial_trace: subsystem index out of range");
    kept[static_cast<std::size_t>(k)] = true;
  }

  // Strides of each subsystem in the full index, and in the kept/traced sub-indices.
  std::vector<Index> stride(static_cast<std::size_t>(n));
  {
    Index s = 1;
    for (int i = n - 1; i >= 0; --i) {
      stride[static_cast<std::size_t>(i)] = s;
      s *= dims[static_cast<std::size_t>(i)];
    }
  }
  Index d_keep = 1, d_trace = 1;
  for (int i = 0; i < n; ++i) (kept[static_cast<std::size_t>(i)] ? d_keep : d_trace) *= dims[static_cast<std::size_t>(i)];

  // Map a (kept, traced) index pair to the full index.
  auto compose = [&](Index k_idx, Index t_idx) {
    Index full = 0;
    for (int i = n - 1; i >= 0; --i) {
      const Index d = dims[static_cast<std::size_t>(i)];
      Index digit;
      if (kept[static_cast<std::size_t>(i)]) {
        digit = k_idx % d;
        k_idx /= d;
      } else {
        digit = t_idx % d;
        t_idx /= d;
      }
      full += digit * stride[static_cast<std::size_t>(i)];
    }
    return full;
  };

  std::vector<Index> map(static_cast<std::size_t>(d_keep * d_trace));
  for (Index k = 0; k < d_keep; ++k)
    for (Index t = 0; t < d_trace; ++t) map[static_cast<std::size_t>(k * d_trace + t)] = compose(k, t);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d_keep, d_keep);
  const auto& mm = m.matrix();
  for (Index r = 0; r < d_keep; ++r)
    for (Index c = 0; c < d_keep; ++c) {
      cplx acc = 0.0;
      for (Index t = 0; t < d_trace; ++t)
        acc += mm(map[static_cast<std::size_t>(r * d_trace + t)], map[static_cast<std::size_t>(c * d_trace + t)]);
      out(r, c) = acc;
    }
  return DenseOperator(std::move(out));
}

std::vector<cplx> eigenvalues(const DenseOperator& m) {
  require_square(m, "eigenvalues");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m.matrix(), false);
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](const cplx& a, const cplx& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (std::abs(ma - mb) > 1e-12) return ma > mb;
    if (std::abs(a.real() - b.real()) > 1e-12) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return ev;
}

DenseOperator unitary_fractional_power(const DenseOperator& u, double alpha) {
  require_unitary(u, "unitary_fractional_power");
  // A unitary is normal, so its complex Schur form is diagonal with a unitary Schur basis.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u.matrix());
  const Eigen::MatrixXcd& q = schur.matrixU();
  const Eigen::MatrixXcd& t = schur.matrixT();
  Eigen::VectorXcd phases(t.rows());
  for (Index i = 0; i < t.rows(); ++i) {
    double theta = std::arg(t(i, i));
    if (theta <= -std::numbers::pi + 1e-12) theta = std::numbers::pi;
    phases(i) = std::polar(1.0, alpha * theta);
  }
  return DenseOperator(Eigen::MatrixXcd(q * phases.asDiagonal() * q.adjoint()));
}

DenseOperator haar_random_unitary(Index d, SeededRng& rng) {
  if (d < 1) throw DimensionError("haar_random_unitary: d must be positive");
  Eigen::MatrixXcd z(d, d);
  const double scale = 1.0 / std::sqrt(2.0);
  for (Index c = 0; c < d; ++c)
    for (Index r = 0; r < d; ++r) z(r, c) = cplx(rng.normal(), rng.normal()) * scale;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < d; ++i) {
    const double mag = std::abs(r(i, i));
    const cplx phase = mag > 0 ? r(i, i) / mag : cplx(1.0);
    q.col(i) *= phase;
  }
  return DenseOperator(std::move(q));
}

Eigen::VectorXcd haar_random_state(Index d, SeededRng& rng) {
  return haar_random_unitary(d, rng).matrix().col(0);
}

DenseOperator haar_random_isometry(Index d_in, Index d_out, SeededRng& rng) {
  if (d_in > d_out) throw DimensionError("haar_random_isometry: d_in exceeds d_out");
  return DenseOperator(Eigen::MatrixXcd(haar_random_unitary(d_out, rng).matrix().leftCols(d_in)));
}

DenseOperator random_density_matrix(Index d, SeededRng& rng) {
  const auto u = haar_random_unitary(d, rng).matrix();
  Eigen::VectorXd w(d);
  for (Index i = 0; i < d; ++i) w(i) = rng.uniform();
  w /= w.sum();
  return DenseOperator(Eigen::MatrixXcd(u * w.cast<cplx>().asDiagonal() * u.adjoint()));
}

double hs_norm_sq(const DenseOperator& m) { return m.matrix().squaredNorm(); }

cplx hs_inner(const DenseOperator& a, const DenseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("hs_inner: dimension mismatch");
  return a.matrix().conjugate().cwiseProduct(b.matrix()).sum();
}

}  // namespace cupset
