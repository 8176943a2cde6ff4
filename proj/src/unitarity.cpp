#include "cupset/unitarity.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "cupset/errors.hpp"
#include "cupset/linalg.hpp"
#include "cupset/parallel.hpp"

namespace cupset {

std::string to_string(UnitarityRoute r) {
  switch (r) {
    case UnitarityRoute::HaarMonteCarlo: return "haar-mc";
    case UnitarityRoute::PtmNorm: return "ptm";
    case UnitarityRoute::ComplementaryPurity: return "complementary";
    case UnitarityRoute::ChoiPurity: return "choi";
    case UnitarityRoute::ClassicalSum: return "classical";
  }
  return "unknown";
}

double purity(const DenseOperator& rho) {
  require_square(rho, "purity");
  return hs_norm_sq(rho);
}

UnitarityEstimate unitarity_ptm(const QuantumChannel& ch) {
  const auto ptm = to_ptm(ch);
  const double d = static_cast<double>(ch.d_in());
  UnitarityEstimate est;
  est.route = UnitarityRoute::PtmNorm;
  est.value = d > 1 ? ptm.t.squaredNorm() / (d * d - 1.0) : 1.0;
  return est;
}

UnitarityEstimate unitarity_haar_mc(const QuantumChannel& ch, long n_samples, SeededRng& rng) {
  if (n_samples < 2) throw Error("unitarity_haar_mc: need at least 2 samples");
  const Index d = ch.d_in();
  const double scale = static_cast<double>(d) / static_cast<double>(d - 1);
  const SeededRng master(rng.engine()());
  const auto centre = DenseOperator::maximally_mixed(d);
  std::vector<double> x(static_cast<std::size_t>(n_samples));
  parallel_for(x.size(), [&](std::size_t i) {
    SeededRng local = master.derive(i);
    const auto psi = DenseOperator::outer(haar_random_state(d, local));
    x[i] = scale * purity(ch.apply(psi - centre));
  });
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n_samples);
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n_samples - 1);
  UnitarityEstimate est;
  est.route = UnitarityRoute::HaarMonteCarlo;
  est.value = mean;
  est.stderr_ = std::sqrt(var / static_cast<double>(n_samples));
  est.samples = n_samples;
  return est;
}

UnitarityEstimate unitarity_complementary(const QuantumChannel& ch, const QuantumChannel& comp) {
  if (ch.d_in() != comp.d_in()) throw DimensionError("unitarity_complementary: input dimensions differ");
  const double d = static_cast<double>(ch.d_in());
  const auto centre = DenseOperator::maximally_mixed(ch.d_in());
  UnitarityEstimate est;
  est.route = UnitarityRoute::ComplementaryPurity;
  est.value = d / (d * d - 1.0) * (d * purity(comp.apply(centre)) - purity(ch.apply(centre)));
  return est;
}

UnitarityEstimate unitarity_choi(const QuantumChannel& ch) {
  const double d = static_cast<double>(ch.d_in());
  const auto centre = DenseOperator::maximally_mixed(ch.d_in());
  UnitarityEstimate est;
  est.route = UnitarityRoute::ChoiPurity;
  est.value = d / (d * d - 1.0) * (d * purity(choi_state(ch)) - purity(ch.apply(centre)));
  return est;
}

UnitarityEstimate unitarity_classical(const ClassicalChannel& ch) {
  const Index d = ch.d_in();
  const Eigen::VectorXd eta = Eigen::VectorXd::Constant(d, 1.0 / static_cast<double>(d));
  double sum = 0.0;
  for (Index i = 0; i < d; ++i) {
    const Eigen::VectorXd diff = Eigen::VectorXd::Unit(d, i) - eta;
    sum += (ch.matrix() * diff).squaredNorm();
  }
  UnitarityEstimate est;
  est.route = UnitarityRoute::ClassicalSum;
  est.value = sum / static_cast<double>(d - 1);
  return est;
}

Eigen::MatrixXd unitary_ptm_block(const DenseOperator& u) { return to_ptm(unitary_channel(u)).t; }

double spectral_sum(const Eigen::MatrixXd& t) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(t, false);
  return es.eigenvalues().cwiseAbs2().sum() / static_cast<double>(t.rows());
}

double spectral_lower_bound(const QuantumChannel& ch, int n_settings, SeededRng& rng) {
  if (ch.d_in() != ch.d_out()) throw DimensionError("spectral_lower_bound: channel must be d -> d");
  if (n_settings < 1) throw Error("spectral_lower_bound: need at least one setting");
  const Eigen::MatrixXd t = to_ptm(ch).t;
  double best = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < n_settings; ++s) {
    const auto oi = unitary_ptm_block(haar_random_unitary(ch.d_in(), rng));
    const auto oj = unitary_ptm_block(haar_random_unitary(ch.d_in(), rng));
    best = std::max(best, spectral_sum(oi * t * oj));
  }
  return best;
}

namespace {

// exp(-i eps H) for a random Hermitian H with unit-scale entries.
DenseOperator small_rotation(Index d, double eps, SeededRng& rng) {
  Eigen::MatrixXcd h(d, d);
  for (Index r = 0; r < d; ++r)
    for (Index c = 0; c < d; ++c) h(r, c) = cplx(rng.normal(), rng.normal());
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd ph(d);
  for (Index i = 0; i < d; ++i) ph(i) = std::polar(1.0, -eps * es.eigenvalues()(i));
  return DenseOperator(Eigen::MatrixXcd(es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint()));
}

}  // namespace

VariationalResult spectral_variational(const QuantumChannel& ch, int n_settings, SeededRng& rng) {
  if (ch.d_in() != 2 || ch.d_out() != 2) throw UnsupportedDimensionError("spectral_variational: qubit channels only");
  if (n_settings < 1) throw Error("spectral_variational: need at least one setting");
  const Eigen::MatrixXd t = to_ptm(ch).t;
  const double u = t.squaredNorm() / 3.0;

  DenseOperator best_i = DenseOperator::identity(2), best_j = DenseOperator::identity(2);
  double best = spectral_sum(t);
  int used = 1;
  const int n_random = std::min(n_settings - 1, std::max(0, n_settings / 2));
  for (int s = 0; s < n_random; ++s, ++used) {
    auto ui = haar_random_unitary(2, rng);
    auto uj = haar_random_unitary(2, rng);
    const double v = spectral_sum(unitary_ptm_block(ui) * t * unitary_ptm_block(uj));
    if (v > best) {
      best = v;
      best_i = std::move(ui);
      best_j = std::move(uj);
    }
  }
  double eps = 0.5;
  while (used < n_settings) {
    auto ui = small_rotation(2, eps, rng) * best_i;
    auto uj = best_j * small_rotation(2, eps, rng);
    const double v = spectral_sum(unitary_ptm_block(ui) * t * unitary_ptm_block(uj));
    ++used;
    if (v > best) {
      best = v;
      best_i = std::move(ui);
      best_j = std::move(uj);
    } else {
      eps = std::max(eps * 0.9, 1e-3);
    }
  }
  return {best, u - best, used};
}

}  // namespace cupset
