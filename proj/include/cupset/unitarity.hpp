#pragma once

#include <string>

#include "cupset/channel.hpp"
#include "cupset/classical.hpp"
#include "cupset/rng.hpp"

namespace cupset {

enum class UnitarityRoute { HaarMonteCarlo, PtmNorm, ComplementaryPurity, ChoiPurity, ClassicalSum };

std::string to_string(UnitarityRoute r);

struct UnitarityEstimate {
  double value = 0.0;
  UnitarityRoute route = UnitarityRoute::PtmNorm;
  double stderr_ = 0.0;
  long samples = 0;
};

// tr[rho^dagger rho]
double purity(const DenseOperator& rho);

UnitarityEstimate unitarity_ptm(const QuantumChannel& ch);
UnitarityEstimate unitarity_haar_mc(const QuantumChannel& ch, long n_samples, SeededRng& rng);
// `comp` must be complementary to `ch` (both marginals of one isometry).
UnitarityEstimate unitarity_complementary(const QuantumChannel& ch, const QuantumChannel& comp);
UnitarityEstimate unitarity_choi(const QuantumChannel& ch);
UnitarityEstimate unitarity_classical(const ClassicalChannel& ch);

// Largest spectral sum over randomly drawn settings (U_i, U_j).
double spectral_lower_bound(const QuantumChannel& ch, int n_settings, SeededRng& rng);

struct VariationalResult {
  double value = 0.0;
  double gap = 0.0;  // unitarity minus value
  int settings_used = 0;
};

// Qubit-only maximization of the spectral sum: identity setting, random
// settings, then local refinement around the best setting found.
VariationalResult spectral_variational(const QuantumChannel& ch, int n_settings, SeededRng& rng);

// Spectral sum for one setting given orthogonal conjugation blocks.
double spectral_sum(const Eigen::MatrixXd& t);
// Unital block of rho -> U rho U^dagger.
Eigen::MatrixXd unitary_ptm_block(const DenseOperator& u);

}  // namespace cupset
