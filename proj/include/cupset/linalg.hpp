#pragma once

#include <vector>

#include "cupset/dense_operator.hpp"
#include "cupset/rng.hpp"

namespace cupset {

// Kronecker product; the left factor is the most-significant subsystem.
DenseOperator tensor(const DenseOperator& a, const DenseOperator& b);
DenseOperator tensor(std::initializer_list<DenseOperator> factors);

// Reduced operator on the subsystems listed in `keep` (kept in ascending order).
DenseOperator partial_trace(const DenseOperator& m, const std::vector<int>& dims,
                            const std::vector<int>& keep);

// Sorted by descending modulus, then descending real part, then descending imaginary part.
std::vector<cplx> eigenvalues(const DenseOperator& m);

// u^alpha on the principal branch: eigenphases in (-pi, pi] are scaled by alpha.
DenseOperator unitary_fractional_power(const DenseOperator& u, double alpha);

// Haar-distributed unitary via QR of a complex Ginibre matrix with phase fix.
DenseOperator haar_random_unitary(Index d, SeededRng& rng);
// First column of a Haar unitary, as a column vector.
Eigen::VectorXcd haar_random_state(Index d, SeededRng& rng);
// Random isometry d_in -> d_out (first d_in columns of a Haar unitary).
DenseOperator haar_random_isometry(Index d_in, Index d_out, SeededRng& rng);
// Random density matrix with uniform spectrum weights and Haar eigenbasis.
DenseOperator random_density_matrix(Index d, SeededRng& rng);

// tr[m^dagger m].
double hs_norm_sq(const DenseOperator& m);
// Hilbert-Schmidt inner product tr[a^dagger b].
cplx hs_inner(const DenseOperator& a, const DenseOperator& b);

}  // namespace cupset
