#pragma once

#include <vector>

#include "cupset/dense_operator.hpp"
#include "cupset/rng.hpp"

namespace cupset {

// The 24 single-qubit Clifford unitaries (one representative per global phase),
// identity first.
const std::vector<DenseOperator>& single_qubit_cliffords();

// Uniform draw from the group.
const DenseOperator& random_clifford(SeededRng& rng);

}  // namespace cupset
