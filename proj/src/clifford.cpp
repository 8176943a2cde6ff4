#include "cupset/clifford.hpp"

#include <cmath>
#include <deque>

#include "cupset/gates.hpp"

namespace cupset {

namespace {

// Fix the global phase: first entry of non-negligible modulus made real positive.
DenseOperator canonical(const DenseOperator& u) {
  for (Index i = 0; i < 4; ++i) {
    const cplx z = u(i / 2, i % 2);
    if (std::abs(z) > 1e-8) return u * (std::abs(z) / z);
  }
  return u;
}

std::vector<DenseOperator> build() {
  const DenseOperator gens[2] = {gates::H(), gates::S()};
  std::vector<DenseOperator> group{DenseOperator::identity(2)};
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const DenseOperator base = group[frontier.front()];
    frontier.pop_front();
    for (const auto& g : gens) {
      const DenseOperator next = canonical(g * base);
      bool known = false;
      for (const auto& e : group)
        if (e.max_abs_diff(next) < 1e-8) {
          known = true;
          break;
        }
      if (!known) {
        group.push_back(next);
        frontier.push_back(group.size() - 1);
      }
    }
  }
  return group;
}

}  // namespace

const std::vector<DenseOperator>& single_qubit_cliffords() {
  static const std::vector<DenseOperator> group = build();
  return group;
}

const DenseOperator& random_clifford(SeededRng& rng) {
  const auto& g = single_qubit_cliffords();
  return g[rng.index(g.size())];
}

}  // namespace cupset
