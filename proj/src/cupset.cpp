#include "cupset/cupset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "cupset/errors.hpp"
#include "cupset/linalg.hpp"
#include "cupset/parallel.hpp"
#include "cupset/unitarity.hpp"

namespace cupset {

namespace {

struct FamilyName {
  CupFamily family;
  const char* name;
};

constexpr FamilyName kFamilyNames[] = {
    {CupFamily::SwapAlpha, "swap-alpha"},       {CupFamily::CnotAlpha, "cnot-alpha"},
    {CupFamily::CnotBaCnotAb, "cnotba-cnotab"}, {CupFamily::CnotAlphaRev, "cnot-rev"},
    {CupFamily::Fig3Grid, "fig3"},              {CupFamily::Fig8Grid, "fig8"},
    {CupFamily::HaarRandom, "haar"},            {CupFamily::ClassicalEnum, "classical"},
    {CupFamily::PauliHiding, "pauli-hiding"},   {CupFamily::Custom, "custom"},
};

double sin2_half(double alpha) {
  const double s = std::sin(std::numbers::pi * alpha / 2);
  return s * s;
}

CupSample closed_form(double u, double ubar, CupFamily family, double alpha) {
  CupSample s;
  s.u = u;
  s.ubar = ubar;
  s.variant = CupVariant::Isometric;
  s.family = family;
  s.params = {alpha};
  return s;
}

void require_qubit_dims(const CupDims& dims) {
  if (!(dims == CupDims{2, 2, 2}))
    throw UnsupportedDimensionError("generate_cupset: family supports dims (2,2,2) only");
}

const DenseOperator& zero_ket_state() {
  static const DenseOperator z = DenseOperator::basis_projector(2, 0);
  return z;
}

}  // namespace

std::string to_string(CupVariant v) {
  switch (v) {
    case CupVariant::Isometric: return "isometric";
    case CupVariant::Reversible: return "reversible";
    case CupVariant::Full: return "full";
  }
  return "unknown";
}

std::string to_string(CupFamily f) {
  for (const auto& fn : kFamilyNames)
    if (fn.family == f) return fn.name;
  return "unknown";
}

CupVariant parse_variant(const std::string& s) {
  if (s == "isometric") return CupVariant::Isometric;
  if (s == "reversible") return CupVariant::Reversible;
  if (s == "full") return CupVariant::Full;
  throw Error("unknown variant: " + s);
}

CupFamily parse_family(const std::string& s) {
  for (const auto& fn : kFamilyNames)
    if (s == fn.name) return fn.family;
  throw Error("unknown family: " + s);
}

CupSample boundary_swap_alpha(double alpha) {
  const double s = sin2_half(alpha);
  return closed_form((1 - s) * (3 - s) / 3, 1 - (1 - s) * (3 + s) / 3, CupFamily::SwapAlpha, alpha);
}

CupSample boundary_cnot_ab(double alpha) {
  const double s = sin2_half(alpha);
  return closed_form(1 - 2 * s / 3, s / 3, CupFamily::CnotAlpha, alpha);
}

CupSample boundary_cnotba_cnotab(double alpha) {
  const double s = sin2_half(alpha);
  return closed_form((1 - s) / 3, 1 - 2 * (1 - s) / 3, CupFamily::CnotBaCnotAb, alpha);
}

double upper_boundary_relation(double u) { return 3 + u - 2 * std::sqrt(1 + 3 * u); }

double band_lower(const CupDims& dims) {
  const double dx = dims.d_X;
  return dx / (dx + 1) * (1.0 / dims.d_A + 1.0 / dims.d_B);
}

bool verify_band(const CupSample& sample) {
  const double sum = sample.u + sample.ubar;
  return sum >= band_lower(sample.dims) - 1e-9 && sum <= 1 + 1e-9;
}

CupSample cup_from_channel(const QuantumChannel& global, const CupDims& dims, CupVariant variant, CupFamily family,
                           std::vector<double> params, std::string curve) {
  const std::vector<int> split{dims.d_A, dims.d_B};
  CupSample s;
  s.u = unitarity_ptm(trace_out(global, split, {0})).value;
  s.ubar = unitarity_ptm(trace_out(global, split, {1})).value;
  s.variant = variant;
  s.family = family;
  s.params = std::move(params);
  s.dims = dims;
  s.curve = std::move(curve);
  return s;
}

CupSample cup_from_unitary(const DenseOperator& u_ab, const DenseOperator& ancilla, CupVariant variant,
                           CupFamily family, std::vector<double> params, std::string curve) {
  const int d_x = static_cast<int>(u_ab.rows() / ancilla.rows());
  const int d_a = d_x;
  const int d_b = static_cast<int>(u_ab.rows()) / d_a;
  return cup_from_channel(dilated_channel(u_ab, ancilla), {d_x, d_a, d_b}, variant, family, std::move(params),
                          std::move(curve));
}

std::vector<double> unit_grid(int n) {
  if (n < 1) throw Error("grid needs at least one point");
  if (n == 1) return {0.0};
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
  return g;
}

namespace {

std::vector<CupSample> parametric(CupVariant variant, CupFamily family, int n) {
  if (variant == CupVariant::Full) throw Error("generate_cupset: full variant is only sampled for the haar family");
  const auto grid = unit_grid(n);
  const DenseOperator anc = variant == CupVariant::Isometric ? zero_ket_state() : DenseOperator::maximally_mixed(2);
  DenseOperator (*make)(double) = nullptr;
  switch (family) {
    case CupFamily::SwapAlpha: make = family_swap_alpha; break;
    case CupFamily::CnotAlpha: make = family_cnot_ab_alpha; break;
    case CupFamily::CnotBaCnotAb: make = family_cnotba_cnotab; break;
    default: throw Error("parametric: not a one-parameter family");
  }
  std::vector<CupSample> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    out[i] = cup_from_unitary(make(grid[i]), anc, variant, family, {grid[i]});
  });
  return out;
}

std::vector<CupSample> reversible_lower(int n) {
  const auto grid = unit_grid(n);
  const auto anc = DenseOperator::maximally_mixed(2);
  struct Curve {
    const char* tag;
    DenseOperator (*make)(double);
  };
  const Curve curves[] = {{"cnot-ab", family_cnot_ab_alpha},
                          {"cnotba-cnotab", family_cnotba_cnotab},
                          {"cnot-swaplike", family_cnot_alpha_swaplike}};
  std::vector<CupSample> out(3 * grid.size());
  parallel_for(out.size(), [&](std::size_t k) {
    const auto& c = curves[k / grid.size()];
    const double a = grid[k % grid.size()];
    out[k] = cup_from_unitary(c.make(a), anc, CupVariant::Reversible, CupFamily::CnotAlphaRev, {a}, c.tag);
  });
  return out;
}

std::vector<CupSample> circuit_grid(CupVariant variant, CupFamily family, int n) {
  if (variant != CupVariant::Isometric) throw Error("generate_cupset: circuit grids are isometric");
  const auto unit = unit_grid(n);
  std::vector<double> g(unit.size());
  for (std::size_t i = 0; i < unit.size(); ++i) g[i] = unit[i] * std::numbers::pi;
  const std::size_t m = g.size();
  const bool generic = family == CupFamily::Fig8Grid;
  const std::size_t total = generic ? m * m * m : m * m;
  std::vector<CupSample> out(total);
  parallel_for(total, [&](std::size_t k) {
    const double a = g[k % m], b = g[(k / m) % m];
    if (generic) {
      const double c = g[k / (m * m)];
      out[k] = cup_from_unitary(isometry_family_generic(a, b, c), zero_ket_state(), variant, family, {a, b, c});
    } else {
      out[k] = cup_from_unitary(isometry_family_figure3(a, b), zero_ket_state(), variant, family, {a, b});
    }
  });
  return out;
}

std::vector<CupSample> haar_cloud(CupVariant variant, int n, SeededRng& rng) {
  const SeededRng master(rng.engine()());
  std::vector<CupSample> out(static_cast<std::size_t>(n));
  parallel_for(out.size(), [&](std::size_t i) {
    SeededRng local = master.derive(i);
    switch (variant) {
      case CupVariant::Isometric: {
        const auto u = haar_random_unitary(4, local);
        out[i] = cup_from_unitary(u, zero_ket_state(), variant, CupFamily::HaarRandom, {});
        break;
      }
      case CupVariant::Reversible: {
        const auto u = haar_random_unitary(4, local);
        const double p = local.uniform();
        const auto basis = haar_random_unitary(2, local).matrix();
        Eigen::Vector2cd w(p, 1 - p);
        const DenseOperator anc(Eigen::MatrixXcd(basis * w.asDiagonal() * basis.adjoint()));
        out[i] = cup_from_unitary(u, anc, variant, CupFamily::HaarRandom, {p});
        break;
      }
      case CupVariant::Full: {
        // X (x) |00> through a Haar unitary on three qubits, third qubit discarded.
        const auto u = haar_random_unitary(8, local);
        const auto global = trace_out(dilated_channel(u, DenseOperator::basis_projector(4, 0)), {2, 2, 2}, {0, 1});
        out[i] = cup_from_channel(global, {2, 2, 2}, variant, CupFamily::HaarRandom, {});
        break;
      }
    }
  });
  return out;
}

std::vector<CupSample> pauli_hiding_samples(CupVariant variant, const CupDims& dims) {
  if (variant == CupVariant::Reversible) {
    if (!(dims == CupDims{2, 2, 4})) throw UnsupportedDimensionError("pauli-hiding reversible point needs dims (2,2,4)");
    return {cup_from_channel(pauli_hiding_channel(), dims, variant, CupFamily::PauliHiding, {}, "A|B")};
  }
  if (variant != CupVariant::Isometric || dims.d_X != 2 || dims.d_A * dims.d_B != 32)
    throw UnsupportedDimensionError("pauli-hiding dilation needs isometric dims with d_A*d_B = 32");
  // Output of the dilation is A(2) B(4) C(4); regroup to each bipartition.
  const auto global = isometry_channel(pauli_hiding_dilation());
  const std::vector<int> dims3{2, 4, 4};
  struct Split {
    const char* tag;
    std::vector<int> first;
    std::vector<int> second;
    CupDims dims;
  };
  const Split splits[] = {{"A|BC", {0}, {1, 2}, {2, 2, 16}},
                          {"B|AC", {1}, {0, 2}, {2, 4, 8}},
                          {"C|AB", {2}, {0, 1}, {2, 4, 8}}};
  std::vector<CupSample> out;
  for (const auto& s : splits) {
    CupSample c;
    c.u = unitarity_ptm(trace_out(global, dims3, s.first)).value;
    c.ubar = unitarity_ptm(trace_out(global, dims3, s.second)).value;
    c.variant = CupVariant::Isometric;
    c.family = CupFamily::PauliHiding;
    c.dims = s.dims;
    c.curve = s.tag;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::vector<CupSample> generate_cupset(CupVariant variant, CupFamily family, int n_points, const CupDims& dims,
                                       SeededRng& rng) {
  if (n_points < 1) throw Error("generate_cupset: n_points must be positive");
  if (family == CupFamily::PauliHiding) return pauli_hiding_samples(variant, dims);
  require_qubit_dims(dims);
  switch (family) {
    case CupFamily::SwapAlpha:
    case CupFamily::CnotAlpha:
    case CupFamily::CnotBaCnotAb:
      return parametric(variant, family, n_points);
    case CupFamily::CnotAlphaRev:
      if (variant != CupVariant::Reversible) throw Error("generate_cupset: cnot-rev is a reversible family");
      return reversible_lower(n_points);
    case CupFamily::Fig3Grid:
    case CupFamily::Fig8Grid:
      return circuit_grid(variant, family, n_points);
    case CupFamily::HaarRandom:
      return haar_cloud(variant, n_points, rng);
    case CupFamily::ClassicalEnum:
      return classical_cupset(variant, n_points);
    default:
      throw Error("generate_cupset: unsupported family " + to_string(family));
  }
}

CupSample cup_from_classical(const ClassicalChannel& global, CupVariant variant, std::vector<double> params,
                             std::string curve) {
  const auto [a, b] = classical_marginals(global, 2, 2);
  CupSample s;
  s.u = unitarity_classical(a).value;
  s.ubar = unitarity_classical(b).value;
  s.variant = variant;
  s.family = CupFamily::ClassicalEnum;
  s.params = std::move(params);
  s.curve = std::move(curve);
  return s;
}

std::vector<CupSample> classical_cupset(CupVariant variant, int n_points) {
  std::vector<CupSample> out;
  if (variant == CupVariant::Isometric) {
    // Distinct points over all permutations of x (x) x0; values are exact integers.
    std::map<std::pair<long, long>, CupSample> distinct;
    int index = 0;
    for (const auto& ch : classical_isometries_1to2()) {
      auto s = cup_from_classical(ch, variant, {static_cast<double>(index++)}, "");
      distinct.emplace(std::make_pair(std::lround(s.u * 1e9), std::lround(s.ubar * 1e9)), s);
    }
    for (auto& [key, s] : distinct) out.push_back(s);
    return out;
  }
  const auto grid = unit_grid(n_points);
  struct Kind {
    ReversibleKind kind;
    const char* tag;
  };
  const Kind kinds[] = {{ReversibleKind::Hide, "hide"},
                        {ReversibleKind::Broadcast, "broadcast"},
                        {ReversibleKind::HideSwapped, "hide-swapped"},
                        {ReversibleKind::BroadcastSwapped, "broadcast-swapped"}};
  if (variant == CupVariant::Reversible) {
    for (const auto& k : kinds)
      for (double p : grid) out.push_back(cup_from_classical(classical_reversible_family(k.kind, p), variant, {p}, k.tag));
    return out;
  }
  // Full: every reversible family point mixed with the uniform constant channel.
  const auto uniform = classical_constant(2, Eigen::Vector4d::Constant(0.25));
  for (const auto& k : kinds)
    for (double p : grid)
      for (double w : grid) {
        const auto mixed = classical_mix(w, classical_reversible_family(k.kind, p), uniform);
        out.push_back(cup_from_classical(mixed, variant, {p, w}, k.tag));
      }
  return out;
}

NoHidingReport no_hiding_check(const std::vector<CupSample>& samples, double eps) {
  NoHidingReport report;
  for (const auto& s : samples) {
    if (s.u > eps) continue;
    ++report.checked;
    if (s.ubar < 1 - 2 * eps - 1e-9) report.violations.push_back(s);
  }
  return report;
}

CupSample apply_depolarizing(const CupSample& sample, double p_A, double p_B) {
  if (p_A < 0 || p_A > 1 || p_B < 0 || p_B > 1) throw Error("apply_depolarizing: probabilities outside [0,1]");
  CupSample s = sample;
  s.u *= (1 - p_A) * (1 - p_A);
  s.ubar *= (1 - p_B) * (1 - p_B);
  s.variant = CupVariant::Full;
  return s;
}

DepolarFit fit_depolarizing(const std::vector<CupSample>& noisy, const std::vector<CupSample>& ideal) {
  if (noisy.empty() || ideal.empty()) throw EmptyDataError("fit_depolarizing: no data");
  if (noisy.size() != ideal.size()) throw DimensionError("fit_depolarizing: lists are not aligned");
  double uu = 0, un = 0, bb = 0, bn = 0;
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    uu += ideal[i].u * ideal[i].u;
    un += ideal[i].u * noisy[i].u;
    bb += ideal[i].ubar * ideal[i].ubar;
    bn += ideal[i].ubar * noisy[i].ubar;
  }
  const double a = uu > 0 ? std::clamp(un / uu, 0.0, 1.0) : 1.0;
  const double b = bb > 0 ? std::clamp(bn / bb, 0.0, 1.0) : 1.0;
  DepolarFit fit;
  fit.p_A = 1 - std::sqrt(a);
  fit.p_B = 1 - std::sqrt(b);
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    fit.residual += std::pow(a * ideal[i].u - noisy[i].u, 2) + std::pow(b * ideal[i].ubar - noisy[i].ubar, 2);
  }
  return fit;
}

}  // namespace cupset
