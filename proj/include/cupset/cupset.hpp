#pragma once

#include <string>
#include <vector>

#include "cupset/channel.hpp"
#include "cupset/classical.hpp"
#include "cupset/rng.hpp"

namespace cupset {

enum class CupVariant { Isometric, Reversible, Full };
enum class CupFamily {
  SwapAlpha,
  CnotAlpha,
  CnotBaCnotAb,
  CnotAlphaRev,
  Fig3Grid,
  Fig8Grid,
  HaarRandom,
  ClassicalEnum,
  PauliHiding,
  Custom
};

std::string to_string(CupVariant v);
std::string to_string(CupFamily f);
CupVariant parse_variant(const std::string& s);
CupFamily parse_family(const std::string& s);

struct CupDims {
  int d_X = 2;
  int d_A = 2;
  int d_B = 2;
  bool operator==(const CupDims&) const = default;
};

struct CupSample {
  double u = 0.0;
  double ubar = 0.0;
  CupVariant variant = CupVariant::Isometric;
  CupFamily family = CupFamily::Custom;
  std::vector<double> params;
  CupDims dims;
  // Sub-curve tag for families that bundle several curves (e.g. "cnot-ab").
  std::string curve;
};

// Closed forms along the three boundary curves, s = sin^2(pi alpha / 2).
CupSample boundary_swap_alpha(double alpha);
CupSample boundary_cnot_ab(double alpha);
CupSample boundary_cnotba_cnotab(double alpha);

// Upper boundary ubar(u) = 3 + u - 2 sqrt(1 + 3u).
double upper_boundary_relation(double u);

// Lower edge of the isometric band, (d_X/(d_X+1))(1/d_A + 1/d_B).
double band_lower(const CupDims& dims);
bool verify_band(const CupSample& sample);

// (u, ubar) of the marginals of rho -> U (rho x ancilla) U^dagger, via the PTM route.
CupSample cup_from_unitary(const DenseOperator& u_ab, const DenseOperator& ancilla, CupVariant variant,
                           CupFamily family, std::vector<double> params, std::string curve = "");
// (u, ubar) of a global channel X -> A B.
CupSample cup_from_channel(const QuantumChannel& global, const CupDims& dims, CupVariant variant,
                           CupFamily family, std::vector<double> params, std::string curve = "");

// Uniform alpha-grid on [0,1] with n points (both endpoints included).
std::vector<double> unit_grid(int n);

std::vector<CupSample> generate_cupset(CupVariant variant, CupFamily family, int n_points, const CupDims& dims,
                                       SeededRng& rng);

// Classical 1 -> 2 bit sets: exact isometric points, reversible family grid, squashed full set.
std::vector<CupSample> classical_cupset(CupVariant variant, int n_points = 50);
CupSample cup_from_classical(const ClassicalChannel& global, CupVariant variant, std::vector<double> params,
                             std::string curve);

struct NoHidingReport {
  std::size_t checked = 0;
  std::vector<CupSample> violations;
  bool passed() const { return violations.empty(); }
};

// Flags samples with u <= eps and ubar < 1 - 2 eps - 1e-9.
NoHidingReport no_hiding_check(const std::vector<CupSample>& samples, double eps);

CupSample apply_depolarizing(const CupSample& sample, double p_A, double p_B);

struct DepolarFit {
  double p_A = 0.0;
  double p_B = 0.0;
  double residual = 0.0;
};

// Least squares for ((1-p_A)^2 u_i, (1-p_B)^2 ubar_i) against noisy data, solved per axis.
DepolarFit fit_depolarizing(const std::vector<CupSample>& noisy, const std::vector<CupSample>& ideal);

}  // namespace cupset
