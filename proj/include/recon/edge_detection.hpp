#pragma once

#include <functional>
#include <utility>

#include "recon/fourier_model.hpp"
#include "recon/solvers.hpp"
#include "recon/types.hpp"

namespace recon {

enum class CfKind { FIRST_ORDER, GAUSSIAN, CUSTOM_H };

// Frequency-domain multipliers turning Fourier data of f into data for the
// jump function [f].
struct ConcentrationFactors {
  CplxVec sigma;
  CfKind generator = CfKind::FIRST_ORDER;
};

// Fourier coefficient of the unit-jump ramp r(x) = sgn(x)(1-|x|)/2 under the
// (1/2) integral convention: (i/2)(sin(pi l) - pi l)/(pi l)^2, zero at l = 0.
Cplx ramp_fourier(double lambda);

// FIRST_ORDER: sigma_k = 2 i pi lambda_k / (2M+1).
// GAUSSIAN: sigma_k = h_hat(lambda_k)/r_hat(lambda_k) for the smoothing
// Gaussian h(x) = exp(-5 (x/0.7)^2), h_hat by quadrature; entries with
// r_hat = 0 are zeroed. axis picks the frequency coordinate in 2D.
ConcentrationFactors concentration_factors(const FrequencySet& freqs, CfKind kind,
                                           Axis axis = Axis::Rows);

// CUSTOM_H: caller-supplied h_hat evaluated per frequency.
ConcentrationFactors concentration_factors_custom(
    const FrequencySet& freqs, const std::function<Cplx(double)>& h_hat,
    Axis axis = Axis::Rows);

struct EdgeMap {
  RealVec values;  // flattened column-major in 2D
  int dims = 1;
  int n = 0;
};

struct BinaryEdgeMap {
  RealVec indicator;  // entries in {0,1}
  double tau = 0.0;
  int dims = 1;
  int n = 0;
};

// Sparse recovery of [f] from concentration-scaled data: solves
//   min_g || diag(sigma r_hat) E g - sigma .* f_hat ||^2 + mu_eff ||g||_1
// matrix-free over the non-uniform transform E, where mu_eff folds the
// printed mu onto the operator's scale. Reports land in *report when given.
EdgeMap jump_recovery_1d(const FourierData& data, const FrequencySet& freqs,
                         const SpatialGrid& grid, double mu,
                         const ConcentrationFactors& cf,
                         SolveReport* report = nullptr);

// Axis-wise 2D recovery; returns (x-direction map, y-direction map).
std::pair<EdgeMap, EdgeMap> jump_recovery_2d(const FourierData& data,
                                             const FrequencySet& freqs,
                                             const SpatialGrid& grid, double mu,
                                             const ConcentrationFactors& cf_x,
                                             const ConcentrationFactors& cf_y,
                                             SolveReport* report_x = nullptr,
                                             SolveReport* report_y = nullptr);

// Pointwise max of absolute values.
EdgeMap combine_edge_maps(const EdgeMap& gx, const EdgeMap& gy);

// Plain strict threshold: indicator = 1 exactly where |value| > tau.
BinaryEdgeMap threshold(const EdgeMap& e, double tau);

// Hardened support selection feeding mask construction: the cut is relative
// (tau * max|value|) and a +/-2-cell local-max window suppresses the sidelobe
// halo around strong jumps so each edge contributes one cell. In 2D the
// window runs along the differencing axis.
BinaryEdgeMap select_edge_support(const EdgeMap& e, double tau,
                                  Axis axis = Axis::Rows);

}  // namespace recon
