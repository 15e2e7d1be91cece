#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recon/edge_detection.hpp"
#include "recon/fourier_model.hpp"
#include "recon/masking.hpp"
#include "recon/solvers.hpp"
#include "recon/types.hpp"

namespace recon {

enum class SolverMode { AUTO, DIRECT, ACCELERATED };

struct ReconstructionConfig {
  int m = 1;             // difference order of the sparsifying transform
  double lambda = 1.0;   // quadratic penalty scale (edge-adaptive solve)
  double rho = 1.0;      // l1 penalty scale (reweighted solves)
  double eps = 1.0;      // reweighting floor
  double mu = 1.0;       // edge-recovery l1 scale
  double tau = 0.01;     // edge selection / mask threshold
  int lmax = 25;         // max reweighting passes
  CfKind cf = CfKind::FIRST_ORDER;
  SolverMode mode = SolverMode::AUTO;
  CgOptions cg;
  BregmanOptions bregman;
  double ir_change_tol = 1e-4;  // early-stop on relative iterate change
};

struct ReconstructionResult {
  RealVec image;
  int dims = 1;
  int n = 0;
  std::optional<EdgeMap> edge;  // combined jump map when edges were detected
  std::optional<EdgeMap> edge_x, edge_y;  // per-axis maps (2D detection only)
  std::optional<RegularizationMask> mask;
  std::vector<std::pair<std::string, SolveReport>> stages;
  double total_seconds = 0.0;
  bool degenerate_mask = false;  // every mask entry zero: solve fell back to
                                 // plain least squares
};

// Single l1 solve with unit weights:
//   min ||F g - f_hat||^2 + (2 rho / sqrt(K)) sum_axes ||L^m g||_1
ReconstructionResult hotv_l1(const FourierData& data, const FrequencySet& freqs,
                             const SpatialGrid& grid,
                             const ReconstructionConfig& cfg);

// Iteratively reweighted variant: weights 1/(|L^m g| + eps) from the previous
// iterate, warm-started, up to lmax passes.
ReconstructionResult ir_l1(const FourierData& data, const FrequencySet& freqs,
                           const SpatialGrid& grid,
                           const ReconstructionConfig& cfg);

// Detect jumps, mask the difference rows they touch, then solve the
// spatially adaptive quadratic problem
//   min ||F g - f_hat||^2 + lambda sum_axes ||sqrt(mask) .* L^m g||^2.
ReconstructionResult edge_adaptive_l2(const FourierData& data,
                                      const FrequencySet& freqs,
                                      const SpatialGrid& grid,
                                      const ReconstructionConfig& cfg);

// Same solve with a caller-supplied mask (its difference order wins).
ReconstructionResult edge_adaptive_l2_with_mask(const FourierData& data,
                                                const FrequencySet& freqs,
                                                const SpatialGrid& grid,
                                                const RegularizationMask& mask,
                                                const ReconstructionConfig& cfg);

// Complex-image variant with an identity-sparsifier penalty, for point-like
// scenes: solves (F^H F + lambda diag(mask)) g = F^H d over C^n by CG.
CplxVec masked_identity_l2_complex(const ForwardOperator& op,
                                   const FourierData& data, const RealVec& mask,
                                   double lambda, const CgOptions& opts = {});

}  // namespace recon
