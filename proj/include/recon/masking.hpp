#pragma once

#include "recon/edge_detection.hpp"
#include "recon/pa_transform.hpp"
#include "recon/types.hpp"

namespace recon {

// Binary weights for the spatially adaptive quadratic penalty. In 1D z has
// one entry per m-th difference row; in 2D mx covers x-direction differences
// ((n-m) x n) and my the y-direction (n x (n-m)), both flattened column-major.
struct RegularizationMask {
  int dims = 1;
  int m = 1;
  double tau = 0.0;
  RealVec z;
  RealVec mx;
  RealVec my;
};

// Zeroes every difference row whose stencil touches a flagged edge cell:
// z_j = 0 where |(L^m e)_j| > tau, else 1.
RegularizationMask build_mask_1d(const BinaryEdgeMap& edges, int m, double tau);

// Axis-wise analogue using the x-direction and y-direction edge indicators.
RegularizationMask build_mask_2d(const BinaryEdgeMap& edges_x,
                                 const BinaryEdgeMap& edges_y, int m, double tau);

}  // namespace recon
