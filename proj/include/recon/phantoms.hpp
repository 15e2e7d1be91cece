#pragma once

#include <array>
#include <functional>
#include <vector>

#include "recon/types.hpp"

namespace recon {

enum class PhantomId { F1, F2, F3, SHEPP_LOGAN };

// Piecewise-smooth test function on [-1,1]^dims. 1D phantoms carry interior
// breakpoints and one evaluator per piece (pieces.size() = breakpoints + 1).
// 2D phantoms carry closed-form surface evaluators; the Shepp-Logan variant
// additionally exposes its ellipse table (amplitude, a, b, x0, y0, phi).
struct Phantom {
  PhantomId id = PhantomId::F1;
  int dims = 1;
  std::vector<double> breakpoints;
  std::vector<std::function<double(double)>> pieces;
  std::function<double(double, double)> surface;
  std::vector<std::array<double, 6>> ellipses;
};

Phantom f1();
Phantom f2();
Phantom f3();
Phantom shepp_logan_phantom();

// Pointwise evaluation; at a breakpoint the right-hand limit is returned
// (2D: the closed-branch value). Points outside [-1,1]^dims are rejected.
double eval(const Phantom& p, double x);
double eval2(const Phantom& p, double x, double y);

// Grid sampling used as reconstruction ground truth. Grid points landing
// exactly on a jump take the mean of the one-sided limits; everywhere else
// this matches eval/eval2.
RealVec rasterize(const Phantom& p, const SpatialGrid& grid);
RealMat rasterize_2d(const Phantom& p, const SpatialGrid& grid);

// Standard ten-ellipse phantom with the high-contrast intensity table.
RealMat shepp_logan(const SpatialGrid& grid);

// Measurement oracle: (1/2) integral of f e^{-i pi lambda x} (1D) or the 1/4
// 2D analogue, by adaptive quadrature split at breakpoints; absolute accuracy
// 1e-10 per coefficient. Shepp-Logan uses the analytic ellipse transform.
FourierData continuous_fourier_samples(const Phantom& p, const FrequencySet& freqs);

// Grid indices nearest each 1D breakpoint, for jump-neighborhood metrics.
std::vector<int> jump_cells(const Phantom& p, const SpatialGrid& grid);

}  // namespace recon
