#pragma once

#include <functional>
#include <vector>

#include "recon/pa_transform.hpp"
#include "recon/types.hpp"

namespace recon {

struct CgOptions {
  double tol = 1e-8;
  int max_iter = 2000;
  // Diagnostic hook invoked with each CG iterate (tests use it to watch the
  // objective); leave empty in production paths.
  std::function<void(const RealVec&)> observer;
};

struct BregmanOptions {
  double beta = 0.0;  // splitting penalty; 0 selects 4x the l1 scale
  double inner_tol = 1e-6;
  int inner_max = 500;
  double outer_tol = 1e-6;
  int max_outer = 200;
};

// Linear map A: R^n -> C^K with a real-restricted adjoint, the shape shared
// by the Fourier fidelity operator and the scaled edge-synthesis operator.
// dense() may expose a materialized matrix for small 1D systems; solvers then
// prefactor normal equations instead of iterating matrix-free.
class ReOp {
 public:
  virtual ~ReOp() = default;
  virtual long rows() const = 0;
  virtual long cols() const = 0;
  virtual CplxVec apply(const RealVec& g) const = 0;
  virtual RealVec adjoint_re(const CplxVec& d) const = 0;
  virtual const CplxMat* dense() const { return nullptr; }
};

// One sparsifying transform; axis selects the 2D direction and is ignored in
// 1D. Problems carry one entry per penalized axis.
struct Sparsifier {
  const PATransform* L = nullptr;
  Axis axis = Axis::Rows;
};

// min_g ||A g - b||_2^2 + reg * sum_a || weights_a .* (L_a g) ||_1
struct WeightedL1Problem {
  const ReOp* A = nullptr;
  CplxVec b;
  int dims = 1;
  std::vector<Sparsifier> sparsifiers;
  std::vector<RealVec> weights;  // empty entries mean all-ones
  double reg = 0.0;
  BregmanOptions opts;
};

// min_g ||A g - b||_2^2 + lambda * sum_a || sqrt(mask_a) .* (L_a g) ||_2^2
struct MaskedL2Problem {
  const ReOp* A = nullptr;
  CplxVec b;
  int dims = 1;
  std::vector<Sparsifier> sparsifiers;
  std::vector<RealVec> masks;  // binary, aligned with each L output
  double lambda = 1.0;
  CgOptions opts;
};

std::pair<RealVec, SolveReport> split_bregman(const WeightedL1Problem& p,
                                              const RealVec& init);

std::pair<RealVec, SolveReport> cg_solve(const MaskedL2Problem& p, const RealVec& init);

// Dense closed-form solve of the same normal equations; requires the operator
// to expose its dense matrix (1D, n <= 513).
RealVec direct_solve(const MaskedL2Problem& p);

}  // namespace recon
