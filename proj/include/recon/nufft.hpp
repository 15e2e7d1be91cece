#pragma once

#include <memory>

#include "recon/types.hpp"

namespace recon {

enum class OperatorMode { DIRECT, ACCELERATED };

// Unweighted non-uniform exponential sums over the reconstruction grid:
//   apply:    s_k = sum_j a_j exp(-i pi lambda_k . x_j)
//   adjoint:  a_j = sum_k s_k exp(+i pi lambda_k . x_j)
// DIRECT evaluates the sums exactly. ACCELERATED grids onto an oversampled
// FFT with a Kaiser-Bessel window; its adjoint is the exact transpose of the
// approximated forward map, so the adjoint identity holds to machine
// precision in both modes. Image vectors are flattened column-major in 2D.
class NonUniformTransform {
 public:
  NonUniformTransform(const SpatialGrid& grid, const FrequencySet& freqs,
                      OperatorMode mode, double tol = 1e-6);
  ~NonUniformTransform();
  NonUniformTransform(const NonUniformTransform&) = delete;
  NonUniformTransform& operator=(const NonUniformTransform&) = delete;

  long image_size() const;
  long data_size() const;
  OperatorMode mode() const;

  CplxVec apply(const CplxVec& a) const;
  CplxVec apply_adjoint(const CplxVec& s) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace recon
