#pragma once

#include <memory>
#include <mutex>

#include "recon/nufft.hpp"
#include "recon/types.hpp"

namespace recon {

// Discrete non-uniform Fourier forward operator
//   (F g)(lambda_k) = sum_j w_j g_j exp(-i pi lambda_k . x_j)
// with composite trapezoid quadrature weights per axis (interior 1/(2J),
// endpoints 1/(4J)) so that F applied to samples of a smooth f approximates
// the continuous transform. The adjoint is the conjugate transpose. A dense
// matrix is materialized lazily for 1D grids up to 513 points and reused by
// the closed-form solver path; larger problems stay matrix-free.
class ForwardOperator {
 public:
  ForwardOperator(const SpatialGrid& grid, const FrequencySet& freqs,
                  OperatorMode mode, double accel_tolerance = 1e-6);

  const SpatialGrid& grid() const { return grid_; }
  const FrequencySet& freqs() const { return freqs_; }
  OperatorMode mode() const { return mode_; }
  long image_size() const { return grid_.total_points(); }
  long data_size() const { return freqs_.size(); }
  const RealVec& quad_weights() const { return w_; }

  CplxVec apply(const CplxVec& g) const;
  CplxVec apply_adjoint(const CplxVec& d) const;

  // Convenience wrappers for real images.
  FourierData forward(const RealVec& g) const;
  CplxVec adjoint(const FourierData& d) const;

  // Weighted dense matrix, or nullptr when materialization is out of policy.
  const CplxMat* dense() const;

 private:
  SpatialGrid grid_;
  FrequencySet freqs_;
  OperatorMode mode_;
  RealVec w_;
  std::unique_ptr<NonUniformTransform> core_;
  mutable std::unique_ptr<CplxMat> dense_;
  mutable std::mutex dense_mu_;
};

}  // namespace recon
