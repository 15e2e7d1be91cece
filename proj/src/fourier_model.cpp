#include "recon/fourier_model.hpp"

#include <cmath>

namespace recon {

namespace {

// Per-axis composite trapezoid coefficients on [-1,1]: h = 1/J, halved at the
// endpoints, folded with the 1/2 (per axis) prefactor of the continuous
// transform so one axis contributes c_i = 1/(2J) interior, 1/(4J) at the ends.
RealVec axis_coeffs(int J) {
  int n = 2 * J + 1;
  RealVec c = RealVec::Constant(n, 1.0 / (2.0 * J));
  c[0] *= 0.5;
  c[n - 1] *= 0.5;
  return c;
}

}  // namespace

ForwardOperator::ForwardOperator(const SpatialGrid& grid, const FrequencySet& freqs,
                                 OperatorMode mode, double accel_tolerance)
    : grid_(grid), freqs_(freqs), mode_(mode) {
  if (grid.dims != freqs.dims)
    throw std::invalid_argument("forward operator: grid/frequency dims mismatch");
  int n = grid.points_per_axis();
  RealVec c = axis_coeffs(grid.J);
  if (grid.dims == 1) {
    w_ = c;
  } else {
    w_.resize(static_cast<long>(n) * n);
    for (int col = 0; col < n; ++col)
      for (int row = 0; row < n; ++row)
        w_[row + static_cast<long>(col) * n] = c[row] * c[col];
  }
  core_ = std::make_unique<NonUniformTransform>(grid, freqs, mode, accel_tolerance);
}

CplxVec ForwardOperator::apply(const CplxVec& g) const {
  if (g.size() != image_size())
    throw std::invalid_argument("forward: image size mismatch");
  if (dense_) return (*dense_) * g;
  return core_->apply(g.cwiseProduct(w_.cast<Cplx>()));
}

CplxVec ForwardOperator::apply_adjoint(const CplxVec& d) const {
  if (d.size() != data_size())
    throw std::invalid_argument("adjoint: data size mismatch");
  if (dense_) return dense_->adjoint() * d;
  return core_->apply_adjoint(d).cwiseProduct(w_.cast<Cplx>());
}

FourierData ForwardOperator::forward(const RealVec& g) const {
  FourierData out;
  out.values = apply(g.cast<Cplx>());
  out.provenance = Provenance::DISCRETE_FORWARD;
  return out;
}

CplxVec ForwardOperator::adjoint(const FourierData& d) const {
  return apply_adjoint(d.values);
}

const CplxMat* ForwardOperator::dense() const {
  if (grid_.dims != 1 || grid_.points_per_axis() > 513) return nullptr;
  std::lock_guard<std::mutex> lk(dense_mu_);
  if (!dense_) {
    int n = grid_.points_per_axis();
    long K = freqs_.size();
    auto mat = std::make_unique<CplxMat>(K, n);
    for (long k = 0; k < K; ++k)
      for (int j = 0; j < n; ++j)
        (*mat)(k, j) = w_[j] * std::polar(1.0, -kPi * freqs_.lambda1[k] * grid_.x(j));
    dense_ = std::move(mat);
  }
  return dense_.get();
}

}  // namespace recon
