#include "recon/masking.hpp"

#include <stdexcept>

namespace recon {
namespace {

RealVec zero_above(const RealVec& v, double tau) {
  return (v.array().abs() > tau).select(RealVec::Zero(v.size()),
                                        RealVec::Ones(v.size()));
}

}  // namespace

RegularizationMask build_mask_1d(const BinaryEdgeMap& edges, int m, double tau) {
  if (edges.dims != 1) throw std::invalid_argument("build_mask_1d: 2D edge map");
  if (m < 1 || m >= edges.n) throw std::invalid_argument("build_mask_1d: bad order");
  PATransform L = build(m, edges.n);
  RegularizationMask mask;
  mask.dims = 1;
  mask.m = m;
  mask.tau = tau;
  mask.z = zero_above(apply_1d(L, edges.indicator), tau);
  return mask;
}

RegularizationMask build_mask_2d(const BinaryEdgeMap& edges_x,
                                 const BinaryEdgeMap& edges_y, int m, double tau) {
  if (edges_x.dims != 2 || edges_y.dims != 2 || edges_x.n != edges_y.n)
    throw std::invalid_argument("build_mask_2d: shape mismatch");
  const int n = edges_x.n;
  if (m < 1 || m >= n) throw std::invalid_argument("build_mask_2d: bad order");
  PATransform L = build(m, n);
  RegularizationMask mask;
  mask.dims = 2;
  mask.m = m;
  mask.tau = tau;
  mask.mx = zero_above(apply_flat(L, edges_x.indicator, Axis::Rows), tau);
  mask.my = zero_above(apply_flat(L, edges_y.indicator, Axis::Cols), tau);
  return mask;
}

}  // namespace recon
