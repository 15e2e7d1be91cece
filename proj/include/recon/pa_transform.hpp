#pragma once

#include "recon/types.hpp"

namespace recon {

enum class Axis { Rows, Cols };

// Order-m polynomial annihilation operator: a banded (n-m) x n matrix whose
// rows repeat the normalized binomial stencil. m=0 is the identity, m=1 the
// TV differences g_{j+1} - g_j. Interior rows only, no periodic wrap.
struct PATransform {
  int m = 1;
  int n = 0;
  RealVec stencil;  // m+1 coefficients, jump-normalized

  long out_size() const { return n - m; }
};

PATransform build(int m, int n);

// 1D apply / transpose apply.
RealVec apply_1d(const PATransform& L, const RealVec& g);
RealVec adjoint_apply(const PATransform& L, const RealVec& v);

// 2D applies on an n x n image: Rows computes L*G (differences down each
// column, the x direction under the row=x convention), Cols computes G*L^T.
RealMat apply_2d(const PATransform& L, const RealMat& G, Axis axis);
RealMat adjoint_apply_2d(const PATransform& L, const RealMat& V, Axis axis);

// Flattened-vector forms of the 2D applies (column-major n x n layout).
RealVec apply_flat(const PATransform& L, const RealVec& g, Axis axis);
RealVec adjoint_apply_flat(const PATransform& L, const RealVec& v, Axis axis);

// Dense materialization, used by small closed-form solves and test oracles.
RealMat dense_matrix(const PATransform& L);

}  // namespace recon
