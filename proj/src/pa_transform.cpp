#include "recon/pa_transform.hpp"

#include <cmath>

namespace recon {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

PATransform build(int m, int n) {
  if (m < 0 || m >= n) throw std::invalid_argument("pa build: need 0 <= m < n");
  PATransform L;
  L.m = m;
  L.n = n;
  L.stencil.resize(m + 1);
  for (int j = 0; j <= m; ++j) {
    double sign = ((m - j) % 2 == 0) ? 1.0 : -1.0;
    L.stencil[j] = sign * binomial(m, j);
  }
  // Normalize so a unit step produces a single response of magnitude 1: the
  // divisor is the absolute partial stencil sum over the step side.
  double q = 0.0;
  for (int j = m / 2 + 1; j <= m; ++j) q += L.stencil[j];
  q = std::abs(q);
  if (q == 0.0) q = 1.0;  // m = 0 identity case
  L.stencil /= q;
  return L;
}

RealVec apply_1d(const PATransform& L, const RealVec& g) {
  if (g.size() != L.n) throw std::invalid_argument("pa apply: size mismatch");
  long rows = L.out_size();
  RealVec out = RealVec::Zero(rows);
  for (long i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (int j = 0; j <= L.m; ++j) acc += L.stencil[j] * g[i + j];
    out[i] = acc;
  }
  return out;
}

RealVec adjoint_apply(const PATransform& L, const RealVec& v) {
  if (v.size() != L.out_size()) throw std::invalid_argument("pa adjoint: size mismatch");
  RealVec out = RealVec::Zero(L.n);
  for (long i = 0; i < v.size(); ++i) {
    for (int j = 0; j <= L.m; ++j) out[i + j] += L.stencil[j] * v[i];
  }
  return out;
}

RealMat apply_2d(const PATransform& L, const RealMat& G, Axis axis) {
  if (G.rows() != L.n || G.cols() != L.n)
    throw std::invalid_argument("pa apply_2d: grid must be n x n");
  long rows = L.out_size();
  if (axis == Axis::Rows) {
    RealMat out = RealMat::Zero(rows, G.cols());
    for (long c = 0; c < G.cols(); ++c)
      for (long i = 0; i < rows; ++i) {
        double acc = 0.0;
        for (int j = 0; j <= L.m; ++j) acc += L.stencil[j] * G(i + j, c);
        out(i, c) = acc;
      }
    return out;
  }
  RealMat out = RealMat::Zero(G.rows(), rows);
  for (long i = 0; i < rows; ++i)
    for (long r = 0; r < G.rows(); ++r) {
      double acc = 0.0;
      for (int j = 0; j <= L.m; ++j) acc += L.stencil[j] * G(r, i + j);
      out(r, i) = acc;
    }
  return out;
}

RealMat adjoint_apply_2d(const PATransform& L, const RealMat& V, Axis axis) {
  long rows = L.out_size();
  if (axis == Axis::Rows) {
    if (V.rows() != rows || V.cols() != L.n)
      throw std::invalid_argument("pa adjoint_2d: size mismatch");
    RealMat out = RealMat::Zero(L.n, L.n);
    for (long c = 0; c < V.cols(); ++c)
      for (long i = 0; i < rows; ++i)
        for (int j = 0; j <= L.m; ++j) out(i + j, c) += L.stencil[j] * V(i, c);
    return out;
  }
  if (V.rows() != L.n || V.cols() != rows)
    throw std::invalid_argument("pa adjoint_2d: size mismatch");
  RealMat out = RealMat::Zero(L.n, L.n);
  for (long i = 0; i < rows; ++i)
    for (long r = 0; r < L.n; ++r)
      for (int j = 0; j <= L.m; ++j) out(r, i + j) += L.stencil[j] * V(r, i);
  return out;
}

RealVec apply_flat(const PATransform& L, const RealVec& g, Axis axis) {
  long n = L.n;
  if (g.size() != n * n) throw std::invalid_argument("pa apply_flat: size mismatch");
  Eigen::Map<const RealMat> G(g.data(), n, n);
  RealMat out = apply_2d(L, G, axis);
  return Eigen::Map<const RealVec>(out.data(), out.size());
}

RealVec adjoint_apply_flat(const PATransform& L, const RealVec& v, Axis axis) {
  long n = L.n;
  long rows = L.out_size();
  long expect = (axis == Axis::Rows) ? rows * n : n * rows;
  if (v.size() != expect) throw std::invalid_argument("pa adjoint_flat: size mismatch");
  Eigen::Map<const RealMat> V(v.data(), axis == Axis::Rows ? rows : n,
                              axis == Axis::Rows ? n : rows);
  RealMat out = adjoint_apply_2d(L, V, axis);
  return Eigen::Map<const RealVec>(out.data(), out.size());
}

RealMat dense_matrix(const PATransform& L) {
  RealMat D = RealMat::Zero(L.out_size(), L.n);
  for (long i = 0; i < D.rows(); ++i)
    for (int j = 0; j <= L.m; ++j) D(i, i + j) = L.stencil[j];
  return D;
}

}  // namespace recon
