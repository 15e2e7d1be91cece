#include "recon/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace recon {

double relative_error(const RealVec& approx, const RealVec& truth) {
  if (approx.size() != truth.size())
    throw std::invalid_argument("relative_error: size mismatch");
  double denom = truth.norm();
  if (denom == 0.0)
    throw std::invalid_argument("relative_error: zero reference");
  return (approx - truth).norm() / denom;
}

RealVec pointwise_error(const RealVec& approx, const RealVec& truth) {
  if (approx.size() != truth.size())
    throw std::invalid_argument("pointwise_error: size mismatch");
  return (approx - truth).array().abs();
}

double jump_neighborhood_max(const RealVec& approx, const RealVec& truth,
                             const std::vector<int>& jump_cells, int dims, int n,
                             int window) {
  if (approx.size() != truth.size())
    throw std::invalid_argument("jump_neighborhood_max: size mismatch");
  if (window < 1 || window % 2 == 0)
    throw std::invalid_argument("jump_neighborhood_max: window must be odd");
  const int half = window / 2;
  double worst = 0.0;
  auto visit = [&](long idx) {
    worst = std::max(worst, std::abs(approx[idx] - truth[idx]));
  };
  for (int cell : jump_cells) {
    if (dims == 1) {
      for (int j = std::max(0, cell - half);
           j <= std::min<int>(static_cast<int>(approx.size()) - 1, cell + half);
           ++j)
        visit(j);
    } else {
      int r0 = cell % n, c0 = cell / n;
      for (int c = std::max(0, c0 - half); c <= std::min(n - 1, c0 + half); ++c)
        for (int r = std::max(0, r0 - half); r <= std::min(n - 1, r0 + half); ++r)
          visit(r + static_cast<long>(c) * n);
    }
  }
  return worst;
}

ErrorReport make_error_report(const RealVec& approx, const RealVec& truth,
                              const std::vector<int>& jump_cells, int dims, int n,
                              double runtime_s) {
  ErrorReport rep;
  rep.relative_error = relative_error(approx, truth);
  rep.pointwise = pointwise_error(approx, truth);
  rep.jump_neighborhood_max =
      jump_neighborhood_max(approx, truth, jump_cells, dims, n);
  rep.runtime_s = runtime_s;
  return rep;
}

}  // namespace recon
