#pragma once

#include <chrono>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "recon/types.hpp"

namespace recon {

struct ErrorReport {
  double relative_error = 0.0;
  RealVec pointwise;
  double jump_neighborhood_max = 0.0;
  double runtime_s = 0.0;
};

// ||approx - truth||_2 / ||truth||_2; a zero truth vector is rejected.
double relative_error(const RealVec& approx, const RealVec& truth);

// |approx - truth| entrywise.
RealVec pointwise_error(const RealVec& approx, const RealVec& truth);

// Largest absolute error over windows centered on the given cells (flattened
// indices). window is the full width, so 5 covers each cell +/-2; in 2D the
// window is the square of the same half-width.
double jump_neighborhood_max(const RealVec& approx, const RealVec& truth,
                             const std::vector<int>& jump_cells, int dims, int n,
                             int window = 5);

ErrorReport make_error_report(const RealVec& approx, const RealVec& truth,
                              const std::vector<int>& jump_cells, int dims, int n,
                              double runtime_s);

// Wall-clock measurement around one pipeline stage on a monotonic clock.
// Returns (result, seconds), or just seconds for void thunks. The label tags
// timing rows in experiment output and is not otherwise interpreted.
template <typename F>
auto time_stage([[maybe_unused]] const std::string& label, F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  if constexpr (std::is_void_v<std::invoke_result_t<F&>>) {
    std::forward<F>(f)();
    return elapsed();
  } else {
    auto result = std::forward<F>(f)();
    double s = elapsed();
    return std::make_pair(std::move(result), s);
  }
}

}  // namespace recon
