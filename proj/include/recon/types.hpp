#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace recon {

using Cplx = std::complex<double>;
using RealVec = Eigen::VectorXd;
using CplxVec = Eigen::VectorXcd;
using RealMat = Eigen::MatrixXd;
using CplxMat = Eigen::MatrixXcd;
using IntVec = Eigen::VectorXi;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Cplx kI{0.0, 1.0};

// Origin of a Fourier data vector. Continuous quadrature of the underlying
// function acts as the measurement oracle; DISCRETE_FORWARD marks output of
// the discrete operator; MEASURED is externally supplied data.
enum class Provenance { CONTINUOUS_QUADRATURE, DISCRETE_FORWARD, MEASURED };

// Non-uniform frequencies jittered around the integer lattice.
// 1D uses lambda1 only (sorted ascending). 2D stores one (lambda1, lambda2)
// pair per row; k1/k2 hold the nominal integers each entry jitters around.
struct FrequencySet {
  int dims = 1;
  int M = 0;
  RealVec lambda1;
  RealVec lambda2;
  IntVec k1;
  IntVec k2;
  std::uint64_t seed = 0;

  long size() const { return static_cast<long>(lambda1.size()); }
};

struct FourierData {
  CplxVec values;
  Provenance provenance = Provenance::MEASURED;
};

// Uniform reconstruction grid x_j = j/J for j = -J..J, 2J+1 points per axis.
// Storage index i = 0..2J maps to j = i - J. 2D images are (2J+1) x (2J+1)
// matrices whose row index follows x and column index follows y; flattened
// vectors use Eigen's column-major order.
struct SpatialGrid {
  int dims = 1;
  int J = 1;

  int points_per_axis() const { return 2 * J + 1; }
  long total_points() const {
    long n = points_per_axis();
    return dims == 1 ? n : n * n;
  }
  double x(int i) const { return static_cast<double>(i - J) / J; }
};

struct SolveReport {
  int iterations = 0;
  double residual = 0.0;
  double seconds = 0.0;
  bool converged = false;
};

}  // namespace recon
