#include "recon/phantoms.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace recon {

namespace {

using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
constexpr double kBreakEps = 1e-12;
constexpr double kQuadTol = 1e-10;

// Composite Gauss-Kronrod rule with the panel count tied to the integrand's
// oscillation rate (sign changes per unit length). Adaptive bisection with a
// relative tolerance stalls here: the net value of these integrals sits far
// below their L1 mass, so the recursion burns its whole depth budget chasing
// digits that cancel. Panels of roughly one period each reach machine accuracy
// at a cost linear in the frequency.
double integrate_osc(const std::function<double(double)>& f, double a, double b,
                     double rate, double lambda_for_error) {
  int panels = static_cast<int>(std::ceil((b - a) * std::max(rate, 1.0) / 2.0)) + 1;
  for (int pass = 0; pass < 2; ++pass, panels *= 4) {
    double h = (b - a) / panels;
    double total = 0.0, err_total = 0.0;
    for (int i = 0; i < panels; ++i) {
      double err = 0.0;
      total += Quad::integrate(f, a + i * h, a + (i + 1) * h, 0, 0.0, &err);
      err_total += err;
    }
    if (err_total <= kQuadTol) return total;
  }
  std::ostringstream os;
  os << "quadrature failed to converge at lambda = " << lambda_for_error;
  throw std::runtime_error(os.str());
}

// Index of the piece owning x under the right-limit convention.
int piece_index(const std::vector<double>& breaks, double x) {
  int i = 0;
  while (i < static_cast<int>(breaks.size()) && x >= breaks[i]) ++i;
  return i;
}

void check_domain(double v) {
  if (std::abs(v) > 1.0 + kBreakEps)
    throw std::invalid_argument("phantom eval: point outside [-1,1] domain");
}

double f3_value(double r2) {
  return r2 <= 0.5 ? std::cos(kPi * r2) : std::sin(kPi * r2);
}

// Ellipse membership: u = normalized squared radius in the ellipse frame.
double ellipse_u(const std::array<double, 6>& e, double x, double y) {
  double dx = x - e[3];
  double dy = y - e[4];
  double c = std::cos(e[5]);
  double s = std::sin(e[5]);
  double xr = c * dx + s * dy;
  double yr = -s * dx + c * dy;
  return (xr / e[1]) * (xr / e[1]) + (yr / e[2]) * (yr / e[2]);
}

double j1_over_x(double x) {
  if (std::abs(x) < 1e-8) return 0.5 - x * x / 16.0;
  return boost::math::cyl_bessel_j(1, x) / x;
}

Cplx shepp_logan_fhat(const std::vector<std::array<double, 6>>& es, double l1,
                      double l2) {
  Cplx acc(0.0, 0.0);
  for (const auto& e : es) {
    double c = std::cos(e[5]);
    double s = std::sin(e[5]);
    double k1 = kPi * l1;
    double k2 = kPi * l2;
    double q1 = c * k1 + s * k2;
    double q2 = -s * k1 + c * k2;
    double arg = std::hypot(e[1] * q1, e[2] * q2);
    Cplx shift = std::exp(Cplx(0.0, -(k1 * e[3] + k2 * e[4])));
    acc += e[0] * shift * (2.0 * kPi * e[1] * e[2] * j1_over_x(arg));
  }
  return 0.25 * acc;
}

// 1D transform of sin(pi x^2) and cos(pi x^2) over [-1,1]; both are even so
// the result is real: 2 * integral over [0,1] against cos(pi lambda x).
double even_transform(bool use_sin, double lambda) {
  auto f = [use_sin, lambda](double x) {
    double g = use_sin ? std::sin(kPi * x * x) : std::cos(kPi * x * x);
    return 2.0 * g * std::cos(kPi * lambda * x);
  };
  return integrate_osc(f, 0.0, 1.0, std::abs(lambda) + 2.0, lambda);
}

// Radial correction for the disk branch of f3: transform of
// (cos - sin)(pi r^2) restricted to r^2 <= 1/2.
double f3_disk_term(double rho) {
  const double R0 = std::sqrt(0.5);
  auto f = [rho](double r) {
    double g = std::cos(kPi * r * r) - std::sin(kPi * r * r);
    return 2.0 * kPi * g * boost::math::cyl_bessel_j(0, kPi * rho * r) * r;
  };
  return integrate_osc(f, 0.0, R0, rho + 2.0, rho);
}

}  // namespace

Phantom f1() {
  Phantom p;
  p.id = PhantomId::F1;
  p.dims = 1;
  p.breakpoints = {0.0};
  p.pieces = {[](double x) { return -std::cos(x / 2.0); },
              [](double x) { return std::cos(x / 2.0); }};
  return p;
}

Phantom f2() {
  // The printed branches live on [-pi, pi]; evaluated here through x -> pi*x
  // so the function sits on [-1,1] with breakpoints on grid-friendly dyadics.
  Phantom p;
  p.id = PhantomId::F2;
  p.dims = 1;
  p.breakpoints = {-0.75, -0.5, -0.25, 0.125, 0.375, 0.75};
  auto zero = [](double) { return 0.0; };
  p.pieces = {zero,
              [](double) { return 1.5; },
              zero,
              [](double t) {
                return 1.75 - kPi * t / 2.0 + std::sin(7.0 * kPi * t - 0.25);
              },
              zero,
              [](double t) { return 11.0 * kPi * t / 4.0 - 5.0; },
              zero};
  return p;
}

Phantom f3() {
  Phantom p;
  p.id = PhantomId::F3;
  p.dims = 2;
  p.surface = [](double x, double y) { return f3_value(x * x + y * y); };
  return p;
}

Phantom shepp_logan_phantom() {
  // Standard modified (high-contrast) table: amplitude, semi-axes a and b,
  // center, rotation in radians.
  Phantom p;
  p.id = PhantomId::SHEPP_LOGAN;
  p.dims = 2;
  const double d2r = kPi / 180.0;
  p.ellipses = {{{1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
                 {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
                 {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0 * d2r},
                 {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0 * d2r},
                 {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
                 {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
                 {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
                 {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
                 {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
                 {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0}}};
  auto table = p.ellipses;
  p.surface = [table](double x, double y) {
    double v = 0.0;
    for (const auto& e : table)
      if (ellipse_u(e, x, y) <= 1.0) v += e[0];
    return v;
  };
  return p;
}

double eval(const Phantom& p, double x) {
  if (p.dims != 1) throw std::invalid_argument("eval: 1D phantom required");
  check_domain(x);
  return p.pieces[piece_index(p.breakpoints, x)](x);
}

double eval2(const Phantom& p, double x, double y) {
  if (p.dims != 2) throw std::invalid_argument("eval2: 2D phantom required");
  check_domain(x);
  check_domain(y);
  return p.surface(x, y);
}

RealVec rasterize(const Phantom& p, const SpatialGrid& grid) {
  if (p.dims != 1 || grid.dims != 1)
    throw std::invalid_argument("rasterize: 1D phantom and grid required");
  int n = grid.points_per_axis();
  RealVec out(n);
  for (int i = 0; i < n; ++i) {
    double x = grid.x(i);
    int hit = -1;
    for (int b = 0; b < static_cast<int>(p.breakpoints.size()); ++b)
      if (std::abs(x - p.breakpoints[b]) <= kBreakEps) hit = b;
    if (hit >= 0) {
      double b = p.breakpoints[hit];
      out[i] = 0.5 * (p.pieces[hit](b) + p.pieces[hit + 1](b));
    } else {
      out[i] = eval(p, x);
    }
  }
  return out;
}

RealMat rasterize_2d(const Phantom& p, const SpatialGrid& grid) {
  if (p.dims != 2 || grid.dims != 2)
    throw std::invalid_argument("rasterize_2d: 2D phantom and grid required");
  int n = grid.points_per_axis();
  RealMat out(n, n);
  for (int c = 0; c < n; ++c) {
    double y = grid.x(c);
    for (int r = 0; r < n; ++r) {
      double x = grid.x(r);
      if (p.id == PhantomId::F3) {
        double r2 = x * x + y * y;
        out(r, c) = (std::abs(r2 - 0.5) <= kBreakEps)
                        ? 0.5 * (std::cos(kPi * r2) + std::sin(kPi * r2))
                        : f3_value(r2);
      } else if (p.id == PhantomId::SHEPP_LOGAN) {
        double v = 0.0;
        for (const auto& e : p.ellipses) {
          double u = ellipse_u(e, x, y);
          if (u < 1.0 - kBreakEps)
            v += e[0];
          else if (u <= 1.0 + kBreakEps)
            v += 0.5 * e[0];
        }
        out(r, c) = v;
      } else {
        out(r, c) = p.surface(x, y);
      }
    }
  }
  return out;
}

RealMat shepp_logan(const SpatialGrid& grid) {
  return rasterize_2d(shepp_logan_phantom(), grid);
}

FourierData continuous_fourier_samples(const Phantom& p, const FrequencySet& freqs) {
  if (p.dims != freqs.dims)
    throw std::invalid_argument("continuous_fourier_samples: dims mismatch");
  FourierData out;
  out.provenance = Provenance::CONTINUOUS_QUADRATURE;
  out.values.resize(freqs.size());

  if (p.dims == 1) {
    std::vector<double> edges;
    edges.push_back(-1.0);
    for (double b : p.breakpoints) edges.push_back(b);
    edges.push_back(1.0);
    for (long k = 0; k < freqs.size(); ++k) {
      double lam = freqs.lambda1[k];
      double re = 0.0, im = 0.0;
      // Rate padding of 8 covers the fastest intrinsic piece (sin(7 pi t)).
      double rate = std::abs(lam) + 8.0;
      for (size_t s = 0; s + 1 < edges.size(); ++s) {
        const auto& piece = p.pieces[s];
        re += integrate_osc(
            [&piece, lam](double x) { return piece(x) * std::cos(kPi * lam * x); },
            edges[s], edges[s + 1], rate, lam);
        im += integrate_osc(
            [&piece, lam](double x) { return -piece(x) * std::sin(kPi * lam * x); },
            edges[s], edges[s + 1], rate, lam);
      }
      out.values[k] = 0.5 * Cplx(re, im);
    }
    return out;
  }

  if (p.id == PhantomId::SHEPP_LOGAN) {
    for (long k = 0; k < freqs.size(); ++k)
      out.values[k] = shepp_logan_fhat(p.ellipses, freqs.lambda1[k], freqs.lambda2[k]);
    return out;
  }

  if (p.id == PhantomId::F3) {
    // Split f3 into a separable smooth part sin(pi r^2) over the square plus
    // a radially symmetric correction supported on the disk.
    for (long k = 0; k < freqs.size(); ++k) {
      double l1 = freqs.lambda1[k];
      double l2 = freqs.lambda2[k];
      double smooth = even_transform(true, l1) * even_transform(false, l2) +
                      even_transform(false, l1) * even_transform(true, l2);
      double disk = f3_disk_term(std::hypot(l1, l2));
      out.values[k] = 0.25 * (smooth + disk);
    }
    return out;
  }

  throw std::invalid_argument("continuous_fourier_samples: unsupported phantom");
}

std::vector<int> jump_cells(const Phantom& p, const SpatialGrid& grid) {
  if (p.dims != 1) throw std::invalid_argument("jump_cells: 1D phantom required");
  std::vector<int> cells;
  for (double b : p.breakpoints)
    cells.push_back(static_cast<int>(std::lround((b + 1.0) * grid.J)));
  return cells;
}

}  // namespace recon
