#include "recon/nufft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <vector>

namespace recon {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

long next_5smooth(long v) {
  for (long n = v;; ++n) {
    long r = n;
    while (r % 2 == 0) r /= 2;
    while (r % 3 == 0) r /= 3;
    while (r % 5 == 0) r /= 5;
    if (r == 1) return n;
  }
}

// Half-width q of the Kaiser-Bessel spreading window (2q+1 taps per axis).
// With oversampling near 2 the aliasing error decays roughly one decade per
// tap, so a 1e-6 tolerance needs a 9-tap window where a Gaussian would need
// about 23; in 2D that is the difference between 81 and 529 touched cells per
// sample. Width map validated against direct summation.
int kernel_width(double tol) {
  if (!(tol > 0)) throw std::invalid_argument("nufft: tolerance must be positive");
  int q = static_cast<int>(std::ceil(-std::log10(tol) / 2.0)) + 2;
  if (q < 3) q = 3;
  if (q > 12)
    throw std::runtime_error(
        "nufft: tolerance not achievable with supported kernel widths");
  return q;
}

struct FftwBuf {
  fftw_complex* p = nullptr;
  explicit FftwBuf(long count) {
    p = fftw_alloc_complex(static_cast<size_t>(count));
    if (!p) throw std::bad_alloc();
  }
  ~FftwBuf() { fftw_free(p); }
  FftwBuf(const FftwBuf&) = delete;
  FftwBuf& operator=(const FftwBuf&) = delete;
};

}  // namespace

struct NonUniformTransform::Impl {
  SpatialGrid grid;
  FrequencySet freqs;
  OperatorMode mode;
  double tol = 1e-6;
  int n = 0;  // points per axis
  long K = 0;

  // Gridding state (ACCELERATED only).
  int q = 0;
  long Nf = 0;
  double beta = 0.0;
  RealVec deconv;  // per-axis inverse window transform at image indices
  // Per-point wrapped fine-grid indices and window weights, K x (2q+1),
  // row-contiguous so one sample's taps stream through cache.
  std::vector<int> idx1, idx2;
  std::vector<double> w1, w2;
  fftw_plan plan_fwd = nullptr;
  fftw_plan plan_bwd = nullptr;

  ~Impl() {
    if (plan_fwd || plan_bwd) {
      std::lock_guard<std::mutex> lk(planner_mutex());
      if (plan_fwd) fftw_destroy_plan(plan_fwd);
      if (plan_bwd) fftw_destroy_plan(plan_bwd);
    }
  }

  long fine_count() const { return grid.dims == 1 ? Nf : Nf * Nf; }

  void setup_gridding() {
    q = kernel_width(tol);
    Nf = next_5smooth(std::max<long>(2L * n, n + 4L * q + 2));
    double R = static_cast<double>(Nf) / n;
    const double W = 2.0 * q + 1.0;  // total window width in fine cells
    beta = kPi * std::sqrt(std::max(W * W * (1.0 - 0.5 / R) * (1.0 - 0.5 / R) - 0.8, 1.0));

    // The window I0(beta sqrt(1-(2u/W)^2)) on |u| <= W/2 has transform
    // W sinh(s)/s with s = sqrt(beta^2 - (pi W xi)^2); the image band sits
    // well inside the real-s branch, so the correction never oscillates.
    deconv.resize(n);
    for (int i = 0; i < n; ++i) {
      double om = kPi * W * (i - grid.J) / static_cast<double>(Nf);
      double s = std::sqrt(beta * beta - om * om);
      deconv[i] = s / (W * std::sinh(s));
    }

    double h = 2.0 * kPi / Nf;
    int width = 2 * q + 1;
    double rho = 0.5 * W;
    auto fill_axis = [&](const RealVec& lambdas, std::vector<int>& idx,
                         std::vector<double>& w) {
      idx.resize(K * width);
      w.resize(K * width);
      for (long k = 0; k < K; ++k) {
        double theta = kPi * lambdas[k] / grid.J;
        theta = std::fmod(theta, 2.0 * kPi);
        if (theta < 0) theta += 2.0 * kPi;
        int t0 = static_cast<int>(std::lround(theta / h));
        for (int d = -q; d <= q; ++d) {
          double u = theta / h - (t0 + d);
          double t = u / rho;
          double arg = 1.0 - t * t;
          w[k * width + (d + q)] =
              arg > 0 ? std::cyl_bessel_i(0.0, beta * std::sqrt(arg)) : 0.0;
          idx[k * width + (d + q)] = wrap(t0 + d);
        }
      }
    };
    fill_axis(freqs.lambda1, idx1, w1);
    if (grid.dims == 2) fill_axis(freqs.lambda2, idx2, w2);

    FftwBuf scratch_in(fine_count());
    FftwBuf scratch_out(fine_count());
    std::lock_guard<std::mutex> lk(planner_mutex());
    if (grid.dims == 1) {
      plan_fwd = fftw_plan_dft_1d(static_cast<int>(Nf), scratch_in.p, scratch_out.p,
                                  FFTW_FORWARD, FFTW_ESTIMATE);
      plan_bwd = fftw_plan_dft_1d(static_cast<int>(Nf), scratch_in.p, scratch_out.p,
                                  FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
      plan_fwd = fftw_plan_dft_2d(static_cast<int>(Nf), static_cast<int>(Nf),
                                  scratch_in.p, scratch_out.p, FFTW_FORWARD,
                                  FFTW_ESTIMATE);
      plan_bwd = fftw_plan_dft_2d(static_cast<int>(Nf), static_cast<int>(Nf),
                                  scratch_in.p, scratch_out.p, FFTW_BACKWARD,
                                  FFTW_ESTIMATE);
    }
    if (!plan_fwd || !plan_bwd) throw std::runtime_error("nufft: FFTW planning failed");
  }

  int wrap(long idx) const {
    long m = idx % Nf;
    if (m < 0) m += Nf;
    return static_cast<int>(m);
  }

  CplxVec apply_direct(const CplxVec& a) const {
    CplxVec s = CplxVec::Zero(K);
    if (grid.dims == 1) {
      for (long k = 0; k < K; ++k) {
        Cplx acc(0, 0);
        for (int i = 0; i < n; ++i)
          acc += a[i] * std::polar(1.0, -kPi * freqs.lambda1[k] * grid.x(i));
        s[k] = acc;
      }
      return s;
    }
    CplxVec px(n), py(n);
    for (long k = 0; k < K; ++k) {
      for (int i = 0; i < n; ++i) {
        px[i] = std::polar(1.0, -kPi * freqs.lambda1[k] * grid.x(i));
        py[i] = std::polar(1.0, -kPi * freqs.lambda2[k] * grid.x(i));
      }
      Cplx acc(0, 0);
      for (int c = 0; c < n; ++c) {
        Cplx col(0, 0);
        const Cplx* ac = a.data() + static_cast<long>(c) * n;
        for (int r = 0; r < n; ++r) col += ac[r] * px[r];
        acc += col * py[c];
      }
      s[k] = acc;
    }
    return s;
  }

  CplxVec adjoint_direct(const CplxVec& s) const {
    CplxVec a = CplxVec::Zero(grid.total_points());
    if (grid.dims == 1) {
      for (long k = 0; k < K; ++k) {
        for (int i = 0; i < n; ++i)
          a[i] += s[k] * std::polar(1.0, kPi * freqs.lambda1[k] * grid.x(i));
      }
      return a;
    }
    CplxVec px(n), py(n);
    for (long k = 0; k < K; ++k) {
      for (int i = 0; i < n; ++i) {
        px[i] = std::polar(1.0, kPi * freqs.lambda1[k] * grid.x(i));
        py[i] = std::polar(1.0, kPi * freqs.lambda2[k] * grid.x(i));
      }
      for (int c = 0; c < n; ++c) {
        Cplx f = s[k] * py[c];
        Cplx* ac = a.data() + static_cast<long>(c) * n;
        for (int r = 0; r < n; ++r) ac[r] += f * px[r];
      }
    }
    return a;
  }

  CplxVec apply_gridded(const CplxVec& a) const {
    FftwBuf fin(fine_count()), fout(fine_count());
    std::fill_n(reinterpret_cast<Cplx*>(fin.p), fine_count(), Cplx(0, 0));
    Cplx* in = reinterpret_cast<Cplx*>(fin.p);
    Cplx* out = reinterpret_cast<Cplx*>(fout.p);

    int width = 2 * q + 1;
    if (grid.dims == 1) {
      for (int i = 0; i < n; ++i) in[wrap(i - grid.J)] = a[i] * deconv[i];
      fftw_execute_dft(plan_fwd, fin.p, fout.p);
      CplxVec s(K);
      for (long k = 0; k < K; ++k) {
        const int* ik = idx1.data() + k * width;
        const double* wk = w1.data() + k * width;
        Cplx acc(0, 0);
        for (int d = 0; d < width; ++d) acc += out[ik[d]] * wk[d];
        s[k] = acc;
      }
      return s;
    }

    for (int c = 0; c < n; ++c) {
      long m2 = wrap(c - grid.J);
      for (int r = 0; r < n; ++r)
        in[wrap(r - grid.J) * Nf + m2] = a[r + static_cast<long>(c) * n] * (deconv[r] * deconv[c]);
    }
    fftw_execute_dft(plan_fwd, fin.p, fout.p);
    CplxVec s(K);
    for (long k = 0; k < K; ++k) {
      const int* i1 = idx1.data() + k * width;
      const double* v1 = w1.data() + k * width;
      const int* i2 = idx2.data() + k * width;
      const double* v2 = w2.data() + k * width;
      Cplx acc(0, 0);
      for (int d1 = 0; d1 < width; ++d1) {
        const Cplx* row = out + static_cast<long>(i1[d1]) * Nf;
        Cplx part(0, 0);
        for (int d2 = 0; d2 < width; ++d2) part += row[i2[d2]] * v2[d2];
        acc += part * v1[d1];
      }
      s[k] = acc;
    }
    return s;
  }

  CplxVec adjoint_gridded(const CplxVec& s) const {
    FftwBuf fin(fine_count()), fout(fine_count());
    std::fill_n(reinterpret_cast<Cplx*>(fin.p), fine_count(), Cplx(0, 0));
    Cplx* in = reinterpret_cast<Cplx*>(fin.p);
    Cplx* out = reinterpret_cast<Cplx*>(fout.p);
    int width = 2 * q + 1;

    if (grid.dims == 1) {
      for (long k = 0; k < K; ++k) {
        const int* ik = idx1.data() + k * width;
        const double* wk = w1.data() + k * width;
        for (int d = 0; d < width; ++d) in[ik[d]] += s[k] * wk[d];
      }
      fftw_execute_dft(plan_bwd, fin.p, fout.p);
      CplxVec a(n);
      for (int i = 0; i < n; ++i) a[i] = out[wrap(i - grid.J)] * deconv[i];
      return a;
    }

    for (long k = 0; k < K; ++k) {
      const int* i1 = idx1.data() + k * width;
      const double* v1 = w1.data() + k * width;
      const int* i2 = idx2.data() + k * width;
      const double* v2 = w2.data() + k * width;
      for (int d1 = 0; d1 < width; ++d1) {
        Cplx f = s[k] * v1[d1];
        Cplx* row = in + static_cast<long>(i1[d1]) * Nf;
        for (int d2 = 0; d2 < width; ++d2) row[i2[d2]] += f * v2[d2];
      }
    }
    fftw_execute_dft(plan_bwd, fin.p, fout.p);
    CplxVec a(grid.total_points());
    for (int c = 0; c < n; ++c) {
      long m2 = wrap(c - grid.J);
      for (int r = 0; r < n; ++r)
        a[r + static_cast<long>(c) * n] = out[wrap(r - grid.J) * Nf + m2] * (deconv[r] * deconv[c]);
    }
    return a;
  }
};

NonUniformTransform::NonUniformTransform(const SpatialGrid& grid,
                                         const FrequencySet& freqs,
                                         OperatorMode mode, double tol)
    : impl_(new Impl) {
  if (grid.dims != freqs.dims)
    throw std::invalid_argument("nufft: grid/frequency dims mismatch");
  impl_->grid = grid;
  impl_->freqs = freqs;
  impl_->mode = mode;
  impl_->tol = tol;
  impl_->n = grid.points_per_axis();
  impl_->K = freqs.size();
  if (mode == OperatorMode::ACCELERATED) impl_->setup_gridding();
}

NonUniformTransform::~NonUniformTransform() = default;

long NonUniformTransform::image_size() const { return impl_->grid.total_points(); }
long NonUniformTransform::data_size() const { return impl_->K; }
OperatorMode NonUniformTransform::mode() const { return impl_->mode; }

CplxVec NonUniformTransform::apply(const CplxVec& a) const {
  if (a.size() != image_size())
    throw std::invalid_argument("nufft apply: image size mismatch");
  return impl_->mode == OperatorMode::DIRECT ? impl_->apply_direct(a)
                                             : impl_->apply_gridded(a);
}

CplxVec NonUniformTransform::apply_adjoint(const CplxVec& s) const {
  if (s.size() != data_size())
    throw std::invalid_argument("nufft adjoint: data size mismatch");
  return impl_->mode == OperatorMode::DIRECT ? impl_->adjoint_direct(s)
                                             : impl_->adjoint_gridded(s);
}

}  // namespace recon
