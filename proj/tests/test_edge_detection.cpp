#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "recon/edge_detection.hpp"
#include "recon/phantoms.hpp"
#include "recon/sampling.hpp"

using namespace recon;

namespace {

FrequencySet freqs_1d(const RealVec& lam, int M) {
  FrequencySet f;
  f.dims = 1;
  f.M = M;
  f.lambda1 = lam;
  return f;
}

FourierData product_data(const Phantom& px, const Phantom& py,
                         const FrequencySet& fr2) {
  // Separable phantom f(x, y) = px(x) * py(y): the 2D coefficient factors into
  // the two 1D data-convention transforms.
  FourierData ax = continuous_fourier_samples(px, freqs_1d(fr2.lambda1, fr2.M));
  FourierData ay = continuous_fourier_samples(py, freqs_1d(fr2.lambda2, fr2.M));
  FourierData out;
  out.provenance = Provenance::CONTINUOUS_QUADRATURE;
  out.values = ax.values.array() * ay.values.array();
  return out;
}

class DenseEdgeOp final : public ReOp {
 public:
  DenseEdgeOp(CplxMat A) : A_(std::move(A)) {}
  long rows() const override { return A_.rows(); }
  long cols() const override { return A_.cols(); }
  CplxVec apply(const RealVec& g) const override { return A_ * g.cast<Cplx>(); }
  RealVec adjoint_re(const CplxVec& d) const override {
    return (A_.adjoint() * d).real();
  }
  const CplxMat* dense() const override { return &A_; }

 private:
  CplxMat A_;
};

}  // namespace

TEST_CASE("ramp transform closed form") {
  CHECK(ramp_fourier(0.0) == Cplx(0.0, 0.0));
  CHECK(std::abs(ramp_fourier(1.0) - Cplx(0.0, -0.15915494309189534)) <= 1e-15);
  CHECK(std::abs(ramp_fourier(2.6) - Cplx(0.0, -0.054086060069236131)) <= 1e-15);
  // Small-argument series branch and its handoff to the closed form.
  CHECK(std::abs(ramp_fourier(1e-5) - Cplx(0.0, -2.6179938778623015e-6)) <= 1e-18);
  // Just past the series handoff the closed form cancels sin(a) against a,
  // which costs a few ulps of the leading terms.
  CHECK(std::abs(ramp_fourier(0.003) - Cplx(0.0, -0.00078539467519869903)) <= 5e-14);

  // Composite Simpson over each linear half of the ramp profile.
  auto simpson = [](double a, double b, double lam, auto r) {
    const int n = 500000;
    double h = (b - a) / n;
    Cplx acc(0, 0);
    for (int i = 0; i <= n; ++i) {
      double x = a + i * h;
      double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += w * r(x) * std::exp(Cplx(0.0, -kPi * lam * x));
    }
    return acc * (h / 3.0);
  };
  auto left = [](double x) { return -(1.0 + x) / 2.0; };
  auto right = [](double x) { return (1.0 - x) / 2.0; };
  Cplx oracle =
      0.5 * (simpson(-1.0, 0.0, 1.0, left) + simpson(0.0, 1.0, 1.0, right));
  CHECK(std::abs(ramp_fourier(1.0) - oracle) <= 1e-10);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-40, 40);
  for (int t = 0; t < 100; ++t) {
    double l = u(rng);
    CHECK(std::abs(ramp_fourier(-l) - std::conj(ramp_fourier(l))) <= 1e-16);
  }
}

TEST_CASE("first-order concentration factors") {
  const int M = 128;
  RealVec xi = RealVec::Constant(2 * M + 1, 0.5);
  FrequencySet fr = frequencies_from_offsets_1d(M, xi);
  ConcentrationFactors cf = concentration_factors(fr, CfKind::FIRST_ORDER);
  REQUIRE(cf.sigma.size() == 257);
  CHECK(cf.generator == CfKind::FIRST_ORDER);
  CHECK(cf.sigma[M] == Cplx(0.0, 0.0));
  CHECK(std::abs(cf.sigma[2 * M] - Cplx(0.0, 256.0 * kPi / 257.0)) <= 1e-14);
  for (int k = 0; k < 257; ++k)
    CHECK(std::abs(cf.sigma[k] - Cplx(0.0, 2.0 * kPi * fr.lambda1[k] / 257.0)) <= 1e-15);

  // Oddness in lambda: negating the frequencies negates sigma.
  FrequencySet jit = jittered_frequencies_1d(16, 11);
  ConcentrationFactors cj = concentration_factors(jit, CfKind::FIRST_ORDER);
  FrequencySet neg = jit;
  neg.lambda1 = -jit.lambda1;
  ConcentrationFactors cn = concentration_factors(neg, CfKind::FIRST_ORDER);
  for (int k = 0; k < 33; ++k) {
    CHECK(std::abs(cj.sigma[k] - Cplx(0.0, 2.0 * kPi * jit.lambda1[k] / 33.0)) <= 1e-15);
    CHECK(cn.sigma[k] == -cj.sigma[k]);
  }

  FrequencySet fr2 = jittered_frequencies_2d(8, 4);
  ConcentrationFactors cx = concentration_factors(fr2, CfKind::FIRST_ORDER, Axis::Rows);
  ConcentrationFactors cy = concentration_factors(fr2, CfKind::FIRST_ORDER, Axis::Cols);
  for (int k = 0; k < 40; ++k) {
    CHECK(std::abs(cx.sigma[k] - Cplx(0.0, 2.0 * kPi * fr2.lambda1[k] / 17.0)) <= 1e-15);
    CHECK(std::abs(cy.sigma[k] - Cplx(0.0, 2.0 * kPi * fr2.lambda2[k] / 17.0)) <= 1e-15);
  }
}

TEST_CASE("gaussian concentration factors") {
  const int M = 16;
  RealVec xi = RealVec::Constant(2 * M + 1, 0.5);
  FrequencySet fr = frequencies_from_offsets_1d(M, xi);
  ConcentrationFactors cf = concentration_factors(fr, CfKind::GAUSSIAN);
  // r_hat(0) = 0, so the lambda = 0 entry is zeroed rather than divided.
  CHECK(cf.sigma[M] == Cplx(0.0, 0.0));
  // Elsewhere sigma * r_hat reproduces the window transform.
  struct Probe {
    double lambda;
    double hhat;
  };
  for (Probe p : {Probe{1.25, 0.19014054347678256}, Probe{3.5, 0.014345197560727966}}) {
    FrequencySet one = freqs_1d(RealVec::Constant(1, p.lambda), M);
    ConcentrationFactors c1 = concentration_factors(one, CfKind::GAUSSIAN);
    CHECK(std::abs(c1.sigma[0] * ramp_fourier(p.lambda) - p.hhat) <= 1e-10);
  }

  FrequencySet one = freqs_1d(RealVec::Constant(1, 2.0), M);
  ConcentrationFactors cc = concentration_factors_custom(
      one, [](double) { return Cplx(1.0, 0.0); });
  CHECK(cc.generator == CfKind::CUSTOM_H);
  CHECK(std::abs(cc.sigma[0] * ramp_fourier(2.0) - 1.0) <= 1e-12);

  CHECK_THROWS_AS(concentration_factors(fr, CfKind::CUSTOM_H), std::invalid_argument);
}

TEST_CASE("zero data gives zero maps") {
  FrequencySet fr = jittered_frequencies_1d(16, 2);
  SpatialGrid g;
  g.dims = 1;
  g.J = 16;
  FourierData zero;
  zero.values = CplxVec::Zero(fr.size());
  ConcentrationFactors cf = concentration_factors(fr, CfKind::FIRST_ORDER);
  EdgeMap e = jump_recovery_1d(zero, fr, g, 1.0, cf);
  CHECK(e.values.cwiseAbs().maxCoeff() == 0.0);
  CHECK(e.dims == 1);
  CHECK(e.n == 33);

  FrequencySet fr2 = jittered_frequencies_2d(8, 2);
  SpatialGrid g2;
  g2.dims = 2;
  g2.J = 8;
  FourierData zero2;
  zero2.values = CplxVec::Zero(fr2.size());
  auto [gx, gy] = jump_recovery_2d(
      zero2, fr2, g2, 1.0, concentration_factors(fr2, CfKind::FIRST_ORDER, Axis::Rows),
      concentration_factors(fr2, CfKind::FIRST_ORDER, Axis::Cols));
  CHECK(gx.values.cwiseAbs().maxCoeff() == 0.0);
  CHECK(gy.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("unit step recovery and the dense oracle") {
  const int M = 32, n = 65;
  FrequencySet fr = jittered_frequencies_1d(M, 6);
  SpatialGrid g;
  g.dims = 1;
  g.J = M;

  Phantom step;
  step.dims = 1;
  step.breakpoints = {0.0};
  step.pieces = {[](double) { return 0.0; }, [](double) { return 1.0; }};
  FourierData data = continuous_fourier_samples(step, fr);
  ConcentrationFactors cf = concentration_factors(fr, CfKind::FIRST_ORDER);

  SolveReport rep;
  EdgeMap e = jump_recovery_1d(data, fr, g, 1.0, cf, &rep);
  REQUIRE(e.values.size() == n);
  // The exponential model sees the 2-periodic extension, so the unit step
  // jumps up at x = 0 and back down at the seam x = +-1. Cell 0 names the
  // same seam point as cell 64.
  int argmax = 0;
  e.values.cwiseAbs().maxCoeff(&argmax);
  CHECK((argmax == 32 || argmax == 64));
  CHECK(e.values[32] == doctest::Approx(1.0).epsilon(0.15));
  CHECK(e.values[64] == doctest::Approx(-1.0).epsilon(0.15));
  for (int j = 1; j < n; ++j)
    if (std::abs(j - 32) >= 2 && std::abs(j - 64) >= 2)
      CHECK(std::abs(e.values[j]) <= 0.05);

  // Dense replica of the same split Bregman problem; the matrix-free path
  // must land on the same minimizer.
  CplxVec scales(fr.size());
  CplxMat A(fr.size(), n);
  for (long k = 0; k < fr.size(); ++k) {
    scales[k] = cf.sigma[k] * ramp_fourier(fr.lambda1[k]);
    for (int j = 0; j < n; ++j)
      A(k, j) = scales[k] * std::exp(Cplx(0.0, -kPi * fr.lambda1[k] * g.x(j)));
  }
  DenseEdgeOp dense(std::move(A));
  PATransform ident = build(0, n);
  WeightedL1Problem prob;
  prob.A = &dense;
  prob.b = cf.sigma.array() * data.values.array();
  prob.sparsifiers = {Sparsifier{&ident, Axis::Rows}};
  prob.weights = {RealVec::Ones(n)};
  prob.reg = 1.0 / (65.0 * 65.0);
  prob.opts.beta = 2.0 * scales.squaredNorm();
  prob.opts.max_outer = 50;
  auto [want, drep] = split_bregman(prob, RealVec::Zero(n));
  CHECK((e.values - want).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("f1 jump map peaks at two") {
  const int M = 128;
  FrequencySet fr = jittered_frequencies_1d(M, 1);
  SpatialGrid g;
  g.dims = 1;
  g.J = 128;
  FourierData data = continuous_fourier_samples(f1(), fr);
  ConcentrationFactors cf = concentration_factors(fr, CfKind::FIRST_ORDER);
  EdgeMap e = jump_recovery_1d(data, fr, g, 1.0, cf);

  int argmax = 0;
  e.values.cwiseAbs().maxCoeff(&argmax);
  CHECK(argmax == 128);
  CHECK(std::abs(e.values[128] - 2.0) <= 0.1);

  BinaryEdgeMap bin = threshold(e, 1.0 / 257.0);
  std::set<int> flagged;
  for (int j = 0; j < 257; ++j)
    if (bin.indicator[j] == 1.0) flagged.insert(j);
  // The interior jump at x = 0 plus the seam of the periodic extension; the
  // seam mass of -2cos(1/2) splits evenly over the twin boundary cells.
  CHECK(flagged == std::set<int>({0, 128, 256}));
  CHECK(e.values[0] == doctest::Approx(e.values[256]).epsilon(0.02));
  CHECK(e.values[0] + e.values[256] ==
        doctest::Approx(-2.0 * std::cos(0.5)).epsilon(0.05));

  // Doubling the data and mu doubles the recovered map.
  FourierData twice = data;
  twice.values *= 2.0;
  EdgeMap e2 = jump_recovery_1d(twice, fr, g, 2.0, cf);
  CHECK((e2.values - 2.0 * e.values).cwiseAbs().maxCoeff() <=
        1e-8 * e.values.cwiseAbs().maxCoeff());
}

TEST_CASE("axis separation and the f3 ring in 2d") {
  const int M = 16;
  FrequencySet fr2 = jittered_frequencies_2d(M, 3);
  SpatialGrid g2;
  g2.dims = 2;
  g2.J = M;
  const int n = 33;

  Phantom step;
  step.dims = 1;
  step.breakpoints = {0.0};
  step.pieces = {[](double) { return 0.0; }, [](double) { return 1.0; }};
  Phantom one;
  one.dims = 1;
  one.pieces = {[](double) { return 1.0; }};

  FourierData vert = product_data(step, one, fr2);
  auto [gx, gy] = jump_recovery_2d(
      vert, fr2, g2, 1.0, concentration_factors(fr2, CfKind::FIRST_ORDER, Axis::Rows),
      concentration_factors(fr2, CfKind::FIRST_ORDER, Axis::Cols));

  // In 2D the exponential sum runs over grid cells without quadrature
  // weights, so a unit-height jump line appears with amplitude 1/(2J) per
  // cell: the Dirichlet sum of the 2J cells along the line carries the mass.
  // The x-direction map holds that line at x = 0 in every column, with the
  // compensating seam line at x = +-1; the y-direction map has no jump to
  // find and stays at the same small scale.
  const double line = 1.0 / (2.0 * M);
  double row_peak = 0.0;
  for (int c = 0; c < n; ++c) {
    int best = 2;
    for (int r = 2; r <= n - 3; ++r)
      if (std::abs(gx.values[r + c * n]) > std::abs(gx.values[best + c * n]))
        best = r;
    CHECK(best == 16);
    CHECK(gx.values[16 + c * n] >= 0.4 * line);
    row_peak = std::max(row_peak, gx.values[16 + c * n]);
  }
  CHECK(row_peak == doctest::Approx(line).epsilon(0.3));
  CHECK(gx.values[32 + 8 * n] <= -0.7 * line);
  CHECK(gy.values.cwiseAbs().maxCoeff() <= 0.1);

  // Relative-threshold selection singles out the jump row across columns.
  BinaryEdgeMap sx = select_edge_support(gx, 0.5, Axis::Rows);
  int on16 = 0;
  for (int c = 0; c < n; ++c) on16 += sx.indicator[16 + c * n] == 1.0;
  CHECK(on16 >= 30);

  const int M3 = 32, n3 = 65;
  FrequencySet fr3 = jittered_frequencies_2d(M3, 3);
  SpatialGrid g3;
  g3.dims = 2;
  g3.J = M3;
  FourierData d3 = continuous_fourier_samples(f3(), fr3);
  auto [hx, hy] = jump_recovery_2d(
      d3, fr3, g3, 1.0, concentration_factors(fr3, CfKind::FIRST_ORDER, Axis::Rows),
      concentration_factors(fr3, CfKind::FIRST_ORDER, Axis::Cols));
  EdgeMap comb = combine_edge_maps(hx, hy);
  BinaryEdgeMap sel = select_edge_support(comb, 0.3, Axis::Rows);

  // Every selected cell sits on the discontinuity circle |x| = sqrt(1/2) or
  // on the boundary frame, where the even extension kinks; the ring itself
  // is well covered in all four quadrants.
  int ring = 0;
  int quadrant[4] = {0, 0, 0, 0};
  for (int idx = 0; idx < n3 * n3; ++idx) {
    if (sel.indicator[idx] != 1.0) continue;
    int r = idx % n3, c = idx / n3;
    double x = g3.x(r), y = g3.x(c);
    bool frame = (r == 0 || r == n3 - 1 || c == 0 || c == n3 - 1);
    bool near_ring = std::abs(std::hypot(x, y) - std::sqrt(0.5)) <= 2.0 / M3;
    CHECK((frame || near_ring));
    if (!frame && near_ring) {
      ++ring;
      ++quadrant[(x > 0 ? 1 : 0) + (y > 0 ? 2 : 0)];
    }
  }
  CHECK(ring >= 80);
  for (int q = 0; q < 4; ++q) CHECK(quadrant[q] >= 15);
}

TEST_CASE("combine, threshold, and support selection") {
  EdgeMap gx, gy;
  gx.dims = gy.dims = 1;
  gx.n = gy.n = 4;
  gx.values = RealVec(4);
  gx.values << -3.0, 0.0, 1.0, 0.25;
  gy.values = RealVec(4);
  gy.values << 2.0, -0.5, 0.0, 0.25;

  EdgeMap c = combine_edge_maps(gx, gy);
  CHECK(c.values[0] == 3.0);
  CHECK(c.values[1] == 0.5);
  CHECK(c.values[2] == 1.0);
  CHECK(c.values[3] == 0.25);
  EdgeMap c2 = combine_edge_maps(gy, gx);
  CHECK((c.values - c2.values).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(c.values[i] >= std::abs(gx.values[i]));
    CHECK(c.values[i] >= std::abs(gy.values[i]));
  }
  EdgeMap zero = gx;
  zero.values.setZero();
  CHECK((combine_edge_maps(zero, gy).values - gy.values.cwiseAbs()).cwiseAbs().maxCoeff() == 0.0);

  EdgeMap bad = gx;
  bad.values = RealVec::Zero(5);
  CHECK_THROWS_AS(combine_edge_maps(gx, bad), std::invalid_argument);

  BinaryEdgeMap b = threshold(c, 0.5);
  CHECK(b.indicator[0] == 1.0);
  CHECK(b.indicator[1] == 0.0);  // equality stays below the strict cut
  CHECK(b.indicator[2] == 1.0);
  CHECK(b.indicator[3] == 0.0);
  CHECK(b.tau == 0.5);
  BinaryEdgeMap all = threshold(c, 0.0);
  CHECK(all.indicator.sum() == 4.0);

  EdgeMap e;
  e.dims = 1;
  e.n = 12;
  e.values = RealVec::Zero(12);
  e.values[1] = 0.1;
  e.values[2] = 0.9;
  e.values[3] = -1.0;
  e.values[6] = 0.5;
  BinaryEdgeMap sel = select_edge_support(e, 0.15);
  RealVec want = RealVec::Zero(12);
  want[3] = 1.0;  // suppresses the 0.9 sidelobe two cells away
  want[6] = 1.0;
  CHECK((sel.indicator - want).cwiseAbs().maxCoeff() == 0.0);

  // 2D: the local-max window runs along the differencing axis only.
  EdgeMap e2;
  e2.dims = 2;
  e2.n = 5;
  e2.values = RealVec::Zero(25);
  e2.values[2 + 5 * 1] = 1.0;  // (r=2, c=1)
  e2.values[3 + 5 * 1] = 0.8;  // same column, one row below
  e2.values[2 + 5 * 3] = 0.7;  // different column
  BinaryEdgeMap sx = select_edge_support(e2, 0.1, Axis::Rows);
  CHECK(sx.indicator[2 + 5 * 1] == 1.0);
  CHECK(sx.indicator[3 + 5 * 1] == 0.0);
  CHECK(sx.indicator[2 + 5 * 3] == 1.0);
  CHECK(sx.indicator.sum() == 2.0);
  BinaryEdgeMap sy = select_edge_support(e2, 0.1, Axis::Cols);
  // Along rows the 0.8 entry no longer sits in the shadow of the 1.0.
  CHECK(sy.indicator[2 + 5 * 1] == 1.0);
  CHECK(sy.indicator[3 + 5 * 1] == 1.0);
  CHECK(sy.indicator[2 + 5 * 3] == 0.0);
}
