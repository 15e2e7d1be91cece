#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "recon/phantoms.hpp"

using namespace recon;

namespace {

FrequencySet freqs_1d(std::vector<double> lam) {
  FrequencySet f;
  f.dims = 1;
  f.lambda1 = Eigen::Map<RealVec>(lam.data(), lam.size());
  return f;
}

FrequencySet freqs_2d(std::vector<std::pair<double, double>> lam) {
  FrequencySet f;
  f.dims = 2;
  f.lambda1.resize(lam.size());
  f.lambda2.resize(lam.size());
  for (size_t i = 0; i < lam.size(); ++i) {
    f.lambda1[i] = lam[i].first;
    f.lambda2[i] = lam[i].second;
  }
  return f;
}

}  // namespace

TEST_CASE("pointwise evaluation and one-sided limits") {
  Phantom p1 = f1();
  CHECK(eval(p1, 0.5) == std::cos(0.25));
  CHECK(eval(p1, -0.5) == -std::cos(0.25));
  CHECK(eval(p1, 0.0) == 1.0);
  CHECK(eval(p1, -1.0) == -std::cos(0.5));
  CHECK(eval(p1, 1.0) == std::cos(0.5));

  Phantom p2 = f2();
  REQUIRE(p2.breakpoints == std::vector<double>{-0.75, -0.5, -0.25, 0.125, 0.375, 0.75});
  CHECK(eval(p2, -0.9) == 0.0);
  CHECK(eval(p2, -0.75) == 1.5);
  CHECK(eval(p2, -0.6) == 1.5);
  CHECK(eval(p2, -0.5) == 0.0);
  CHECK(eval(p2, -0.25) == doctest::Approx(2.6528826081849275).epsilon(1e-15));
  CHECK(eval(p2, 0.0) == doctest::Approx(1.5025960407454771).epsilon(1e-15));
  CHECK(eval(p2, 0.125) == 0.0);
  CHECK(eval(p2, 0.375) == doctest::Approx(-1.7602325759855257).epsilon(1e-15));
  CHECK(eval(p2, 0.7) == doctest::Approx(11.0 * kPi * 0.7 / 4.0 - 5.0).epsilon(1e-15));
  CHECK(eval(p2, 0.75) == 0.0);

  Phantom p3 = f3();
  CHECK(eval2(p3, 0.0, 0.0) == 1.0);
  CHECK(eval2(p3, 1.0, 1.0) == std::sin(2.0 * kPi));
  // On the circle the closed branch applies.
  CHECK(std::abs(eval2(p3, 0.5, 0.5)) < 1e-15);

  CHECK_THROWS_AS(eval(p1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(eval(p3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(eval2(p1, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(eval2(p3, 0.0, -1.5), std::invalid_argument);
}

TEST_CASE("constant input transforms") {
  Phantom c;
  c.dims = 1;
  c.pieces = {[](double) { return 1.0; }};
  FourierData d = continuous_fourier_samples(c, freqs_1d({0.0, 2.0, 0.5}));
  CHECK(d.provenance == Provenance::CONTINUOUS_QUADRATURE);
  CHECK(std::abs(d.values[0] - 1.0) <= 1e-10);
  CHECK(std::abs(d.values[1]) <= 1e-10);
  CHECK(std::abs(d.values[2] - 2.0 / kPi) <= 1e-10);
}

TEST_CASE("1d transforms match high-resolution quadrature") {
  Phantom p1 = f1();
  FourierData d = continuous_fourier_samples(p1, freqs_1d({3.0, 2.75, 0.25}));

  // Composite Simpson over each smooth half, about 1e6 points total.
  auto simpson_half = [](double a, double b, double lam, double sign) {
    const int n = 500000;
    double h = (b - a) / n;
    Cplx acc(0, 0);
    for (int i = 0; i <= n; ++i) {
      double x = a + i * h;
      double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += w * sign * std::cos(x / 2.0) * std::exp(Cplx(0.0, -kPi * lam * x));
    }
    return acc * (h / 3.0);
  };
  Cplx oracle = 0.5 * (simpson_half(-1.0, 0.0, 3.0, -1.0) + simpson_half(0.0, 1.0, 3.0, 1.0));
  CHECK(std::abs(d.values[0] - oracle) <= 1e-8);

  CHECK(std::abs(d.values[0] - Cplx(0.0, -0.1997799733967926)) <= 2e-10);
  CHECK(std::abs(d.values[1] - Cplx(0.0, -0.18592828625603189)) <= 2e-10);
  CHECK(std::abs(d.values[2] - Cplx(0.0, -0.35033656382584847)) <= 2e-10);

  Phantom p2 = f2();
  FourierData d2 = continuous_fourier_samples(p2, freqs_1d({1.75}));
  CHECK(std::abs(d2.values[0] - Cplx(0.13112312352822073, 0.16351808206790187)) <= 2e-10);
}

TEST_CASE("conjugate symmetry of real phantom transforms") {
  for (Phantom p : {f1(), f2()}) {
    FourierData d = continuous_fourier_samples(p, freqs_1d({0.75, -0.75, 4.25, -4.25}));
    CHECK(std::abs(d.values[1] - std::conj(d.values[0])) <= 1e-9);
    CHECK(std::abs(d.values[3] - std::conj(d.values[2])) <= 1e-9);
  }
  FourierData d3 = continuous_fourier_samples(
      f3(), freqs_2d({{1.5, -0.75}, {-1.5, 0.75}}));
  CHECK(std::abs(d3.values[1] - std::conj(d3.values[0])) <= 1e-9);
  FourierData ds = continuous_fourier_samples(
      shepp_logan_phantom(), freqs_2d({{2.25, 3.5}, {-2.25, -3.5}}));
  CHECK(std::abs(ds.values[1] - std::conj(ds.values[0])) <= 1e-12);
}

TEST_CASE("2d transforms match independent oracles") {
  FourierData d3 = continuous_fourier_samples(f3(), freqs_2d({{0.0, 0.0}, {1.25, -2.5}}));
  CHECK(std::abs(d3.values[0] - 0.37761390313917198) <= 2e-10);
  CHECK(std::abs(d3.values[1] - 0.093939276706747837) <= 2e-10);

  FourierData ds = continuous_fourier_samples(
      shepp_logan_phantom(),
      freqs_2d({{0.0, 0.0}, {3.25, -1.75}, {0.5, 0.5}}));
  CHECK(std::abs(ds.values[0] - 0.12381615121197881) <= 1e-12);
  CHECK(std::abs(ds.values[1] - Cplx(0.010357804528554544, 0.0067745900793609771)) <= 1e-12);
  CHECK(std::abs(ds.values[2] - Cplx(0.066314550416516227, -0.010626830938172964)) <= 1e-12);

  CHECK_THROWS_AS(continuous_fourier_samples(f1(), freqs_2d({{0, 0}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(continuous_fourier_samples(f3(), freqs_1d({0})),
                  std::invalid_argument);
}

TEST_CASE("rasterization takes jump midpoints") {
  SpatialGrid g;
  g.dims = 1;
  g.J = 128;
  Phantom p1 = f1();
  RealVec r1 = rasterize(p1, g);
  REQUIRE(r1.size() == 257);
  CHECK(r1[128] == 0.0);
  CHECK(r1[129] == eval(p1, g.x(129)));
  CHECK(r1[0] == -std::cos(0.5));

  Phantom p2 = f2();
  std::vector<int> cells = jump_cells(p2, g);
  CHECK(cells == std::vector<int>{32, 64, 96, 144, 176, 224});
  CHECK(jump_cells(p1, g) == std::vector<int>{128});

  RealVec r2 = rasterize(p2, g);
  CHECK(r2[32] == 0.75);
  CHECK(r2[64] == 0.75);
  CHECK(r2[96] == doctest::Approx(2.6528826081849275 / 2).epsilon(1e-15));
  CHECK(r2[144] == doctest::Approx(2.1530086445695489 / 2).epsilon(1e-15));
  CHECK(r2[176] == doctest::Approx(-1.7602325759855257 / 2).epsilon(1e-15));
  CHECK(r2[224] == doctest::Approx(1.4795348480289486 / 2).epsilon(1e-15));
  for (int i : {10, 50, 100, 200, 250}) CHECK(r2[i] == eval(p2, g.x(i)));
}

TEST_CASE("2d rasterization handles the f3 circle and shepp-logan support") {
  SpatialGrid g;
  g.dims = 2;
  g.J = 8;
  RealMat m = rasterize_2d(f3(), g);
  REQUIRE(m.rows() == 17);
  // Grid points (±0.5, ±0.5) sit exactly on the jump circle.
  CHECK(m(12, 12) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m(4, 4) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m(8, 8) == 1.0);
  CHECK(m(16, 16) == eval2(f3(), 1.0, 1.0));

  SpatialGrid g2;
  g2.dims = 2;
  g2.J = 128;
  RealMat sl = shepp_logan(g2);
  REQUIRE(sl.rows() == 257);
  RealMat sl2 = rasterize_2d(shepp_logan_phantom(), g2);
  CHECK((sl - sl2).cwiseAbs().maxCoeff() == 0.0);
  // Interior ventricle-adjacent ellipse around (0, 0.35) is positive, points
  // beyond the skull are exactly zero.
  CHECK(sl(128, 173) > 0.0);
  CHECK(sl(250, 250) == 0.0);
  CHECK(sl(128, 128) > 0.0);
  CHECK(sl.minCoeff() >= -1e-15);
  CHECK(sl.maxCoeff() <= 1.0);
}
