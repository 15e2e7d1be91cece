#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "recon/phantoms.hpp"
#include "recon/sampling.hpp"

using namespace recon;

TEST_CASE("1d jittered frequencies stay within 1/4 of their integers, sorted") {
  for (std::uint64_t seed : {1u, 7u, 987654u}) {
    FrequencySet f = jittered_frequencies_1d(128, seed);
    CHECK(f.dims == 1);
    CHECK(f.M == 128);
    CHECK(f.size() == 257);
    CHECK(f.seed == seed);
    for (long i = 0; i < f.size(); ++i) {
      CHECK(f.k1[i] == static_cast<int>(i) - 128);
      CHECK(std::abs(f.lambda1[i] - f.k1[i]) <= 0.25);
    }
    for (long i = 0; i + 1 < f.size(); ++i)
      CHECK(f.lambda1[i] < f.lambda1[i + 1]);
  }
}

TEST_CASE("1d forced offsets reproduce closed-form frequencies") {
  // xi = 1/2 cancels the jitter entirely.
  FrequencySet z = frequencies_from_offsets_1d(2, RealVec::Constant(5, 0.5));
  for (int i = 0; i < 5; ++i) CHECK(z.lambda1[i] == double(i - 2));

  // xi = 0 pushes every integer up by exactly 1/4.
  FrequencySet p = frequencies_from_offsets_1d(1, RealVec::Zero(3));
  CHECK(p.lambda1[0] == -0.75);
  CHECK(p.lambda1[1] == 0.25);
  CHECK(p.lambda1[2] == 1.25);
}

TEST_CASE("2d jittered frequencies: count, per-coordinate bound, entry jitter") {
  FrequencySet f = jittered_frequencies_2d(16, 3);
  CHECK(f.dims == 2);
  CHECK(f.size() == 33 * 33);
  for (long i = 0; i < f.size(); ++i) {
    CHECK(std::abs(f.lambda1[i] - f.k1[i]) <= 0.25);
    CHECK(std::abs(f.lambda2[i] - f.k2[i]) <= 0.25);
  }
  // Jitter is drawn per entry, not per row/column of the nominal grid: two
  // entries sharing the same nominal k1 must (almost surely) differ in lambda1.
  std::set<double> shared;
  for (long i = 0; i < f.size(); ++i)
    if (f.k1[i] == 0) shared.insert(f.lambda1[i]);
  CHECK(shared.size() > 1);
}

TEST_CASE("2d forced offsets") {
  FrequencySet z = frequencies_from_offsets_2d(1, RealVec::Constant(18, 0.5));
  std::set<std::pair<double, double>> pts;
  for (long i = 0; i < z.size(); ++i) pts.insert({z.lambda1[i], z.lambda2[i]});
  CHECK(pts.size() == 9);
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      CHECK(pts.count({double(a), double(b)}) == 1);

  FrequencySet p = frequencies_from_offsets_2d(1, RealVec::Zero(18));
  for (long i = 0; i < p.size(); ++i) {
    CHECK(p.lambda1[i] - p.k1[i] == 0.25);
    CHECK(p.lambda2[i] - p.k2[i] == 0.25);
  }
}

TEST_CASE("generation is deterministic in the seed") {
  FrequencySet a = jittered_frequencies_1d(64, 42);
  FrequencySet b = jittered_frequencies_1d(64, 42);
  FrequencySet c = jittered_frequencies_1d(64, 43);
  CHECK((a.lambda1 - b.lambda1).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.lambda1 - c.lambda1).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("invalid bandwidths are rejected") {
  CHECK_THROWS_AS(jittered_frequencies_1d(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(jittered_frequencies_2d(-3, 1), std::invalid_argument);
}

TEST_CASE("infinite snr leaves data untouched") {
  FourierData d;
  d.values = CplxVec::Random(64);
  FourierData out = add_noise(d, NoiseSpec{});
  for (int i = 0; i < 64; ++i) CHECK(out.values[i] == d.values[i]);
}

TEST_CASE("0 dB noise on unit-magnitude data has unit empirical power") {
  const long n = 100000;
  FourierData d;
  d.values = CplxVec::Constant(n, Cplx(1.0, 0.0));
  FourierData out = add_noise(d, NoiseSpec{0.0, 11});
  CplxVec eta = out.values - d.values;
  double power = eta.squaredNorm() / n;
  CHECK(power == doctest::Approx(1.0).epsilon(0.05));
  // Zero mean within 3 sigma / sqrt(n) per component.
  double bound = 3.0 / std::sqrt(double(n));
  CHECK(std::abs(eta.real().mean()) < bound);
  CHECK(std::abs(eta.imag().mean()) < bound);
}

TEST_CASE("20 dB noise on f1 spectra hits the target ratio") {
  Phantom p = f1();
  FrequencySet freqs = jittered_frequencies_1d(128, 5);
  FourierData d = continuous_fourier_samples(p, freqs);
  double signal = d.values.squaredNorm() / d.values.size();
  double noise_power = 0.0;
  const int draws = 400;
  for (int r = 0; r < draws; ++r) {
    FourierData out = add_noise(d, NoiseSpec{20.0, 1000 + std::uint64_t(r)});
    noise_power += (out.values - d.values).squaredNorm() / d.values.size();
  }
  noise_power /= draws;
  double snr_db = 10.0 * std::log10(signal / noise_power);
  CHECK(snr_db == doctest::Approx(20.0).epsilon(0.025));  // within 0.5 dB
}

TEST_CASE("noise draws are seed-deterministic") {
  FourierData d;
  d.values = CplxVec::Constant(32, Cplx(2.0, -1.0));
  FourierData a = add_noise(d, NoiseSpec{10.0, 7});
  FourierData b = add_noise(d, NoiseSpec{10.0, 7});
  FourierData c = add_noise(d, NoiseSpec{10.0, 8});
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.values - c.values).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("subsample keeps aligned pairs in order") {
  FrequencySet f = jittered_frequencies_1d(32, 9);
  FourierData d;
  d.values = CplxVec::Random(f.size());
  auto [sf, sd] = subsample(f, d, 20, 17);
  REQUIRE(sf.size() == 20);
  REQUIRE(sd.values.size() == 20);
  // Every surviving pair exists in the original at a common index, and the
  // original ordering is preserved.
  long prev = -1;
  for (long i = 0; i < sf.size(); ++i) {
    long at = -1;
    for (long j = 0; j < f.size(); ++j)
      if (f.lambda1[j] == sf.lambda1[i] && d.values[j] == sd.values[i]) at = j;
    REQUIRE(at >= 0);
    CHECK(at > prev);
    prev = at;
  }
}

TEST_CASE("subsample edge cases") {
  FrequencySet f = jittered_frequencies_1d(8, 2);
  FourierData d;
  d.values = CplxVec::Random(f.size());

  auto [af, ad] = subsample(f, d, f.size(), 3);
  CHECK((af.lambda1 - f.lambda1).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ad.values - d.values).cwiseAbs().maxCoeff() == 0.0);

  auto [bf, bd] = subsample(f, d, 1, 3);
  CHECK(bf.size() == 1);
  CHECK(bd.values.size() == 1);

  CHECK_THROWS_AS(subsample(f, d, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(subsample(f, d, f.size() + 1, 1), std::invalid_argument);

  auto [cf, cd] = subsample(f, d, 5, 21);
  auto [ef, ed] = subsample(f, d, 5, 21);
  CHECK((cf.lambda1 - ef.lambda1).cwiseAbs().maxCoeff() == 0.0);
  CHECK((cd.values - ed.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("2d subsample at the compressed-sensing sizes") {
  FrequencySet f = jittered_frequencies_2d(128, 4);
  FourierData d;
  d.values = CplxVec::Random(f.size());
  auto [sf, sd] = subsample(f, d, 129L * 129L, 6);
  CHECK(sf.size() == 129L * 129L);
  CHECK(sd.values.size() == 129L * 129L);
  CHECK(sf.dims == 2);
  for (long i = 0; i < 100; ++i)
    CHECK(std::abs(sf.lambda1[i] - sf.k1[i]) <= 0.25);
}
