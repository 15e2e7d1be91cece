#include "recon/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "recon/rng.hpp"

namespace recon {

namespace {

void check_m(int M) {
  if (M < 1) throw std::invalid_argument("jittered frequencies need M >= 1");
}

}  // namespace

FrequencySet frequencies_from_offsets_1d(int M, const RealVec& xi) {
  check_m(M);
  int n = 2 * M + 1;
  if (xi.size() != n) throw std::invalid_argument("offset count mismatch");
  FrequencySet fs;
  fs.dims = 1;
  fs.M = M;
  fs.lambda1.resize(n);
  fs.k1.resize(n);
  for (int i = 0; i < n; ++i) {
    int k = i - M;
    fs.k1[i] = k;
    fs.lambda1[i] = k + (1.0 - 2.0 * xi[i]) / 4.0;
  }
  return fs;
}

FrequencySet frequencies_from_offsets_2d(int M, const RealVec& xi) {
  check_m(M);
  long n = 2 * M + 1;
  long total = n * n;
  if (xi.size() != 2 * total) throw std::invalid_argument("offset count mismatch");
  FrequencySet fs;
  fs.dims = 2;
  fs.M = M;
  fs.lambda1.resize(total);
  fs.lambda2.resize(total);
  fs.k1.resize(total);
  fs.k2.resize(total);
  long idx = 0;
  for (int a = -M; a <= M; ++a) {
    for (int b = -M; b <= M; ++b, ++idx) {
      fs.k1[idx] = a;
      fs.k2[idx] = b;
      fs.lambda1[idx] = a + (1.0 - 2.0 * xi[2 * idx]) / 4.0;
      fs.lambda2[idx] = b + (1.0 - 2.0 * xi[2 * idx + 1]) / 4.0;
    }
  }
  return fs;
}

FrequencySet jittered_frequencies_1d(int M, std::uint64_t seed) {
  check_m(M);
  Rng rng(seed);
  RealVec xi(2 * M + 1);
  for (long i = 0; i < xi.size(); ++i) xi[i] = rng.uniform();
  FrequencySet fs = frequencies_from_offsets_1d(M, xi);
  fs.seed = seed;
  return fs;
}

FrequencySet jittered_frequencies_2d(int M, std::uint64_t seed) {
  check_m(M);
  Rng rng(seed);
  long total = long(2 * M + 1) * (2 * M + 1);
  RealVec xi(2 * total);
  for (long i = 0; i < xi.size(); ++i) xi[i] = rng.uniform();
  FrequencySet fs = frequencies_from_offsets_2d(M, xi);
  fs.seed = seed;
  return fs;
}

FourierData add_noise(const FourierData& data, const NoiseSpec& spec) {
  if (data.values.size() == 0) throw std::invalid_argument("add_noise: empty data");
  if (std::isinf(spec.snr_db)) return data;

  double p_signal = data.values.squaredNorm() / double(data.values.size());
  double sigma2 = p_signal / std::pow(10.0, spec.snr_db / 10.0);
  double s = std::sqrt(sigma2 / 2.0);  // per-component std dev

  Rng rng(spec.seed);
  FourierData out = data;
  for (long i = 0; i < out.values.size(); ++i) {
    out.values[i] += Cplx(s * rng.gaussian(), s * rng.gaussian());
  }
  return out;
}

std::pair<FrequencySet, FourierData> subsample(const FrequencySet& freqs,
                                               const FourierData& data,
                                               long keep, std::uint64_t seed) {
  long total = freqs.size();
  if (data.values.size() != total)
    throw std::invalid_argument("subsample: data/frequency size mismatch");
  if (keep <= 0 || keep > total)
    throw std::invalid_argument("subsample: keep out of range");

  // Partial Fisher-Yates, then restore nominal order among the survivors.
  std::vector<long> idx(total);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  for (long i = 0; i < keep; ++i) {
    long j = i + long(rng.below(std::uint64_t(total - i)));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());

  FrequencySet fs;
  fs.dims = freqs.dims;
  fs.M = freqs.M;
  fs.seed = seed;
  fs.lambda1.resize(keep);
  fs.k1.resize(keep);
  if (freqs.dims == 2) {
    fs.lambda2.resize(keep);
    fs.k2.resize(keep);
  }
  FourierData out;
  out.values.resize(keep);
  out.provenance = data.provenance;
  for (long i = 0; i < keep; ++i) {
    long s = idx[i];
    fs.lambda1[i] = freqs.lambda1[s];
    fs.k1[i] = freqs.k1[s];
    if (freqs.dims == 2) {
      fs.lambda2[i] = freqs.lambda2[s];
      fs.k2[i] = freqs.k2[s];
    }
    out.values[i] = data.values[s];
  }
  return {std::move(fs), std::move(out)};
}

}  // namespace recon
