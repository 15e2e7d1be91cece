#pragma once

#include <cstdint>
#include <limits>
#include <utility>

#include "recon/types.hpp"

namespace recon {

// Jittered frequencies lambda_k = k + (1 - 2 xi_k)/4 for k = -M..M with
// xi ~ U[0,1), one draw per entry (2D: one per coordinate, lambda1 first).
FrequencySet jittered_frequencies_1d(int M, std::uint64_t seed);
FrequencySet jittered_frequencies_2d(int M, std::uint64_t seed);

// Deterministic variants taking the xi draws directly; used for tests that
// pin exact offsets. xi sizes: 2M+1 (1D) or 2*(2M+1)^2 (2D, per-entry pairs
// ordered lambda1, lambda2).
FrequencySet frequencies_from_offsets_1d(int M, const RealVec& xi);
FrequencySet frequencies_from_offsets_2d(int M, const RealVec& xi);

struct NoiseSpec {
  double snr_db = std::numeric_limits<double>::infinity();  // +inf = no noise
  std::uint64_t seed = 0;
};

// Adds i.i.d. zero-mean complex Gaussian noise with total variance sigma^2
// chosen so 10*log10(mean |f|^2 / sigma^2) = snr_db. Infinite snr_db returns
// the input unchanged.
FourierData add_noise(const FourierData& data, const NoiseSpec& spec);

// Uniform subset without replacement of size keep; frequency/data alignment
// is preserved and the surviving entries keep their nominal-integer order.
std::pair<FrequencySet, FourierData> subsample(const FrequencySet& freqs,
                                               const FourierData& data,
                                               long keep, std::uint64_t seed);

}  // namespace recon
