#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>

#include "niklab/basis.hpp"

namespace niklab {

// Coefficient law. sigma applies to the Gaussian law only.
struct RandomSpec {
  enum class Law { Gaussian, Rademacher };
  Law law = Law::Gaussian;
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

std::string to_string(RandomSpec::Law law);
RandomSpec::Law law_from_string(const std::string& name);
void validate(const RandomSpec& spec);

// Deterministic substream: (seed, index) fixes every draw, no matter how
// work is distributed over threads. Derivation is split-by-hash: the
// engine seed is the SplitMix64 finalizer applied to
// seed + (index+1) * 0x9e3779b97f4a7c15, which is injective in the index
// for a fixed root seed.
struct StreamHandle {
  std::uint64_t root_seed = 0;
  std::uint64_t index = 0;
};

StreamHandle derive_stream(std::uint64_t seed, std::uint64_t index);

// The mixed 64-bit engine seed for a stream (exposed for tests).
std::uint64_t stream_key(const StreamHandle& stream);

// count i.i.d. draws with sigma = 1. Gaussian variates come from mt19937_64
// uniforms through the basic Box-Muller transform (pairs of 53-bit uniforms;
// a leftover half-pair is discarded, never cached across calls). Rademacher
// uses the top bit of one engine word per draw. The scheme is fixed:
// changing it changes every seeded result.
Eigen::VectorXd sample_unit_coeffs(const StreamHandle& stream,
                                   Eigen::Index count, RandomSpec::Law law);

// sigma * sample_unit_coeffs, elementwise; exact scale equivariance.
Eigen::VectorXd sample_coeffs(const StreamHandle& stream, Eigen::Index count,
                              const RandomSpec& spec);

// The whitened sample vector X with X_k = T(x_k) / sqrt(N) over the
// canonical grid of 2n+1 points per axis (offset 0), flattened
// lexicographically. Defined for the Real1d and ComplexExponential kinds;
// Real1d values have zero imaginary part.
Eigen::VectorXcd grid_samples(const TrigPoly& poly);

}  // namespace niklab
