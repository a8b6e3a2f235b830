#include "niklab/random.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "niklab/poly.hpp"

namespace niklab {

namespace {

std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// 53-bit uniform in (0, 1]; never zero, so log() below is safe.
double uniform_open_closed(std::uint64_t word) {
  return static_cast<double>((word >> 11) + 1) * 0x1.0p-53;
}

// 53-bit uniform in [0, 1).
double uniform_half_open(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace

std::string to_string(RandomSpec::Law law) {
  return law == RandomSpec::Law::Gaussian ? "gaussian" : "rademacher";
}

RandomSpec::Law law_from_string(const std::string& name) {
  if (name == "gaussian") return RandomSpec::Law::Gaussian;
  if (name == "rademacher") return RandomSpec::Law::Rademacher;
  throw std::invalid_argument("unknown coefficient law: " + name);
}

void validate(const RandomSpec& spec) {
  if (!(spec.sigma > 0.0))
    throw std::invalid_argument("sigma must be positive");
}

StreamHandle derive_stream(std::uint64_t seed, std::uint64_t index) {
  return StreamHandle{seed, index};
}

std::uint64_t stream_key(const StreamHandle& stream) {
  return splitmix64_finalize(stream.root_seed +
                             (stream.index + 1) * 0x9e3779b97f4a7c15ULL);
}

Eigen::VectorXd sample_unit_coeffs(const StreamHandle& stream,
                                   Eigen::Index count, RandomSpec::Law law) {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  std::mt19937_64 engine(stream_key(stream));
  Eigen::VectorXd out(count);
  if (law == RandomSpec::Law::Rademacher) {
    for (Eigen::Index i = 0; i < count; ++i)
      out[i] = (engine() >> 63) != 0 ? 1.0 : -1.0;
    return out;
  }
  for (Eigen::Index i = 0; i < count; i += 2) {
    const double u1 = uniform_open_closed(engine());
    const double u2 = uniform_half_open(engine());
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    out[i] = radius * std::cos(angle);
    if (i + 1 < count) out[i + 1] = radius * std::sin(angle);
  }
  return out;
}

Eigen::VectorXd sample_coeffs(const StreamHandle& stream, Eigen::Index count,
                              const RandomSpec& spec) {
  validate(spec);
  Eigen::VectorXd draws = sample_unit_coeffs(stream, count, spec.law);
  if (spec.law == RandomSpec::Law::Gaussian && spec.sigma != 1.0)
    draws *= spec.sigma;
  return draws;
}

Eigen::VectorXcd grid_samples(const TrigPoly& poly) {
  validate(poly.basis);
  const int per_axis = 2 * poly.basis.degree + 1;
  const GridSpec grid{poly.basis.dimension, per_axis, 0.0};
  const double scale = 1.0 / std::sqrt(static_cast<double>(basis_size(poly.basis)));
  switch (poly.basis.kind) {
    case BasisKind::Real1d: {
      const Eigen::ArrayXd vals = evaluate_real(poly, grid);
      return (vals * scale).matrix().cast<std::complex<double>>();
    }
    case BasisKind::ComplexExponential: {
      const Eigen::ArrayXcd vals = evaluate_complex(poly, grid);
      return (vals * scale).matrix();
    }
    case BasisKind::RealTensor:
      throw std::domain_error(
          "grid_samples is defined for the real-1d and complex-exponential kinds");
  }
  throw std::logic_error("unreachable basis kind");
}

}  // namespace niklab
