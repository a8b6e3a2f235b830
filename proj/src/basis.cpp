#include "niklab/basis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace niklab {

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::Real1d: return "real-1d";
    case BasisKind::RealTensor: return "real-tensor";
    case BasisKind::ComplexExponential: return "complex-exponential";
  }
  throw std::logic_error("unreachable basis kind");
}

BasisKind basis_kind_from_string(const std::string& name) {
  if (name == "real-1d") return BasisKind::Real1d;
  if (name == "real-tensor") return BasisKind::RealTensor;
  if (name == "complex-exponential") return BasisKind::ComplexExponential;
  throw std::invalid_argument("unknown basis kind: " + name);
}

void validate(const BasisSpec& basis) {
  if (basis.dimension < 1)
    throw std::invalid_argument("basis dimension must be >= 1");
  if (basis.degree < 0)
    throw std::invalid_argument("basis degree must be >= 0");
  if (basis.kind == BasisKind::Real1d && basis.dimension != 1)
    throw std::invalid_argument("real-1d basis requires dimension 1");
}

std::int64_t basis_size(const BasisSpec& basis) {
  validate(basis);
  const std::int64_t per_axis = 2 * static_cast<std::int64_t>(basis.degree) + 1;
  std::int64_t n = 1;
  for (int a = 0; a < basis.dimension; ++a) {
    if (n > std::numeric_limits<std::int64_t>::max() / per_axis)
      throw std::invalid_argument("basis size overflows");
    n *= per_axis;
  }
  return n;
}

TrigPoly make_poly(const BasisSpec& basis, const Eigen::VectorXd& coeffs) {
  const std::int64_t n = basis_size(basis);
  if (coeffs.size() != n)
    throw std::invalid_argument("coefficient count " +
                                std::to_string(coeffs.size()) +
                                " does not match basis size " +
                                std::to_string(n));
  return TrigPoly{basis, coeffs};
}

void validate(const GridSpec& grid) {
  if (grid.dimension < 1)
    throw std::invalid_argument("grid dimension must be >= 1");
  if (grid.points_per_axis < 1)
    throw std::invalid_argument("grid needs at least one point per axis");
  const double cell = 2.0 * std::numbers::pi / grid.points_per_axis;
  if (!(grid.offset >= 0.0) || grid.offset >= cell)
    throw std::invalid_argument("grid offset must lie in [0, 2*pi/M)");
}

std::int64_t grid_size(const GridSpec& grid) {
  validate(grid);
  std::int64_t n = 1;
  for (int a = 0; a < grid.dimension; ++a) {
    if (n > std::numeric_limits<std::int64_t>::max() / grid.points_per_axis)
      throw std::invalid_argument("grid size overflows");
    n *= grid.points_per_axis;
  }
  return n;
}

Eigen::VectorXd grid_axis_points(const GridSpec& grid) {
  validate(grid);
  const int m = grid.points_per_axis;
  Eigen::VectorXd x(m);
  for (int j = 0; j < m; ++j)
    x[j] = grid.offset + 2.0 * std::numbers::pi * j / m;
  return x;
}

}  // namespace niklab
