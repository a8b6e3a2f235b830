#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <random>

#include "niklab/poly.hpp"
#include "niklab/random.hpp"

using namespace niklab;

namespace {

TrigPoly gaussian_poly(const BasisSpec& basis, std::uint64_t seed,
                       std::uint64_t index) {
  return make_poly(basis,
                   sample_unit_coeffs(derive_stream(seed, index),
                                      basis_size(basis),
                                      RandomSpec::Law::Gaussian));
}

}  // namespace

TEST_CASE("basis sizes") {
  CHECK(basis_size({1, 0, BasisKind::Real1d}) == 1);
  CHECK(basis_size({1, 3, BasisKind::Real1d}) == 7);
  CHECK(basis_size({2, 1, BasisKind::ComplexExponential}) == 9);
  CHECK(basis_size({3, 2, BasisKind::RealTensor}) == 125);
  CHECK_THROWS_AS(basis_size({2, 3, BasisKind::Real1d}), std::invalid_argument);
  CHECK_THROWS_AS(basis_size({0, 3, BasisKind::RealTensor}),
                  std::invalid_argument);
}

TEST_CASE("make_poly validates the coefficient count") {
  const BasisSpec constant{1, 0, BasisKind::Real1d};
  const TrigPoly c3 = make_poly(constant, Eigen::VectorXd::Constant(1, 3.0));
  CHECK(evaluate_point(c3, Eigen::VectorXd::Constant(1, 1.234)) == 3.0);

  const BasisSpec degree1{1, 1, BasisKind::Real1d};
  Eigen::VectorXd coeffs(3);
  coeffs << 0.0, 1.0, 0.0;
  const TrigPoly cosine = make_poly(degree1, coeffs);
  CHECK(evaluate_point(cosine, Eigen::VectorXd::Zero(1)) ==
        doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));

  CHECK_THROWS_AS(make_poly(degree1, Eigen::VectorXd::Zero(2)),
                  std::invalid_argument);
}

TEST_CASE("evaluation matches exact cosine values") {
  Eigen::VectorXd coeffs(3);
  coeffs << 0.0, 1.0, 0.0;  // sqrt(2) cos x
  const TrigPoly poly = make_poly({1, 1, BasisKind::Real1d}, coeffs);
  const Eigen::ArrayXd vals = evaluate_real(poly, {1, 4, 0.0});
  CHECK(vals.size() == 4);
  CHECK(vals[0] == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));
  CHECK(vals[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(vals[2] == doctest::Approx(-std::numbers::sqrt2).epsilon(1e-14));
  CHECK(std::abs(vals[3]) < 1e-14);
}

TEST_CASE("constant polynomial evaluates to the constant everywhere") {
  const TrigPoly c3 =
      make_poly({1, 0, BasisKind::Real1d}, Eigen::VectorXd::Constant(1, 3.0));
  const Eigen::ArrayXd vals = evaluate_real(c3, {1, 16, 0.0});
  for (Eigen::Index i = 0; i < vals.size(); ++i) CHECK(vals[i] == 3.0);
}

TEST_CASE("fast and direct evaluation agree (1d)") {
  const BasisSpec basis{1, 8, BasisKind::Real1d};
  const TrigPoly poly = gaussian_poly(basis, 11, 0);
  const GridSpec grid{1, 64, 0.0};
  const Eigen::ArrayXd fast = evaluate_real(poly, grid);
  const Eigen::ArrayXd direct = evaluate_real_direct(poly, grid);
  CHECK((fast - direct).abs().maxCoeff() <= 1e-10);
}

TEST_CASE("evaluation path equivalence across kinds, degrees, offsets") {
  std::uint64_t index = 0;
  for (const int n : {0, 1, 5, 64}) {
    for (const int m : {1, 3, 17, 1024}) {
      const BasisSpec basis{1, n, BasisKind::Real1d};
      const TrigPoly poly = gaussian_poly(basis, 99, index++);
      const GridSpec grid{1, m, 0.25 * 2.0 * std::numbers::pi / m};
      const Eigen::ArrayXd fast = evaluate_real(poly, grid);
      const Eigen::ArrayXd direct = evaluate_real_direct(poly, grid);
      REQUIRE(fast.size() == direct.size());
      CHECK((fast - direct).abs().maxCoeff() <= 1e-10);
    }
  }
  // Complex kind in one dimension exercises the zero-padded FFT branch.
  {
    const BasisSpec basis{1, 3, BasisKind::ComplexExponential};
    const TrigPoly poly = gaussian_poly(basis, 55, index++);
    const GridSpec grid{1, 32, 0.05};
    const Eigen::ArrayXcd fast = evaluate_complex(poly, grid);
    const Eigen::ArrayXcd direct = evaluate_complex_direct(poly, grid);
    CHECK((fast - direct).abs().maxCoeff() <= 1e-10);
  }
  // Tensor and complex kinds in two dimensions.
  for (const auto kind : {BasisKind::RealTensor, BasisKind::ComplexExponential}) {
    const BasisSpec basis{2, 3, kind};
    const TrigPoly poly = gaussian_poly(basis, 7, index++);
    const GridSpec grid{2, 16, 0.1};
    if (kind == BasisKind::ComplexExponential) {
      const Eigen::ArrayXcd fast = evaluate_complex(poly, grid);
      const Eigen::ArrayXcd direct = evaluate_complex_direct(poly, grid);
      CHECK((fast - direct).abs().maxCoeff() <= 1e-10);
    } else {
      const Eigen::ArrayXd fast = evaluate_real(poly, grid);
      const Eigen::ArrayXd direct = evaluate_real_direct(poly, grid);
      CHECK((fast - direct).abs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("point evaluation agrees with grid evaluation") {
  const BasisSpec basis{2, 2, BasisKind::RealTensor};
  const TrigPoly poly = gaussian_poly(basis, 31, 0);
  const GridSpec grid{2, 9, 0.0};
  const Eigen::ArrayXd vals = evaluate_real(poly, grid);
  const Eigen::VectorXd axis = grid_axis_points(grid);
  Eigen::VectorXd x(2);
  for (int j0 = 0; j0 < 9; j0 += 4) {
    for (int j1 = 0; j1 < 9; j1 += 3) {
      x << axis[j0], axis[j1];
      CHECK(evaluate_point(poly, x) ==
            doctest::Approx(vals[j0 * 9 + j1]).epsilon(1e-11));
    }
  }
}

TEST_CASE("evaluate rejects mismatched dimensions") {
  const TrigPoly poly = gaussian_poly({1, 2, BasisKind::Real1d}, 5, 0);
  CHECK_THROWS_AS(evaluate_real(poly, {2, 8, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_complex(poly, {1, 8, 0.0}), std::invalid_argument);
}

TEST_CASE("christoffel sum equals the space dimension") {
  Eigen::VectorXd x1(1);
  x1 << 0.7311;
  CHECK(christoffel_m({1, 3, BasisKind::Real1d}, x1) ==
        doctest::Approx(7.0).epsilon(1e-12));

  Eigen::VectorXd x2(2);
  x2 << 1.1, 2.9;
  CHECK(christoffel_m({2, 1, BasisKind::ComplexExponential}, x2) ==
        doctest::Approx(9.0).epsilon(1e-12));
  CHECK(christoffel_m({2, 0, BasisKind::RealTensor}, x2) ==
        doctest::Approx(1.0).epsilon(1e-15));

  // Property: identity holds at random points for every kind, d <= 3.
  std::mt19937_64 rng(2024);
  auto unif = [&rng] {
    return 2.0 * std::numbers::pi *
           static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  for (const auto& basis :
       {BasisSpec{1, 16, BasisKind::Real1d},
        BasisSpec{2, 5, BasisKind::RealTensor},
        BasisSpec{3, 2, BasisKind::ComplexExponential},
        BasisSpec{3, 3, BasisKind::RealTensor}}) {
    const double expected = static_cast<double>(basis_size(basis));
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd x(basis.dimension);
      for (int a = 0; a < basis.dimension; ++a) x[a] = unif();
      CHECK(std::abs(christoffel_m(basis, x) - expected) <= 1e-9 * expected);
    }
  }
}

TEST_CASE("dirichlet kernel closed form and series") {
  CHECK(dirichlet_kernel(5, 0.0) == doctest::Approx(11.0).epsilon(1e-14));
  CHECK(dirichlet_kernel(1, std::numbers::pi) ==
        doctest::Approx(-1.0).epsilon(1e-12));

  // Series oracle on random angles.
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = 2.0 * std::numbers::pi *
                     static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double series = 1.0;
    for (int k = 1; k <= 8; ++k) series += 2.0 * std::cos(k * x);
    worst = std::max(worst, std::abs(dirichlet_kernel(8, x) - series));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("dirichlet orthogonality on the canonical grid") {
  const int n = 6;
  const int size = 2 * n + 1;
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      const double x = 2.0 * std::numbers::pi * (i - j) / size;
      const double value = dirichlet_kernel(n, x) / size;
      CHECK(std::abs(value - (i == j ? 1.0 : 0.0)) <= 1e-9);
    }
  }
}

TEST_CASE("fejer kernel basics") {
  const TrigPoly f0 = fejer_poly(0);
  CHECK(f0.coeffs.size() == 1);
  CHECK(f0.coeffs[0] == 1.0);

  const TrigPoly f4 = fejer_poly(4);
  CHECK(evaluate_point(f4, Eigen::VectorXd::Zero(1)) ==
        doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("reproducing bound: |T(x)| <= sqrt(N) |a|_2") {
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    const BasisSpec basis{1, 12, BasisKind::Real1d};
    const TrigPoly poly = gaussian_poly(basis, 123, trial);
    const double bound = std::sqrt(static_cast<double>(basis_size(basis))) *
                         poly.coeffs.norm();
    const Eigen::ArrayXd vals = evaluate_real(poly, {1, 101, 0.0});
    CHECK(vals.abs().maxCoeff() <= bound * (1.0 + 1e-9));
  }
}
