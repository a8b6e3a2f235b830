#include "niklab/poly.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace niklab {

namespace {

using Cx = std::complex<double>;

void check_grid_matches(const TrigPoly& poly, const GridSpec& grid) {
  validate(poly.basis);
  validate(grid);
  if (grid.dimension != poly.basis.dimension)
    throw std::invalid_argument("grid dimension does not match basis dimension");
}

// Per-axis basis values at one angle. Real kinds share the Real1d layout
// {1, sqrt2 cos k, sqrt2 sin k}; the complex kind is exp(i(t-n)theta).
Eigen::VectorXd real_axis_values(int n, double theta) {
  Eigen::VectorXd phi(2 * n + 1);
  phi[0] = 1.0;
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  double ck = 1.0, sk = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double c = ck * c1 - sk * s1;
    const double s = sk * c1 + ck * s1;
    ck = c;
    sk = s;
    phi[2 * k - 1] = std::numbers::sqrt2 * ck;
    phi[2 * k] = std::numbers::sqrt2 * sk;
  }
  return phi;
}

Eigen::VectorXcd complex_axis_values(int n, double theta) {
  Eigen::VectorXcd phi(2 * n + 1);
  const Cx w(std::cos(theta), std::sin(theta));
  Cx wk(1.0, 0.0);
  phi[n] = wk;
  for (int k = 1; k <= n; ++k) {
    wk *= w;
    phi[n + k] = wk;
    phi[n - k] = std::conj(wk);
  }
  return phi;
}

// Per-axis evaluation matrix (M x K), one row per grid point. Built with
// libm trig per entry; shared by the contraction path and the direct path.
Eigen::MatrixXd real_axis_matrix(int n, const GridSpec& grid) {
  const Eigen::VectorXd x = grid_axis_points(grid);
  Eigen::MatrixXd b(x.size(), 2 * n + 1);
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    b(j, 0) = 1.0;
    for (int k = 1; k <= n; ++k) {
      b(j, 2 * k - 1) = std::numbers::sqrt2 * std::cos(k * x[j]);
      b(j, 2 * k) = std::numbers::sqrt2 * std::sin(k * x[j]);
    }
  }
  return b;
}

Eigen::MatrixXcd complex_axis_matrix(int n, const GridSpec& grid) {
  const Eigen::VectorXd x = grid_axis_points(grid);
  Eigen::MatrixXcd b(x.size(), 2 * n + 1);
  for (Eigen::Index j = 0; j < x.size(); ++j)
    for (int k = -n; k <= n; ++k)
      b(j, n + k) = Cx(std::cos(k * x[j]), std::sin(k * x[j]));
  return b;
}

// Axis-separable contraction: apply B along every axis of the coefficient
// tensor. The multiply-then-transpose cycle contracts the fastest-varying
// axis each round and restores lexicographic order after d rounds.
template <typename Mat, typename Vec>
Vec tensor_apply(const Vec& coeffs, const Mat& b, int dims) {
  const Eigen::Index k = b.cols();
  Vec cur = coeffs;
  for (int a = 0; a < dims; ++a) {
    Eigen::Map<const Mat> view(cur.data(), k, cur.size() / k);
    Mat y = b * view;
    Vec next(y.size());
    Eigen::Map<Mat>(next.data(), y.cols(), y.rows()) = y.transpose();
    cur.swap(next);
  }
  return cur;
}

// Zero-padded inverse DFT of the one-dimensional spectrum; requires
// M >= 2n+1 so frequency bins do not collide.
Eigen::ArrayXcd fft_eval_1d(const Eigen::VectorXcd& spectrum, int degree,
                            const GridSpec& grid) {
  const int m = grid.points_per_axis;
  std::vector<Cx> bins(static_cast<size_t>(m), Cx(0.0, 0.0));
  const double md = static_cast<double>(m);
  for (int k = -degree; k <= degree; ++k) {
    const Cx phase(std::cos(k * grid.offset), std::sin(k * grid.offset));
    const int bin = k >= 0 ? k : m + k;
    bins[static_cast<size_t>(bin)] += md * spectrum[degree + k] * phase;
  }
  static thread_local Eigen::FFT<double> fft;
  std::vector<Cx> out;
  fft.inv(out, bins);
  return Eigen::Map<const Eigen::ArrayXcd>(out.data(), m);
}

// Real1d coefficients as a complex exponential spectrum, index k+n.
Eigen::VectorXcd real1d_spectrum(const TrigPoly& poly) {
  const int n = poly.basis.degree;
  Eigen::VectorXcd spec(2 * n + 1);
  spec[n] = Cx(poly.coeffs[0], 0.0);
  const double half_sqrt2 = std::numbers::sqrt2 / 2.0;
  for (int k = 1; k <= n; ++k) {
    const Cx c(half_sqrt2 * poly.coeffs[2 * k - 1],
               -half_sqrt2 * poly.coeffs[2 * k]);
    spec[n + k] = c;
    spec[n - k] = std::conj(c);
  }
  return spec;
}

bool fast_path_available(const TrigPoly& poly, const GridSpec& grid) {
  // The FFT backend needs at least two points; single-point grids go
  // through direct summation, which is exact and O(N) there anyway.
  if (grid.dimension == 1 && grid.points_per_axis < 2) return false;
  return grid.points_per_axis >= 2 * poly.basis.degree + 1;
}

template <typename Table>
auto direct_sum(const TrigPoly& poly, const GridSpec& grid,
                const std::vector<Table>& tables) {
  using Scalar = typename Table::Scalar;
  const int d = grid.dimension;
  const int m = grid.points_per_axis;
  const Eigen::Index k = 2 * poly.basis.degree + 1;
  const std::int64_t points = grid_size(grid);
  const std::int64_t n = poly.coeffs.size();
  Eigen::Array<Scalar, Eigen::Dynamic, 1> out(points);
  std::vector<int> j(static_cast<size_t>(d), 0);
  for (std::int64_t g = 0; g < points; ++g) {
    std::int64_t rem = g;
    for (int a = d - 1; a >= 0; --a) {
      j[static_cast<size_t>(a)] = static_cast<int>(rem % m);
      rem /= m;
    }
    Scalar acc{};
    for (std::int64_t b = 0; b < n; ++b) {
      std::int64_t tb = b;
      Scalar term = Scalar(poly.coeffs[b]);
      for (int a = d - 1; a >= 0; --a) {
        const auto t = static_cast<Eigen::Index>(tb % k);
        tb /= k;
        term *= tables[static_cast<size_t>(a)](j[static_cast<size_t>(a)], t);
      }
      acc += term;
    }
    out[g] = acc;
  }
  return out;
}

}  // namespace

Eigen::ArrayXd evaluate_real(const TrigPoly& poly, const GridSpec& grid) {
  check_grid_matches(poly, grid);
  if (is_complex(poly.basis))
    throw std::invalid_argument("evaluate_real requires a real basis kind");
  if (!fast_path_available(poly, grid)) return evaluate_real_direct(poly, grid);
  if (grid.dimension == 1)
    return fft_eval_1d(real1d_spectrum(poly), poly.basis.degree, grid).real();
  const Eigen::MatrixXd b = real_axis_matrix(poly.basis.degree, grid);
  Eigen::VectorXd flat =
      tensor_apply<Eigen::MatrixXd>(Eigen::VectorXd(poly.coeffs), b,
                                    grid.dimension);
  return flat.array();
}

Eigen::ArrayXcd evaluate_complex(const TrigPoly& poly, const GridSpec& grid) {
  check_grid_matches(poly, grid);
  if (!is_complex(poly.basis))
    throw std::invalid_argument("evaluate_complex requires the complex kind");
  if (!fast_path_available(poly, grid))
    return evaluate_complex_direct(poly, grid);
  if (grid.dimension == 1) {
    Eigen::VectorXcd spec = poly.coeffs.cast<Cx>();
    return fft_eval_1d(spec, poly.basis.degree, grid);
  }
  const Eigen::MatrixXcd b = complex_axis_matrix(poly.basis.degree, grid);
  Eigen::VectorXcd flat = tensor_apply<Eigen::MatrixXcd>(
      Eigen::VectorXcd(poly.coeffs.cast<Cx>()), b, grid.dimension);
  return flat.array();
}

Eigen::ArrayXd evaluate_real_direct(const TrigPoly& poly,
                                    const GridSpec& grid) {
  check_grid_matches(poly, grid);
  if (is_complex(poly.basis))
    throw std::invalid_argument("evaluate_real requires a real basis kind");
  std::vector<Eigen::MatrixXd> tables;
  tables.reserve(static_cast<size_t>(grid.dimension));
  for (int a = 0; a < grid.dimension; ++a)
    tables.push_back(real_axis_matrix(poly.basis.degree, grid));
  return direct_sum(poly, grid, tables);
}

Eigen::ArrayXcd evaluate_complex_direct(const TrigPoly& poly,
                                        const GridSpec& grid) {
  check_grid_matches(poly, grid);
  if (!is_complex(poly.basis))
    throw std::invalid_argument("evaluate_complex requires the complex kind");
  std::vector<Eigen::MatrixXcd> tables;
  tables.reserve(static_cast<size_t>(grid.dimension));
  for (int a = 0; a < grid.dimension; ++a)
    tables.push_back(complex_axis_matrix(poly.basis.degree, grid));
  return direct_sum(poly, grid, tables);
}

Eigen::ArrayXd evaluate_abs(const TrigPoly& poly, const GridSpec& grid) {
  if (is_complex(poly.basis)) return evaluate_complex(poly, grid).abs();
  return evaluate_real(poly, grid).abs();
}

double evaluate_point(const TrigPoly& poly, const Eigen::VectorXd& x) {
  validate(poly.basis);
  if (is_complex(poly.basis))
    throw std::invalid_argument("evaluate_point requires a real basis kind");
  if (x.size() != poly.basis.dimension)
    throw std::invalid_argument("point dimension does not match basis");
  const int n = poly.basis.degree;
  const Eigen::Index k = 2 * n + 1;
  Eigen::VectorXd cur = poly.coeffs;
  for (int a = poly.basis.dimension - 1; a >= 0; --a) {
    const Eigen::VectorXd phi = real_axis_values(n, x[a]);
    Eigen::Map<const Eigen::MatrixXd> view(cur.data(), k, cur.size() / k);
    Eigen::VectorXd next = view.transpose() * phi;
    cur.swap(next);
  }
  return cur[0];
}

std::complex<double> evaluate_point_complex(const TrigPoly& poly,
                                            const Eigen::VectorXd& x) {
  validate(poly.basis);
  if (!is_complex(poly.basis))
    throw std::invalid_argument("evaluate_point_complex requires the complex kind");
  if (x.size() != poly.basis.dimension)
    throw std::invalid_argument("point dimension does not match basis");
  const int n = poly.basis.degree;
  const Eigen::Index k = 2 * n + 1;
  Eigen::VectorXcd cur = poly.coeffs.cast<Cx>();
  for (int a = poly.basis.dimension - 1; a >= 0; --a) {
    const Eigen::VectorXcd phi = complex_axis_values(n, x[a]);
    Eigen::Map<const Eigen::MatrixXcd> view(cur.data(), k, cur.size() / k);
    Eigen::VectorXcd next = view.transpose() * phi;
    cur.swap(next);
  }
  return cur[0];
}

double abs_at_point(const TrigPoly& poly, const Eigen::VectorXd& x) {
  if (is_complex(poly.basis)) return std::abs(evaluate_point_complex(poly, x));
  return std::abs(evaluate_point(poly, x));
}

double christoffel_m(const BasisSpec& basis, const Eigen::VectorXd& x) {
  validate(basis);
  if (x.size() != basis.dimension)
    throw std::invalid_argument("point dimension does not match basis");
  const int n = basis.degree;
  const Eigen::Index k = 2 * n + 1;
  // |phi|^2 per axis, term by term.
  std::vector<Eigen::VectorXd> sq(static_cast<size_t>(basis.dimension));
  for (int a = 0; a < basis.dimension; ++a) {
    Eigen::VectorXd u(k);
    if (basis.kind == BasisKind::ComplexExponential) {
      for (int t = -n; t <= n; ++t) {
        const double c = std::cos(t * x[a]), s = std::sin(t * x[a]);
        u[n + t] = c * c + s * s;
      }
    } else {
      u[0] = 1.0;
      for (int kk = 1; kk <= n; ++kk) {
        const double c = std::cos(kk * x[a]), s = std::sin(kk * x[a]);
        u[2 * kk - 1] = 2.0 * c * c;
        u[2 * kk] = 2.0 * s * s;
      }
    }
    sq[static_cast<size_t>(a)] = u;
  }
  const std::int64_t n_total = basis_size(basis);
  double sum = 0.0;
  for (std::int64_t b = 0; b < n_total; ++b) {
    std::int64_t tb = b;
    double term = 1.0;
    for (int a = basis.dimension - 1; a >= 0; --a) {
      term *= sq[static_cast<size_t>(a)][static_cast<Eigen::Index>(tb % k)];
      tb /= k;
    }
    sum += term;
  }
  return sum;
}

double dirichlet_kernel(int n, double x) {
  if (n < 0) throw std::invalid_argument("dirichlet_kernel requires n >= 0");
  const double half_sin = std::sin(0.5 * x);
  if (std::abs(half_sin) < 1e-8) {
    double sum = 1.0;
    for (int k = 1; k <= n; ++k) sum += 2.0 * std::cos(k * x);
    return sum;
  }
  return std::sin((n + 0.5) * x) / half_sin;
}

TrigPoly fejer_poly(int n) {
  if (n < 0) throw std::invalid_argument("fejer_poly requires n >= 0");
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(2 * n + 1);
  coeffs[0] = 1.0;
  for (int k = 1; k <= n; ++k)
    coeffs[2 * k - 1] =
        std::numbers::sqrt2 * (1.0 - static_cast<double>(k) / (n + 1));
  return make_poly(BasisSpec{1, n, BasisKind::Real1d}, coeffs);
}

}  // namespace niklab
