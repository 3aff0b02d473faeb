#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

namespace nlslab {

using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Periodified truncation [-X, X) of the real line with n equispaced nodes.
///
/// Node j sits at x_j = -X + j h with h = 2X/n. Because the node set is
/// symmetric about 0 under the periodic wrap, index j mirrors to (n - j) mod n:
/// x = -X is its own mirror (it is identified with +X) and so is x = 0.
class Grid1D {
 public:
  Grid1D(std::size_t n, double half_width);

  std::size_t size() const noexcept { return n_; }
  double half_width() const noexcept { return half_width_; }
  double spacing() const noexcept { return spacing_; }
  /// Uniform trapezoid weight on a periodic grid.
  double weight() const noexcept { return spacing_; }

  const RealVector& nodes() const noexcept { return nodes_; }
  double node(std::size_t j) const { return nodes_[static_cast<Eigen::Index>(j)]; }

  /// Angular wavenumbers in FFT order; entry n/2 is the Nyquist frequency.
  const RealVector& wavenumbers() const noexcept { return wavenumbers_; }

  std::size_t mirror(std::size_t j) const noexcept { return (n_ - j) % n_; }

  /// Index of x = 0.
  std::size_t center() const noexcept { return n_ / 2; }

  bool operator==(const Grid1D& other) const noexcept {
    return n_ == other.n_ && half_width_ == other.half_width_;
  }

 private:
  std::size_t n_;
  double half_width_;
  double spacing_;
  RealVector nodes_;
  RealVector wavenumbers_;
};

/// The truncated cylinder [-X, X) x T_L with T_L = R / 2 pi L Z.
///
/// Storage is row-major with x fastest: sample (i, j) lives at j * nx + i.
class Grid2D {
 public:
  Grid2D(Grid1D gx, std::size_t ny, double period_param);

  const Grid1D& x() const noexcept { return gx_; }
  std::size_t nx() const noexcept { return gx_.size(); }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return gx_.size() * ny_; }

  /// L, so the y-period is 2 pi L.
  double period_param() const noexcept { return period_; }
  double y_period() const;
  double y_spacing() const;
  double weight() const { return gx_.weight() * y_spacing(); }

  const RealVector& y_nodes() const noexcept { return y_nodes_; }
  /// Transverse wavenumbers a = n / L in FFT order.
  const RealVector& y_wavenumbers() const noexcept { return y_wavenumbers_; }

  /// Transverse wavenumber of y-mode n.
  double mode_wavenumber(int n) const { return n / period_; }

  std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * gx_.size() + i; }

  bool operator==(const Grid2D& other) const noexcept {
    return gx_ == other.gx_ && ny_ == other.ny_ && period_ == other.period_;
  }

 private:
  Grid1D gx_;
  std::size_t ny_;
  double period_;
  RealVector y_nodes_;
  RealVector y_wavenumbers_;
};

enum class FieldKind : std::uint8_t { real = 0, complex = 1 };

/// Sampled function on a Grid1D (ny == 1) or Grid2D.
///
/// Values are always stored as complex numbers; real-kind fields keep a zero
/// imaginary part, which every constructor and setter enforces.
class Field {
 public:
  Field() = default;
  Field(std::size_t nx, std::size_t ny, FieldKind kind);

  static Field from_real(const RealVector& values, std::size_t nx, std::size_t ny = 1);
  static Field from_complex(const ComplexVector& values, std::size_t nx, std::size_t ny = 1);
  static Field on(const Grid1D& grid, FieldKind kind) { return Field(grid.size(), 1, kind); }
  static Field on(const Grid2D& grid, FieldKind kind) { return Field(grid.nx(), grid.ny(), kind); }

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return nx_ * ny_; }
  FieldKind kind() const noexcept { return kind_; }

  const ComplexVector& values() const noexcept { return values_; }
  RealVector real_part() const { return values_.real(); }

  /// Promote a real field to complex kind (no value change).
  Field as_complex() const;

  bool matches(const Grid1D& grid) const noexcept { return ny_ == 1 && nx_ == grid.size(); }
  bool matches(const Grid2D& grid) const noexcept {
    return nx_ == grid.nx() && ny_ == grid.ny();
  }

 private:
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  FieldKind kind_ = FieldKind::real;
  ComplexVector values_;
};

// ---------------------------------------------------------------------------
// Differentiation

/// Spectral Laplacian d^2/dx^2 via FFT; exact for band-limited input.
RealVector apply_laplacian(const RealVector& f, const Grid1D& grid);
ComplexVector apply_laplacian(const ComplexVector& f, const Grid1D& grid);
/// Spectral Laplacian d^2/dx^2 + d^2/dy^2 on the cylinder.
ComplexVector apply_laplacian(const ComplexVector& f, const Grid2D& grid);
Field apply_laplacian(const Field& f, const Grid1D& grid);
Field apply_laplacian(const Field& f, const Grid2D& grid);

/// Second-order periodic finite-difference Laplacian, for cross-validation.
RealVector apply_laplacian_fd(const RealVector& f, const Grid1D& grid);

/// Dense Fourier differentiation matrix for d^2/dx^2 (symmetric).
Eigen::MatrixXd spectral_laplacian_matrix(const Grid1D& grid);
/// Dense periodic three-point matrix for d^2/dx^2.
Eigen::MatrixXd fd_laplacian_matrix(const Grid1D& grid);
/// Dense Fourier differentiation matrix for d^2/dy^2 on T_L with ny nodes.
Eigen::MatrixXd spectral_laplacian_matrix_y(const Grid2D& grid);

/// First derivative via FFT (Nyquist mode dropped).
RealVector differentiate(const RealVector& f, const Grid1D& grid);

// ---------------------------------------------------------------------------
// Quadrature

/// Re sum f conj(g) * weight, the real L^2 pairing.
double inner_product(const RealVector& f, const RealVector& g, const Grid1D& grid);
double inner_product(const ComplexVector& f, const ComplexVector& g, const Grid1D& grid);
double inner_product(const ComplexVector& f, const ComplexVector& g, const Grid2D& grid);
double inner_product(const Field& f, const Field& g, const Grid1D& grid);
double inner_product(const Field& f, const Field& g, const Grid2D& grid);

/// Complex pairing sum f conj(g) * weight.
Complex complex_inner_product(const ComplexVector& f, const ComplexVector& g, const Grid2D& grid);

double l2_norm(const RealVector& f, const Grid1D& grid);
double l2_norm(const ComplexVector& f, const Grid1D& grid);
double l2_norm(const ComplexVector& f, const Grid2D& grid);
/// (||f||^2 + ||f'||^2)^{1/2} with a spectral derivative.
double h1_norm(const RealVector& f, const Grid1D& grid);
/// (integral |f|^q dx)^{1/q}
double lq_norm(const RealVector& f, double q, const Grid1D& grid);

// ---------------------------------------------------------------------------
// Transverse Fourier modes

/// u_n(x) = (1 / 2 pi L) int f(x, y) e^{-i n y / L} dy for |n| < ny / 2.
ComplexVector project_mode(const ComplexVector& f, int n, const Grid2D& grid);
Field project_mode(const Field& f, int n, const Grid2D& grid);

/// All ny transverse coefficients; column k holds mode k in FFT order
/// (k < ny/2 is mode k, k >= ny/2 is mode k - ny).
Eigen::MatrixXcd transverse_modes(const ComplexVector& f, const Grid2D& grid);

/// Inverse of transverse_modes.
ComplexVector reconstruct_from_modes(const Eigen::MatrixXcd& modes, const Grid2D& grid);

/// f(x) g(y-mode n): the product profile(x) * e^{i n y / L}.
ComplexVector extrude(const ComplexVector& profile, const Grid2D& grid);
ComplexVector extrude_cos(const RealVector& profile, int n, const Grid2D& grid);

// ---------------------------------------------------------------------------
// Parity reduction

/// Orthonormal basis of the even (f(x) = f(-x)) subspace of a Grid1D.
///
/// Column k corresponds to representative node k in [0, n/2]: nodes 0 and n/2
/// are self-mirrored, the others are paired with n - k and carry 1/sqrt(2).
class EvenBasis {
 public:
  explicit EvenBasis(std::size_t n);

  std::size_t full_size() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_ / 2 + 1; }
  /// Number of full-grid nodes represented by reduced index k (1 or 2).
  int multiplicity(std::size_t k) const noexcept { return (k == 0 || k == n_ / 2) ? 1 : 2; }

  /// E^T A E, the even-block representation of a reflection-commuting operator.
  Eigen::MatrixXd restrict_symmetric(const Eigen::MatrixXd& a) const;
  /// R A S in nodal coordinates: restriction to representatives after even extension.
  Eigen::MatrixXd restrict_nodal(const Eigen::MatrixXd& a) const;

  RealVector to_reduced(const RealVector& f) const;
  RealVector to_full(const RealVector& c) const;

 private:
  std::size_t n_;
};

/// Symmetrize f(x) -> (f(x) + f(-x)) / 2.
RealVector even_part(const RealVector& f, const Grid1D& grid);

}  // namespace nlslab
