#include "nlslab/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "nlslab/error.hpp"

namespace nlslab {

namespace {

using std::numbers::pi;

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorKind::dimension, std::string(what) + ": size " + std::to_string(got) +
                                          " does not match grid size " + std::to_string(want));
  }
}

RealVector fft_wavenumbers(std::size_t n, double scale) {
  RealVector k(static_cast<Eigen::Index>(n));
  const auto half = static_cast<long>(n / 2);
  for (std::size_t j = 0; j < n; ++j) {
    long m = static_cast<long>(j);
    if (m >= half) m -= static_cast<long>(n);
    k[static_cast<Eigen::Index>(j)] = scale * static_cast<double>(m);
  }
  return k;
}

// Periodic Fourier second-derivative matrix on n nodes of [0, 2 pi), scaled.
Eigen::MatrixXd periodic_d2(std::size_t n, double scale) {
  const auto m = static_cast<Eigen::Index>(n);
  const double h = 2.0 * pi / static_cast<double>(n);
  Eigen::MatrixXd d(m, m);
  const double diag = -pi * pi / (3.0 * h * h) - 1.0 / 6.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) {
      if (j == k) {
        d(j, k) = diag;
      } else {
        const auto diff = j - k;
        const double s = std::sin(static_cast<double>(diff) * h / 2.0);
        const double sign = (diff % 2 == 0) ? 1.0 : -1.0;
        d(j, k) = -sign / (2.0 * s * s);
      }
    }
  }
  return d * (scale * scale);
}

ComplexVector spectral_multiply_1d(const ComplexVector& f, const RealVector& symbol) {
  detail::FftPlan plan(static_cast<std::size_t>(f.size()));
  Eigen::Map<ComplexVector> buf(plan.data(), f.size());
  buf = f;
  plan.forward();
  buf.array() *= symbol.array().cast<Complex>();
  plan.backward();
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------

Grid1D::Grid1D(std::size_t n, double half_width) : n_(n), half_width_(half_width) {
  if (n == 0 || n % 2 != 0) {
    throw Error(ErrorKind::argument, "Grid1D: node count must be even and positive, got " +
                                         std::to_string(n));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw Error(ErrorKind::argument, "Grid1D: half width must be positive");
  }
  spacing_ = 2.0 * half_width / static_cast<double>(n);
  nodes_.resize(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    nodes_[static_cast<Eigen::Index>(j)] = -half_width + static_cast<double>(j) * spacing_;
  }
  wavenumbers_ = fft_wavenumbers(n, pi / half_width);
}

Grid2D::Grid2D(Grid1D gx, std::size_t ny, double period_param)
    : gx_(std::move(gx)), ny_(ny), period_(period_param) {
  if (ny == 0 || ny % 2 != 0) {
    throw Error(ErrorKind::argument, "Grid2D: ny must be even and positive");
  }
  if (!(period_param > 0.0) || !std::isfinite(period_param)) {
    throw Error(ErrorKind::argument, "Grid2D: period parameter L must be positive");
  }
  y_nodes_.resize(static_cast<Eigen::Index>(ny));
  for (std::size_t j = 0; j < ny; ++j) {
    y_nodes_[static_cast<Eigen::Index>(j)] = static_cast<double>(j) * y_spacing();
  }
  y_wavenumbers_ = fft_wavenumbers(ny, 1.0 / period_param);
}

double Grid2D::y_period() const { return 2.0 * pi * period_; }

double Grid2D::y_spacing() const { return y_period() / static_cast<double>(ny_); }

// ---------------------------------------------------------------------------

Field::Field(std::size_t nx, std::size_t ny, FieldKind kind)
    : nx_(nx), ny_(ny), kind_(kind), values_(ComplexVector::Zero(static_cast<Eigen::Index>(nx * ny))) {}

Field Field::from_real(const RealVector& values, std::size_t nx, std::size_t ny) {
  require_size(static_cast<std::size_t>(values.size()), nx * ny, "Field::from_real");
  Field f(nx, ny, FieldKind::real);
  f.values_ = values.cast<Complex>();
  return f;
}

Field Field::from_complex(const ComplexVector& values, std::size_t nx, std::size_t ny) {
  require_size(static_cast<std::size_t>(values.size()), nx * ny, "Field::from_complex");
  Field f(nx, ny, FieldKind::complex);
  f.values_ = values;
  return f;
}

Field Field::as_complex() const {
  Field f = *this;
  f.kind_ = FieldKind::complex;
  return f;
}

// ---------------------------------------------------------------------------

RealVector apply_laplacian(const RealVector& f, const Grid1D& grid) {
  require_size(static_cast<std::size_t>(f.size()), grid.size(), "apply_laplacian");
  const RealVector symbol = -grid.wavenumbers().array().square();
  return spectral_multiply_1d(f.cast<Complex>(), symbol).real();
}

ComplexVector apply_laplacian(const ComplexVector& f, const Grid1D& grid) {
  require_size(static_cast<std::size_t>(f.size()), grid.size(), "apply_laplacian");
  const RealVector symbol = -grid.wavenumbers().array().square();
  return spectral_multiply_1d(f, symbol);
}

ComplexVector apply_laplacian(const ComplexVector& f, const Grid2D& grid) {
  require_size(static_cast<std::size_t>(f.size()), grid.size(), "apply_laplacian");
  detail::FftPlan plan(grid.ny(), grid.nx());
  Eigen::Map<ComplexVector> buf(plan.data(), f.size());
  buf = f;
  plan.forward();
  const auto& kx = grid.x().wavenumbers();
  const auto& ky = grid.y_wavenumbers();
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    const double ky2 = ky[static_cast<Eigen::Index>(j)] * ky[static_cast<Eigen::Index>(j)];
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const double kx2 = kx[static_cast<Eigen::Index>(i)] * kx[static_cast<Eigen::Index>(i)];
      buf[static_cast<Eigen::Index>(grid.index(i, j))] *= -(kx2 + ky2);
    }
  }
  plan.backward();
  return buf;
}

Field apply_laplacian(const Field& f, const Grid1D& grid) {
  if (!f.matches(grid)) throw Error(ErrorKind::dimension, "apply_laplacian: field does not match Grid1D");
  if (f.kind() == FieldKind::real) {
    return Field::from_real(apply_laplacian(f.real_part(), grid), grid.size());
  }
  return Field::from_complex(apply_laplacian(f.values(), grid), grid.size());
}

Field apply_laplacian(const Field& f, const Grid2D& grid) {
  if (!f.matches(grid)) throw Error(ErrorKind::dimension, "apply_laplacian: field does not match Grid2D");
  ComplexVector out = apply_laplacian(f.values(), grid);
  if (f.kind() == FieldKind::real) return Field::from_real(out.real(), grid.nx(), grid.ny());
  return Field::from_complex(out, grid.nx(), grid.ny());
}

RealVector apply_laplacian_fd(const RealVector& f, const Grid1D& grid) {
  require_size(static_cast<std::size_t>(f.size()), grid.size(), "apply_laplacian_fd");
  const auto n = f.size();
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
  RealVector out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double left = f[(j + n - 1) % n];
    const double right = f[(j + 1) % n];
    out[j] = (left - 2.0 * f[j] + right) * inv_h2;
  }
  return out;
}

Eigen::MatrixXd spectral_laplacian_matrix(const Grid1D& grid) {
  return periodic_d2(grid.size(), pi / grid.half_width());
}

Eigen::MatrixXd fd_laplacian_matrix(const Grid1D& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    d(j, j) = -2.0 * inv_h2;
    d(j, (j + 1) % n) += inv_h2;
    d(j, (j + n - 1) % n) += inv_h2;
  }
  return d;
}

Eigen::MatrixXd spectral_laplacian_matrix_y(const Grid2D& grid) {
  return periodic_d2(grid.ny(), 1.0 / grid.period_param());
}

RealVector differentiate(const RealVector& f, const Grid1D& grid) {
  require_size(static_cast<std::size_t>(f.size()), grid.size(), "differentiate");
  detail::FftPlan plan(grid.size());
  Eigen::Map<ComplexVector> buf(plan.data(), f.size());
  buf = f.cast<Complex>();
  plan.forward();
  const auto& k = grid.wavenumbers();
  for (Eigen::Index j = 0; j < f.size(); ++j) buf[j] *= Complex(0.0, k[j]);
  buf[static_cast<Eigen::Index>(grid.size() / 2)] = 0.0;
  plan.backward();
  return buf.real();
}

// ---------------------------------------------------------------------------

double inner_product(const RealVector& f, const RealVector& g, const Grid1D& grid) {
  require_size(static_cast<std::size_t>(f.size()), grid.size(), "inner_product");
  require_size(static_cast<std::size_t>(g.size()), grid.size(), "inner_product");
  return f.dot(g) * grid.weight();
}

double inner_product(const ComplexVector& f, const ComplexVector& g, const Grid1D& grid) {
  require_size(static_cast<std::size_t>(f.size()), grid.size(), "inner_product");
  require_size(static_cast<std::size_t>(g.size()), grid.size(), "inner_product");
  // Eigen's dot conjugates its first argument: g.dot(f) = sum conj(g) f.
  return g.dot(f).real() * grid.weight();
}

double inner_product(const ComplexVector& f, const ComplexVector& g, const Grid2D& grid) {
  return complex_inner_product(f, g, grid).real();
}

double inner_product(const Field& f, const Field& g, const Grid1D& grid) {
  if (!f.matches(grid) || !g.matches(grid)) {
    throw Error(ErrorKind::dimension, "inner_product: field does not match Grid1D");
  }
  return inner_product(f.values(), g.values(), grid);
}

double inner_product(const Field& f, const Field& g, const Grid2D& grid) {
  if (!f.matches(grid) || !g.matches(grid)) {
    throw Error(ErrorKind::dimension, "inner_product: field does not match Grid2D");
  }
  return inner_product(f.values(), g.values(), grid);
}

Complex complex_inner_product(const ComplexVector& f, const ComplexVector& g, const Grid2D& grid) {
  require_size(static_cast<std::size_t>(f.size()), grid.size(), "inner_product");
  require_size(static_cast<std::size_t>(g.size()), grid.size(), "inner_product");
  return g.dot(f) * grid.weight();
}

double l2_norm(const RealVector& f, const Grid1D& grid) {
  return std::sqrt(inner_product(f, f, grid));
}

double l2_norm(const ComplexVector& f, const Grid1D& grid) {
  return std::sqrt(inner_product(f, f, grid));
}

double l2_norm(const ComplexVector& f, const Grid2D& grid) {
  return std::sqrt(inner_product(f, f, grid));
}

double h1_norm(const RealVector& f, const Grid1D& grid) {
  const RealVector df = differentiate(f, grid);
  return std::sqrt(inner_product(f, f, grid) + inner_product(df, df, grid));
}

double lq_norm(const RealVector& f, double q, const Grid1D& grid) {
  require_size(static_cast<std::size_t>(f.size()), grid.size(), "lq_norm");
  return std::pow(f.array().abs().pow(q).sum() * grid.weight(), 1.0 / q);
}

// ---------------------------------------------------------------------------

Eigen::MatrixXcd transverse_modes(const ComplexVector& f, const Grid2D& grid) {
  require_size(static_cast<std::size_t>(f.size()), grid.size(), "transverse_modes");
  const auto nx = static_cast<Eigen::Index>(grid.nx());
  const auto ny = static_cast<Eigen::Index>(grid.ny());
  Eigen::MatrixXcd modes(nx, ny);
  detail::FftPlan plan(grid.ny());
  Eigen::Map<ComplexVector> buf(plan.data(), ny);
  const double inv = 1.0 / static_cast<double>(ny);
  for (Eigen::Index i = 0; i < nx; ++i) {
    for (Eigen::Index j = 0; j < ny; ++j) buf[j] = f[j * nx + i];
    plan.forward();
    for (Eigen::Index j = 0; j < ny; ++j) modes(i, j) = buf[j] * inv;
  }
  return modes;
}

ComplexVector reconstruct_from_modes(const Eigen::MatrixXcd& modes, const Grid2D& grid) {
  const auto nx = static_cast<Eigen::Index>(grid.nx());
  const auto ny = static_cast<Eigen::Index>(grid.ny());
  if (modes.rows() != nx || modes.cols() != ny) {
    throw Error(ErrorKind::dimension, "reconstruct_from_modes: shape mismatch");
  }
  ComplexVector f(nx * ny);
  detail::FftPlan plan(grid.ny());
  Eigen::Map<ComplexVector> buf(plan.data(), ny);
  for (Eigen::Index i = 0; i < nx; ++i) {
    for (Eigen::Index j = 0; j < ny; ++j) buf[j] = modes(i, j);
    plan.backward();
    for (Eigen::Index j = 0; j < ny; ++j) f[j * nx + i] = buf[j] * static_cast<double>(ny);
  }
  return f;
}

ComplexVector project_mode(const ComplexVector& f, int n, const Grid2D& grid) {
  require_size(static_cast<std::size_t>(f.size()), grid.size(), "project_mode");
  const int half = static_cast<int>(grid.ny() / 2);
  if (n <= -half || n >= half) {
    throw Error(ErrorKind::mode_out_of_range,
                "project_mode: |n| = " + std::to_string(std::abs(n)) + " must be below ny/2 = " +
                    std::to_string(half));
  }
  const auto nx = static_cast<Eigen::Index>(grid.nx());
  const auto ny = static_cast<Eigen::Index>(grid.ny());
  ComplexVector phase(ny);
  for (Eigen::Index j = 0; j < ny; ++j) {
    const double angle = -2.0 * pi * static_cast<double>(n) * static_cast<double>(j) / static_cast<double>(ny);
    phase[j] = std::polar(1.0 / static_cast<double>(ny), angle);
  }
  ComplexVector out = ComplexVector::Zero(nx);
  for (Eigen::Index j = 0; j < ny; ++j) out += f.segment(j * nx, nx) * phase[j];
  return out;
}

Field project_mode(const Field& f, int n, const Grid2D& grid) {
  if (!f.matches(grid)) throw Error(ErrorKind::dimension, "project_mode: field does not match Grid2D");
  return Field::from_complex(project_mode(f.values(), n, grid), grid.nx());
}

ComplexVector extrude(const ComplexVector& profile, const Grid2D& grid) {
  require_size(static_cast<std::size_t>(profile.size()), grid.nx(), "extrude");
  const auto nx = static_cast<Eigen::Index>(grid.nx());
  ComplexVector out(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t j = 0; j < grid.ny(); ++j) out.segment(static_cast<Eigen::Index>(j) * nx, nx) = profile;
  return out;
}

ComplexVector extrude_cos(const RealVector& profile, int n, const Grid2D& grid) {
  require_size(static_cast<std::size_t>(profile.size()), grid.nx(), "extrude_cos");
  const auto nx = static_cast<Eigen::Index>(grid.nx());
  ComplexVector out(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    const double c = std::cos(n * grid.y_nodes()[static_cast<Eigen::Index>(j)] / grid.period_param());
    out.segment(static_cast<Eigen::Index>(j) * nx, nx) = (profile * c).cast<Complex>();
  }
  return out;
}

// ---------------------------------------------------------------------------

EvenBasis::EvenBasis(std::size_t n) : n_(n) {
  if (n == 0 || n % 2 != 0) throw Error(ErrorKind::argument, "EvenBasis: size must be even");
}

Eigen::MatrixXd EvenBasis::restrict_symmetric(const Eigen::MatrixXd& a) const {
  const auto n = static_cast<Eigen::Index>(n_);
  const auto m = static_cast<Eigen::Index>(size());
  if (a.rows() != n || a.cols() != n) throw Error(ErrorKind::dimension, "EvenBasis: operator shape");
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd ae(n, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    if (multiplicity(static_cast<std::size_t>(k)) == 1) {
      ae.col(k) = a.col(k);
    } else {
      ae.col(k) = (a.col(k) + a.col(n - k)) * r;
    }
  }
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    if (multiplicity(static_cast<std::size_t>(k)) == 1) {
      out.row(k) = ae.row(k);
    } else {
      out.row(k) = (ae.row(k) + ae.row(n - k)) * r;
    }
  }
  return out;
}

Eigen::MatrixXd EvenBasis::restrict_nodal(const Eigen::MatrixXd& a) const {
  const auto n = static_cast<Eigen::Index>(n_);
  const auto m = static_cast<Eigen::Index>(size());
  if (a.rows() != n || a.cols() != n) throw Error(ErrorKind::dimension, "EvenBasis: operator shape");
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    if (multiplicity(static_cast<std::size_t>(k)) == 1) {
      out.col(k) = a.col(k).head(m);
    } else {
      out.col(k) = (a.col(k) + a.col(n - k)).head(m);
    }
  }
  return out;
}

RealVector EvenBasis::to_reduced(const RealVector& f) const {
  const auto n = static_cast<Eigen::Index>(n_);
  const auto m = static_cast<Eigen::Index>(size());
  RealVector c(m);
  const double r = 1.0 / std::sqrt(2.0);
  for (Eigen::Index k = 0; k < m; ++k) {
    c[k] = multiplicity(static_cast<std::size_t>(k)) == 1 ? f[k] : (f[k] + f[n - k]) * r;
  }
  return c;
}

RealVector EvenBasis::to_full(const RealVector& c) const {
  const auto n = static_cast<Eigen::Index>(n_);
  const auto m = static_cast<Eigen::Index>(size());
  RealVector f(n);
  const double r = 1.0 / std::sqrt(2.0);
  for (Eigen::Index k = 0; k < m; ++k) {
    if (multiplicity(static_cast<std::size_t>(k)) == 1) {
      f[k] = c[k];
    } else {
      f[k] = c[k] * r;
      f[n - k] = c[k] * r;
    }
  }
  return f;
}

RealVector even_part(const RealVector& f, const Grid1D& grid) {
  require_size(static_cast<std::size_t>(f.size()), grid.size(), "even_part");
  RealVector out(f.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto a = static_cast<Eigen::Index>(j);
    const auto b = static_cast<Eigen::Index>(grid.mirror(j));
    out[a] = 0.5 * (f[a] + f[b]);
  }
  return out;
}

}  // namespace nlslab
