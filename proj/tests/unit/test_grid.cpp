#include "doctest.h"

#include <cmath>
#include <sstream>

#include <nlslab/error.hpp>
#include <nlslab/field_io.hpp>
#include <nlslab/grid.hpp>

using namespace nlslab;

TEST_CASE("Grid1D nodes are symmetric under the periodic mirror") {
  const Grid1D g(64, 5.0);
  CHECK(g.spacing() == doctest::Approx(10.0 / 64));
  CHECK(g.node(g.center()) == doctest::Approx(0.0));
  for (std::size_t j = 1; j < g.size(); ++j) CHECK(g.node(g.mirror(j)) == doctest::Approx(-g.node(j)));
  CHECK(g.mirror(0) == 0);
}

TEST_CASE("Grid1D rejects odd sizes and non-positive widths") {
  CHECK_THROWS_AS(Grid1D(63, 5.0), Error);
  CHECK_THROWS_AS(Grid1D(64, 0.0), Error);
}

TEST_CASE("spectral Laplacian of a Gaussian is accurate to rounding") {
  const Grid1D g(256, 20.0);
  const RealVector x = g.nodes();
  const RealVector f = (-x.array().square()).exp();
  const RealVector exact = (4.0 * x.array().square() - 2.0) * f.array();
  CHECK((apply_laplacian(f, g) - exact).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((spectral_laplacian_matrix(g) * f - exact).cwiseAbs().maxCoeff() < 1e-10);
  // The three-point stencil is second order.
  const Grid1D fine(512, 20.0);
  const RealVector xf = fine.nodes();
  const RealVector ff = (-xf.array().square()).exp();
  const RealVector exact_fine = (4.0 * xf.array().square() - 2.0) * ff.array();
  const double coarse_err = (apply_laplacian_fd(f, g) - exact).cwiseAbs().maxCoeff();
  const double fine_err = (apply_laplacian_fd(ff, fine) - exact_fine).cwiseAbs().maxCoeff();
  CHECK(coarse_err / fine_err == doctest::Approx(4.0).epsilon(0.02));
  CHECK((fd_laplacian_matrix(g) * f - apply_laplacian_fd(f, g)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("spectral derivative and norms") {
  const Grid1D g(256, 20.0);
  const RealVector x = g.nodes();
  const RealVector f = x.array().cosh().inverse();
  const RealVector df = -f.array() * x.array().tanh();
  // sech(20) ~ 4e-9 limits the periodic approximation.
  CHECK((differentiate(f, g) - df).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(l2_norm(f, g) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // int sech^4 = 4/3
  CHECK(lq_norm(f, 4.0, g) == doctest::Approx(std::pow(4.0 / 3.0, 0.25)).epsilon(1e-12));
  // |sech'|^2 integrates to 2/3
  CHECK(h1_norm(f, g) == doctest::Approx(std::sqrt(2.0 + 2.0 / 3.0)).epsilon(1e-10));
}

TEST_CASE("transverse modes round-trip and isolate cos(n y / L)") {
  const Grid1D gx(32, 5.0);
  const Grid2D g(gx, 16, 1.7);
  CHECK(g.y_period() == doctest::Approx(2.0 * std::numbers::pi * 1.7));
  CHECK(g.mode_wavenumber(3) == doctest::Approx(3.0 / 1.7));
  const RealVector prof = (-gx.nodes().array().square()).exp();
  const ComplexVector u = extrude_cos(prof, 2, g);
  // cos = (e^{i} + e^{-i}) / 2
  CHECK((project_mode(u, 2, g) - 0.5 * prof.cast<Complex>()).norm() < 1e-12);
  CHECK(project_mode(u, 1, g).norm() < 1e-12);
  CHECK((reconstruct_from_modes(transverse_modes(u, g), g) - u).norm() < 1e-12);
  CHECK(inner_product(u, u, g) == doctest::Approx(std::numbers::pi * 1.7 * prof.squaredNorm() * gx.weight()));
  CHECK_THROWS_AS(project_mode(u, 8, g), Error);
}

TEST_CASE("EvenBasis restriction preserves the even spectrum") {
  const Grid1D g(32, 6.0);
  const EvenBasis even(g.size());
  CHECK(even.size() == 17);
  const RealVector x = g.nodes();
  const RealVector f = (-x.array().square()).exp() + 0.3 * x.array().cos();
  CHECK((even.to_full(even.to_reduced(f)) - f).cwiseAbs().maxCoeff() < 1e-14);
  const Eigen::MatrixXd lap = spectral_laplacian_matrix(g);
  const RealVector direct = lap * f;
  CHECK((even.to_full(even.restrict_symmetric(lap) * even.to_reduced(f)) - direct).cwiseAbs().maxCoeff() < 1e-11);
  const RealVector odd = (x.array() * (std::numbers::pi / 6.0)).sin();
  CHECK(even_part(odd, g).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("NLSF dumps round-trip and reject corrupt input") {
  ComplexVector v(6);
  for (int k = 0; k < 6; ++k) v[k] = Complex(k * 0.5, -k);
  const Field f = Field::from_complex(v, 3, 2);
  std::stringstream buf;
  write_field(buf, f);
  CHECK(buf.str().substr(0, 4) == "NLSF");
  CHECK(buf.str().size() == 4 + 4 + 8 + 1 + 6 * 16);
  const Field back = read_field(buf);
  CHECK(back.nx() == 3);
  CHECK(back.ny() == 2);
  CHECK(back.kind() == FieldKind::complex);
  CHECK(back.values() == v);

  std::stringstream bad("NLSX");
  CHECK_THROWS_AS(read_field(bad), Error);
  std::string text = buf.str();
  text.resize(text.size() - 8);
  std::stringstream truncated(text);
  CHECK_THROWS_AS(read_field(truncated), Error);
}

TEST_CASE("real fields keep a zero imaginary part") {
  const Field f = Field::from_real(RealVector::LinSpaced(4, 0, 1), 4);
  CHECK(f.kind() == FieldKind::real);
  CHECK(f.values().imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK(f.as_complex().kind() == FieldKind::complex);
}
