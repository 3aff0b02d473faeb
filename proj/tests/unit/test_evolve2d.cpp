#include "doctest.h"

#include <cmath>

#include <nlslab/error.hpp>
#include <nlslab/evolve2d.hpp>

using namespace nlslab;

namespace {
struct Setup {
  LineProblem problem{PotentialSpec::poschl_teller(2.0), Grid1D(128, 20.0)};
  GroundState gs = solve_ground(problem, problem.lambda_star() + 0.05, 3.0);
  InternalMode mode = internal_mode(assemble(gs, problem));
};
const Setup& setup() {
  static const Setup s;
  return s;
}
}  // namespace

TEST_CASE("the unperturbed line state only rotates its phase") {
  const auto& s = setup();
  const Grid2D grid(s.problem.grid(), 8, 3.0);
  SplitStepIntegrator integ(grid, s.problem.potential(), 3.0, false);
  const ComplexVector u0 = extrude(s.gs.phi.cast<Complex>(), grid);
  ComplexVector u = u0;
  integ.advance(u, 1e-3, 2000);
  // e^{i omega t} phi, up to the O(dt^2) splitting error
  const Complex phase = std::polar(1.0, s.gs.omega * 2.0);
  CHECK((u - phase * u0).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("Strang splitting is time reversible and conserves mass") {
  const auto& s = setup();
  const Grid2D grid(s.problem.grid(), 8, 3.0);
  SplitStepIntegrator integ(grid, s.problem.potential(), 3.0, false);
  const ComplexVector u0 = seed_perturbed(s.gs.phi, s.mode.psi_omega, grid, 1e-2, 1);
  ComplexVector u = u0;
  for (int k = 0; k < 20; ++k) integ.step(u, 5e-3);
  CHECK(integ.mass(u) == doctest::Approx(integ.mass(u0)).epsilon(1e-12));
  for (int k = 0; k < 20; ++k) integ.step(u, -5e-3);
  CHECK((u - u0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("invariants over t in [0, 20] at dt = 1e-3") {
  const auto& s = setup();
  const Grid2D grid(s.problem.grid(), 8, 1.25 * s.mode.critical_period());
  SplitStepIntegrator integ(grid, s.problem.potential(), 3.0, false);
  EvolveConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 20.0;
  cfg.record_every = 1000;
  cfg.omega = s.gs.omega;
  cfg.delta = 1e-5;
  const RealVector line = extrude(s.gs.phi.cast<Complex>(), grid).real();
  const RunRecord rec = evolve(integ, seed_perturbed(s.gs.phi, s.mode.psi_omega, grid, cfg.delta, 1), line, cfg);
  CHECK(rec.rows.size() == 21);
  CHECK(rec.max_mass_drift < 1e-10);
  CHECK(rec.max_energy_drift < 1e-6);
  CHECK(rec.max_action_drift < 1e-6);
}

TEST_CASE("gauge covariance") {
  const auto& s = setup();
  const Grid2D grid(s.problem.grid(), 8, 3.0);
  SplitStepIntegrator integ(grid, s.problem.potential(), 3.0, false);
  const ComplexVector u0 = seed_perturbed(s.gs.phi, s.mode.psi_omega, grid, 1e-2, 1);
  const Complex rot = std::polar(1.0, 0.7);
  ComplexVector a = u0;
  ComplexVector b = rot * u0;
  integ.advance(a, 5e-3, 100);
  integ.advance(b, 5e-3, 100);
  CHECK((b - rot * a).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("advance equals repeated steps") {
  const auto& s = setup();
  const Grid2D grid(s.problem.grid(), 8, 3.0);
  SplitStepIntegrator integ(grid, s.problem.potential(), 3.0, true);
  const ComplexVector u0 = seed_perturbed(s.gs.phi, s.mode.psi_omega, grid, 1e-3, 1);
  ComplexVector a = u0, b = u0;
  integ.advance(a, 1e-2, 10);
  for (int k = 0; k < 10; ++k) integ.step(b, 1e-2);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("energy of the line state matches the 1D functional times the period") {
  const auto& s = setup();
  const double period = 2.0;
  const Grid2D grid(s.problem.grid(), 8, period);
  SplitStepIntegrator integ(grid, s.problem.potential(), 3.0, false);
  const Grid1D& gx = s.problem.grid();
  const RealVector& phi = s.gs.phi;
  const RealVector dphi = differentiate(phi, gx);
  const double e1 = 0.5 * dphi.squaredNorm() * gx.weight() +
                    0.5 * (s.problem.potential().array() * phi.array().square()).sum() * gx.weight() -
                    phi.array().pow(4).sum() * gx.weight() / 4.0;
  CHECK(integ.energy(extrude(phi.cast<Complex>(), grid)) == doctest::Approx(2.0 * std::numbers::pi * period * e1).epsilon(1e-9));
}

TEST_CASE("seeded perturbation lives in the requested mode with unit norm") {
  const auto& s = setup();
  const Grid2D grid(s.problem.grid(), 8, 3.0);
  const ComplexVector base = extrude(s.gs.phi.cast<Complex>(), grid);
  const ComplexVector u = seed_perturbed(s.gs.phi, s.mode.psi_omega, grid, 1e-3, 2);
  CHECK(l2_norm(ComplexVector(u - base), grid) == doctest::Approx(1e-3));
  CHECK(project_mode(ComplexVector(u - base), 1, grid).norm() < 1e-15);
  CHECK_THROWS_AS(seed_perturbed(s.gs.phi, s.mode.psi_omega, grid, 1e-3, 4), Error);
  try {
    seed_perturbed(s.gs.phi, s.mode.psi_omega, grid, 1e-3, 4);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::mode_out_of_range);
  }
}

TEST_CASE("growth fit on a short unstable run") {
  const auto& s = setup();
  const double period = 1.25 * s.mode.critical_period();
  const TransverseGrowth growth(assemble(s.gs, s.problem));
  const TransverseSpectrum ts =
      spectrum_for_period(s.mode, growth, period, minimal_mode_count(period, s.mode.lambda_omega));
  const Grid2D grid(s.problem.grid(), 8, period);
  SplitStepIntegrator integ(grid, s.problem.potential(), 3.0, false);
  EvolveConfig cfg;
  cfg.dt = 1e-2;
  cfg.delta = 1e-6;
  cfg.t_end = std::ceil(escape_time(ts.mu_star, cfg.delta, 1e-4));
  cfg.record_every = 50;
  cfg.omega = s.gs.omega;
  const RealVector line = extrude(s.gs.phi.cast<Complex>(), grid).real();
  const RunRecord rec = evolve(integ, seed_perturbed(s.gs.phi, s.mode.psi_omega, grid, cfg.delta, 1), line, cfg);
  CHECK(rec.max_mass_drift < 1e-10);
  const GrowthFit fit = growth_rate(rec, 1e-4);
  REQUIRE(fit.growth);
  CHECK(fit.mu_fit == doctest::Approx(ts.mu_star).epsilon(0.02));
  CHECK(fit.r2 > 0.999);
}

TEST_CASE("growth fit on a synthetic exponential and on a flat record") {
  RunRecord rec;
  rec.delta = 1e-6;
  for (int k = 0; k <= 200; ++k) {
    RecordRow row;
    row.t = k * 0.5;
    row.m1 = 1e-6 * std::exp(0.1 * row.t);
    rec.rows.push_back(row);
  }
  const GrowthFit fit = growth_rate(rec);
  CHECK(fit.growth);
  CHECK(fit.mu_fit == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(fit.r2 == doctest::Approx(1.0));
  CHECK(fit.t_begin >= std::log(10.0) / 0.1 - 0.5);

  for (auto& row : rec.rows) row.m1 = 1e-6;
  CHECK_FALSE(growth_rate(rec).growth);
  CHECK(escape_time(0.1, 1e-5) == doctest::Approx(std::log(1e3) / 0.1));
  CHECK_THROWS_AS(escape_time(0.0, 1e-5), Error);
}

TEST_CASE("radiation reaching the box edge aborts the run") {
  const auto& s = setup();
  const Grid2D grid(s.problem.grid(), 8, 3.0);
  SplitStepIntegrator integ(grid, s.problem.potential(), 3.0, false);
  // A narrow bump launched far out sits past 0.8 X from the start.
  const RealVector x = s.problem.grid().nodes();
  const RealVector bump = (-(x.array() - 18.0).square()).exp();
  EvolveConfig cfg;
  cfg.t_end = 0.1;
  cfg.dt = 1e-2;
  cfg.record_every = 1;
  try {
    evolve(integ, extrude(bump.cast<Complex>(), grid), extrude(s.gs.phi.cast<Complex>(), grid).real(), cfg);
    FAIL("expected tail_mass");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::tail_mass);
  }
}

TEST_CASE("invalid evolution settings") {
  const auto& s = setup();
  const Grid2D grid(s.problem.grid(), 8, 3.0);
  CHECK_THROWS_AS(SplitStepIntegrator(grid, RealVector::Zero(5), 3.0, false), Error);
  SplitStepIntegrator integ(grid, s.problem.potential(), 3.0, false);
  EvolveConfig cfg;
  cfg.dt = 0.0;
  const ComplexVector u = extrude(s.gs.phi.cast<Complex>(), grid);
  CHECK_THROWS_AS(evolve(integ, u, u.real(), cfg), Error);
}
