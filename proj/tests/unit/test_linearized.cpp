#include "doctest.h"

#include <cmath>

#include <nlslab/error.hpp>
#include <nlslab/linearized.hpp>

using namespace nlslab;

namespace {
struct Setup {
  LineProblem problem{PotentialSpec::poschl_teller(2.0), Grid1D(256, 20.0)};
  GroundState gs = solve_ground(problem, problem.lambda_star() + 0.01, 3.0);
  OperatorAssembly assembly = assemble(gs, problem);
  InternalMode mode = internal_mode(assembly);
  TransverseGrowth growth{assembly};
};
const Setup& setup() {
  static const Setup s;
  return s;
}
}  // namespace

TEST_CASE("L- annihilates phi and L+ is symmetric") {
  const auto& s = setup();
  CHECK((s.assembly.l_minus * s.gs.phi).norm() / s.gs.phi.norm() < 1e-8);
  CHECK(asymmetry(s.assembly.l_plus) < 1e-12);
  CHECK(min_eigenvalue(s.assembly.l_minus) == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("internal mode: lambda_omega ~ (p - 1)(omega - lambda_star)") {
  const auto& s = setup();
  CHECK(s.mode.lambda_omega / 0.01 == doctest::Approx(2.0).epsilon(0.01));
  CHECK(s.mode.next_eigenvalue > 0.5);
  CHECK(s.mode.psi_omega.minCoeff() > -1e-10);
  CHECK(l2_norm(s.mode.psi_omega, s.problem.grid()) == doctest::Approx(1.0));
  CHECK(s.mode.critical_period() == doctest::Approx(1.0 / std::sqrt(s.mode.lambda_omega)));
}

TEST_CASE("the growth rate vanishes exactly at a^2 = lambda_omega") {
  const auto& s = setup();
  const double root = std::sqrt(s.mode.lambda_omega);
  CHECK(s.growth.growth(0.5 * root) > 0.0);
  CHECK(s.growth.growth(1.01 * root) == 0.0);
  CHECK(s.growth.growth(3.0 * root) == 0.0);
  const double a0 = growth_cutoff(s.growth, 0.5 * root, 2.0 * root);
  CHECK(std::abs(a0 * a0 - s.mode.lambda_omega) / s.mode.lambda_omega < 1e-6);
  CHECK_THROWS_AS(growth_cutoff(s.growth, 1.5 * root, 2.0 * root), Error);
  CHECK_THROWS_AS(s.growth.growth(-1.0), Error);
}

TEST_CASE("negative directions: one for L+ + a^2 below the cutoff, none above") {
  const auto& s = setup();
  const double root = std::sqrt(s.mode.lambda_omega);
  CHECK(s.growth.negative_counts(0.5 * root) == std::pair<int, int>{1, 0});
  CHECK(s.growth.negative_counts(1.5 * root) == std::pair<int, int>{0, 0});
}

TEST_CASE("inverse-K growth agrees with the non-symmetric product eigensolve") {
  const auto& s = setup();
  const double root = std::sqrt(s.mode.lambda_omega);
  for (const double f : {0.1, 0.4, 0.7, 0.95}) {
    const ProductSpectrum ps = product_spectrum(s.assembly, f * root);
    CHECK(ps.mu == doctest::Approx(s.growth.growth(f * root)).epsilon(1e-7));
    CHECK(ps.negative_real_count == 1);
  }
  CHECK(product_spectrum(s.assembly, 1.5 * root).mu == 0.0);
  CHECK_THROWS_AS(product_spectrum(s.assembly, 0.0), Error);
}

TEST_CASE("mode tables: unstable count obeys 1 + 2 L sqrt(lambda_omega)") {
  const auto& s = setup();
  for (const double ratio : {0.8, 1.25, 3.0, 5.5}) {
    const double period = ratio * s.mode.critical_period();
    const TransverseSpectrum ts =
        spectrum_for_period(s.mode, s.growth, period, minimal_mode_count(period, s.mode.lambda_omega));
    CHECK(ts.unstable_count <= ts.count_bound);
    CHECK(ts.stable == (ratio < 1.0));
    if (!ts.stable) {
      CHECK(ts.mu_star > 0.0);
      CHECK(ts.chi_mode >= 1);
      CHECK(ts.mode_table[static_cast<std::size_t>(ts.chi_mode)].mu == ts.mu_star);
    }
  }
  CHECK_THROWS_AS(spectrum_for_period(s.mode, s.growth, 3.0 * s.mode.critical_period(), 1), Error);
  CHECK_THROWS_AS(spectrum_for_period(s.mode, s.growth, -1.0, 5), Error);
}

TEST_CASE("mu curve sampling") {
  const auto& s = setup();
  const auto curve = sample_mu_curve(s.growth, 0.3, 7);
  REQUIRE(curve.size() == 7);
  CHECK(curve.front().first == 0.0);
  CHECK(curve.back().first == doctest::Approx(0.3));
  CHECK_THROWS_AS(sample_mu_curve(s.growth, 0.3, 1), Error);
}

TEST_CASE("L+ is coercive on the complement of phi, not on the whole space") {
  const auto& s = setup();
  CHECK(coercivity_check(s.assembly) > 0.0);
  CHECK(coercivity_check(s.assembly, false) == doctest::Approx(-s.mode.lambda_omega).epsilon(1e-8));
}

TEST_CASE("assembly rejects unconverged states and mismatched profiles") {
  const auto& s = setup();
  GroundState rough = s.gs;
  rough.residual = 1e-3;
  CHECK_THROWS_AS(assemble(rough, s.problem), Error);
  CHECK_THROWS_AS(assemble_profile(RealVector::Ones(10), 1.0, 3.0, s.problem), Error);
}

TEST_CASE("frequencies far from lambda_star break the single-negative-eigenvalue regime") {
  const LineProblem deep(PotentialSpec::poschl_teller(2.0), Grid1D(256, 20.0));
  const GroundState gs = solve_ground(deep, deep.lambda_star() + 0.01, 3.0);
  // A profile that is zero gives L+ = -Lap + omega + V > 0: no internal mode.
  try {
    internal_mode(assemble_profile(RealVector::Zero(256), gs.omega, 3.0, deep));
    FAIL("expected spectral_assumption");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::spectral_assumption);
  }
}
