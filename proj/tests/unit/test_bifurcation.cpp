#include "doctest.h"

#include <cmath>

#include <nlslab/bifurcation.hpp>
#include <nlslab/error.hpp>

#include "oracles.hpp"

using namespace nlslab;

namespace {
const LineProblem& problem() {
  static const LineProblem p(PotentialSpec::poschl_teller(2.0), Grid1D(256, 20.0));
  return p;
}
}  // namespace

TEST_CASE("leading coefficient closed form") {
  CHECK(leading_coefficient(2.0) == doctest::Approx(14.0 * std::numbers::pi / 3.0).epsilon(1e-15));
  CHECK(leading_coefficient(5.0) == doctest::Approx(-2.0 * std::numbers::pi / 3.0).epsilon(1e-15));
  for (const double p : {2.5, 3.0, 4.0, 4.5}) CHECK(leading_coefficient(p) == doctest::Approx(oracle::r_limit(p)));
  CHECK(critical_exponent() == doctest::Approx(oracle::p_critical()));
  CHECK(std::abs(leading_coefficient(critical_exponent())) < 1e-12);
  CHECK_THROWS_AS(leading_coefficient(1.0), Error);
}

TEST_CASE("projected inverse is orthogonal to psi_star and solves the projected equation") {
  for (const double p : {2.0, 3.0, 4.0}) {
    const AuxProjections aux = aux_projections(problem(), p);
    CHECK(aux.orthogonality < 1e-12);
    CHECK(aux.output_orthogonality < 1e-12);
    CHECK(aux.solve_residual < 1e-10);
  }
}

TEST_CASE("cubic second-order integrals match their closed forms") {
  CHECK(second_order_integral(problem(), 3.0) == doctest::Approx(oracle::kCubicSecondOrderIntegral).epsilon(1e-10));
  CHECK(lambda_second_order_coefficient(problem(), 3.0) ==
        doctest::Approx(oracle::kCubicLambdaSecondOrder).epsilon(1e-10));
  CHECK(omega_pp0_leading(problem(), 3.0, problem().lambda_star() + 0.01) ==
        doctest::Approx(oracle::kCubicOmegaPPLeading).epsilon(1e-10));
}

TEST_CASE("regression: second-order integrals for p = 2 and 4") {
  CHECK(second_order_integral(problem(), 2.0) == doctest::Approx(0.02194567609284279).epsilon(1e-9));
  CHECK(second_order_integral(problem(), 4.0) == doctest::Approx(0.024444013388868334).epsilon(1e-9));
}

TEST_CASE("finite-difference derivatives") {
  const double w = problem().lambda_star() + 0.01;
  const LineDerivatives ld = line_derivatives(problem(), 3.0, w, 1e-3);
  CHECK(ld.dlambda_domega == doctest::Approx(2.0).epsilon(0.01));
  // Q1 ~ (eps / m)^{2/(p-1)} / 2 grows linearly in eps for p = 3.
  CHECK(ld.dnorm_domega == doctest::Approx(1.0 / oracle::pt_moment(3.0)).epsilon(0.05));
  CHECK(ld.ground.omega == doctest::Approx(w));
  CHECK_THROWS_AS(line_derivatives(problem(), 3.0, w, 2e-3), Error);
  CHECK_THROWS_AS(line_derivatives(problem(), 3.0, w, 0.0), Error);
  CHECK_THROWS_AS(line_derivatives(problem(), 3.0, problem().lambda_star() - 0.1, 1e-3), Error);
}

TEST_CASE("omega''(0) approaches its leading order and needs L = L_c") {
  const double w = problem().lambda_star() + 0.002;
  const LineDerivatives ld = line_derivatives(problem(), 3.0, w, 2e-4);
  const double lc = ld.mode.critical_period();
  const double wpp = omega_pp0(ld.ground, ld.mode, ld.dlambda_domega, problem(), lc);
  CHECK(wpp / omega_pp0_leading(problem(), 3.0, w) == doctest::Approx(1.0).epsilon(2e-3));
  CHECK_THROWS_AS(omega_pp0(ld.ground, ld.mode, ld.dlambda_domega, problem(), 1.01 * lc), Error);
}

TEST_CASE("regression: bifurcation report for p = 3, omega - lambda_star = 0.01") {
  const BifurcationReport r = bifurcation_report(problem(), 3.0, problem().lambda_star() + 0.01);
  CHECK(r.R == doctest::Approx(43.720485504657148).epsilon(1e-7));
  CHECK(r.omega_pp0 == doctest::Approx(1.0033595979852779).epsilon(1e-7));
  CHECK(r.R_scaled == doctest::Approx(r.R * 0.1));
  CHECK(r.verdict == Verdict::stable);
  CHECK(r.R == doctest::Approx(r_coefficient(r.dlambda_domega, r.L_c, r.omega_pp0, r.dq_domega)));
}

TEST_CASE("omega''(0) is positive and the verdict is stable up to p = 4") {
  const double w = problem().lambda_star() + 1e-3;
  for (const double p : {2.0, 2.5, 3.0, 4.0}) {
    const BifurcationReport r = bifurcation_report(problem(), p, w);
    CHECK(r.omega_pp0 > 0.0);
    CHECK(r.verdict == Verdict::stable);
  }
  CHECK(bifurcation_report(problem(), 5.0, w).verdict == Verdict::unstable);
}

TEST_CASE("R changes sign between p = 4 and p = 4.3") {
  const double w = problem().lambda_star() + 1e-3;
  CHECK(bifurcation_report(problem(), 4.0, w).verdict == Verdict::stable);
  CHECK(bifurcation_report(problem(), 4.3, w).verdict == Verdict::unstable);
  const PStarResult root = find_pstar(problem(), 1e-3, 4.0, 4.3, 1e-2);
  CHECK(root.p == doctest::Approx(oracle::p_critical()).epsilon(0.01));
  CHECK(root.R_lo > 0.0);
  CHECK(root.R_hi < 0.0);
  try {
    find_pstar(problem(), 1e-3, 2.0, 3.0);
    FAIL("expected no_sign_change");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::no_sign_change);
  }
}
