#include "doctest.h"

#include <array>
#include <cmath>

#include <nlslab/error.hpp>
#include <nlslab/groundstate.hpp>

#include "oracles.hpp"

using namespace nlslab;

namespace {
const LineProblem& problem() {
  static const LineProblem p(PotentialSpec::poschl_teller(2.0), Grid1D(256, 20.0));
  return p;
}
}  // namespace

TEST_CASE("Newton converges to an even positive state") {
  const GroundState gs = solve_ground(problem(), problem().lambda_star() + 0.05, 3.0);
  CHECK(gs.residual < 1e-10);
  CHECK(gs.phi.minCoeff() > -1e-12);
  const Grid1D& g = problem().grid();
  for (std::size_t j = 0; j < g.size(); ++j) {
    CHECK(gs.phi[static_cast<Eigen::Index>(j)] == doctest::Approx(gs.phi[static_cast<Eigen::Index>(g.mirror(j))]));
  }
  CHECK(gs.linf() == doctest::Approx(gs.phi[static_cast<Eigen::Index>(g.center())]));
  CHECK(stationary_residual(problem(), gs.phi, gs.omega, gs.p).norm() * std::sqrt(g.weight()) ==
        doctest::Approx(gs.residual).epsilon(1e-3));
  CHECK(gs.residual_history.size() >= 1);
}

TEST_CASE("amplitude follows (omega - lambda_star)^{1/(p-1)} ||psi||_{p+1}^{-(p+1)/(p-1)}") {
  for (const double p : {2.0, 3.0, 5.0}) {
    const double eps = 1e-3;
    const GroundState gs = solve_ground(problem(), problem().lambda_star() + eps, p);
    const double c = std::pow(eps / oracle::pt_moment(p), 1.0 / (p - 1.0));
    CHECK(gs.linf() / (c / std::numbers::sqrt2) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(gs.q1(problem().grid()) == doctest::Approx(0.5 * c * c).epsilon(0.05));
  }
}

TEST_CASE("seed error shrinks like (omega - lambda_star)^{1/(p-1) + 1}") {
  const std::array<double, 3> eps{0.005, 0.01, 0.02};
  std::array<double, 3> err{};
  for (std::size_t k = 0; k < eps.size(); ++k) err[k] = solve_ground(problem(), problem().lambda_star() + eps[k], 3.0).seed_error;
  const double slope = std::log(err[2] / err[0]) / std::log(eps[2] / eps[0]);
  CHECK(slope == doctest::Approx(1.5).epsilon(0.1));
}

TEST_CASE("continuation matches cold solves and d_omega_phi is consistent") {
  const double w = problem().lambda_star();
  const std::array<double, 3> omegas{w + 0.01, w + 0.02, w + 0.03};
  const auto states = continue_in_omega(problem(), 3.0, omegas);
  REQUIRE(states.size() == 3);
  const GroundState cold = solve_ground(problem(), omegas[1], 3.0);
  CHECK((states[1].phi - cold.phi).cwiseAbs().maxCoeff() < 1e-9);
  const RealVector d = d_omega_phi(states[0], states[2]);
  // dQ1/domega > 0 along the branch (Vakhitov-Kolokolov slope).
  CHECK(inner_product(d, states[1].phi, problem().grid()) > 0.0);
  const std::array<double, 2> descending{w + 0.02, w + 0.01};
  CHECK_THROWS_AS(continue_in_omega(problem(), 3.0, descending), Error);
}

TEST_CASE("frequencies at or below lambda_star are outside the domain") {
  try {
    solve_ground(problem(), problem().lambda_star() - 0.01, 3.0);
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain);
  }
  CHECK_THROWS_AS(solve_ground(problem(), problem().lambda_star() + 0.01, 1.5), Error);
}

TEST_CASE("the zero seed is rejected and a bad tolerance is an argument error") {
  try {
    solve_ground(problem(), RealVector::Zero(256), problem().lambda_star() + 0.01, 3.0);
    FAIL("expected trivial_solution");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::trivial_solution);
  }
  NewtonOptions bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(solve_ground(problem(), problem().lambda_star() + 0.01, 3.0, bad), Error);
}

TEST_CASE("an iteration cap of one fails with NonConvergence") {
  NewtonOptions tight;
  tight.max_iterations = 1;
  tight.tol = 1e-14;
  CHECK_THROWS_AS(solve_ground(problem(), problem().lambda_star() + 0.2, 3.0, tight), NonConvergence);
}
