#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>

#include <nlslab/error.hpp>
#include <nlslab/potential.hpp>

#include "oracles.hpp"

using namespace nlslab;

TEST_CASE("Poschl-Teller depth 2: lambda_star = 1 and psi_star = sech / sqrt 2") {
  const LineProblem problem(PotentialSpec::poschl_teller(2.0), Grid1D(256, 20.0));
  const auto& lg = problem.linear();
  CHECK(lg.lambda_star == doctest::Approx(1.0).epsilon(1e-10));
  double err = 0.0;
  for (std::size_t j = 0; j < problem.grid().size(); ++j) {
    err = std::max(err, std::abs(lg.psi_star[static_cast<Eigen::Index>(j)] - oracle::pt_ground(problem.grid().node(j))));
  }
  CHECK(err < 1e-8);
  CHECK(lg.residual < 1e-8);
  // The only bound state: the gap reaches the continuum edge 0.
  CHECK(lg.gap == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("Poschl-Teller depth 6 has bound states -4 and -1") {
  const LineProblem problem(PotentialSpec::poschl_teller(6.0), Grid1D(256, 20.0));
  CHECK(problem.lambda_star() == doctest::Approx(-oracle::pt_bound_state(2.0, 0)).epsilon(1e-9));
  CHECK(problem.linear().gap == doctest::Approx(oracle::pt_bound_state(2.0, 1) - oracle::pt_bound_state(2.0, 0)).epsilon(1e-8));
}

TEST_CASE("finite-difference scheme converges to the same ground state") {
  const LineProblem problem(PotentialSpec::poschl_teller(2.0), Grid1D(1024, 20.0), LaplacianScheme::finite_difference);
  CHECK(problem.lambda_star() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("Gaussian well binds; a barrier does not") {
  const Grid1D g(256, 20.0);
  const LineProblem well(PotentialSpec::gaussian(-1.0, 1.0), g);
  CHECK(well.lambda_star() > 0.0);
  CHECK(well.lambda_star() < 1.0);
  try {
    LineProblem(PotentialSpec::gaussian(1.0, 1.0), g);
    FAIL("expected no_bound_state");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::no_bound_state);
  }
}

TEST_CASE("a box that truncates the potential is a decay violation") {
  const Grid1D g(64, 3.0);
  CHECK(boundary_magnitude(PotentialSpec::poschl_teller(2.0), g) > 1e-3);
  try {
    check_decay(PotentialSpec::poschl_teller(2.0), g);
    FAIL("expected decay_violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::decay_violation);
  }
}

TEST_CASE("decay rate of sech^2 is 2") {
  CHECK(estimate_decay_rate(PotentialSpec::poschl_teller(2.0), Grid1D(512, 20.0)) == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("potential JSON round-trips") {
  const PotentialSpec g = PotentialSpec::gaussian(-1.5, 0.75);
  const PotentialSpec back = PotentialSpec::from_json(g.to_json());
  CHECK(back.family_name() == g.family_name());
  CHECK(back(0.3) == doctest::Approx(g(0.3)));
  CHECK_THROWS_AS(PotentialSpec::from_json("{\"family\": \"square\"}"), Error);
  CHECK_THROWS_AS(PotentialSpec::from_json("not json"), Error);
}

TEST_CASE("tabulated potentials: evenness enforced unless waived") {
  const Grid1D g(64, 10.0);
  const RealVector x = g.nodes();
  const RealVector v = -2.0 * x.array().cosh().inverse().square();
  const auto path = std::filesystem::temp_directory_path() / "nlslab_tab_even.csv";
  {
    std::ofstream out(path);
    out << "x,V\n";
    for (Eigen::Index j = 0; j < x.size(); ++j) out << std::setprecision(17) << x[j] << ',' << v[j] << '\n';
  }
  const PotentialSpec spec = PotentialSpec::load_csv(path);
  CHECK((eval_potential(spec, g) - v).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(eval_potential(spec, Grid1D(32, 10.0)), Error);

  const RealVector tilted = v + 0.01 * x.array().tanh().matrix();
  CHECK_THROWS_AS(PotentialSpec(Tabulated{x, tilted}), Error);
  CHECK_NOTHROW(PotentialSpec(Tabulated{x, tilted}, false));
  std::filesystem::remove(path);
}

TEST_CASE("missing potential table is an io error") {
  try {
    PotentialSpec::load_csv("/nonexistent/table.csv");
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
}
