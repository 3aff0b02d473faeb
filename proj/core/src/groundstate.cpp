#include "nlslab/groundstate.hpp"

#include <cmath>
#include <string>

#include "nlslab/error.hpp"

namespace nlslab {

namespace {

constexpr double kTrivialThreshold = 1e-8;

void require_valid(const LineProblem& problem, double omega, double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::domain, "nonlinearity exponent p must be >= 2, got " + std::to_string(p));
  }
  if (!(omega > problem.lambda_star())) {
    throw Error(ErrorKind::domain, "omega = " + std::to_string(omega) +
                                       " must exceed lambda_star = " + std::to_string(problem.lambda_star()));
  }
}

RealVector nonlinear_potential(const RealVector& phi, double p) {
  return phi.array().abs().pow(p - 1.0);
}

}  // namespace

double GroundState::q1(const Grid1D& grid) const { return 0.5 * inner_product(phi, phi, grid); }

RealVector asymptotic_seed(const LinearGround& lg, double omega, double p, const Grid1D& grid) {
  if (!(p > 1.0)) throw Error(ErrorKind::domain, "asymptotic_seed: p must exceed 1");
  if (!(omega > lg.lambda_star)) {
    throw Error(ErrorKind::domain, "asymptotic_seed: omega must exceed lambda_star");
  }
  // ||psi||_{p+1}^{-(p+1)/(p-1)} = (int psi^{p+1})^{-1/(p-1)}
  const double moment = lg.psi_star.array().abs().pow(p + 1.0).sum() * grid.weight();
  const double c = std::pow(moment, -1.0 / (p - 1.0));
  return c * std::pow(omega - lg.lambda_star, 1.0 / (p - 1.0)) * lg.psi_star;
}

RealVector stationary_residual(const LineProblem& problem, const RealVector& phi, double omega, double p) {
  RealVector r = problem.neg_laplacian() * phi;
  r.array() += (omega + problem.potential().array()) * phi.array() -
               phi.array().abs().pow(p - 1.0) * phi.array();
  return r;
}

GroundState solve_ground(const LineProblem& problem, const RealVector& seed, double omega, double p,
                         const NewtonOptions& options) {
  require_valid(problem, omega, p);
  const Grid1D& grid = problem.grid();
  if (static_cast<std::size_t>(seed.size()) != grid.size()) {
    throw Error(ErrorKind::dimension, "solve_ground: seed does not match the grid");
  }
  if (!(options.tol > 0.0)) throw Error(ErrorKind::argument, "solve_ground: tol must be positive");

  const EvenBasis even(grid.size());
  GroundState gs;
  gs.omega = omega;
  gs.p = p;
  gs.phi = even_part(seed, grid);

  auto residual_norm = [&](const RealVector& phi) {
    return l2_norm(stationary_residual(problem, phi, omega, p), grid);
  };

  if (gs.phi.cwiseAbs().maxCoeff() < kTrivialThreshold) {
    throw Error(ErrorKind::trivial_solution, "solve_ground: seed is the zero solution");
  }

  double r = residual_norm(gs.phi);
  gs.residual_history.push_back(r);
  int polish = 0;
  for (int it = 0;; ++it) {
    if (r <= options.tol) {
      // A couple of extra steps buy the last digits when they help; only
      // decreases are accepted below, so this never degrades the state.
      if (polish++ >= 2) break;
    }
    if (it >= options.max_iterations) {
      if (r <= options.tol) break;
      throw NonConvergence("solve_ground: iteration limit reached", r);
    }
    const RealVector f = stationary_residual(problem, gs.phi, omega, p);
    const Eigen::MatrixXd jac = problem.schrodinger(omega, p * nonlinear_potential(gs.phi, p));
    const Eigen::MatrixXd jac_even = even.restrict_symmetric(jac);
    const RealVector step = even.to_full(jac_even.partialPivLu().solve(-even.to_reduced(f)));

    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k <= options.max_halvings; ++k, t *= 0.5) {
      const RealVector trial = gs.phi + t * step;
      const double rt = residual_norm(trial);
      if (rt < r) {
        gs.phi = trial;
        r = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (r <= options.tol) break;
      throw NonConvergence("solve_ground: Newton stagnated", r);
    }
    gs.residual_history.push_back(r);
    gs.iterations = it + 1;
    if (gs.phi.cwiseAbs().maxCoeff() < kTrivialThreshold) {
      throw Error(ErrorKind::trivial_solution, "solve_ground: iteration collapsed to the zero solution");
    }
  }
  gs.residual = r;
  gs.seed_error = h1_norm(gs.phi - asymptotic_seed(problem.linear(), omega, p, grid), grid);
  return gs;
}

GroundState solve_ground(const LineProblem& problem, double omega, double p, const NewtonOptions& options) {
  require_valid(problem, omega, p);
  return solve_ground(problem, asymptotic_seed(problem.linear(), omega, p, problem.grid()), omega, p,
                      options);
}

std::vector<GroundState> continue_in_omega(const LineProblem& problem, double p,
                                           std::span<const double> omegas, const NewtonOptions& options) {
  for (std::size_t i = 1; i < omegas.size(); ++i) {
    if (!(omegas[i] > omegas[i - 1])) {
      throw Error(ErrorKind::argument, "continue_in_omega: omegas must be strictly ascending");
    }
  }
  std::vector<GroundState> states;
  states.reserve(omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    try {
      if (states.empty()) {
        states.push_back(solve_ground(problem, omegas[i], p, options));
      } else {
        states.push_back(solve_ground(problem, states.back().phi, omegas[i], p, options));
      }
    } catch (const NonConvergence& e) {
      throw NonConvergence("continue_in_omega: point " + std::to_string(i) + ": " + e.what(),
                           e.last_residual(), static_cast<int>(i));
    }
  }
  return states;
}

RealVector d_omega_phi(const GroundState& minus, const GroundState& plus) {
  if (minus.phi.size() != plus.phi.size()) {
    throw Error(ErrorKind::dimension, "d_omega_phi: states live on different grids");
  }
  if (minus.p != plus.p) throw Error(ErrorKind::argument, "d_omega_phi: states have different p");
  if (!(plus.omega > minus.omega)) {
    throw Error(ErrorKind::argument, "d_omega_phi: expected omega_minus < omega_plus");
  }
  return (plus.phi - minus.phi) / (plus.omega - minus.omega);
}

}  // namespace nlslab
