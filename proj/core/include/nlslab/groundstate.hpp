#pragma once

#include <span>
#include <vector>

#include "nlslab/potential.hpp"

namespace nlslab {

/// Positive even solution of -phi'' + omega phi + V phi - phi^p = 0.
struct GroundState {
  double omega = 0.0;
  double p = 0.0;
  RealVector phi;
  double residual = 0.0;    ///< L^2 norm of the stationary residual
  double seed_error = 0.0;  ///< H^1 distance to the asymptotic seed at the same omega
  int iterations = 0;
  std::vector<double> residual_history;

  /// Q_1 = 1/2 int phi^2.
  double q1(const Grid1D& grid) const;
  double linf() const { return phi.cwiseAbs().maxCoeff(); }
};

struct NewtonOptions {
  double tol = 1e-10;
  int max_iterations = 60;
  /// Step halvings tried before declaring stagnation.
  int max_halvings = 8;
};

/// c (omega - lambda_star)^{1/(p-1)} psi_star with
/// c = ||psi_star||_{L^{p+1}}^{-(p+1)/(p-1)}.
RealVector asymptotic_seed(const LinearGround& lg, double omega, double p, const Grid1D& grid);

/// The stationary residual -phi'' + omega phi + V phi - |phi|^{p-1} phi.
RealVector stationary_residual(const LineProblem& problem, const RealVector& phi, double omega, double p);

/// Damped Newton from `seed`, symmetrizing every iterate.
GroundState solve_ground(const LineProblem& problem, const RealVector& seed, double omega, double p,
                         const NewtonOptions& options = {});

/// solve_ground seeded by asymptotic_seed.
GroundState solve_ground(const LineProblem& problem, double omega, double p,
                         const NewtonOptions& options = {});

/// Solves along an ascending omega list, each warm-started from the previous
/// state. A failure is rethrown as NonConvergence carrying its index.
std::vector<GroundState> continue_in_omega(const LineProblem& problem, double p,
                                           std::span<const double> omegas,
                                           const NewtonOptions& options = {});

/// Central difference (phi_+ - phi_-) / (omega_+ - omega_-).
RealVector d_omega_phi(const GroundState& minus, const GroundState& plus);

}  // namespace nlslab
