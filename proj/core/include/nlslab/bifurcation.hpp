#pragma once

#include <utility>

#include "nlslab/linearized.hpp"

namespace nlslab {

/// Line state at omega0 with the omega-derivatives the bifurcation
/// coefficients need. Derivatives use the five-point central stencil on
/// omega0 + {-2, -1, 1, 2} delta.
struct LineDerivatives {
  GroundState ground;
  InternalMode mode;
  double dlambda_domega = 0.0;
  double dnorm_domega = 0.0;  ///< d/domega of int phi^2 dx over the line
};

/// Requires omega0 - 2 delta > lambda_star and 0 < delta <= (omega0 - lambda_star) / 10.
LineDerivatives line_derivatives(const LineProblem& problem, double p, double omega0, double delta,
                                 const NewtonOptions& options = {});

double dlambda_domega(const LineProblem& problem, double p, double omega0, double delta);

/// Pieces of the second-order expansion around lambda_star.
struct AuxProjections {
  RealVector psi_star_p;     ///< ||psi*||_{p+1}^{-(p+1)} psi*^p - psi*
  RealVector projected_inverse;  ///< (P H P)^{-1} psi_star_p with H = -d^2/dx^2 + lambda_star + V
  double orthogonality = 0.0;    ///< |<psi_star_p, psi*>|
  double output_orthogonality = 0.0;
  double solve_residual = 0.0;   ///< ||P H u - psi_star_p||
};

AuxProjections aux_projections(const LineProblem& problem, double p);

/// int psi*^p (P H P)^{-1} psi_star_p dx.
double second_order_integral(const LineProblem& problem, double p);

/// p(2p-1) ||psi*||_{p+1}^{-(p+1)} times second_order_integral: the
/// coefficient of (omega - lambda_star)^2 in lambda_omega.
double lambda_second_order_coefficient(const LineProblem& problem, double p);

/// Leading term p(p+3) (omega0 - lambda_star)^{(p-3)/(p-1)} ||psi*||_{p+1}^{2(p+1)/(p-1)} / 6.
double omega_pp0_leading(const LineProblem& problem, double p, double omega0);

/// omega''(0) at the critical period, reduced to the line by splitting the
/// transverse dependence into y-modes 0 and 2.
/// Requires |L - lambda_omega^{-1/2}| < 1e-8 L.
double omega_pp0(const GroundState& gs, const InternalMode& mode, double dlambda, const LineProblem& problem,
                 double period);

/// c(p) = (-4p^2 + 18p - 6) pi / (3 (p-1)^{3/2}); requires p > 1.
double leading_coefficient(double p);

/// (9 + sqrt 57) / 4, the positive root of c.
double critical_exponent();

enum class Verdict { stable, unstable };
std::string_view to_string(Verdict v);

struct BifurcationReport {
  double omega0 = 0.0;
  double p = 0.0;
  double lambda_star = 0.0;
  double lambda_omega = 0.0;
  double L_c = 0.0;
  double dlambda_domega = 0.0;
  double omega_pp0 = 0.0;
  double dq_domega = 0.0;  ///< derivative of the 2D mass 2 pi L ||phi||^2, L held at L_c
  double R = 0.0;
  double R_scaled = 0.0;   ///< R sqrt(omega0 - lambda_star)
  double leading_coeff = 0.0;
  Verdict verdict = Verdict::stable;
};

/// R = -2 (dlambda/domega) pi L + omega''(0) dq_domega.
double r_coefficient(double dlambda, double period, double omega_pp, double dq);

/// Full report. delta defaults to (omega0 - lambda_star) / 10.
BifurcationReport bifurcation_report(const LineProblem& problem, double p, double omega0, double delta = 0.0,
                                     const NewtonOptions& options = {});

struct PStarResult {
  double p = 0.0;
  int evaluations = 0;
  double R_lo = 0.0;
  double R_hi = 0.0;
};

/// Bisection of p -> R at omega = lambda_star + eps. Throws no_sign_change
/// when R has the same sign at both ends.
PStarResult find_pstar(const LineProblem& problem, double eps, double p_lo, double p_hi, double tol = 1e-3);

}  // namespace nlslab
