#include "nlslab/bifurcation.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "nlslab/error.hpp"

namespace nlslab {

namespace {

constexpr double kPhiFloor = 1e-14;

double stencil5(const std::array<double, 5>& f, double delta) {
  return (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * delta);
}

// <g, A^{-1} g> for an even g, solved on the even block.
double even_quadratic_form(const Eigen::MatrixXd& a, const RealVector& g, const Grid1D& grid) {
  const EvenBasis even(grid.size());
  const RealVector gr = even.to_reduced(g);
  const RealVector y = even.restrict_symmetric(a).partialPivLu().solve(gr);
  return gr.dot(y) * grid.weight();
}

}  // namespace

LineDerivatives line_derivatives(const LineProblem& problem, double p, double omega0, double delta,
                                 const NewtonOptions& options) {
  const double eps = omega0 - problem.lambda_star();
  if (!(eps > 0.0)) throw Error(ErrorKind::domain, "line_derivatives: omega0 must exceed lambda_star");
  if (!(delta > 0.0) || delta > eps / 10.0 * (1.0 + 1e-12)) {
    throw Error(ErrorKind::argument, "line_derivatives: delta must lie in (0, (omega0 - lambda_star) / 10]");
  }
  std::array<double, 5> omegas{};
  for (int k = 0; k < 5; ++k) omegas[static_cast<std::size_t>(k)] = omega0 + (k - 2) * delta;
  const auto states = continue_in_omega(problem, p, omegas, options);

  std::array<double, 5> lambdas{};
  std::array<double, 5> norms{};
  LineDerivatives out;
  for (std::size_t k = 0; k < 5; ++k) {
    const InternalMode mode = internal_mode(assemble(states[k], problem));
    lambdas[k] = mode.lambda_omega;
    norms[k] = inner_product(states[k].phi, states[k].phi, problem.grid());
    if (k == 2) out.mode = mode;
  }
  out.ground = states[2];
  out.dlambda_domega = stencil5(lambdas, delta);
  out.dnorm_domega = stencil5(norms, delta);
  return out;
}

double dlambda_domega(const LineProblem& problem, double p, double omega0, double delta) {
  return line_derivatives(problem, p, omega0, delta).dlambda_domega;
}

// ---------------------------------------------------------------------------

AuxProjections aux_projections(const LineProblem& problem, double p) {
  if (!(p > 1.0)) throw Error(ErrorKind::domain, "aux_projections: p must exceed 1");
  const Grid1D& grid = problem.grid();
  const LinearGround& lg = problem.linear();
  const RealVector& psi = lg.psi_star;
  const double moment = psi.array().abs().pow(p + 1.0).sum() * grid.weight();

  AuxProjections aux;
  aux.psi_star_p = psi.array().abs().pow(p) / moment - psi.array();
  aux.orthogonality = std::abs(inner_product(aux.psi_star_p, psi, grid));

  // Bordered system [[H, psi], [psi^T, 0]]: the solution is orthogonal to psi
  // and H u differs from the right-hand side only along psi.
  const Eigen::MatrixXd h = problem.schrodinger(lg.lambda_star);
  const Eigen::Index n = h.rows();
  Eigen::MatrixXd bordered = Eigen::MatrixXd::Zero(n + 1, n + 1);
  bordered.topLeftCorner(n, n) = h;
  bordered.block(0, n, n, 1) = psi;
  bordered.block(n, 0, 1, n) = psi.transpose();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs.head(n) = aux.psi_star_p;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bordered);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    throw Error(ErrorKind::numerical_singularity, "aux_projections: projected operator is singular");
  }
  aux.projected_inverse = lu.solve(rhs).head(n);
  aux.output_orthogonality = std::abs(inner_product(aux.projected_inverse, psi, grid));

  RealVector image = h * aux.projected_inverse;
  image -= inner_product(image, psi, grid) * psi;
  aux.solve_residual = l2_norm(RealVector(image - aux.psi_star_p), grid);
  return aux;
}

double second_order_integral(const LineProblem& problem, double p) {
  const AuxProjections aux = aux_projections(problem, p);
  const RealVector psi_p = problem.linear().psi_star.array().abs().pow(p);
  return inner_product(psi_p, aux.projected_inverse, problem.grid());
}

double lambda_second_order_coefficient(const LineProblem& problem, double p) {
  const double moment = problem.linear().psi_star.array().abs().pow(p + 1.0).sum() * problem.grid().weight();
  return p * (2.0 * p - 1.0) / moment * second_order_integral(problem, p);
}

double omega_pp0_leading(const LineProblem& problem, double p, double omega0) {
  const double eps = omega0 - problem.lambda_star();
  if (!(eps > 0.0) || !(p > 1.0)) throw Error(ErrorKind::domain, "omega_pp0_leading: need p > 1, omega0 > lambda_star");
  const double moment = problem.linear().psi_star.array().abs().pow(p + 1.0).sum() * problem.grid().weight();
  return p * (p + 3.0) / 6.0 * std::pow(eps, (p - 3.0) / (p - 1.0)) * std::pow(moment, 2.0 / (p - 1.0));
}

double omega_pp0(const GroundState& gs, const InternalMode& mode, double dlambda, const LineProblem& problem,
                 double period) {
  const double lc = mode.critical_period();
  if (!(std::abs(period - lc) < 1e-8 * period)) {
    throw Error(ErrorKind::argument, "omega_pp0: L = " + std::to_string(period) +
                                         " is not the critical period " + std::to_string(lc));
  }
  const Grid1D& grid = problem.grid();
  const double p = gs.p;
  const double pi_l = std::numbers::pi * period;
  const RealVector phi = gs.phi.cwiseMax(kPhiFloor);
  const RealVector psi2 = mode.psi_omega.array().square();
  const RealVector g = phi.array().pow(p - 2.0) * psi2.array();

  const OperatorAssembly assembly = assemble(gs, problem);
  Eigen::MatrixXd shifted = assembly.l_plus;
  shifted.diagonal().array() += 4.0 / (period * period);
  const double mode0 = even_quadratic_form(assembly.l_plus, g, grid);
  const double mode2 = even_quadratic_form(shifted, g, grid);
  const double i1 = 0.5 * pi_l * mode0 + 0.25 * pi_l * mode2;

  double i2 = 0.0;
  if (p != 2.0) {
    const RealVector w = phi.array().pow(p - 3.0) * psi2.array().square();
    i2 = 0.75 * pi_l * w.sum() * grid.weight();
  }
  const double denom = dlambda * pi_l;
  return -p * p * (p - 1.0) * (p - 1.0) * i1 / denom - p * (p - 1.0) * (p - 2.0) * i2 / (3.0 * denom);
}

double leading_coefficient(double p) {
  if (!(p > 1.0)) throw Error(ErrorKind::domain, "leading_coefficient: p must exceed 1");
  return (-4.0 * p * p + 18.0 * p - 6.0) * std::numbers::pi / (3.0 * std::pow(p - 1.0, 1.5));
}

double critical_exponent() { return (9.0 + std::sqrt(57.0)) / 4.0; }

std::string_view to_string(Verdict v) { return v == Verdict::stable ? "stable" : "unstable"; }

double r_coefficient(double dlambda, double period, double omega_pp, double dq) {
  return -2.0 * dlambda * std::numbers::pi * period + omega_pp * dq;
}

BifurcationReport bifurcation_report(const LineProblem& problem, double p, double omega0, double delta,
                                     const NewtonOptions& options) {
  const double eps = omega0 - problem.lambda_star();
  if (!(eps > 0.0)) throw Error(ErrorKind::domain, "bifurcation_report: omega0 must exceed lambda_star");
  if (delta == 0.0) delta = eps / 10.0;
  const LineDerivatives ld = line_derivatives(problem, p, omega0, delta, options);

  BifurcationReport r;
  r.omega0 = omega0;
  r.p = p;
  r.lambda_star = problem.lambda_star();
  r.lambda_omega = ld.mode.lambda_omega;
  r.L_c = ld.mode.critical_period();
  r.dlambda_domega = ld.dlambda_domega;
  r.omega_pp0 = omega_pp0(ld.ground, ld.mode, ld.dlambda_domega, problem, r.L_c);
  r.dq_domega = 2.0 * std::numbers::pi * r.L_c * ld.dnorm_domega;
  r.R = r_coefficient(r.dlambda_domega, r.L_c, r.omega_pp0, r.dq_domega);
  r.R_scaled = r.R * std::sqrt(eps);
  r.leading_coeff = leading_coefficient(p);
  r.verdict = r.R > 0.0 ? Verdict::stable : Verdict::unstable;
  return r;
}

PStarResult find_pstar(const LineProblem& problem, double eps, double p_lo, double p_hi, double tol) {
  if (!(p_lo < p_hi) || !(p_lo >= 2.0)) throw Error(ErrorKind::argument, "find_pstar: need 2 <= p_lo < p_hi");
  if (!(tol > 0.0)) throw Error(ErrorKind::argument, "find_pstar: tol must be positive");
  const double omega0 = problem.lambda_star() + eps;
  PStarResult out;
  auto r_at = [&](double p) {
    ++out.evaluations;
    return bifurcation_report(problem, p, omega0).R;
  };
  double r_lo = r_at(p_lo);
  double r_hi = r_at(p_hi);
  out.R_lo = r_lo;
  out.R_hi = r_hi;
  if (!(r_lo * r_hi < 0.0)) {
    throw Error(ErrorKind::no_sign_change, "find_pstar: R has the same sign at p = " + std::to_string(p_lo) +
                                               " and p = " + std::to_string(p_hi));
  }
  while (p_hi - p_lo > tol) {
    const double mid = 0.5 * (p_lo + p_hi);
    const double r_mid = r_at(mid);
    if ((r_mid > 0.0) == (r_lo > 0.0)) {
      p_lo = mid;
      r_lo = r_mid;
    } else {
      p_hi = mid;
    }
  }
  out.p = 0.5 * (p_lo + p_hi);
  return out;
}

}  // namespace nlslab
