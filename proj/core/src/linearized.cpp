#include "nlslab/linearized.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "nlslab/error.hpp"

namespace nlslab {

namespace {

// Eigenvalues of L- + a^2 at or below this are treated as its kernel.
constexpr double kKernelTolerance = 1e-8;

}  // namespace

OperatorAssembly assemble_profile(const RealVector& phi, double omega, double p, const LineProblem& problem) {
  if (static_cast<std::size_t>(phi.size()) != problem.grid().size()) {
    throw Error(ErrorKind::dimension, "assemble: profile does not match the problem grid");
  }
  const RealVector nl = phi.array().abs().pow(p - 1.0);
  OperatorAssembly out{problem.schrodinger(omega, p * nl), problem.schrodinger(omega, nl), problem.grid(), phi,
                       omega, p};
  return out;
}

OperatorAssembly assemble(const GroundState& gs, const LineProblem& problem) {
  if (!(gs.residual < 1e-8)) {
    throw Error(ErrorKind::argument,
                "assemble: ground state residual " + std::to_string(gs.residual) + " is not below 1e-8");
  }
  return assemble_profile(gs.phi, gs.omega, gs.p, problem);
}

double InternalMode::critical_period() const { return 1.0 / std::sqrt(lambda_omega); }

InternalMode internal_mode(const OperatorAssembly& assembly) {
  const SymmetricEigen eig = lowest_eigenpairs(assembly.l_plus, 2);
  const double e0 = eig.values[0];
  const double e1 = eig.values[1];
  if (!(e0 < 0.0)) {
    throw Error(ErrorKind::spectral_assumption, "L+ has no negative eigenvalue (lowest " + std::to_string(e0) + ")");
  }
  if (!(e1 > 1e-8)) {
    throw Error(ErrorKind::spectral_assumption,
                "L+ second eigenvalue " + std::to_string(e1) + " is not positive: omega is outside the regime");
  }
  InternalMode mode;
  mode.lambda_omega = -e0;
  mode.next_eigenvalue = e1;
  mode.psi_omega = eig.vectors.col(0);
  if (mode.psi_omega.sum() < 0.0) mode.psi_omega = -mode.psi_omega;
  mode.psi_omega /= l2_norm(mode.psi_omega, assembly.grid);
  return mode;
}

// ---------------------------------------------------------------------------

// Both operators commute with x -> -x. On the odd block L+ + a^2 is positive
// (the only negative eigenvalue of L+ is even), so no growth lives there and
// the even block carries the whole computation.
TransverseGrowth::TransverseGrowth(const OperatorAssembly& assembly) {
  const EvenBasis even(assembly.grid.size());
  plus_ = all_eigenpairs(even.restrict_symmetric(assembly.l_plus));
  minus_ = all_eigenpairs(even.restrict_symmetric(assembly.l_minus));
  overlap_ = minus_.vectors.transpose() * plus_.vectors;
}

double TransverseGrowth::growth(double a) const {
  if (!(a >= 0.0)) throw Error(ErrorKind::argument, "transverse_growth: a must be >= 0");
  const double a2 = a * a;
  if (minus_.values[0] + a2 < -kKernelTolerance) {
    throw Error(ErrorKind::model, "L- + a^2 has a negative eigenvalue " + std::to_string(minus_.values[0] + a2));
  }
  const Eigen::Index n = plus_.values.size();
  // (L+ + a^2)^{-1} in the L+ eigenbasis. An exact zero means the kernel of the
  // critical wavenumber, where mu vanishes.
  Eigen::VectorXd inv_plus(n);
  const double scale = plus_.values.cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double e = plus_.values[k] + a2;
    if (std::abs(e) <= 1e-15 * scale) return 0.0;
    inv_plus[k] = 1.0 / e;
  }
  // Rows of the overlap for the range of L- + a^2, scaled by M^{-1}.
  std::vector<Eigen::Index> keep;
  keep.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (minus_.values[i] + a2 > kKernelTolerance) keep.push_back(i);
  }
  const auto m = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd x(m, n);
  for (Eigen::Index r = 0; r < m; ++r) {
    x.row(r) = overlap_.row(keep[static_cast<std::size_t>(r)]) /
               std::sqrt(minus_.values[keep[static_cast<std::size_t>(r)]] + a2);
  }
  Eigen::MatrixXd inverse_k(m, m);
  inverse_k.noalias() = x * inv_plus.asDiagonal() * x.transpose();
  const double nu = min_eigenvalue(inverse_k);
  if (nu >= 0.0) return 0.0;
  return 1.0 / std::sqrt(-nu);
}

std::pair<int, int> TransverseGrowth::negative_counts(double a) const {
  const double a2 = a * a;
  int plus = 0;
  int minus = 0;
  for (Eigen::Index k = 0; k < plus_.values.size(); ++k) {
    if (plus_.values[k] + a2 < -kKernelTolerance) ++plus;
    if (minus_.values[k] + a2 < -kKernelTolerance) ++minus;
  }
  return {plus, minus};
}

double transverse_growth(const OperatorAssembly& assembly, double a) {
  return TransverseGrowth(assembly).growth(a);
}

ProductSpectrum product_spectrum(const OperatorAssembly& assembly, double a) {
  if (!(a > 0.0)) throw Error(ErrorKind::argument, "product_spectrum: a must be positive");
  const EvenBasis even(assembly.grid.size());
  const double a2 = a * a;
  Eigen::MatrixXd lm = even.restrict_nodal(assembly.l_minus);
  Eigen::MatrixXd lp = even.restrict_nodal(assembly.l_plus);
  lm.diagonal().array() += a2;
  lp.diagonal().array() += a2;
  // The eigenvalues of (L+ + a^2)^{-1} (L- + a^2)^{-1} are the reciprocals of
  // those of (L- + a^2)(L+ + a^2); -1/mu^2 is then the dominant one instead of
  // a tiny one buried under the Laplacian's scale.
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu_plus(lp);
  const Eigen::MatrixXd inverse = lu_plus.solve(lm.partialPivLu().inverse());
  Eigen::EigenSolver<Eigen::MatrixXd> solver(inverse, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical_singularity, "product_spectrum: eigensolver failed");
  }
  const Eigen::VectorXcd ev = solver.eigenvalues();
  ProductSpectrum out;
  Eigen::Index arg = 0;
  double most_negative = 0.0;
  double scale = 0.0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    scale = std::max(scale, std::abs(ev[k]));
    if (ev[k].real() < most_negative) {
      most_negative = ev[k].real();
      arg = k;
    }
  }
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev[k].real() < -1e-12 * scale) ++out.negative_real_count;
  }
  out.max_abs_imag = ev.imag().cwiseAbs().maxCoeff();
  out.min_real = most_negative < 0.0 ? 1.0 / most_negative : 0.0;
  if (most_negative < 0.0 && std::abs(ev[arg].imag()) <= 1e-9 * std::abs(ev[arg].real())) {
    out.mu = std::sqrt(-out.min_real);
  }
  return out;
}

// ---------------------------------------------------------------------------

int minimal_mode_count(double period, double lambda_omega) {
  return static_cast<int>(std::ceil(period * std::sqrt(lambda_omega))) + 1;
}

TransverseSpectrum spectrum_for_period(const InternalMode& mode, const TransverseGrowth& growth, double period,
                                       int n_max) {
  if (!(period > 0.0)) throw Error(ErrorKind::argument, "spectrum_for_period: L must be positive");
  const int needed = minimal_mode_count(period, mode.lambda_omega);
  if (n_max < needed) {
    throw Error(ErrorKind::argument, "spectrum_for_period: n_max = " + std::to_string(n_max) +
                                         " is below ceil(L sqrt(lambda_omega)) + 1 = " + std::to_string(needed));
  }
  TransverseSpectrum ts;
  ts.lambda_omega = mode.lambda_omega;
  ts.psi_omega = mode.psi_omega;
  ts.critical_period = mode.critical_period();
  ts.period = period;
  ts.count_bound = 1.0 + 2.0 * period * std::sqrt(mode.lambda_omega);
  for (int n = 0; n <= n_max; ++n) {
    const double a = n / period;
    const double mu = growth.growth(a);
    ts.mode_table.push_back({n, a, mu});
    if (mu > ts.mu_star) {
      ts.mu_star = mu;
      ts.chi_mode = n;
    }
    if (mu > kGrowthTolerance) ts.unstable_count += (n == 0) ? 1 : 2;
  }
  ts.stable = !(ts.mu_star > kGrowthTolerance);
  if (ts.stable) ts.chi_mode = 0;
  return ts;
}

TransverseSpectrum spectrum_for_period(const OperatorAssembly& assembly, double period, int n_max) {
  return spectrum_for_period(internal_mode(assembly), TransverseGrowth(assembly), period, n_max);
}

std::vector<std::pair<double, double>> sample_mu_curve(const TransverseGrowth& growth, double a_max, int count) {
  if (count < 2 || !(a_max > 0.0)) throw Error(ErrorKind::argument, "sample_mu_curve: need count >= 2, a_max > 0");
  std::vector<std::pair<double, double>> curve;
  curve.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double a = a_max * k / (count - 1);
    curve.emplace_back(a, growth.growth(a));
  }
  return curve;
}

double growth_cutoff(const TransverseGrowth& growth, double a_lo, double a_hi, double tol) {
  if (!(growth.growth(a_lo) > 0.0) || growth.growth(a_hi) > 0.0) {
    throw Error(ErrorKind::no_sign_change, "growth_cutoff: mu must be positive at a_lo and zero at a_hi");
  }
  while (a_hi - a_lo > tol) {
    const double mid = 0.5 * (a_lo + a_hi);
    if (growth.growth(mid) > 0.0) {
      a_lo = mid;
    } else {
      a_hi = mid;
    }
  }
  return 0.5 * (a_lo + a_hi);
}

double coercivity_check(const OperatorAssembly& assembly, bool project) {
  if (!project) return min_eigenvalue(assembly.l_plus);
  // Uniform quadrature weights make the L^2 projector the Euclidean one.
  const RealVector u = assembly.phi.normalized();
  const Eigen::Index n = u.size();
  const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n) - u * u.transpose();
  Eigen::MatrixXd restricted = proj * assembly.l_plus * proj;
  // phi itself becomes an eigenvector with eigenvalue 0; lift it out of the way
  // so the minimum is taken over the complement.
  const double lift = 1.0 + assembly.l_plus.cwiseAbs().rowwise().sum().maxCoeff();
  restricted += lift * u * u.transpose();
  return min_eigenvalue(restricted);
}

}  // namespace nlslab
