#pragma once

#include <utility>
#include <vector>

#include "nlslab/dense.hpp"
#include "nlslab/groundstate.hpp"

namespace nlslab {

/// Dense L+ = -d^2/dx^2 + omega + V - p phi^{p-1} and
/// L- = -d^2/dx^2 + omega + V - phi^{p-1} around a line state.
struct OperatorAssembly {
  Eigen::MatrixXd l_plus;
  Eigen::MatrixXd l_minus;
  Grid1D grid;
  RealVector phi;
  double omega = 0.0;
  double p = 0.0;
};

/// Requires gs.residual < 1e-8 and a matching grid.
OperatorAssembly assemble(const GroundState& gs, const LineProblem& problem);

/// Assembly around an arbitrary profile; no residual check. Used for the
/// linear case phi = 0.
OperatorAssembly assemble_profile(const RealVector& phi, double omega, double p, const LineProblem& problem);

/// The unique negative eigenvalue -lambda_omega of L+ and its positive,
/// normalized eigenfunction.
struct InternalMode {
  double lambda_omega = 0.0;
  RealVector psi_omega;
  double next_eigenvalue = 0.0;

  double critical_period() const;
};

/// Throws spectral_assumption when L+ has no or more than one negative
/// eigenvalue, or a near-zero second eigenvalue.
InternalMode internal_mode(const OperatorAssembly& assembly);

/// Transverse growth rates of -J S(a) with S(a) = diag(L+ + a^2, L- + a^2).
///
/// mu(a)^2 is minus the negative eigenvalue of K(a) = M (L+ + a^2) M with
/// M = (L- + a^2)^{1/2}; the kernel of L- + a^2 is dropped from M. Both
/// eigendecompositions are computed once here. K(a) is evaluated through its
/// inverse M^{-1} (L+ + a^2)^{-1} M^{-1}, where -1/mu^2 is the dominant
/// eigenvalue, so that mu keeps full relative precision as it closes to 0.
class TransverseGrowth {
 public:
  explicit TransverseGrowth(const OperatorAssembly& assembly);

  /// mu(a) >= 0. Throws model when L- + a^2 has an eigenvalue below -1e-8.
  double growth(double a) const;

  /// Counts of negative eigenvalues of L+ + a^2 and L- + a^2.
  std::pair<int, int> negative_counts(double a) const;

  const Eigen::VectorXd& l_plus_eigenvalues() const noexcept { return plus_.values; }
  const Eigen::VectorXd& l_minus_eigenvalues() const noexcept { return minus_.values; }

 private:
  SymmetricEigen plus_;
  SymmetricEigen minus_;
  Eigen::MatrixXd overlap_;  ///< Q_-^T Q_+
};

/// One-shot mu(a); builds a TransverseGrowth internally.
double transverse_growth(const OperatorAssembly& assembly, double a);

/// Independent route: eigenvalues of the non-symmetric product
/// (L- + a^2)(L+ + a^2) on the x-even block, by a general dense eigensolver
/// applied to its inverse. Requires a > 0.
struct ProductSpectrum {
  double mu = 0.0;                 ///< sqrt(-min real eigenvalue), or 0
  double min_real = 0.0;           ///< smallest real part
  double max_abs_imag = 0.0;       ///< diagnostic for complex spectrum
  int negative_real_count = 0;     ///< eigenvalues with negative real part
};
ProductSpectrum product_spectrum(const OperatorAssembly& assembly, double a);

struct ModeEntry {
  int n = 0;
  double a = 0.0;
  double mu = 0.0;
};

struct TransverseSpectrum {
  double lambda_omega = 0.0;
  RealVector psi_omega;
  std::vector<std::pair<double, double>> mu_curve;  ///< (a, mu) samples
  double critical_period = 0.0;                     ///< L_c = lambda_omega^{-1/2}
  double period = 0.0;                              ///< the L of the mode table
  std::vector<ModeEntry> mode_table;
  double mu_star = 0.0;
  int chi_mode = 0;          ///< mode n attaining mu_star (0 when stable)
  int unstable_count = 0;    ///< modes n in [-n_max, n_max] with mu > tolerance
  double count_bound = 0.0;  ///< 1 + 2 L sqrt(lambda_omega)
  bool stable = true;
};

inline constexpr double kGrowthTolerance = 1e-6;

/// Smallest admissible n_max for spectrum_for_period.
int minimal_mode_count(double period, double lambda_omega);

/// Mode table over n = 0..n_max with a = n / L; stable iff mu_star <= 1e-6.
TransverseSpectrum spectrum_for_period(const InternalMode& mode, const TransverseGrowth& growth,
                                       double period, int n_max);
TransverseSpectrum spectrum_for_period(const OperatorAssembly& assembly, double period, int n_max);

/// mu(a) on `count` equispaced points of [0, a_max].
std::vector<std::pair<double, double>> sample_mu_curve(const TransverseGrowth& growth, double a_max,
                                                       int count);

/// Zero crossing of mu on (a_lo, a_hi) by bisection on mu > 0.
double growth_cutoff(const TransverseGrowth& growth, double a_lo, double a_hi, double tol = 1e-12);

/// Minimum eigenvalue of L+ restricted to {u : <phi, u> = 0}; with
/// project = false, the unprojected minimum (= -lambda_omega).
double coercivity_check(const OperatorAssembly& assembly, bool project = true);

}  // namespace nlslab
