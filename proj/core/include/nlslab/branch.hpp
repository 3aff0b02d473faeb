#pragma once

#include <vector>

#include "nlslab/bifurcation.hpp"

namespace nlslab {

/// Real fields on a Grid2D that are even in x and in y, stored on the
/// representative nodes i in [0, nx/2], j in [0, ny/2] at j * mx + i.
/// Each representative stands for 1, 2 or 4 full-grid nodes; the quadrature
/// weights carry that multiplicity, so reduced sums equal full-grid integrals.
class SymmetricGrid2D {
 public:
  explicit SymmetricGrid2D(Grid2D grid);

  const Grid2D& grid() const noexcept { return grid_; }
  std::size_t mx() const noexcept { return mx_; }
  std::size_t my() const noexcept { return my_; }
  std::size_t size() const noexcept { return mx_ * my_; }

  const RealVector& weights() const noexcept { return weights_; }
  /// Node multiplicities (the weights over h hy).
  const RealVector& multiplicity() const noexcept { return mult_; }

  /// Nodal Laplacian acting on symmetric fields; M times it is symmetric.
  const Eigen::MatrixXd& laplacian() const noexcept { return laplacian_; }

  /// profile(x) replicated over y, for an even full-grid profile.
  RealVector extrude(const RealVector& profile) const;
  /// profile(x) cos(n y / L).
  RealVector extrude_cos(const RealVector& profile, int n) const;

  /// Full nx * ny samples in Grid2D order.
  RealVector to_full(const RealVector& reduced) const;
  RealVector to_reduced(const RealVector& full) const;

  double inner(const RealVector& f, const RealVector& g) const;
  double norm(const RealVector& f) const;

  /// Two lowest eigenvalues of the nodal operator `a`, assumed M-symmetric.
  Eigen::VectorXd lowest_eigenvalues(const Eigen::MatrixXd& a, int count) const;

 private:
  Grid2D grid_;
  std::size_t mx_;
  std::size_t my_;
  RealVector weights_;
  RealVector mult_;
  Eigen::MatrixXd laplacian_;
};

/// omega''(0) from a direct evaluation on the symmetric 2D grid: the inverse
/// of the linearized operator is applied by a bordered solve against its
/// kernel psi cos(y/L). Independent of the y-mode reduction in omega_pp0.
double omega_pp0_direct(const GroundState& gs, const InternalMode& mode, double dlambda,
                        const LineProblem& problem, std::size_t ny);

struct BranchPoint {
  double a = 0.0;
  double omega_a = 0.0;
  Field phi2d;          ///< full grid, real
  double q2 = 0.0;      ///< ||phi(a)||^2 over the cylinder
  double lambda2 = 0.0; ///< second eigenvalue of -Lap + omega(a) + V - p phi(a)^{p-1}
  double residual = 0.0;
  double rcond = 0.0;   ///< reciprocal condition of the bordered Jacobian
  int iterations = 0;
};

struct BranchOptions {
  std::size_t ny = 16;
  double tol = 1e-10;
  int max_iterations = 30;
  double fold_rcond = 1e-13;
};

/// Amplitudes k * step * ||phi||_inf / ||psi||_inf for k = 0..count.
std::vector<double> default_branch_amplitudes(const GroundState& gs, const InternalMode& mode, int count = 5,
                                              double step = 0.01);

/// Bordered Newton in (phi, omega) at L = L_c with the amplitude constraint
/// <phi - phi_line, psi cos(y/L)> = a pi L. `a_values` must ascend from 0.
/// Newton failure throws BranchLost with the index; a near-singular bordered
/// Jacobian is reported as a fold.
std::vector<BranchPoint> branch_continue(const GroundState& gs, const InternalMode& mode,
                                         const LineProblem& problem, const std::vector<double>& a_values,
                                         const BranchOptions& options = {});

/// Least-squares fit y(a) - y(0) = c2 a^2 + c4 a^4; returns c2.
double quadratic_slope(const std::vector<double>& a, const std::vector<double>& y);

struct BranchSlopes {
  double omega = 0.0;    ///< expected omega''(0) / 2
  double norm = 0.0;     ///< expected R / 2
  double lambda2 = 0.0;  ///< expected (dlambda/domega) omega''(0)
};
BranchSlopes branch_slopes(const std::vector<BranchPoint>& points);

}  // namespace nlslab
