#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "nlslab/grid.hpp"

namespace nlslab {

/// V(x) = -depth sech^2(x). depth = l(l+1) gives bound states -(l-k)^2.
struct PoschlTeller {
  double depth = 2.0;
};

/// V(x) = amplitude exp(-(x / width)^2).
struct Gaussian {
  double amplitude = -1.0;
  double width = 1.0;
};

/// Nodal samples on a specific Grid1D.
struct Tabulated {
  RealVector x;
  RealVector v;
};

/// A decaying potential together with its analytic family.
class PotentialSpec {
 public:
  using Family = std::variant<PoschlTeller, Gaussian, Tabulated>;

  PotentialSpec() : family_(PoschlTeller{}) {}
  /// Analytic families are even by construction. Tabulated samples are
  /// checked for evenness unless `require_even` is false.
  explicit PotentialSpec(Family family, bool require_even = true);

  static PotentialSpec poschl_teller(double depth) { return PotentialSpec(PoschlTeller{depth}); }
  static PotentialSpec gaussian(double amplitude, double width) {
    return PotentialSpec(Gaussian{amplitude, width});
  }
  /// Two-column CSV (x, V); a non-numeric first line is treated as a header.
  static PotentialSpec load_csv(const std::filesystem::path& path, bool require_even = true);

  /// {"family": "poschl_teller", "depth": 2} and friends. Tabulated specs carry
  /// "x" and "v" arrays.
  std::string to_json() const;
  static PotentialSpec from_json(std::string_view text);

  const Family& family() const noexcept { return family_; }
  std::string_view family_name() const;
  bool is_even() const noexcept { return even_; }

  /// Point evaluation; analytic families only.
  double operator()(double x) const;

 private:
  Family family_;
  bool even_ = true;
};

/// Samples V on the grid nodes.
RealVector eval_potential(const PotentialSpec& spec, const Grid1D& grid);

/// |V| at the truncation boundary; (V1) requires this below 1e-8.
double boundary_magnitude(const PotentialSpec& spec, const Grid1D& grid);

/// Throws decay_violation if |V(+-X)| >= threshold.
void check_decay(const PotentialSpec& spec, const Grid1D& grid, double threshold = 1e-8);

/// Fitted alpha in |V(x)| ~ C exp(-alpha |x|) over the middle of the half line.
/// Reported only.
double estimate_decay_rate(const PotentialSpec& spec, const Grid1D& grid);

enum class LaplacianScheme { spectral, finite_difference };

/// Lowest eigenpair of -d^2/dx^2 + V, written as -lambda_star.
struct LinearGround {
  double lambda_star = 0.0;
  RealVector psi_star;  ///< positive, unit L^2 norm
  double gap = 0.0;     ///< distance from -lambda_star to the next eigenvalue
  double residual = 0.0;
};

/// Dense symmetric eigensolve of -d^2/dx^2 + V on the grid.
/// Throws no_bound_state if the lowest eigenvalue is not negative.
LinearGround linear_ground(const PotentialSpec& spec, const Grid1D& grid,
                           LaplacianScheme scheme = LaplacianScheme::spectral);

/// Immutable bundle of everything the line computations share: the grid, the
/// sampled potential, the dense -d^2/dx^2 and the linear ground state.
class LineProblem {
 public:
  LineProblem(PotentialSpec spec, Grid1D grid, LaplacianScheme scheme = LaplacianScheme::spectral);

  const Grid1D& grid() const noexcept { return grid_; }
  const PotentialSpec& spec() const noexcept { return spec_; }
  const RealVector& potential() const noexcept { return potential_; }
  /// Dense -d^2/dx^2.
  const Eigen::MatrixXd& neg_laplacian() const noexcept { return neg_laplacian_; }
  const LinearGround& linear() const noexcept { return linear_; }
  double lambda_star() const noexcept { return linear_.lambda_star; }

  /// -d^2/dx^2 + V + shift - multiplier, with `multiplier` a nodal function.
  Eigen::MatrixXd schrodinger(double shift, const RealVector& multiplier) const;
  Eigen::MatrixXd schrodinger(double shift) const;

 private:
  PotentialSpec spec_;
  Grid1D grid_;
  RealVector potential_;
  Eigen::MatrixXd neg_laplacian_;
  LinearGround linear_;
};

}  // namespace nlslab
