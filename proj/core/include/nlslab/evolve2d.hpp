#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "nlslab/linearized.hpp"

namespace nlslab {

struct EvolutionState {
  double t = 0.0;
  ComplexVector u;
  double mass = 0.0;    ///< Q = 1/2 int |u|^2
  double energy = 0.0;  ///< E = int |grad u|^2 / 2 + V |u|^2 / 2 - |u|^{p+1} / (p+1)
  double action = 0.0;  ///< E + omega Q
};

/// Strang splitting for i u_t = -Lap u + V u - |u|^{p-1} u on a Grid2D:
/// half pointwise phase rotation, exact kinetic step in Fourier space, half
/// pointwise rotation. Not thread-safe; one integrator per run.
class SplitStepIntegrator {
 public:
  /// `potential` holds V on the x grid. Dealiasing masks |k| beyond 2/3 of
  /// the band limit in each direction.
  SplitStepIntegrator(Grid2D grid, RealVector potential, double p, bool dealias);
  ~SplitStepIntegrator();
  SplitStepIntegrator(SplitStepIntegrator&&) noexcept;
  SplitStepIntegrator& operator=(SplitStepIntegrator&&) noexcept;

  const Grid2D& grid() const noexcept { return grid_; }
  double p() const noexcept { return p_; }
  bool dealias() const noexcept { return dealias_; }

  /// One Strang step; dt may be negative.
  void step(ComplexVector& u, double dt);
  /// `count` consecutive steps with the inner half steps merged. Identical to
  /// repeated step() up to rounding because the pointwise flow preserves |u|.
  void advance(ComplexVector& u, double dt, int count);

  double mass(const ComplexVector& u) const;
  double energy(const ComplexVector& u);
  EvolutionState state(const ComplexVector& u, double t, double omega);

 private:
  void pointwise(ComplexVector& u, double tau) const;
  void kinetic(ComplexVector& u, double dt);

  struct Fft;
  Grid2D grid_;
  RealVector potential_;  ///< V extruded over the 2D grid
  RealVector k2_;         ///< |k|^2 in FFT order
  RealVector mask_;       ///< 1 or 0 per Fourier mode
  double p_;
  bool dealias_;
  double cached_dt_ = 0.0;
  ComplexVector phase_;
  std::unique_ptr<Fft> fft_;
};

/// phi + delta psi cos(n y / L) / ||psi cos(n y / L)||, the line state with a
/// unit-norm transverse perturbation. Throws mode_out_of_range for |n| >= ny/2.
ComplexVector seed_perturbed(const RealVector& phi, const RealVector& psi, const Grid2D& grid, double delta,
                             int mode);

struct EvolveConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int record_every = 100;
  double omega = 0.0;          ///< for the action and the reference orbit
  double tail_fraction = 1e-6; ///< abort threshold on mass beyond |x| > 0.8 X
  double delta = 0.0;          ///< perturbation size, kept with the record
};

struct RecordRow {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double m0 = 0.0;  ///< ||mode 0 of u - e^{i theta} phi||
  double m1 = 0.0;
  double m2 = 0.0;
  double orbital_distance = 0.0;  ///< min over theta of ||u - e^{i theta} phi|| / ||phi||
  double tail = 0.0;
};

struct RunRecord {
  std::vector<RecordRow> rows;
  double delta = 0.0;
  double max_mass_drift = 0.0;    ///< relative
  double max_energy_drift = 0.0;  ///< relative
  double max_action_drift = 0.0;  ///< relative
  EvolutionState final_state;
};

/// Mode amplitudes and distances of u against the line profile (full 2D grid).
RecordRow observe(const ComplexVector& u, const RealVector& line, const Grid2D& grid);

/// Evolves u0 to t_end, recording every `record_every` steps (and the last).
/// Throws BlowupDetected on non-finite values and tail_mass when radiation
/// reaches the truncation boundary. `on_record` sees every recorded state.
RunRecord evolve(SplitStepIntegrator& integrator, ComplexVector u0, const RealVector& line,
                 const EvolveConfig& config,
                 const std::function<void(const EvolutionState&)>& on_record = {});

struct GrowthFit {
  bool growth = false;  ///< false: the fit window is empty (no growth)
  double mu_fit = 0.0;
  double r2 = 0.0;
  std::size_t samples = 0;
  double t_begin = 0.0;
  double t_end = 0.0;
};

/// Least-squares slope of log m1(t) over m1 / m1(0) in [10, eps1 / delta].
GrowthFit growth_rate(const RunRecord& record, double eps1 = 1e-2);

/// log(eps1 / delta) / mu_star.
double escape_time(double mu_star, double delta, double eps1 = 1e-2);

}  // namespace nlslab
