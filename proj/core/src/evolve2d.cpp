#include "nlslab/evolve2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fft.hpp"
#include "nlslab/error.hpp"

namespace nlslab {

struct SplitStepIntegrator::Fft {
  Fft(std::size_t ny, std::size_t nx) : plan(ny, nx) {}
  detail::FftPlan plan;
};

SplitStepIntegrator::SplitStepIntegrator(Grid2D grid, RealVector potential, double p, bool dealias)
    : grid_(std::move(grid)), p_(p), dealias_(dealias) {
  if (static_cast<std::size_t>(potential.size()) != grid_.nx()) {
    throw Error(ErrorKind::dimension, "SplitStepIntegrator: potential does not match the x grid");
  }
  if (!(p > 1.0)) throw Error(ErrorKind::domain, "SplitStepIntegrator: p must exceed 1");
  const auto nx = static_cast<Eigen::Index>(grid_.nx());
  const auto ny = static_cast<Eigen::Index>(grid_.ny());
  potential_.resize(nx * ny);
  k2_.resize(nx * ny);
  mask_.setOnes(nx * ny);
  const RealVector& kx = grid_.x().wavenumbers();
  const RealVector& ky = grid_.y_wavenumbers();
  const double kx_cut = (2.0 / 3.0) * kx.cwiseAbs().maxCoeff();
  const double ky_cut = (2.0 / 3.0) * ky.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < ny; ++j) {
    for (Eigen::Index i = 0; i < nx; ++i) {
      const Eigen::Index idx = j * nx + i;
      potential_[idx] = potential[i];
      k2_[idx] = kx[i] * kx[i] + ky[j] * ky[j];
      if (dealias_ && (std::abs(kx[i]) > kx_cut || std::abs(ky[j]) > ky_cut)) mask_[idx] = 0.0;
    }
  }
  fft_ = std::make_unique<Fft>(grid_.ny(), grid_.nx());
}

SplitStepIntegrator::~SplitStepIntegrator() = default;
SplitStepIntegrator::SplitStepIntegrator(SplitStepIntegrator&&) noexcept = default;
SplitStepIntegrator& SplitStepIntegrator::operator=(SplitStepIntegrator&&) noexcept = default;

void SplitStepIntegrator::pointwise(ComplexVector& u, double tau) const {
  const double e = 0.5 * (p_ - 1.0);
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    const double a2 = std::norm(u[k]);
    const double nl = e == 1.0 ? a2 : std::pow(a2, e);
    u[k] *= std::polar(1.0, -(potential_[k] - nl) * tau);
  }
}

void SplitStepIntegrator::kinetic(ComplexVector& u, double dt) {
  if (dt != cached_dt_ || phase_.size() != u.size()) {
    phase_.resize(u.size());
    for (Eigen::Index k = 0; k < u.size(); ++k) phase_[k] = mask_[k] * std::polar(1.0, -k2_[k] * dt);
    cached_dt_ = dt;
  }
  Eigen::Map<ComplexVector> buf(fft_->plan.data(), u.size());
  buf = u;
  fft_->plan.forward();
  buf.array() *= phase_.array();
  fft_->plan.backward();
  u = buf;
}

void SplitStepIntegrator::step(ComplexVector& u, double dt) { advance(u, dt, 1); }

void SplitStepIntegrator::advance(ComplexVector& u, double dt, int count) {
  if (static_cast<std::size_t>(u.size()) != grid_.size()) {
    throw Error(ErrorKind::dimension, "SplitStepIntegrator: field does not match the grid");
  }
  if (count <= 0) return;
  pointwise(u, 0.5 * dt);
  for (int s = 0; s < count; ++s) {
    kinetic(u, dt);
    pointwise(u, s + 1 == count ? 0.5 * dt : dt);
  }
}

double SplitStepIntegrator::mass(const ComplexVector& u) const { return 0.5 * u.squaredNorm() * grid_.weight(); }

double SplitStepIntegrator::energy(const ComplexVector& u) {
  Eigen::Map<ComplexVector> buf(fft_->plan.data(), u.size());
  buf = u;
  fft_->plan.forward();
  // Parseval: sum |u|^2 = sum |u_hat|^2 / N.
  const double gradient =
      (k2_.array() * buf.array().abs2()).sum() / static_cast<double>(u.size()) * grid_.weight();
  const RealVector a2 = u.array().abs2();
  const double potential = (potential_.array() * a2.array()).sum() * grid_.weight();
  const double nonlinear = a2.array().pow(0.5 * (p_ + 1.0)).sum() * grid_.weight() / (p_ + 1.0);
  return 0.5 * gradient + 0.5 * potential - nonlinear;
}

EvolutionState SplitStepIntegrator::state(const ComplexVector& u, double t, double omega) {
  EvolutionState s;
  s.t = t;
  s.u = u;
  s.mass = mass(u);
  s.energy = energy(u);
  s.action = s.energy + omega * s.mass;
  return s;
}

// ---------------------------------------------------------------------------

ComplexVector seed_perturbed(const RealVector& phi, const RealVector& psi, const Grid2D& grid, double delta,
                             int mode) {
  if (std::abs(mode) >= static_cast<int>(grid.ny() / 2)) {
    throw Error(ErrorKind::mode_out_of_range, "seed_perturbed: |n| = " + std::to_string(std::abs(mode)) +
                                                  " must be below ny/2");
  }
  if (!(delta >= 0.0)) throw Error(ErrorKind::argument, "seed_perturbed: delta must be >= 0");
  ComplexVector u = extrude(phi.cast<Complex>(), grid);
  if (delta == 0.0) return u;
  const ComplexVector chi = extrude_cos(psi, mode, grid);
  return u + delta * chi / l2_norm(chi, grid);
}

RecordRow observe(const ComplexVector& u, const RealVector& line, const Grid2D& grid) {
  const ComplexVector ref = line.cast<Complex>();
  const Complex overlap = complex_inner_product(u, ref, grid);
  const Complex gauge = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
  const ComplexVector diff = u - gauge * ref;
  RecordRow row;
  row.m0 = l2_norm(project_mode(diff, 0, grid), grid.x());
  if (grid.ny() / 2 > 1) row.m1 = l2_norm(project_mode(diff, 1, grid), grid.x());
  if (grid.ny() / 2 > 2) row.m2 = l2_norm(project_mode(diff, 2, grid), grid.x());
  row.orbital_distance = l2_norm(diff, grid) / l2_norm(ref, grid);

  const auto nx = static_cast<Eigen::Index>(grid.nx());
  const double cut = 0.8 * grid.x().half_width();
  double tail = 0.0;
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(grid.ny()); ++j) {
    for (Eigen::Index i = 0; i < nx; ++i) {
      if (std::abs(grid.x().nodes()[i]) > cut) tail += std::norm(u[j * nx + i]);
    }
  }
  row.tail = tail / u.squaredNorm();
  return row;
}

RunRecord evolve(SplitStepIntegrator& integrator, ComplexVector u0, const RealVector& line,
                 const EvolveConfig& config, const std::function<void(const EvolutionState&)>& on_record) {
  if (!(config.dt > 0.0) || !(config.t_end >= 0.0) || config.record_every <= 0) {
    throw Error(ErrorKind::argument, "evolve: need dt > 0, t_end >= 0, record_every > 0");
  }
  const Grid2D& grid = integrator.grid();
  if (static_cast<std::size_t>(line.size()) != grid.size()) {
    throw Error(ErrorKind::dimension, "evolve: line profile does not match the grid");
  }
  const auto total = static_cast<long long>(std::llround(config.t_end / config.dt));
  RunRecord record;
  record.delta = config.delta;

  ComplexVector u = std::move(u0);
  EvolutionState first = integrator.state(u, 0.0, config.omega);
  auto push = [&](const EvolutionState& s) {
    if (!u.allFinite()) throw BlowupDetected("evolve: non-finite field at t = " + std::to_string(s.t), s.t);
    RecordRow row = observe(s.u, line, grid);
    row.t = s.t;
    row.mass = s.mass;
    row.energy = s.energy;
    if (row.tail > config.tail_fraction) {
      throw Error(ErrorKind::tail_mass, "evolve: mass fraction " + std::to_string(row.tail) +
                                            " beyond |x| > 0.8 X at t = " + std::to_string(s.t));
    }
    record.max_mass_drift = std::max(record.max_mass_drift, std::abs(s.mass - first.mass) / first.mass);
    record.max_energy_drift =
        std::max(record.max_energy_drift, std::abs(s.energy - first.energy) / std::abs(first.energy));
    record.max_action_drift =
        std::max(record.max_action_drift, std::abs(s.action - first.action) / std::abs(first.action));
    record.rows.push_back(row);
    if (on_record) on_record(s);
  };
  push(first);

  long long done = 0;
  while (done < total) {
    const long long chunk = std::min<long long>(config.record_every, total - done);
    integrator.advance(u, config.dt, static_cast<int>(chunk));
    done += chunk;
    const EvolutionState s = integrator.state(u, static_cast<double>(done) * config.dt, config.omega);
    if (!std::isfinite(s.mass) || !std::isfinite(s.energy)) {
      throw BlowupDetected("evolve: non-finite invariants at t = " + std::to_string(s.t), s.t);
    }
    push(s);
  }
  record.final_state = integrator.state(u, static_cast<double>(done) * config.dt, config.omega);
  return record;
}

GrowthFit growth_rate(const RunRecord& record, double eps1) {
  GrowthFit fit;
  if (record.rows.empty() || !(record.rows.front().m1 > 0.0)) return fit;
  const double m_init = record.rows.front().m1;
  const double upper = record.delta > 0.0 ? eps1 / record.delta : std::numeric_limits<double>::infinity();
  std::vector<double> ts;
  std::vector<double> ys;
  for (const auto& row : record.rows) {
    const double ratio = row.m1 / m_init;
    if (ratio >= 10.0 && ratio <= upper) {
      ts.push_back(row.t);
      ys.push_back(std::log(row.m1));
    }
  }
  fit.samples = ts.size();
  if (ts.size() < 3) return fit;
  const auto n = static_cast<double>(ts.size());
  double st = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sy += ys[i];
  }
  const double tm = st / n;
  const double ym = sy / n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - tm) * (ts[i] - tm);
    sty += (ts[i] - tm) * (ys[i] - ym);
    syy += (ys[i] - ym) * (ys[i] - ym);
  }
  fit.growth = true;
  fit.mu_fit = sty / stt;
  fit.r2 = syy > 0.0 ? sty * sty / (stt * syy) : 1.0;
  fit.t_begin = ts.front();
  fit.t_end = ts.back();
  return fit;
}

double escape_time(double mu_star, double delta, double eps1) {
  if (!(mu_star > 0.0) || !(delta > 0.0)) throw Error(ErrorKind::argument, "escape_time: need mu_star, delta > 0");
  return std::log(eps1 / delta) / mu_star;
}

}  // namespace nlslab
