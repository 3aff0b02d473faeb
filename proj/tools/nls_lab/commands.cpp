#include "commands.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include <nlslab/bifurcation.hpp>
#include <nlslab/branch.hpp>
#include <nlslab/error.hpp>
#include <nlslab/evolve2d.hpp>
#include <nlslab/field_io.hpp>

#include "verify.hpp"

namespace nlslab::cli {

namespace {

void emit(const Context& ctx, std::string_view command, Json options, Json result) {
  Json echo = to_json(ctx.config);
  echo["options"] = std::move(options);
  write_json(ctx.out, make_report(command, echo, std::move(result)));
}

struct LineState {
  GroundState gs;
  OperatorAssembly assembly;
  InternalMode mode;
};

LineState line_state(const RunConfig& config, const LineProblem& problem) {
  GroundState gs = solve_ground(problem, resolve_omega(config, problem.lambda_star()), config.p,
                                newton_options(config));
  OperatorAssembly assembly = assemble(gs, problem);
  InternalMode mode = internal_mode(assembly);
  return {std::move(gs), std::move(assembly), std::move(mode)};
}

}  // namespace

LineProblem make_problem(const RunConfig& config, std::size_t n) {
  return LineProblem(make_potential(config.potential), Grid1D(n, config.grid.half_width));
}

int linear_spectrum(const Context& ctx, const LinearSpectrumOptions& opt) {
  if (opt.count < 1) throw ConfigError{"count", "must be positive"};
  const LineProblem problem = make_problem(ctx.config, ctx.config.grid.n);
  const LinearGround& lg = problem.linear();
  const SymmetricEigen eig = lowest_eigenpairs(problem.schrodinger(0.0), opt.count, false);

  Json result;
  result["lambda_star"] = lg.lambda_star;
  result["gap"] = lg.gap;
  result["residual"] = lg.residual;
  result["eigenvalues"] = std::vector<double>(eig.values.begin(), eig.values.end());
  result["boundary_magnitude"] = boundary_magnitude(problem.spec(), problem.grid());
  result["decay_rate"] = estimate_decay_rate(problem.spec(), problem.grid());
  if (const auto* pt = std::get_if<PoschlTeller>(&problem.spec().family())) {
    // depth = l (l + 1): ground state sech^l x at energy -l^2.
    const double l = 0.5 * (std::sqrt(1.0 + 4.0 * pt->depth) - 1.0);
    RealVector exact = problem.grid().nodes().array().cosh().inverse().pow(l);
    exact /= l2_norm(exact, problem.grid());
    result["analytic"] = {{"lambda_star", l * l},
                          {"lambda_star_error", std::abs(lg.lambda_star - l * l)},
                          {"psi_star_max_error", (lg.psi_star - exact).cwiseAbs().maxCoeff()}};
  }
  if (!opt.dump.empty()) write_field(opt.dump, Field::from_real(lg.psi_star, problem.grid().size()));
  emit(ctx, "linear-spectrum", {{"count", opt.count}, {"dump", opt.dump}}, std::move(result));
  return 0;
}

int ground(const Context& ctx, const GroundOptions& opt) {
  const LineProblem problem = make_problem(ctx.config, ctx.config.grid.n);
  const GroundState gs = solve_ground(problem, resolve_omega(ctx.config, problem.lambda_star()), ctx.config.p,
                                      newton_options(ctx.config));
  Json result;
  result["omega"] = gs.omega;
  result["p"] = gs.p;
  result["residual"] = gs.residual;
  result["seed_error"] = gs.seed_error;
  result["q1"] = gs.q1(problem.grid());
  result["linf"] = gs.linf();
  result["iterations"] = gs.iterations;
  if (!opt.dump.empty()) write_field(opt.dump, Field::from_real(gs.phi, problem.grid().size()));
  emit(ctx, "ground", {{"dump", opt.dump}}, std::move(result));
  return 0;
}

int transverse(const Context& ctx, const TransverseOptions& opt) {
  const LineProblem problem = make_problem(ctx.config, ctx.config.grid.n);
  const LineState line = line_state(ctx.config, problem);
  const TransverseGrowth growth(line.assembly);

  if (opt.curve) {
    if (opt.samples < 2) throw ConfigError{"samples", "must be at least 2"};
    const double a_max = opt.a_max > 0.0 ? opt.a_max : 2.0 * std::sqrt(line.mode.lambda_omega);
    ctx.out << "a,mu\n";
    for (const auto& [a, mu] : sample_mu_curve(growth, a_max, opt.samples)) write_csv_row(ctx.out, {a, mu});
    return 0;
  }

  const double period = resolve_period(ctx.config, line.mode.critical_period());
  const int needed = minimal_mode_count(period, line.mode.lambda_omega);
  const TransverseSpectrum ts = spectrum_for_period(line.mode, growth, period, std::max(opt.n_max, needed));
  Json table = Json::array();
  for (const auto& m : ts.mode_table) table.push_back({{"n", m.n}, {"a", m.a}, {"mu", m.mu}});
  Json result;
  result["omega"] = line.gs.omega;
  result["lambda_omega"] = ts.lambda_omega;
  result["L_c"] = ts.critical_period;
  result["L"] = ts.period;
  result["mode_table"] = std::move(table);
  result["mu_star"] = ts.mu_star;
  result["chi_mode"] = ts.chi_mode;
  result["unstable_count"] = ts.unstable_count;
  result["count_bound"] = ts.count_bound;
  result["verdict"] = ts.stable ? "stable" : "unstable";
  emit(ctx, "transverse", {{"n_max", std::max(opt.n_max, needed)}}, std::move(result));
  return 0;
}

int critical_period(const Context& ctx) {
  const LineProblem problem = make_problem(ctx.config, ctx.config.grid.n);
  const LineState line = line_state(ctx.config, problem);
  Json result;
  result["omega"] = line.gs.omega;
  result["p"] = line.gs.p;
  result["lambda_omega"] = line.mode.lambda_omega;
  result["L_c"] = line.mode.critical_period();
  result["next_eigenvalue"] = line.mode.next_eigenvalue;
  emit(ctx, "critical-period", Json::object(), std::move(result));
  return 0;
}

int bifurcation(const Context& ctx, const BifurcationOptions& opt) {
  const LineProblem problem = make_problem(ctx.config, ctx.config.grid.n);
  const double omega0 = resolve_omega(ctx.config, problem.lambda_star());
  const BifurcationReport r =
      bifurcation_report(problem, ctx.config.p, omega0, opt.fd_delta, newton_options(ctx.config));
  Json result;
  result["omega0"] = r.omega0;
  result["p"] = r.p;
  result["lambda_star"] = r.lambda_star;
  result["lambda_omega"] = r.lambda_omega;
  result["L_c"] = r.L_c;
  result["dlambda_domega"] = r.dlambda_domega;
  result["omega_pp0"] = r.omega_pp0;
  result["dq_domega"] = r.dq_domega;
  result["R"] = r.R;
  result["R_scaled"] = r.R_scaled;
  result["leading_coeff"] = r.leading_coeff;
  result["verdict"] = to_string(r.verdict);
  emit(ctx, "bifurcation", {{"fd_delta", opt.fd_delta}}, std::move(result));
  return 0;
}

int pstar(const Context& ctx, const PStarOptions& opt) {
  if (opt.bracket.size() != 2) throw ConfigError{"bracket", "expects two values"};
  if (!(opt.eps > 0.0)) throw ConfigError{"eps", "must be positive"};
  const LineProblem problem = make_problem(ctx.config, ctx.config.grid.n);
  const PStarResult root = find_pstar(problem, opt.eps, opt.bracket[0], opt.bracket[1], opt.ptol);
  Json result;
  result["p_star"] = root.p;
  result["reference"] = critical_exponent();
  result["evaluations"] = root.evaluations;
  result["R_lo"] = root.R_lo;
  result["R_hi"] = root.R_hi;
  emit(ctx, "pstar", {{"eps", opt.eps}, {"bracket", opt.bracket}, {"ptol", opt.ptol}}, std::move(result));
  return 0;
}

int branch(const Context& ctx, const BranchCommandOptions& opt) {
  if (opt.steps < 2) throw ConfigError{"steps", "must be at least 2"};
  if (!is_power_of_two(opt.n) || !is_power_of_two(opt.ny)) {
    throw ConfigError{"branch-n", "branch grid sizes must be powers of two"};
  }
  const LineProblem problem = make_problem(ctx.config, opt.n);
  const LineState line = line_state(ctx.config, problem);
  std::vector<double> a;
  if (opt.amax > 0.0) {
    for (int k = 0; k <= opt.steps; ++k) a.push_back(opt.amax * k / opt.steps);
  } else {
    a = default_branch_amplitudes(line.gs, line.mode, opt.steps);
  }
  BranchOptions bo;
  bo.ny = opt.ny;
  bo.tol = ctx.config.tol;
  const auto points = branch_continue(line.gs, line.mode, problem, a, bo);
  ctx.out << "a,omega_a,q2,lambda2\n";
  for (const auto& pt : points) write_csv_row(ctx.out, {pt.a, pt.omega_a, pt.q2, pt.lambda2});
  return 0;
}

int evolve(const Context& ctx, const EvolveOptions& opt) {
  if (!(opt.dt > 0.0)) throw ConfigError{"dt", "must be positive"};
  if (!(opt.tend >= 0.0)) throw ConfigError{"tend", "must be non-negative"};
  if (opt.record_every < 1) throw ConfigError{"record-every", "must be positive"};
  if (opt.dealias != "auto" && opt.dealias != "on" && opt.dealias != "off") {
    throw ConfigError{"dealias", "expects auto, on or off"};
  }
  const LineProblem problem = make_problem(ctx.config, ctx.config.grid.n);
  const LineState line = line_state(ctx.config, problem);
  const double period = resolve_period(ctx.config, line.mode.critical_period());
  const Grid2D grid(problem.grid(), ctx.config.grid.ny, period);
  const bool dealias = opt.dealias == "on" || (opt.dealias == "auto" && ctx.config.p > 3.0);
  SplitStepIntegrator integrator(grid, problem.potential(), ctx.config.p, dealias);

  EvolveConfig config;
  config.dt = opt.dt;
  config.t_end = opt.tend;
  config.record_every = opt.record_every;
  config.omega = line.gs.omega;
  config.delta = opt.delta;
  int recorded = 0;
  auto snapshot = [&](const EvolutionState& s) {
    if (opt.snapshot_every > 0 && recorded % opt.snapshot_every == 0) {
      write_field(fmt::format("{}_{:06d}.nlsf", opt.snapshot_prefix, recorded),
                  Field::from_complex(s.u, grid.nx(), grid.ny()));
    }
    ++recorded;
  };
  const RealVector profile = extrude(line.gs.phi.cast<Complex>(), grid).real();
  const RunRecord record = nlslab::evolve(
      integrator, seed_perturbed(line.gs.phi, line.mode.psi_omega, grid, opt.delta, opt.mode), profile, config,
      snapshot);
  ctx.out << "t,Q,E,m0,m1,m2,orbital_distance\n";
  for (const auto& row : record.rows) {
    write_csv_row(ctx.out, {row.t, row.mass, row.energy, row.m0, row.m1, row.m2, row.orbital_distance});
  }
  return 0;
}

int verify(const Context& ctx, const VerifyOptions& opt) {
  verify::Instrument instrument;
  instrument.n = ctx.config.grid.n;
  instrument.half_width = ctx.config.grid.half_width;
  instrument.ny = ctx.config.grid.ny;
  for (const int id : opt.only) {
    if (id < 1 || id > verify::kCriterionCount) throw ConfigError{"only", fmt::format("no criterion {}", id)};
  }
  const auto results = verify::run_suite(instrument, opt.only, [&](const verify::CriterionResult& r) {
    ctx.out << verify::format_line(r) << '\n' << std::flush;
  });
  const bool ok = verify::suite_passed(results);
  ctx.out << (ok ? "verify: all required criteria passed\n" : "verify: FAILED\n");
  return ok ? 0 : 1;
}

}  // namespace nlslab::cli
