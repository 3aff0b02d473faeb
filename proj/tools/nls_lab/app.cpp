#include "app.hpp"

#include <fstream>
#include <vector>

#include "CLI11.hpp"

#include <nlslab/error.hpp>

#include "commands.hpp"

namespace nlslab::cli {

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::argument:
    case ErrorKind::domain:
    case ErrorKind::dimension:
    case ErrorKind::mode_out_of_range:
      return kExitUsage;
    case ErrorKind::io:
      return kExitIo;
    default:
      return kExitNumerical;
  }
}

void report_error(std::ostream& err, std::string_view kind, Json context) {
  Json j;
  j["error_kind"] = kind;
  j["context"] = std::move(context);
  err << j.dump() << '\n';
}

Json error_context(const Error& e) {
  Json ctx;
  ctx["message"] = e.what();
  if (const auto* nc = dynamic_cast<const NonConvergence*>(&e)) {
    ctx["last_residual"] = nc->last_residual();
    ctx["index"] = nc->index();
  } else if (const auto* bl = dynamic_cast<const BranchLost*>(&e)) {
    ctx["index"] = bl->index();
    ctx["fold_suspected"] = bl->fold_suspected();
  } else if (const auto* bu = dynamic_cast<const BlowupDetected*>(&e)) {
    ctx["time"] = bu->time();
  }
  return ctx;
}

// Binds an optional double: the option's presence decides engagement.
struct OptionalBinding {
  CLI::Option* option = nullptr;
  double value = 0.0;
  std::optional<double> get() const { return option->count() > 0 ? std::optional<double>(value) : std::nullopt; }
};

// A list flag given without values parses as one empty token; treat it as
// an empty list.
void clear_if_bare(const CLI::Option* option, std::vector<double>& values) {
  const auto& results = option->results();
  if (results.size() == 1 && results.front().empty()) values.clear();
}

}  // namespace

int run_subcommand(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transverse stability lab for line standing waves of NLS", "nls_lab"};
  app.set_config("--config", "", "TOML configuration; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.fallthrough();
  app.require_subcommand(1, 1);

  RunConfig config;
  auto& pot = config.potential;
  app.add_option("--potential", pot.family, "poschl-teller | gaussian | tabulated")->capture_default_str();
  app.add_option("--depth", pot.depth, "Poschl-Teller depth, V = -depth sech^2 x")->capture_default_str();
  app.add_option("--amplitude", pot.amplitude, "Gaussian amplitude")->capture_default_str();
  app.add_option("--width", pot.width, "Gaussian width")->capture_default_str();
  app.add_option("--potential-file", pot.file, "two-column CSV (x, V) on the grid nodes");
  bool allow_odd = false;
  app.add_flag("--allow-odd", allow_odd, "skip the evenness check on tabulated potentials");
  app.add_option("--p", config.p, "nonlinearity exponent")->capture_default_str();
  OptionalBinding omega, eps, period, ratio;
  omega.option = app.add_option("--omega,--omega0", omega.value, "frequency");
  eps.option = app.add_option("--omega-minus-lambda", eps.value, "omega - lambda_star (default 0.01)");
  period.option = app.add_option("--L", period.value, "transverse period parameter, y in R / 2 pi L Z");
  ratio.option = app.add_option("--L-over-Lc", ratio.value, "L in units of the critical period");
  app.add_option("--n", config.grid.n, "x grid size")->capture_default_str();
  app.add_option("--X", config.grid.half_width, "half width of the x box")->capture_default_str();
  app.add_option("--ny", config.grid.ny, "y grid size")->capture_default_str();
  app.add_option("--tol", config.tol, "Newton tolerance")->capture_default_str();
  app.add_option("--max-iterations", config.max_iterations, "Newton iteration cap")->capture_default_str();
  app.add_option("--output,-o", config.output, "write the report here instead of stdout");

  LinearSpectrumOptions linear_opt;
  auto* linear_cmd = app.add_subcommand("linear-spectrum", "lowest eigenvalues of -d^2/dx^2 + V");
  linear_cmd->add_option("--count", linear_opt.count)->capture_default_str();
  linear_cmd->add_option("--dump", linear_opt.dump, "NLSF dump of psi_star");

  GroundOptions ground_opt;
  auto* ground_cmd = app.add_subcommand("ground", "line ground state phi_omega");
  ground_cmd->add_option("--dump", ground_opt.dump, "NLSF dump of phi");

  TransverseOptions transverse_opt;
  auto* transverse_cmd = app.add_subcommand("transverse", "transverse growth rates for one period");
  transverse_cmd->add_option("--n-max", transverse_opt.n_max, "largest mode index (at least the minimal count)");
  transverse_cmd->add_flag("--curve", transverse_opt.curve, "emit the (a, mu) curve as CSV instead");
  transverse_cmd->add_option("--a-max", transverse_opt.a_max, "curve range (default 2 sqrt(lambda_omega))");
  transverse_cmd->add_option("--samples", transverse_opt.samples)->capture_default_str();

  auto* critical_cmd = app.add_subcommand("critical-period", "lambda_omega and L_c");

  BifurcationOptions bifurcation_opt;
  auto* bifurcation_cmd = app.add_subcommand("bifurcation", "degenerate-case indicator R at L_c");
  bifurcation_cmd->add_option("--fd-delta", bifurcation_opt.fd_delta, "omega step (default eps / 10)");

  PStarOptions pstar_opt;
  auto* pstar_cmd = app.add_subcommand("pstar", "root of p -> R at fixed omega - lambda_star");
  pstar_cmd->add_option("--eps", pstar_opt.eps)->capture_default_str();
  pstar_cmd->add_option("--bracket", pstar_opt.bracket)->expected(2)->capture_default_str();
  pstar_cmd->add_option("--ptol", pstar_opt.ptol)->capture_default_str();

  BranchCommandOptions branch_opt;
  auto* branch_cmd = app.add_subcommand("branch", "y-dependent branch bifurcating at L_c");
  branch_cmd->add_option("--amax", branch_opt.amax, "largest amplitude (default: steps of 1% of the profile)");
  branch_cmd->add_option("--steps", branch_opt.steps)->capture_default_str();
  branch_cmd->add_option("--branch-n", branch_opt.n, "x grid of the 2D solve")->capture_default_str();
  branch_cmd->add_option("--branch-ny", branch_opt.ny, "y grid of the 2D solve")->capture_default_str();

  EvolveOptions evolve_opt;
  auto* evolve_cmd = app.add_subcommand("evolve", "split-step evolution of a perturbed line state");
  evolve_cmd->add_option("--delta", evolve_opt.delta)->capture_default_str();
  evolve_cmd->add_option("--mode", evolve_opt.mode)->capture_default_str();
  evolve_cmd->add_option("--dt", evolve_opt.dt)->capture_default_str();
  evolve_cmd->add_option("--tend", evolve_opt.tend)->capture_default_str();
  evolve_cmd->add_option("--record-every", evolve_opt.record_every, "steps per CSV row")->capture_default_str();
  evolve_cmd->add_option("--dealias", evolve_opt.dealias, "auto | on | off")->capture_default_str();
  evolve_cmd->add_option("--snapshot-every", evolve_opt.snapshot_every, "records per NLSF snapshot (0: none)");
  evolve_cmd->add_option("--snapshot-prefix", evolve_opt.snapshot_prefix)->capture_default_str();

  SweepOptions sweep_opt;
  auto* sweep_cmd = app.add_subcommand("sweep", "phase diagram over (p, omega - lambda_star, L / L_c)");
  auto* p_list = sweep_cmd->add_option("--p-list", sweep_opt.p_list)->expected(0, CLI::detail::expected_max_vector_size);
  auto* eps_list =
      sweep_cmd->add_option("--eps-list", sweep_opt.eps_list)->expected(0, CLI::detail::expected_max_vector_size);
  auto* ratio_list = sweep_cmd->add_option("--L-over-Lc-list", sweep_opt.ratio_list)
                         ->expected(0, CLI::detail::expected_max_vector_size);

  VerifyOptions verify_opt;
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  verify_cmd->add_option("--only", verify_opt.only, "criterion ids");

  std::vector<const char*> argv{"nls_lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "nls_lab: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }

  pot.require_even = !allow_odd;
  config.omega = omega.get();
  config.omega_minus_lambda = eps.get();
  config.L = period.get();
  config.L_over_Lc = ratio.get();
  if (sweep_cmd->parsed()) {
    clear_if_bare(p_list, sweep_opt.p_list);
    clear_if_bare(eps_list, sweep_opt.eps_list);
    clear_if_bare(ratio_list, sweep_opt.ratio_list);
    if (!p_list->count()) sweep_opt.p_list = {config.p};
    if (!eps_list->count()) sweep_opt.eps_list = {config.omega_minus_lambda.value_or(0.01)};
    if (!ratio_list->count()) sweep_opt.ratio_list = {config.L_over_Lc.value_or(1.0)};
  }

  if (const auto problems = validate(config); !problems.empty()) {
    Json list = Json::array();
    for (const auto& p : problems) list.push_back({{"field", p.field}, {"message", p.message}});
    report_error(err, "config", {{"errors", list}});
    return kExitUsage;
  }

  std::ofstream file;
  if (!config.output.empty()) {
    file.open(config.output, std::ios::binary);
    if (!file) {
      report_error(err, "io", {{"message", "cannot open " + config.output}});
      return kExitIo;
    }
  }
  const Context ctx{config, config.output.empty() ? out : file};

  try {
    if (linear_cmd->parsed()) return linear_spectrum(ctx, linear_opt);
    if (ground_cmd->parsed()) return ground(ctx, ground_opt);
    if (transverse_cmd->parsed()) return transverse(ctx, transverse_opt);
    if (critical_cmd->parsed()) return critical_period(ctx);
    if (bifurcation_cmd->parsed()) return bifurcation(ctx, bifurcation_opt);
    if (pstar_cmd->parsed()) return pstar(ctx, pstar_opt);
    if (branch_cmd->parsed()) return branch(ctx, branch_opt);
    if (evolve_cmd->parsed()) return evolve(ctx, evolve_opt);
    if (sweep_cmd->parsed()) return sweep(ctx, sweep_opt);
    if (verify_cmd->parsed()) return verify(ctx, verify_opt);
  } catch (const ConfigError& e) {
    report_error(err, "config", {{"errors", Json::array({{{"field", e.field}, {"message", e.message}}})}});
    return kExitUsage;
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), error_context(e));
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    report_error(err, "internal", {{"message", e.what()}});
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace nlslab::cli
