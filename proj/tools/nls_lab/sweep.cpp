#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <optional>
#include <thread>

#include <fmt/format.h>

#include <nlslab/bifurcation.hpp>
#include <nlslab/error.hpp>

#include "commands.hpp"

namespace nlslab::cli {

namespace {

struct Row {
  double p = 0.0;
  double omega = 0.0;
  double L = 0.0;
  double L_c = 0.0;
  double mu_star = 0.0;
  std::optional<double> R;
  std::string verdict;
  std::string error;
};

std::string describe(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return std::string(to_string(err->kind()));
  return "internal";
}

// All rows sharing (p, eps) reuse one line state.
std::vector<Row> sweep_group(const RunConfig& config, const LineProblem& problem, double p, double eps,
                             const std::vector<double>& ratios) {
  std::vector<Row> rows(ratios.size());
  const double omega = problem.lambda_star() + eps;
  for (auto& row : rows) {
    row.p = p;
    row.omega = omega;
  }
  try {
    const GroundState gs = solve_ground(problem, omega, p, newton_options(config));
    const OperatorAssembly assembly = assemble(gs, problem);
    const InternalMode mode = internal_mode(assembly);
    const TransverseGrowth growth(assembly);
    std::optional<BifurcationReport> report;
    for (std::size_t k = 0; k < ratios.size(); ++k) {
      Row& row = rows[k];
      try {
        row.L_c = mode.critical_period();
        row.L = ratios[k] * row.L_c;
        const TransverseSpectrum ts =
            spectrum_for_period(mode, growth, row.L, minimal_mode_count(row.L, mode.lambda_omega));
        row.mu_star = ts.mu_star;
        if (ratios[k] == 1.0) {
          // At the critical period the linear spectrum is degenerate and the
          // verdict comes from the sign of R.
          if (!report) report = bifurcation_report(problem, p, omega, 0.0, newton_options(config));
          row.R = report->R;
          row.verdict = to_string(report->verdict);
        } else {
          row.verdict = ts.stable ? "stable" : "unstable";
        }
      } catch (const std::exception& e) {
        row.verdict = "error";
        row.error = describe(e);
      }
    }
  } catch (const std::exception& e) {
    for (auto& row : rows) {
      row.verdict = "error";
      row.error = describe(e);
    }
  }
  return rows;
}

}  // namespace

unsigned worker_count(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NLS_LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) n = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

int sweep(const Context& ctx, const SweepOptions& opt) {
  for (const double p : opt.p_list) {
    if (!(p > 1.0)) throw ConfigError{"p-list", "entries must exceed 1"};
  }
  for (const double e : opt.eps_list) {
    if (!(e > 0.0)) throw ConfigError{"eps-list", "entries must be positive"};
  }
  for (const double r : opt.ratio_list) {
    if (!(r > 0.0)) throw ConfigError{"L-over-Lc-list", "entries must be positive"};
  }
  ctx.out << "p,omega,L,L_c,mu_star,R,verdict,error\n";
  const std::size_t groups = opt.p_list.size() * opt.eps_list.size();
  if (groups == 0 || opt.ratio_list.empty()) return 0;

  const LineProblem problem = make_problem(ctx.config, ctx.config.grid.n);
  std::vector<std::vector<Row>> results(groups);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t g = next++; g < groups; g = next++) {
      const double p = opt.p_list[g / opt.eps_list.size()];
      const double eps = opt.eps_list[g % opt.eps_list.size()];
      results[g] = sweep_group(ctx.config, problem, p, eps, opt.ratio_list);
    }
  };
  std::vector<std::jthread> pool;
  const unsigned threads = worker_count(groups);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (const auto& group : results) {
    for (const Row& row : group) {
      ctx.out << format_double(row.p) << ',' << format_double(row.omega) << ',' << format_double(row.L) << ','
              << format_double(row.L_c) << ',' << format_double(row.mu_star) << ','
              << (row.R ? format_double(*row.R) : "") << ',' << row.verdict << ',' << row.error << '\n';
    }
  }
  return 0;
}

}  // namespace nlslab::cli
