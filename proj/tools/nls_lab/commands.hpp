#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlslab/potential.hpp>

#include "config.hpp"

namespace nlslab::cli {

struct Context {
  const RunConfig& config;
  std::ostream& out;
};

LineProblem make_problem(const RunConfig& config, std::size_t n);

struct LinearSpectrumOptions {
  int count = 4;
  std::string dump;
};
int linear_spectrum(const Context& ctx, const LinearSpectrumOptions& opt);

struct GroundOptions {
  std::string dump;
};
int ground(const Context& ctx, const GroundOptions& opt);

struct TransverseOptions {
  int n_max = 0;  ///< 0: the minimal admissible count
  bool curve = false;
  double a_max = 0.0;  ///< 0: 2 sqrt(lambda_omega)
  int samples = 101;
};
int transverse(const Context& ctx, const TransverseOptions& opt);

int critical_period(const Context& ctx);

struct BifurcationOptions {
  double fd_delta = 0.0;  ///< 0: (omega0 - lambda_star) / 10
};
int bifurcation(const Context& ctx, const BifurcationOptions& opt);

struct PStarOptions {
  double eps = 1e-3;
  std::vector<double> bracket{4.0, 4.3};
  double ptol = 1e-3;
};
int pstar(const Context& ctx, const PStarOptions& opt);

struct BranchCommandOptions {
  double amax = 0.0;  ///< 0: steps of 1% of ||phi||_inf / ||psi||_inf
  int steps = 5;
  std::size_t n = 256;
  std::size_t ny = 16;
};
int branch(const Context& ctx, const BranchCommandOptions& opt);

struct EvolveOptions {
  double delta = 1e-5;
  int mode = 1;
  double dt = 5e-3;
  double tend = 50.0;
  int record_every = 100;
  std::string dealias = "auto";  ///< auto (on for p > 3), on, off
  int snapshot_every = 0;        ///< in records; 0 disables
  std::string snapshot_prefix = "snapshot";
};
int evolve(const Context& ctx, const EvolveOptions& opt);

struct SweepOptions {
  std::vector<double> p_list;
  std::vector<double> eps_list;
  std::vector<double> ratio_list;
};
int sweep(const Context& ctx, const SweepOptions& opt);

struct VerifyOptions {
  std::vector<int> only;
};
int verify(const Context& ctx, const VerifyOptions& opt);

/// NLS_LAB_THREADS if set and positive, else the hardware concurrency.
unsigned worker_count(std::size_t jobs);

}  // namespace nlslab::cli
