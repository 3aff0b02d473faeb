#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlslab/potential.hpp>

#include "report.hpp"

namespace nlslab::cli {

struct PotentialConfig {
  std::string family = "poschl-teller";  ///< poschl-teller | gaussian | tabulated
  double depth = 2.0;
  double amplitude = -1.0;
  double width = 1.0;
  std::string file;
  bool require_even = true;
};

struct GridConfig {
  std::size_t n = 1024;
  double half_width = 20.0;
  std::size_t ny = 64;
};

/// Options shared by every subcommand. Exactly one of omega and
/// omega_minus_lambda, and at most one of L and L_over_Lc, may be set.
struct RunConfig {
  PotentialConfig potential;
  double p = 3.0;
  std::optional<double> omega;
  std::optional<double> omega_minus_lambda;
  std::optional<double> L;
  std::optional<double> L_over_Lc;
  GridConfig grid;
  double tol = 1e-10;
  int max_iterations = 60;
  std::string output;  ///< empty: stdout
};

struct FieldError {
  std::string field;
  std::string message;
};

/// Field-level problems with the configuration; empty when it is usable.
std::vector<FieldError> validate(const RunConfig& config);

bool is_power_of_two(std::size_t n);

PotentialSpec make_potential(const PotentialConfig& config);
NewtonOptions newton_options(const RunConfig& config);

/// omega from whichever of omega / omega_minus_lambda was given
/// (omega_minus_lambda = 0.01 when neither was).
double resolve_omega(const RunConfig& config, double lambda_star);
/// L from L or L_over_Lc; throws a config error when neither was given.
double resolve_period(const RunConfig& config, double critical_period);

/// Canonical echo: fixed key order, tabulated potentials represented by the
/// SHA-1 of their file.
Json to_json(const RunConfig& config);

}  // namespace nlslab::cli
