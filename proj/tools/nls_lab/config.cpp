#include "config.hpp"

#include <fstream>
#include <sstream>

#include <nlslab/error.hpp>

namespace nlslab::cli {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<FieldError> validate(const RunConfig& c) {
  std::vector<FieldError> errors;
  auto fail = [&](std::string field, std::string message) { errors.push_back({std::move(field), std::move(message)}); };

  const auto& pot = c.potential;
  if (pot.family != "poschl-teller" && pot.family != "gaussian" && pot.family != "tabulated") {
    fail("potential", "unknown family '" + pot.family + "' (poschl-teller, gaussian, tabulated)");
  }
  if (pot.family == "poschl-teller" && !(pot.depth > 0.0)) fail("depth", "must be positive");
  if (pot.family == "gaussian") {
    if (!(pot.amplitude < 0.0)) fail("amplitude", "must be negative for a bound state");
    if (!(pot.width > 0.0)) fail("width", "must be positive");
  }
  if (pot.family == "tabulated" && pot.file.empty()) fail("potential-file", "required for a tabulated potential");

  if (!(c.p > 1.0)) fail("p", "must exceed 1");
  if (c.omega && c.omega_minus_lambda) fail("omega", "give exactly one of omega / omega-minus-lambda");
  if (c.omega_minus_lambda && !(*c.omega_minus_lambda > 0.0)) fail("omega-minus-lambda", "must be positive");
  if (c.L && c.L_over_Lc) fail("L", "give exactly one of L / L-over-Lc");
  if (c.L && !(*c.L > 0.0)) fail("L", "must be positive");
  if (c.L_over_Lc && !(*c.L_over_Lc > 0.0)) fail("L-over-Lc", "must be positive");

  if (!is_power_of_two(c.grid.n) || c.grid.n < 16) fail("n", "must be a power of two, at least 16");
  if (!is_power_of_two(c.grid.ny) || c.grid.ny < 4) fail("ny", "must be a power of two, at least 4");
  if (!(c.grid.half_width > 0.0)) fail("X", "must be positive");
  if (!(c.tol > 0.0)) fail("tol", "must be positive");
  if (c.max_iterations <= 0) fail("max-iterations", "must be positive");
  return errors;
}

PotentialSpec make_potential(const PotentialConfig& c) {
  if (c.family == "gaussian") return PotentialSpec::gaussian(c.amplitude, c.width);
  if (c.family == "tabulated") return PotentialSpec::load_csv(c.file, c.require_even);
  return PotentialSpec::poschl_teller(c.depth);
}

NewtonOptions newton_options(const RunConfig& c) {
  NewtonOptions o;
  o.tol = c.tol;
  o.max_iterations = c.max_iterations;
  return o;
}

double resolve_omega(const RunConfig& c, double lambda_star) {
  if (c.omega) return *c.omega;
  return lambda_star + c.omega_minus_lambda.value_or(0.01);
}

double resolve_period(const RunConfig& c, double critical_period) {
  if (c.L) return *c.L;
  if (c.L_over_Lc) return *c.L_over_Lc * critical_period;
  throw ConfigError{"L", "one of L / L-over-Lc is required"};
}

namespace {

std::string file_sha1(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read " + path);
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return git_blob_sha1(bytes.str());
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const RunConfig& c) {
  Json pot;
  pot["family"] = c.potential.family;
  if (c.potential.family == "poschl-teller") {
    pot["depth"] = c.potential.depth;
  } else if (c.potential.family == "gaussian") {
    pot["amplitude"] = c.potential.amplitude;
    pot["width"] = c.potential.width;
  } else {
    pot["file_sha1"] = file_sha1(c.potential.file);
    pot["require_even"] = c.potential.require_even;
  }
  Json j;
  j["potential"] = pot;
  j["p"] = c.p;
  j["omega"] = optional_number(c.omega);
  j["omega_minus_lambda"] = optional_number(c.omega_minus_lambda);
  j["L"] = optional_number(c.L);
  j["L_over_Lc"] = optional_number(c.L_over_Lc);
  j["grid"] = {{"n", c.grid.n}, {"X", c.grid.half_width}, {"ny", c.grid.ny}};
  j["tol"] = c.tol;
  j["max_iterations"] = c.max_iterations;
  return j;
}

}  // namespace nlslab::cli
