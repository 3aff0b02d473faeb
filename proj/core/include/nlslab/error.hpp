#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nlslab {

/// Machine-readable failure categories. The CLI maps these onto exit codes
/// and the `error_kind` field of its error reports.
enum class ErrorKind {
  dimension,
  domain,
  argument,
  mode_out_of_range,
  io,
  no_bound_state,
  decay_violation,
  non_convergence,
  trivial_solution,
  spectral_assumption,
  model,
  numerical_singularity,
  no_sign_change,
  branch_lost,
  blowup,
  tail_mass,
};

std::string_view to_string(ErrorKind kind);

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Newton (or bisection) iteration stalled; carries the last residual.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& message, double last_residual, int index = -1)
      : Error(ErrorKind::non_convergence, message),
        last_residual_(last_residual),
        index_(index) {}

  double last_residual() const noexcept { return last_residual_; }
  /// Position in a continuation sweep, or -1 for a single solve.
  int index() const noexcept { return index_; }

 private:
  double last_residual_;
  int index_;
};

class BranchLost : public Error {
 public:
  BranchLost(const std::string& message, int index, bool fold)
      : Error(ErrorKind::branch_lost, message), index_(index), fold_(fold) {}

  int index() const noexcept { return index_; }
  bool fold_suspected() const noexcept { return fold_; }

 private:
  int index_;
  bool fold_;
};

class BlowupDetected : public Error {
 public:
  BlowupDetected(const std::string& message, double time)
      : Error(ErrorKind::blowup, message), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace nlslab
