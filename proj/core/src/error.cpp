#include "nlslab/error.hpp"

namespace nlslab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::domain: return "domain";
    case ErrorKind::argument: return "argument";
    case ErrorKind::mode_out_of_range: return "mode_out_of_range";
    case ErrorKind::io: return "io";
    case ErrorKind::no_bound_state: return "no_bound_state";
    case ErrorKind::decay_violation: return "decay_violation";
    case ErrorKind::non_convergence: return "non_convergence";
    case ErrorKind::trivial_solution: return "trivial_solution";
    case ErrorKind::spectral_assumption: return "spectral_assumption_violated";
    case ErrorKind::model: return "model";
    case ErrorKind::numerical_singularity: return "numerical_singularity";
    case ErrorKind::no_sign_change: return "no_sign_change";
    case ErrorKind::branch_lost: return "branch_lost";
    case ErrorKind::blowup: return "blowup_detected";
    case ErrorKind::tail_mass: return "tail_mass_exceeded";
  }
  return "unknown";
}

}  // namespace nlslab
