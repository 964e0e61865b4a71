#include "floquet_ssh/errors.hpp"

namespace fssh {

std::string_view to_string(FailureCode code) {
  switch (code) {
    case FailureCode::InvalidParams: return "invalid_params";
    case FailureCode::DegenerateImpurity: return "degenerate_impurity";
    case FailureCode::NonConvergence: return "non_convergence";
    case FailureCode::Overflow: return "overflow";
    case FailureCode::PropagatorCollapse: return "propagator_collapse";
    case FailureCode::StepNonConvergence: return "step_non_convergence";
    case FailureCode::DimensionCap: return "dimension_cap";
    case FailureCode::NfCapExceeded: return "nf_cap_exceeded";
    case FailureCode::Aliasing: return "aliasing";
  }
  return "unknown";
}

}  // namespace fssh
