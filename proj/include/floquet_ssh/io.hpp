#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "floquet_ssh/sweep.hpp"
#include "json.hpp"

namespace fssh {

inline constexpr std::string_view kSpectrumCsvHeader =
    "phi,omega,gamma,kappa,mode,re_eps,im_eps,edge_weight,phase,method,n_floquet";
inline constexpr std::string_view kPhaseCsvHeader =
    "phi,gamma,omega,kappa,max_im,phase,zero_modes,method,n_floquet";

// printf("%.17g"); NaN is written as "nan".
std::string format_double(double value);

// "unbroken", "broken" or "error:<failure code>".
std::string phase_label(Phase phase, const std::optional<FailureCode>& failure);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_phase_csv(std::ostream& out, const std::vector<PhaseRow>& rows);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string phase_csv(const std::vector<PhaseRow>& rows);

// Strict parsers for the two CSV schemas; throw ConfigError with the offending line.
std::vector<SweepRow> parse_sweep_csv(std::string_view text);
std::vector<PhaseRow> parse_phase_csv(std::string_view text);

// Parses either schema (chosen by header) and writes it back out.
std::string reserialize_csv(std::string_view text);

nlohmann::json sweep_json(const std::vector<SweepRow>& rows);
nlohmann::json phase_json(const std::vector<PhaseRow>& rows);

// Re eps against phi, one polyline per mode index; zero modes drawn as highlighted dots.
std::string render_phi_sweep_svg(const SweepResult& result, double zero_tol);
// gamma-omega grid colored by phase.
std::string render_phase_diagram_svg(const PhaseDiagramResult& result);

}  // namespace fssh
