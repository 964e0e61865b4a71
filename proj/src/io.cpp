#include "floquet_ssh/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>

namespace fssh {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  for (auto line : split(text, '\n')) lines.push_back(line);
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

[[noreturn]] void csv_error(std::size_t line_no, const std::string& msg) {
  throw ConfigError("csv line " + std::to_string(line_no) + ": " + msg);
}

double parse_double(std::string_view field, std::size_t line_no) {
  const std::string s(field);
  if (s == "nan") return std::nan("");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) csv_error(line_no, "bad number '" + s + "'");
  return v;
}

int parse_int(std::string_view field, std::size_t line_no) {
  const std::string s(field);
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) csv_error(line_no, "bad integer '" + s + "'");
  return static_cast<int>(v);
}

FailureCode parse_failure(std::string_view text, std::size_t line_no) {
  for (auto code : {FailureCode::InvalidParams, FailureCode::DegenerateImpurity,
                    FailureCode::NonConvergence, FailureCode::Overflow,
                    FailureCode::PropagatorCollapse, FailureCode::StepNonConvergence,
                    FailureCode::DimensionCap, FailureCode::NfCapExceeded, FailureCode::Aliasing}) {
    if (to_string(code) == text) return code;
  }
  csv_error(line_no, "unknown failure code '" + std::string(text) + "'");
}

void parse_phase_field(std::string_view text, std::size_t line_no, Phase& phase,
                       std::optional<FailureCode>& failure) {
  constexpr std::string_view kErrorPrefix = "error:";
  if (text.substr(0, kErrorPrefix.size()) == kErrorPrefix) {
    failure = parse_failure(text.substr(kErrorPrefix.size()), line_no);
    phase = Phase::Broken;
    return;
  }
  try {
    phase = parse_phase(text);
  } catch (const ConfigError&) {
    csv_error(line_no, "bad phase label '" + std::string(text) + "'");
  }
}

Method parse_method_field(std::string_view text, std::size_t line_no) {
  try {
    return parse_method(text);
  } catch (const ConfigError&) {
    csv_error(line_no, "bad method '" + std::string(text) + "'");
  }
}

template <typename Row, typename ParseRow>
std::vector<Row> parse_table(std::string_view text, std::string_view header, std::size_t columns,
                             ParseRow parse_row) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != header) csv_error(1, "unexpected header");
  std::vector<Row> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i], ',');
    if (fields.size() != columns) csv_error(i + 1, "expected " + std::to_string(columns) + " fields");
    rows.push_back(parse_row(fields, i + 1));
  }
  return rows;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string phase_label(Phase phase, const std::optional<FailureCode>& failure) {
  if (failure) return "error:" + std::string(to_string(*failure));
  return std::string(to_string(phase));
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSpectrumCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_double(r.phi) << ',' << format_double(r.omega) << ',' << format_double(r.gamma)
        << ',' << format_double(r.kappa) << ',' << r.mode << ',' << format_double(r.re_eps) << ','
        << format_double(r.im_eps) << ',' << format_double(r.edge_weight) << ','
        << phase_label(r.phase, r.failure) << ',' << to_string(r.method) << ',' << r.n_floquet
        << '\n';
  }
}

void write_phase_csv(std::ostream& out, const std::vector<PhaseRow>& rows) {
  out << kPhaseCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_double(r.phi) << ',' << format_double(r.gamma) << ',' << format_double(r.omega)
        << ',' << format_double(r.kappa) << ',' << format_double(r.max_im) << ','
        << phase_label(r.phase, r.failure) << ',' << r.zero_modes << ',' << to_string(r.method)
        << ',' << r.n_floquet << '\n';
  }
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  write_sweep_csv(out, rows);
  return out.str();
}

std::string phase_csv(const std::vector<PhaseRow>& rows) {
  std::ostringstream out;
  write_phase_csv(out, rows);
  return out.str();
}

std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
  return parse_table<SweepRow>(text, kSpectrumCsvHeader, 11, [](const auto& f, std::size_t ln) {
    SweepRow r;
    r.phi = parse_double(f[0], ln);
    r.omega = parse_double(f[1], ln);
    r.gamma = parse_double(f[2], ln);
    r.kappa = parse_double(f[3], ln);
    r.mode = parse_int(f[4], ln);
    r.re_eps = parse_double(f[5], ln);
    r.im_eps = parse_double(f[6], ln);
    r.edge_weight = parse_double(f[7], ln);
    parse_phase_field(f[8], ln, r.phase, r.failure);
    r.method = parse_method_field(f[9], ln);
    r.n_floquet = parse_int(f[10], ln);
    if (!r.failure && !(r.edge_weight >= 0.0 && r.edge_weight <= 1.0)) {
      csv_error(ln, "edge_weight outside [0, 1]");
    }
    return r;
  });
}

std::vector<PhaseRow> parse_phase_csv(std::string_view text) {
  return parse_table<PhaseRow>(text, kPhaseCsvHeader, 9, [](const auto& f, std::size_t ln) {
    PhaseRow r;
    r.phi = parse_double(f[0], ln);
    r.gamma = parse_double(f[1], ln);
    r.omega = parse_double(f[2], ln);
    r.kappa = parse_double(f[3], ln);
    r.max_im = parse_double(f[4], ln);
    parse_phase_field(f[5], ln, r.phase, r.failure);
    r.zero_modes = parse_int(f[6], ln);
    r.method = parse_method_field(f[7], ln);
    r.n_floquet = parse_int(f[8], ln);
    return r;
  });
}

std::string reserialize_csv(std::string_view text) {
  const auto first_line = text.substr(0, text.find('\n'));
  if (first_line == kSpectrumCsvHeader) return sweep_csv(parse_sweep_csv(text));
  if (first_line == kPhaseCsvHeader) return phase_csv(parse_phase_csv(text));
  throw ConfigError("csv header matches neither the spectrum nor the phase-diagram schema");
}

nlohmann::json sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"phi", r.phi},
                   {"omega", r.omega},
                   {"gamma", r.gamma},
                   {"kappa", r.kappa},
                   {"mode", r.mode},
                   {"re_eps", std::isnan(r.re_eps) ? nlohmann::json() : nlohmann::json(r.re_eps)},
                   {"im_eps", std::isnan(r.im_eps) ? nlohmann::json() : nlohmann::json(r.im_eps)},
                   {"edge_weight", std::isnan(r.edge_weight) ? nlohmann::json()
                                                             : nlohmann::json(r.edge_weight)},
                   {"phase", phase_label(r.phase, r.failure)},
                   {"method", to_string(r.method)},
                   {"n_floquet", r.n_floquet}});
  }
  return out;
}

nlohmann::json phase_json(const std::vector<PhaseRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"phi", r.phi},
                   {"gamma", r.gamma},
                   {"omega", r.omega},
                   {"kappa", r.kappa},
                   {"max_im", std::isnan(r.max_im) ? nlohmann::json() : nlohmann::json(r.max_im)},
                   {"phase", phase_label(r.phase, r.failure)},
                   {"zero_modes", r.zero_modes},
                   {"method", to_string(r.method)},
                   {"n_floquet", r.n_floquet}});
  }
  return out;
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 56.0;

struct Axes {
  double x0, x1, y0, y1;
  double px(double x) const {
    return kMargin + (x - x0) / (x1 > x0 ? x1 - x0 : 1.0) * (kWidth - 2 * kMargin);
  }
  double py(double y) const {
    return kHeight - kMargin - (y - y0) / (y1 > y0 ? y1 - y0 : 1.0) * (kHeight - 2 * kMargin);
  }
};

void svg_frame(std::ostringstream& svg, const Axes& ax, std::string_view xlabel,
               std::string_view ylabel) {
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
      << "\" height=\"" << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
  char buf[64];
  for (int t = 0; t <= 4; ++t) {
    const double xv = ax.x0 + (ax.x1 - ax.x0) * t / 4.0;
    const double yv = ax.y0 + (ax.y1 - ax.y0) * t / 4.0;
    std::snprintf(buf, sizeof(buf), "%.3g", xv);
    svg << "<text x=\"" << ax.px(xv) << "\" y=\"" << kHeight - kMargin + 16
        << "\" font-size=\"11\" text-anchor=\"middle\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof(buf), "%.3g", yv);
    svg << "<text x=\"" << kMargin - 6 << "\" y=\"" << ax.py(yv) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << buf << "</text>\n";
  }
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" font-size=\"13\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  svg << "<text x=\"16\" y=\"" << kHeight / 2 << "\" font-size=\"13\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 16 " << kHeight / 2 << ")\">" << ylabel << "</text>\n";
}

}  // namespace

std::string render_phi_sweep_svg(const SweepResult& result, double zero_tol) {
  std::map<int, std::vector<const SweepRow*>> by_mode;
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  bool first = true;
  for (const auto& r : result.rows) {
    if (r.failure) continue;
    by_mode[r.mode].push_back(&r);
    if (first) {
      x0 = x1 = r.phi;
      y0 = y1 = r.re_eps;
      first = false;
    }
    x0 = std::min(x0, r.phi);
    x1 = std::max(x1, r.phi);
    y0 = std::min(y0, r.re_eps);
    y1 = std::max(y1, r.re_eps);
  }
  const double pad = 0.05 * std::max(y1 - y0, 1e-9);
  const Axes ax{x0, x1, y0 - pad, y1 + pad};
  std::ostringstream svg;
  svg_frame(svg, ax, "Phi", "Re eps");
  for (const auto& [mode, rows] : by_mode) {
    svg << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
    for (const auto* r : rows) svg << ax.px(r->phi) << ',' << ax.py(r->re_eps) << ' ';
    svg << "\"/>\n";
  }
  for (const auto& r : result.rows) {
    if (r.failure || std::abs(r.re_eps) >= zero_tol || !(r.edge_weight > 0.5)) continue;
    svg << "<circle cx=\"" << ax.px(r.phi) << "\" cy=\"" << ax.py(r.re_eps)
        << "\" r=\"2.5\" fill=\"#d62728\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_phase_diagram_svg(const PhaseDiagramResult& result) {
  std::vector<double> gammas, omegas;
  for (const auto& r : result.rows) {
    gammas.push_back(r.gamma);
    omegas.push_back(r.omega);
  }
  auto unique_sorted = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  gammas = unique_sorted(gammas);
  omegas = unique_sorted(omegas);
  if (gammas.empty()) return {};
  const Axes ax{0.0, static_cast<double>(omegas.size()), 0.0, static_cast<double>(gammas.size())};
  std::ostringstream svg;
  svg_frame(svg, {omegas.front(), omegas.back(), gammas.front(), gammas.back()}, "omega (cell index)",
            "gamma (cell index)");
  const double cw = ax.px(1.0) - ax.px(0.0);
  const double ch = ax.py(0.0) - ax.py(1.0);
  for (const auto& r : result.rows) {
    const auto io = static_cast<double>(
        std::lower_bound(omegas.begin(), omegas.end(), r.omega) - omegas.begin());
    const auto ig = static_cast<double>(
        std::lower_bound(gammas.begin(), gammas.end(), r.gamma) - gammas.begin());
    const char* color = r.failure ? "#999999"
                        : r.phase == Phase::Unbroken
                            ? (r.zero_modes > 0 ? "#2ca02c" : "#9fd89f")
                            : "#d62728";
    svg << "<rect x=\"" << ax.px(io) << "\" y=\"" << ax.py(ig + 1.0) << "\" width=\"" << cw
        << "\" height=\"" << ch << "\" fill=\"" << color << "\" stroke=\"white\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace fssh
