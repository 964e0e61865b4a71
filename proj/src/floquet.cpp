#include "floquet_ssh/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "floquet_ssh/errors.hpp"
#include "floquet_ssh/linalg.hpp"
#include "floquet_ssh/matching.hpp"

namespace fssh {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::ExtendedMatrix: return "extended";
    case Method::Propagator: return "propagator";
    case Method::StaticEffective: return "static_effective";
    case Method::Static: return "static";
  }
  return "static";
}

Method parse_method(std::string_view text) {
  if (text == "extended") return Method::ExtendedMatrix;
  if (text == "propagator") return Method::Propagator;
  if (text == "static_effective" || text == "effective") return Method::StaticEffective;
  if (text == "static") return Method::Static;
  throw ConfigError("unknown method '" + std::string(text) +
                    "' (expected extended, propagator, static_effective or static)");
}

namespace {

constexpr Complex kI{0.0, 1.0};

std::vector<double> unit_weights(std::span<const Complex> amplitudes) {
  std::vector<double> w(amplitudes.size());
  double total = 0.0;
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    w[i] = std::norm(amplitudes[i]);
    total += w[i];
  }
  if (total > 0.0)
    for (auto& x : w) x /= total;
  return w;
}

// Sorts quasi-energies (and their weight rows) with spectral_less.
void sort_spectrum(FloquetSpectrum& s) {
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return spectral_less(s.quasi_energies[a], s.quasi_energies[b]);
  });
  std::vector<Complex> qe(s.size());
  std::vector<std::vector<double>> w(s.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    qe[k] = s.quasi_energies[order[k]];
    w[k] = std::move(s.mode_weights[order[k]]);
  }
  s.quasi_energies = std::move(qe);
  s.mode_weights = std::move(w);
}

// Largest |<shift_s(a), b>| over nonzero block shifts s.
double max_replica_overlap(std::span<const Complex> a, std::span<const Complex> b,
                           std::size_t n_sites, std::size_t n_blocks) {
  double best = 0.0;
  const auto blocks = static_cast<std::ptrdiff_t>(n_blocks);
  for (std::ptrdiff_t s = -(blocks - 1); s < blocks; ++s) {
    if (s == 0) continue;
    Complex overlap{};
    for (std::ptrdiff_t blk = 0; blk < blocks; ++blk) {
      const std::ptrdiff_t other = blk + s;
      if (other < 0 || other >= blocks) continue;
      const Complex* pa = a.data() + blk * static_cast<std::ptrdiff_t>(n_sites);
      const Complex* pb = b.data() + other * static_cast<std::ptrdiff_t>(n_sites);
      for (std::size_t i = 0; i < n_sites; ++i) overlap += std::conj(pa[i]) * pb[i];
    }
    best = std::max(best, std::abs(overlap));
  }
  return best;
}

}  // namespace

Complex drive_fourier_plus(const ModelParams& p) {
  return p.kappa * p.omega / (2.0 * kI) * std::exp(kI * p.phase0);
}

Complex drive_fourier_minus(const ModelParams& p) {
  return -p.kappa * p.omega / (2.0 * kI) * std::exp(-kI * p.phase0);
}

ComplexMatrix build_floquet_matrix(const ModelParams& p, int n_floquet, std::size_t dim_cap) {
  if (n_floquet < 1) throw ConfigError("n_floquet must be at least 1");
  validate(p);
  const auto n = static_cast<std::size_t>(p.n_sites);
  const auto blocks = static_cast<std::size_t>(2 * n_floquet + 1);
  if (n * blocks > dim_cap) {
    throw SolverError(FailureCode::DimensionCap,
                      "extended Floquet matrix dimension " + std::to_string(n * blocks) +
                          " exceeds cap " + std::to_string(dim_cap));
  }
  const ComplexMatrix h0 = build_static_hamiltonian(p);
  const ComplexMatrix d = drive_operator(p);
  const Complex c_plus = drive_fourier_plus(p);
  const Complex c_minus = drive_fourier_minus(p);

  ComplexMatrix f(n * blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const double m = static_cast<double>(b) - n_floquet;
    const std::size_t off = b * n;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) f(off + i, off + j) = h0(i, j);
    for (std::size_t i = 0; i < n; ++i) f(off + i, off + i) += m * p.omega;
    if (b + 1 < blocks) {
      const std::size_t next = off + n;
      for (std::size_t i = 0; i < n; ++i) {
        f(next + i, off + i) = c_plus * d(i, i);   // m - m' = +1
        f(off + i, next + i) = c_minus * d(i, i);  // m - m' = -1
      }
    }
  }
  return f;
}

FloquetSpectrum quasi_energies_extended(const ModelParams& p, int n_floquet,
                                        std::size_t dim_cap) {
  const ComplexMatrix f = build_floquet_matrix(p, n_floquet, dim_cap);
  const Spectrum eig = eig_dense(f);
  const auto n = static_cast<std::size_t>(p.n_sites);
  const auto blocks = static_cast<std::size_t>(2 * n_floquet + 1);
  const std::size_t central = static_cast<std::size_t>(n_floquet) * n;
  const std::size_t dim = f.dim();

  std::vector<double> central_weight(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const auto v = eig.eigenvectors.column(k);
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) w += std::norm(v[central + i]);
    central_weight[k] = w;
  }
  std::vector<std::size_t> candidates(dim);
  std::iota(candidates.begin(), candidates.end(), std::size_t{0});
  std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    return central_weight[a] > central_weight[b];
  });

  FloquetSpectrum out;
  out.params = p;
  out.method = Method::ExtendedMatrix;
  out.n_floquet = n_floquet;
  out.omega = p.omega;

  std::vector<std::size_t> selected;
  std::vector<Complex> folded;
  std::size_t next = 0;
  for (; next < candidates.size() && selected.size() < n; ++next) {
    const std::size_t k = candidates[next];
    const Complex lambda = eig.eigenvalues[k];
    const Complex eps(fold_into_zone(lambda.real(), p.omega), lambda.imag());
    bool replica = false;
    for (std::size_t s = 0; s < selected.size() && !replica; ++s) {
      if (quasi_distance(eps, folded[s], p.omega) > 1e-3) continue;
      replica = max_replica_overlap(eig.eigenvectors.column(selected[s]),
                                    eig.eigenvectors.column(k), n, blocks) > 0.99;
    }
    if (replica) continue;
    selected.push_back(k);
    folded.push_back(eps);
  }
  if (selected.size() < n) {
    throw SolverError(FailureCode::NonConvergence, "physical mode selection found too few modes");
  }
  if (next < candidates.size() &&
      central_weight[selected.back()] - central_weight[candidates[next]] < 1e-6) {
    std::ostringstream msg;
    msg << "selection ambiguity: last selected m=0 weight " << central_weight[selected.back()]
        << " vs runner-up " << central_weight[candidates[next]];
    out.diagnostics.push_back(msg.str());
  }

  for (std::size_t s = 0; s < selected.size(); ++s) {
    out.quasi_energies.push_back(folded[s]);
    out.mode_weights.push_back(
        unit_weights(eig.eigenvectors.column(selected[s]).subspan(central, n)));
  }
  sort_spectrum(out);
  return out;
}

int default_propagator_steps(const ModelParams& p) {
  const ComplexMatrix h0 = build_static_hamiltonian(p);
  double max_offset = 0.0;
  const double n0 = p.n0();
  for (int site = 1; site <= p.n_sites; ++site) max_offset = std::max(max_offset, std::abs(site - n0));
  const double h_norm = h0.norm1() + p.kappa * p.omega * max_offset;
  const double steps = std::ceil(64.0 * h_norm * p.period());
  return static_cast<int>(std::max(1024.0, std::min(steps, 1e8)));
}

FloquetSpectrum quasi_energies_propagator(const ModelParams& p, int n_steps) {
  if (n_steps < 100) throw ConfigError("n_steps must be at least 100");
  validate(p);
  if (!(p.omega > 0.0)) throw ConfigError("propagator method needs omega > 0");
  const ComplexMatrix h0 = build_static_hamiltonian(p);
  const ComplexMatrix d = drive_operator(p);
  const auto n = h0.dim();
  const double period = p.period();
  const double dz = period / n_steps;

  ComplexMatrix u = ComplexMatrix::identity(n);
  for (int k = 0; k < n_steps; ++k) {
    const double z = (k + 0.5) * dz;
    ComplexMatrix step = hamiltonian_at(z, p, h0, d);
    step *= Complex(0.0, -dz);
    u = matmul(expm(step), u);
  }

  const EigenLogs logs = logm_eig_decomposed(u);
  FloquetSpectrum out;
  out.params = p;
  out.method = Method::Propagator;
  out.n_steps = n_steps;
  out.omega = p.omega;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex eps = kI * logs.logs[k] / period;
    out.quasi_energies.emplace_back(fold_into_zone(eps.real(), p.omega), eps.imag());
    out.mode_weights.push_back(unit_weights(logs.spectrum.eigenvectors.column(k)));
  }
  if (logs.eigenvector_condition > 1e8) {
    out.diagnostics.push_back("ill-conditioned propagator eigenvectors (cond " +
                              std::to_string(logs.eigenvector_condition) + ")");
  }
  sort_spectrum(out);
  return out;
}

FloquetSpectrum quasi_energies_propagator_converged(const ModelParams& p, int start_steps,
                                                    double tol, int max_steps) {
  int steps = std::max(start_steps, 100);
  FloquetSpectrum coarse = quasi_energies_propagator(p, steps);
  while (true) {
    if (steps > max_steps / 2) {
      throw SolverError(FailureCode::StepNonConvergence,
                        "propagator not converged at " + std::to_string(steps) + " steps");
    }
    steps *= 2;
    FloquetSpectrum fine = quasi_energies_propagator(p, steps);
    const double delta = spectrum_distance(coarse, fine);
    if (delta < tol) {
      fine.diagnostics.push_back("step doubling delta " + std::to_string(delta));
      return fine;
    }
    coarse = std::move(fine);
  }
}

double spectrum_distance(const FloquetSpectrum& a, const FloquetSpectrum& b) {
  return max_matched_distance(a.quasi_energies, b.quasi_energies, std::max(a.omega, b.omega));
}

NfConvergence converge_nf_detailed(const ModelParams& p, double tol, std::size_t dim_cap) {
  if (!(tol > 0.0)) throw ConfigError("convergence tolerance must be positive");
  std::map<int, FloquetSpectrum> cache;
  auto spectrum_at = [&](int nf) -> const FloquetSpectrum& {
    auto it = cache.find(nf);
    if (it == cache.end()) it = cache.emplace(nf, quasi_energies_extended(p, nf, dim_cap)).first;
    return it->second;
  };
  double last_delta = std::numeric_limits<double>::infinity();
  auto delta_at = [&](int nf) {
    try {
      last_delta = spectrum_distance(spectrum_at(nf), spectrum_at(nf + 2));
    } catch (const SolverError& e) {
      if (e.code() != FailureCode::DimensionCap) throw;
      throw SolverError(FailureCode::DimensionCap,
                        std::string(e.what()) + "; last N_F delta " + std::to_string(last_delta));
    }
    return last_delta;
  };

  int failing = 0;
  int nf = 2;
  while (true) {
    if (nf > kMaxFloquetHarmonics) {
      throw SolverError(FailureCode::NfCapExceeded,
                        "N_F cap exceeded; last delta " + std::to_string(last_delta));
    }
    if (delta_at(nf) < tol) break;
    failing = nf;
    nf *= 2;
  }
  double passing_delta = last_delta;
  int lo = failing;
  int hi = nf;
  while (lo > 0 && hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    const double d = delta_at(mid);
    if (d < tol) {
      hi = mid;
      passing_delta = d;
    } else {
      lo = mid;
    }
  }
  return {hi, passing_delta};
}

int converge_nf(const ModelParams& p, double tol, std::size_t dim_cap) {
  return converge_nf_detailed(p, tol, dim_cap).n_floquet;
}

FloquetSpectrum spectrum_of_hamiltonian(const ComplexMatrix& h, const ModelParams& p,
                                        Method method) {
  const Spectrum eig = eig_dense(h);
  FloquetSpectrum out;
  out.params = p;
  out.method = method;
  out.omega = 0.0;
  out.quasi_energies = eig.eigenvalues;
  for (std::size_t k = 0; k < h.dim(); ++k)
    out.mode_weights.push_back(unit_weights(eig.eigenvectors.column(k)));
  return out;
}

}  // namespace fssh
