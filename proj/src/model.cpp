#include "floquet_ssh/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "floquet_ssh/errors.hpp"

namespace fssh {

std::string_view to_string(N0Rule rule) {
  switch (rule) {
    case N0Rule::Paper: return "paper";
    case N0Rule::PaperEven: return "paper_even";
    case N0Rule::PaperOdd: return "paper_odd";
    case N0Rule::Centered: return "centered";
  }
  return "paper";
}

N0Rule parse_n0_rule(std::string_view text) {
  if (text == "paper") return N0Rule::Paper;
  if (text == "paper_even") return N0Rule::PaperEven;
  if (text == "paper_odd") return N0Rule::PaperOdd;
  if (text == "centered") return N0Rule::Centered;
  throw ConfigError("unknown n0_rule '" + std::string(text) +
                    "' (expected paper, paper_even, paper_odd or centered)");
}

double ModelParams::period() const { return 2.0 * std::numbers::pi / omega; }

double ModelParams::n0() const {
  switch (n0_rule) {
    case N0Rule::Paper:
      return n_sites % 2 == 0 ? n_sites / 2.0 : (n_sites + 1) / 2.0;
    case N0Rule::PaperEven: return n_sites / 2.0;
    case N0Rule::PaperOdd:
    case N0Rule::Centered: return (n_sites + 1) / 2.0;
  }
  return 0.0;
}

void validate(const ModelParams& p) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (p.n_sites < 2) fail("n_sites must be at least 2");
  for (double v : {p.tunneling, p.lambda, p.phi_dim, p.gamma, p.kappa, p.omega, p.phase0}) {
    if (!std::isfinite(v)) fail("model parameters must be finite");
  }
  if (p.gamma < 0.0) fail("gamma must be nonnegative");
  if (p.kappa < 0.0) fail("kappa must be nonnegative");
  if (p.kappa > 0.0 && p.omega <= 0.0) fail("omega must be positive when kappa > 0");
  if (p.omega < 0.0) fail("omega must be nonnegative");
  if (p.impurity_site < 1 || p.impurity_site > p.loss_site()) {
    fail("impurity_site must satisfy 1 <= j <= N - j + 1");
  }
  if (p.impurity_site == p.loss_site() && p.gamma != 0.0) {
    throw ConfigError("gain and loss placed on the same site (j = N - j + 1) cancel",
                      FailureCode::DegenerateImpurity);
  }
}

double bond_hopping(const ModelParams& p, int n) {
  // cos(pi n + Phi) = (-1)^n cos(Phi)
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return -p.tunneling * (1.0 + p.lambda * sign * std::cos(p.phi_dim));
}

ComplexMatrix build_static_hamiltonian(const ModelParams& p) {
  validate(p);
  const auto n = static_cast<std::size_t>(p.n_sites);
  ComplexMatrix h(n);
  for (int bond = 1; bond < p.n_sites; ++bond) {
    const double t = bond_hopping(p, bond);
    const auto i = static_cast<std::size_t>(bond - 1);
    h(i, i + 1) = t;
    h(i + 1, i) = t;
  }
  h(static_cast<std::size_t>(p.impurity_site - 1), static_cast<std::size_t>(p.impurity_site - 1)) +=
      Complex(0.0, p.gamma);
  h(static_cast<std::size_t>(p.loss_site() - 1), static_cast<std::size_t>(p.loss_site() - 1)) -=
      Complex(0.0, p.gamma);
  return h;
}

ComplexMatrix drive_operator(const ModelParams& p) {
  validate(p);
  const auto n = static_cast<std::size_t>(p.n_sites);
  const double n0 = p.n0();
  ComplexMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = static_cast<double>(i + 1) - n0;
  return d;
}

double drive_value(double z, const ModelParams& p) {
  if (p.kappa == 0.0) return 0.0;
  return p.kappa * p.omega * std::sin(p.omega * z + p.phase0);
}

ComplexMatrix hamiltonian_at(double z, const ModelParams& p) {
  return hamiltonian_at(z, p, build_static_hamiltonian(p), drive_operator(p));
}

ComplexMatrix hamiltonian_at(double z, const ModelParams& p, const ComplexMatrix& h_static,
                             const ComplexMatrix& drive) {
  ComplexMatrix h = h_static;
  const double f = drive_value(z, p);
  for (std::size_t i = 0; i < h.dim(); ++i) h(i, i) += f * drive(i, i);
  return h;
}

}  // namespace fssh
