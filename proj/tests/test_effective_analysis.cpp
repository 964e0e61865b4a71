#include <cmath>
#include <numbers>

#include "doctest.h"
#include "floquet_ssh/analysis.hpp"
#include "floquet_ssh/effective.hpp"
#include "floquet_ssh/errors.hpp"
#include "floquet_ssh/linalg.hpp"
#include "oracles.hpp"

using namespace fssh;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("bessel_j0 against the long double series and the standard library") {
  for (int i = 0; i <= 1000; ++i) {
    const double x = 0.01 * i;
    CHECK(std::abs(bessel_j0(x) - static_cast<double>(oracle::bessel_j0_series(x))) < 1e-12);
    CHECK(bessel_j0(-x) == bessel_j0(x));
  }
  for (double x : {10.5, 12.0, 19.9, 20.1, 37.3, 100.0, 1000.0})
    CHECK(std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)) < 1e-12);
  CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-14);
}

TEST_CASE("Jacobi-Anger: J0 is the zeroth Fourier coefficient of exp(i k sin)") {
  for (double kappa : {0.1, 1.0, 2.405, 5.0, 9.0}) {
    const Complex avg = oracle::periodic_trapezoid(
                            [&](double t) { return std::exp(Complex(0.0, kappa * std::sin(t))); },
                            2.0 * kPi, 128) /
                        (2.0 * kPi);
    CHECK(std::abs(avg - bessel_j0(kappa)) < 1e-9);
  }
}

TEST_CASE("effective Hamiltonian rescales the hopping only") {
  ModelParams p;
  p.n_sites = 10;
  p.gamma = 0.3;
  p.kappa = 1.7;
  p.phi_dim = 0.4;
  const auto h = effective_hamiltonian(p);
  const auto want = oracle::ssh_reference(10, bessel_j0(1.7), 0.4, 0.4, 0.3, 2);
  CHECK(oracle::max_abs_diff(h, want) < 1e-15);
}

TEST_CASE("high-frequency Floquet spectrum approaches the effective one") {
  ModelParams p;
  p.n_sites = 8;
  p.gamma = 0.1;
  p.phi_dim = 0.3;
  p.kappa = 1.2;
  double previous = INFINITY;
  for (double omega : {10.0 * kPi, 20.0 * kPi, 40.0 * kPi}) {
    p.omega = omega;
    const auto cmp = compare_floquet_effective(p, 0);
    CHECK(cmp.t_eff == doctest::Approx(bessel_j0(1.2)));
    CHECK(cmp.per_mode_deviation.size() == 8);
    CHECK(cmp.max_quasi_energy_deviation < previous);
    previous = cmp.max_quasi_energy_deviation;
  }
  CHECK(previous < 5e-3);
}

TEST_CASE("effective comparison refuses aliased spectra") {
  ModelParams p;
  p.n_sites = 8;
  p.kappa = 0.2;
  p.omega = 1.0;
  try {
    compare_floquet_effective(p, 4);
    FAIL("expected aliasing");
  } catch (const ConfigError& e) {
    CHECK(e.code() == FailureCode::Aliasing);
  }
}

TEST_CASE("edge weight") {
  std::vector<double> w(20, 0.0);
  w[0] = 0.5;
  w[19] = 0.3;
  w[10] = 0.2;
  CHECK(edge_weight(w, 0.1) == doctest::Approx(0.8));
  std::vector<double> uniform(10, 0.1);
  CHECK(edge_weight(uniform, 0.1) == doctest::Approx(0.2));
  CHECK(edge_weight(uniform, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("classification of static chains") {
  ModelParams p;
  p.n_sites = 40;
  p.phi_dim = 0.3;
  p.gamma = 0.2;
  p.kappa = 0.0;
  const SolverOptions st{.method = Method::Static};
  const auto spec = compute_spectrum(p, st);
  const auto point = classify_pt(spec);
  CHECK(point.phase == Phase::Unbroken);
  CHECK(point.max_im < 1e-8);
  CHECK(point.zero_modes.size() == 2);
  for (const auto& z : point.zero_modes) CHECK(z.edge_weight > 0.9);

  p.phi_dim = kPi;  // trivial dimerization, no edge states
  CHECK(classify_pt(compute_spectrum(p, st)).zero_modes.empty());

  p.phi_dim = 0.3;
  p.gamma = 0.9;
  CHECK(classify_pt(compute_spectrum(p, st)).phase == Phase::Broken);
  CHECK(parse_phase("broken") == Phase::Broken);
  CHECK_THROWS_AS(parse_phase("maybe"), ConfigError);
}

TEST_CASE("Hermitian chains are never broken") {
  for (int n : {7, 12, 31}) {
    ModelParams p;
    p.n_sites = n;
    p.gamma = 0.0;
    p.phi_dim = 0.77;
    CHECK(classify_pt(compute_spectrum(p, {.method = Method::Static})).phase == Phase::Unbroken);
  }
}

TEST_CASE("threshold search") {
  ModelParams p;
  p.n_sites = 40;
  p.phi_dim = 0.3;
  p.impurity_site = 1;
  const auto edge = gamma_pt_threshold(p, 1.0, 1e-4);
  CHECK(edge.gamma_pt == 0.0);
  CHECK(edge.flag == ThresholdFlag::BrokenAtZero);

  p.impurity_site = 2;
  const auto r = gamma_pt_threshold(p, 1.0, 1e-4);
  CHECK(r.flag == ThresholdFlag::None);
  CHECK(r.gamma_pt > 0.0);
  CHECK(r.monotone);
  auto at = [&](double g) {
    ModelParams q = p;
    q.gamma = g;
    return classify_pt(compute_spectrum(q, {.method = Method::Static})).phase;
  };
  CHECK(at(r.gamma_pt - 2e-4) == Phase::Unbroken);
  CHECK(at(r.gamma_pt + 2e-4) == Phase::Broken);

  const auto capped = gamma_pt_threshold(p, r.gamma_pt / 2, 1e-4);
  CHECK(capped.flag == ThresholdFlag::UnbrokenAtMax);
  CHECK(capped.gamma_pt == r.gamma_pt / 2);
  CHECK(to_string(ThresholdFlag::BrokenAtZero) == "broken_at_zero");
}

TEST_CASE("PT residual is small for driven even chains and the check needs samples") {
  ModelParams p;
  p.n_sites = 12;
  p.gamma = 0.2;
  p.kappa = 0.7;
  p.omega = 3.0;
  p.phase0 = 1.1;
  CHECK(check_pt_symmetry(p, 32) < 1e-12);
  CHECK_THROWS(check_pt_symmetry(p, 2));
}
