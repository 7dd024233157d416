#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gcqw/bloch.hpp"
#include "oracles.hpp"

using namespace gcqw;

namespace {
WalkConfig symmetric_config(double D, PhaseProfile phase, long long t_max) {
  WalkConfig config;
  const int p = phase.kind() == PhaseProfile::Kind::Harmonic ? phase.p() : 1;
  config.N = cycle_length_for(p, t_max);
  config.coin = CoinSpec::from_probability(D, CoinVariant::Symmetric);
  config.phase = std::move(phase);
  return config;
}
}  // namespace

TEST_CASE("recursion identity holds for every profile") {
  struct Case {
    double D;
    PhaseProfile phase;
  } cases[] = {
      {0.0, PhaseProfile::harmonic(1, 8)},
      {0.5, PhaseProfile::harmonic(1, 10)},
      {0.5, PhaseProfile::irrational(0.5)},
      {0.36, PhaseProfile::constant(0.0)},
  };
  for (const auto& c : cases) {
    const auto config = symmetric_config(c.D, c.phase, 50);
    const auto traj = run_trajectory(config, 50);
    const auto check = check_recursive_equation(traj, config);
    CHECK(check.max_residual < 1e-10);
  }
}

TEST_CASE("recursion identity is exact only with per-component offsets") {
  // Applying the c = 0 offset pattern to both coin components breaks the
  // identity by O(1) whenever the phase actually varies with the site.
  const auto config = symmetric_config(0.5, PhaseProfile::harmonic(1, 8), 30);
  const auto traj = run_trajectory(config, 30);
  CHECK(check_recursive_equation(traj, config).max_residual < 1e-12);
  CHECK(check_recursive_equation_fixed_offset(traj, config).max_residual > 1e-2);

  // with a flat phase the two patterns coincide
  const auto flat = symmetric_config(0.5, PhaseProfile::constant(0.0), 30);
  const auto flat_traj = run_trajectory(flat, 30);
  CHECK(check_recursive_equation_fixed_offset(flat_traj, flat).max_residual < 1e-12);
}

TEST_CASE("recursion check input validation") {
  auto config = symmetric_config(0.5, PhaseProfile::harmonic(1, 8), 4);
  const auto traj = run_trajectory(config, 4);

  auto standard = config;
  standard.coin.variant = CoinVariant::Standard;
  CHECK_THROWS_AS(check_recursive_equation(traj, standard), std::invalid_argument);

  const std::vector<WalkState> two(traj.begin(), traj.begin() + 2);
  CHECK_THROWS_AS(check_recursive_equation(two, config), std::invalid_argument);
}

TEST_CASE("decoupled modes stay put") {
  const auto result = integrate_coupled_modes(0.5, 0.0, 20.0, 0.01, 5);
  for (const double P : result.P.value) CHECK(std::abs(P - 1.0) < 1e-12);
}

TEST_CASE("coupled modes reproduce the continuum closed form") {
  const double d = 0.5;
  const double t_tilde = 10.0;
  const double Phi = 2.0 * std::numbers::pi / t_tilde;
  const auto result = integrate_coupled_modes(
      Phi, d, 3.0 * t_tilde, std::min(0.01, t_tilde / 1000.0),
      default_mode_truncation(d, t_tilde));
  CHECK(result.step_doubling_delta < 1e-8);
  CHECK(result.norm_drift < 1e-8);
  double worst = 0.0;
  for (std::size_t i = 0; i < result.P.size(); ++i)
    worst = std::max(worst, std::abs(result.P.value[i] -
                                     closed_form_bloch(d, t_tilde, result.P.t[i])));
  CHECK(worst < 1e-6);
}

TEST_CASE("norm is conserved over five periods") {
  const double t_tilde = 10.0;
  const auto result = integrate_coupled_modes(
      2.0 * std::numbers::pi / t_tilde, 0.5, 5.0 * t_tilde, 0.01,
      default_mode_truncation(0.5, t_tilde));
  CHECK(result.norm_drift < 1e-8);
}

TEST_CASE("insufficient truncation is refused with a suggestion") {
  CHECK_THROWS_WITH_AS(
      integrate_coupled_modes(2.0 * std::numbers::pi / 12.0, 0.5, 36.0, 0.01, 3),
      doctest::Contains("increase n_max"), std::runtime_error);
}

TEST_CASE("vanishing field limit approaches the flat-lattice law") {
  // As Phi -> 0 the closed form tends to J0^2(d t); the integrator with a
  // tiny Phi should land on both.
  const double d = 0.5, Phi = 1e-4, t_max = 20.0;
  const auto result = integrate_coupled_modes(Phi, d, t_max, 0.01, 32);
  const double t_tilde = 2.0 * std::numbers::pi / Phi;
  for (std::size_t i = 0; i < result.P.size(); ++i) {
    const double t = result.P.t[i];
    const double j = bessel_j0(d * t);
    CHECK(std::abs(result.P.value[i] - j * j) < 1e-5);
    CHECK(std::abs(result.P.value[i] - closed_form_bloch(d, t_tilde, t)) < 1e-5);
  }
}

TEST_CASE("closed-form continuum values") {
  CHECK(closed_form_bloch(0.5, 10.0, 0.0) == 1.0);
  for (int k = 1; k <= 5; ++k)
    CHECK(std::abs(closed_form_bloch(0.7, 9.0, 9.0 * k) - 1.0) < 1e-12);
  const double t_tilde = 4.0 * std::numbers::pi;
  CHECK(std::abs(closed_form_bloch(0.5, t_tilde, t_tilde / 2.0) -
                 0.050127080984469569) < 1e-12);
  CHECK_THROWS_AS(closed_form_bloch(0.5, 0.0, 1.0), std::domain_error);
}

TEST_CASE("discrete peaks land on integer multiples of a commensurate period") {
  const auto cmp =
      discrete_vs_continuum(0.25, PhaseProfile::harmonic(1, 10), 100);
  REQUIRE(cmp.peaks.size() == 10);
  for (std::size_t i = 0; i < cmp.peaks.size(); ++i) {
    CHECK(cmp.peaks[i].discrete_t == static_cast<long long>(10 * (i + 1)));
    CHECK(cmp.peaks[i].P > 0.8);
  }
  CHECK(cmp.peaks[0].P > 0.99);
}

TEST_CASE("incommensurate period puts maxima on neighboring even steps") {
  const auto cmp = discrete_vs_continuum(0.5, PhaseProfile::irrational(0.5), 102);
  const double t_tilde = 4.0 * std::numbers::pi;
  REQUIRE(cmp.peaks.size() == 8);
  for (std::size_t i = 0; i < cmp.peaks.size(); ++i) {
    const double center = t_tilde * static_cast<double>(i + 1);
    CHECK(std::abs(static_cast<double>(cmp.peaks[i].discrete_t) - center) <= 2.0);
    CHECK(cmp.peaks[i].P > 0.5);
    CHECK(cmp.peaks[i].P <= 1.0);
  }
  // deviation from the continuum curve is reported, not assumed small
  CHECK(cmp.max_deviation_even_t > 0.0);
  CHECK(cmp.max_deviation_even_t < 1.0);
}

TEST_CASE("default truncation radius") {
  CHECK(default_mode_truncation(0.5, 4.0 * std::numbers::pi) == 27);
  CHECK(default_mode_truncation(0.0, 10.0) == 20);
}
