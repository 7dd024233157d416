#include "gcqw/bloch.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gcqw {

namespace {

RecursionCheck run_recursion_check(std::span<const WalkState> trajectory,
                                   const WalkConfig& config, bool per_component_offset) {
  if (config.coin.variant != CoinVariant::Symmetric)
    throw std::invalid_argument(
        "recursion check: derived for the Symmetric coin; Standard-coin "
        "trajectories are unsupported");
  if (trajectory.size() < 3)
    throw std::invalid_argument("recursion check: need >= 3 consecutive states");
  const int N = config.N;
  const auto phases = config.phase.unit_phases(N);
  const double d = config.coin.d;

  RecursionCheck check;
  for (std::size_t i = 1; i + 1 < trajectory.size(); ++i) {
    const WalkState& prev = trajectory[i - 1];
    const WalkState& cur = trajectory[i];
    const WalkState& next = trajectory[i + 1];
    if (prev.N != N || cur.N != N || next.N != N)
      throw std::invalid_argument("recursion check: state/config size mismatch");
    for (int c = 0; c < 2; ++c) {
      // Source site of component c: n-1 for c = 0, n+1 for c = 1.
      const int offset = per_component_offset ? ((c == 0) ? -1 : +1) : -1;
      for (int n = 0; n < N; ++n) {
        const int n_src = (n + offset + N) % N;
        const int nm = (n + N - 1) % N;
        const int np = (n + 1) % N;
        const cplx lhs = next.at(c, n) - prev.at(c, n);
        const cplx rhs = (phases[n] * phases[n_src] - 1.0) * prev.at(c, n) +
                         cplx(0.0, d) * phases[n_src] *
                             (cur.at(c, nm) + cur.at(c, np));
        const double resid = std::abs(lhs - rhs);
        if (resid > check.max_residual) {
          check.max_residual = resid;
          check.worst_t = cur.t;
          check.worst_c = c;
          check.worst_n = n;
        }
      }
    }
  }
  return check;
}

}  // namespace

RecursionCheck check_recursive_equation(std::span<const WalkState> trajectory,
                                        const WalkConfig& config) {
  return run_recursion_check(trajectory, config, true);
}

RecursionCheck check_recursive_equation_fixed_offset(
    std::span<const WalkState> trajectory, const WalkConfig& config) {
  return run_recursion_check(trajectory, config, false);
}

int default_mode_truncation(double d, double t_tilde) {
  return static_cast<int>(std::ceil(std::abs(d) * std::abs(t_tilde))) + 20;
}

namespace {

// One integration pass; samples |alpha_0|^2 at integer times.
struct OdePass {
  TimeSeries P;
  double norm_drift = 0.0;
  double max_leakage = 0.0;
  double final_P = 0.0;
};

OdePass integrate_once(double Phi, double d, long long units, int steps_per_unit,
                       int n_max) {
  const int dim = 2 * n_max + 1;
  const double dt = 1.0 / steps_per_unit;
  std::vector<cplx> a(dim, cplx(0.0, 0.0));
  a[n_max] = cplx(1.0, 0.0);
  std::vector<cplx> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

  auto rhs = [&](const std::vector<cplx>& y, std::vector<cplx>& out) {
    for (int i = 0; i < dim; ++i) {
      const double n = static_cast<double>(i - n_max);
      cplx v = cplx(0.0, n * Phi) * y[i];
      if (i > 0) v += cplx(0.0, 0.5 * d) * y[i - 1];
      if (i + 1 < dim) v += cplx(0.0, 0.5 * d) * y[i + 1];
      out[i] = v;
    }
  };

  OdePass pass;
  pass.P.push(0.0, 1.0);
  for (long long unit = 0; unit < units; ++unit) {
    for (int s = 0; s < steps_per_unit; ++s) {
      rhs(a, k1);
      for (int i = 0; i < dim; ++i) tmp[i] = a[i] + 0.5 * dt * k1[i];
      rhs(tmp, k2);
      for (int i = 0; i < dim; ++i) tmp[i] = a[i] + 0.5 * dt * k2[i];
      rhs(tmp, k3);
      for (int i = 0; i < dim; ++i) tmp[i] = a[i] + dt * k3[i];
      rhs(tmp, k4);
      for (int i = 0; i < dim; ++i)
        a[i] += dt / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
    }
    double norm = 0.0;
    for (const auto& x : a) norm += std::norm(x);
    pass.norm_drift = std::max(pass.norm_drift, std::abs(1.0 - norm));
    pass.max_leakage =
        std::max({pass.max_leakage, std::norm(a.front()), std::norm(a.back())});
    pass.P.push(static_cast<double>(unit + 1), std::norm(a[n_max]));
  }
  pass.final_P = pass.P.value.back();
  return pass;
}

}  // namespace

CoupledModeResult integrate_coupled_modes(double Phi, double d, double t_max,
                                          double dt, int n_max) {
  if (!(t_max >= 1.0)) throw std::domain_error("coupled modes: t_max must be >= 1");
  if (!(dt > 0.0)) throw std::domain_error("coupled modes: dt must be > 0");
  if (n_max < 1) throw std::domain_error("coupled modes: n_max must be >= 1");

  const long long units = static_cast<long long>(std::ceil(t_max - 1e-12));
  const int steps_per_unit = std::max(1, static_cast<int>(std::lround(1.0 / dt)));

  const OdePass fine = integrate_once(Phi, d, units, 2 * steps_per_unit, n_max);
  const OdePass coarse = integrate_once(Phi, d, units, steps_per_unit, n_max);

  CoupledModeResult result;
  result.P = coarse.P;
  result.norm_drift = coarse.norm_drift;
  result.max_leakage = std::max(coarse.max_leakage, fine.max_leakage);
  result.step_doubling_delta = std::abs(coarse.final_P - fine.final_P);
  if (result.max_leakage > 1e-8)
    throw std::runtime_error(
        "coupled modes: boundary leakage " + std::to_string(result.max_leakage) +
        " exceeds 1e-8; increase n_max to at least " +
        std::to_string(n_max + 20));
  return result;
}

double closed_form_bloch(double d, double t_tilde, double t) {
  if (!(t_tilde > 0.0))
    throw std::domain_error("closed_form_bloch: T_tilde must be > 0");
  const double arg = d * t_tilde / std::numbers::pi *
                     std::sin(std::numbers::pi * t / t_tilde);
  const double j = bessel_j0(arg);
  return j * j;
}

ContinuumComparison discrete_vs_continuum(double D, const PhaseProfile& phase,
                                          long long t_max) {
  if (!phase.has_period())
    throw std::invalid_argument("discrete_vs_continuum: phase step must be nonzero");
  const double d = std::sqrt(D);
  const double t_tilde = phase.t_tilde();

  WalkConfig config;
  config.N = cycle_length_for(
      phase.kind() == PhaseProfile::Kind::Harmonic ? phase.p() : 1, t_max);
  config.coin = CoinSpec{d, CoinVariant::Symmetric};
  config.phase = phase;
  config.initial = InitialState::default_state();

  EvolveOptions options;
  options.record_return_probability = true;
  const EvolveResult run = evolve(config, t_max, options);

  ContinuumComparison cmp;
  cmp.discrete_P = run.return_probability;
  for (std::size_t i = 0; i < run.return_probability.size(); ++i) {
    const long long t = static_cast<long long>(run.return_probability.t[i]);
    if (t % 2 != 0) continue;
    const double dev = std::abs(run.return_probability.value[i] -
                                closed_form_bloch(d, t_tilde, run.return_probability.t[i]));
    cmp.max_deviation_even_t = std::max(cmp.max_deviation_even_t, dev);
  }
  for (const auto& ev : find_recurrences(run.return_probability, t_tilde, 0.99))
    cmp.peaks.push_back({ev.predicted_t, ev.t, ev.P});
  return cmp;
}

}  // namespace gcqw
