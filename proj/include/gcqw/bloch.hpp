#pragma once

#include <span>
#include <vector>

#include "gcqw/analytics.hpp"
#include "gcqw/series.hpp"
#include "gcqw/walk.hpp"

namespace gcqw {

struct RecursionCheck {
  double max_residual = 0.0;
  long long worst_t = 0;
  int worst_c = 0;
  int worst_n = 0;
};

/// Verifies that a Symmetric-coin trajectory satisfies the exact three-term
/// recursion that closes on each coin component separately:
///
///   a_{c,n}(t+1) - a_{c,n}(t-1) =
///       (e^{i(phi(n) + phi(n'))} - 1) a_{c,n}(t-1)
///     + i d e^{i phi(n')} (a_{c,n-1}(t) + a_{c,n+1}(t)),
///
/// where n' = n - (-1)^c is the source site of component c. This is an
/// algebraic identity of the step operator, so the residual is at rounding
/// level for any phase profile. Throws std::invalid_argument for
/// Standard-coin trajectories (the identity is derived for the Symmetric
/// coin) or fewer than three states.
RecursionCheck check_recursive_equation(std::span<const WalkState> trajectory,
                                        const WalkConfig& config);

/// Same recursion but with the c = 0 offset pattern (n' = n - 1) applied to
/// both components. Exact for c = 0 only; the c = 1 residual it reports
/// quantifies how convention-sensitive the index pattern is.
RecursionCheck check_recursive_equation_fixed_offset(
    std::span<const WalkState> trajectory, const WalkConfig& config);

/// Default truncation radius ceil(d * T_tilde) + 20: the oscillation
/// amplitude is O(d * T_tilde / pi), the margin keeps boundary leakage
/// negligible.
int default_mode_truncation(double d, double t_tilde);

struct CoupledModeResult {
  TimeSeries P;                     // |alpha_0(t)|^2 at integer t
  double norm_drift = 0.0;          // max |1 - sum |alpha|^2|
  double max_leakage = 0.0;         // max over time of |alpha_{+-n_max}|^2
  double step_doubling_delta = 0.0; // |P(t_max)| change when dt is halved
};

/// Integrates d(alpha_n)/dt = i n Phi alpha_n + (i d / 2)(alpha_{n-1} +
/// alpha_{n+1}) on n in [-n_max, n_max] from alpha_n(0) = delta_{n,0} with a
/// fixed-step classical 4th-order scheme. dt is snapped to divide the unit
/// sampling interval exactly. A step-doubling verification runs always;
/// callers gate on step_doubling_delta < 1e-8. Throws std::runtime_error if
/// boundary leakage exceeds 1e-8, naming a sufficient n_max.
CoupledModeResult integrate_coupled_modes(double Phi, double d, double t_max,
                                          double dt, int n_max);

/// Exact continuum return probability J0^2[(d T_tilde / pi) sin(pi t / T_tilde)].
double closed_form_bloch(double d, double t_tilde, double t);

struct PeakMatch {
  double continuum_t = 0.0;  // k * T_tilde
  long long discrete_t = 0;  // even-t maximum of P near it
  double P = 0.0;
};

struct ContinuumComparison {
  std::vector<PeakMatch> peaks;
  double max_deviation_even_t = 0.0;  // max |P_discrete - P_continuum|, even t
  TimeSeries discrete_P;              // every t in [0, t_max]
};

/// Runs a Symmetric-coin walk for the profile's phase step and pairs its
/// return probability with the continuum closed form.
ContinuumComparison discrete_vs_continuum(double D, const PhaseProfile& phase,
                                          long long t_max);

}  // namespace gcqw
