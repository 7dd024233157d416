#include "gcqw/analytics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gcqw/spectral.hpp"

namespace gcqw {

namespace {

double j0_power_series(double x) {
  const double x2 = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m <= 200; ++m) {
    term *= x2 / (static_cast<double>(m) * m);
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

// Hankel expansion: J0(x) = sqrt(2/(pi x)) [P cos(x - pi/4) - Q sin(x - pi/4)]
// with P = sum_m (-1)^m t_{2m}, Q = sum_m (-1)^m t_{2m+1} and
// t_k = prod_{j=1..k} -(2j-1)^2 / (8 j x). Terms are summed while they keep
// shrinking (the series is asymptotic).
double j0_asymptotic(double x) {
  double t = 1.0;
  double P = 1.0, Q = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 30; ++k) {
    const double f = 2.0 * k - 1.0;
    t *= -(f * f) / (8.0 * k * x);
    if (std::abs(t) >= prev) break;
    prev = std::abs(t);
    const int m = k / 2;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 1)
      Q += sign * t;
    else
      P += sign * t;
    if (std::abs(t) < 1e-18) break;
  }
  const double chi = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) *
         (P * std::cos(chi) - Q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  return (x <= 12.0) ? j0_power_series(x) : j0_asymptotic(x);
}

double predict_PT(double D, int p) {
  const double D_eff = effective(std::sqrt(D), p).second;
  const double f = 1.0 - D_eff;
  return f * f;
}

double predict_PkT(double D, int p, int k) {
  if (k < 0) throw std::domain_error("predict_PkT: k must be >= 0");
  const double D_eff = effective(std::sqrt(D), p).second;
  const double j = bessel_j0(2.0 * k * std::sqrt(D_eff));
  return j * j;
}

double tau(double D, int p) {
  const double D_eff = effective(std::sqrt(D), p).second;
  if (D_eff == 0.0) return std::numeric_limits<double>::infinity();
  return 1.2 * period_T(p) / std::sqrt(D_eff);
}

double sigma_slope(double D, int p) {
  const double D_eff = effective(std::sqrt(D), p).second;
  // sqrt(1 - sqrt(1 - x)) in a cancellation-free form.
  return std::sqrt(D_eff / (1.0 + std::sqrt(1.0 - D_eff)));
}

double predict_sigma(double D, int p, double t) { return t * sigma_slope(D, p); }

double sigma_max(double D, double t_tilde) {
  if (!(t_tilde > 0.0)) throw std::domain_error("sigma_max: T_tilde must be > 0");
  return 0.5 * t_tilde * std::sqrt(D / (1.0 + std::sqrt(1.0 - D)));
}

double PredictionSet::P_kT(int k) const { return predict_PkT(D, p, k); }
double PredictionSet::sigma_of_t(double t) const { return predict_sigma(D, p, t); }
double PredictionSet::sigma_max_of(double t_tilde) const {
  return gcqw::sigma_max(D, t_tilde);
}

PredictionSet make_prediction_set(double D, int p, int q) {
  PredictionSet ps;
  ps.D = D;
  ps.p = p;
  ps.q = q;
  ps.T = period_T(p);
  ps.D_eff = effective(std::sqrt(D), p).second;
  ps.P_T = predict_PT(D, p);
  ps.tau = gcqw::tau(D, p);
  return ps;
}

std::vector<RecurrenceEvent> find_recurrences(const TimeSeries& series,
                                              double t_tilde, double threshold,
                                              int* skipped_windows) {
  if (!(t_tilde > 0.0))
    throw std::domain_error("find_recurrences: T_tilde must be > 0");
  if (skipped_windows != nullptr) *skipped_windows = 0;
  if (series.empty()) return {};
  const double t_end = series.t.back();

  std::vector<RecurrenceEvent> events;
  for (int k = 1; k * t_tilde <= t_end; ++k) {
    const double center = k * t_tilde;
    const double lo = center - t_tilde / 4.0;
    const double hi = center + t_tilde / 4.0;
    bool found = false;
    RecurrenceEvent best;
    for (std::size_t i = 0; i < series.size(); ++i) {
      const double t = series.t[i];
      const long long ti = static_cast<long long>(std::llround(t));
      if (t < lo || t > hi || ti % 2 != 0) continue;
      if (!found || series.value[i] > best.P) {
        best.t = ti;
        best.P = series.value[i];
        found = true;
      }
    }
    if (!found) {  // window holds no even sample
      if (skipped_windows != nullptr) ++*skipped_windows;
      continue;
    }
    best.kind = (best.P >= threshold) ? RecurrenceEvent::Kind::Perfect
                                      : RecurrenceEvent::Kind::Imperfect;
    best.predicted_t = center;
    events.push_back(best);
  }
  return events;
}

}  // namespace gcqw
