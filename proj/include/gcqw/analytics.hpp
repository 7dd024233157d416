#pragma once

#include <vector>

#include "gcqw/series.hpp"

namespace gcqw {

/// Bessel function of the first kind, order zero. Power series for
/// |x| <= 12, Hankel asymptotic expansion beyond; absolute error <= 1e-10
/// for |x| <= 50.
double bessel_j0(double x);

/// First positive root of J0.
inline constexpr double kBesselJ0FirstRoot = 2.404825557695773;

/// P(T) = (1 - D_eff)^2.
double predict_PT(double D, int p);

/// P(kT) = J0^2(2 k sqrt(D_eff)).
double predict_PkT(double D, int p, int k);

/// Recurrence decay time 1.2 * T * D_eff^{-1/2}. Returns +infinity for
/// D = 0 (recurrences never decay).
double tau(double D, int p);

/// Ballistic slope sqrt(1 - sqrt(1 - D_eff)).
double sigma_slope(double D, int p);

/// sigma(t) = t * sigma_slope(D, p).
double predict_sigma(double D, int p, double t);

/// Localization length bound (T_tilde / 2) * sqrt(1 - sqrt(1 - D)).
/// Note: uses the bare D, not D_eff.
double sigma_max(double D, double t_tilde);

/// Closed-form values bundled for a parameter point.
struct PredictionSet {
  double D = 0.0;
  int p = 1;
  int q = 1;
  int T = 1;
  double D_eff = 0.0;
  double P_T = 1.0;
  double tau = 0.0;

  double P_kT(int k) const;
  double sigma_of_t(double t) const;
  double sigma_max_of(double t_tilde) const;
};

PredictionSet make_prediction_set(double D, int p, int q);

struct RecurrenceEvent {
  long long t = 0;
  double P = 0.0;
  enum class Kind { Perfect, Imperfect } kind = Kind::Imperfect;
  double predicted_t = 0.0;  // the continuum time k * T_tilde it shadows
};

/// Scans a P(t) series (integer t) for recurrences: for each k >= 1 with
/// k*T_tilde inside the series, reports the maximum of P over even t within
/// k*T_tilde +- T_tilde/4. kind = Perfect when P >= threshold. Windows with
/// no even sample are skipped; pass skipped_windows to learn how many.
std::vector<RecurrenceEvent> find_recurrences(const TimeSeries& series,
                                              double t_tilde,
                                              double threshold = 0.99,
                                              int* skipped_windows = nullptr);

}  // namespace gcqw
