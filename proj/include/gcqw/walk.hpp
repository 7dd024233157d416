#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "gcqw/coin.hpp"
#include "gcqw/phase.hpp"
#include "gcqw/series.hpp"

namespace gcqw {

/// Initial condition: either a localized site with two coin amplitudes, or a
/// full custom 2N-amplitude vector (c-major: index = c*N + n).
struct InitialState {
  int site = 0;
  cplx c0{1.0, 0.0};
  cplx c1{1.0, 0.0};
  std::vector<cplx> custom;  // empty unless a full vector was supplied

  static InitialState localized(int site, cplx c0, cplx c1);
  static InitialState full_vector(std::vector<cplx> amps);

  /// Default: site 0 with coin amplitudes (1, 1)/sqrt(2). For the Standard
  /// coin this state reproduces the closed-form recurrence probability to
  /// machine precision (see tests); (1, i)/sqrt(2) plays the same role for
  /// the Symmetric coin.
  static InitialState default_state();

  bool is_custom() const { return !custom.empty(); }
  /// Throws std::domain_error if the norm is off by more than 1e-12 or the
  /// site / vector length does not fit an N-cycle.
  void validate(int N) const;
};

struct WalkConfig {
  int N = 2;
  CoinSpec coin;
  PhaseProfile phase = PhaseProfile::constant(0.0);
  InitialState initial = InitialState::default_state();

  void validate() const;
};

/// Cycle length large enough that an N-cycle run reproduces line dynamics for
/// t <= t_max: N = p * ceil((2*t_max + 4) / p). Use p = 1 for non-harmonic
/// profiles.
int cycle_length_for(int p, long long t_max);

/// 2N complex amplitudes alpha_{c,n} at integer time t, stored c-major.
struct WalkState {
  long long t = 0;
  int N = 0;
  std::vector<cplx> amps;

  cplx& at(int c, int n) { return amps[static_cast<std::size_t>(c) * N + n]; }
  const cplx& at(int c, int n) const {
    return amps[static_cast<std::size_t>(c) * N + n];
  }
  double norm_sq() const;
};

/// |<a|b>|^2. Throws std::invalid_argument on dimension mismatch.
double return_probability(const WalkState& a, const WalkState& b);

struct PositionDistribution {
  std::vector<double> prob;          // p_n, indexed by site n
  std::vector<double> displacement;  // signed displacement in [-N/2, N/2)
};

/// Marginal position distribution with displacements unwrapped relative to
/// origin_site.
PositionDistribution position_distribution(const WalkState& state, int origin_site);

/// Standard deviation about the mean displacement.
double sigma(const PositionDistribution& dist);

/// One-step evolution engine for a fixed configuration. Each output amplitude
/// depends on exactly two input amplitudes, so a step costs O(N) and no
/// matrix is ever materialized. An instance drives one trajectory at a time;
/// distinct trajectories need distinct Walkers.
class Walker {
 public:
  explicit Walker(const WalkConfig& config);

  const WalkConfig& config() const { return config_; }
  WalkState make_initial() const;

  /// Applies the walk unitary once: coin, then phased conditional shift
  /// (c = 0 moves n -> n+1, c = 1 moves n -> n-1, phase e^{i phi(n)} taken at
  /// the source site). Increments t.
  void step(WalkState& state);

 private:
  WalkConfig config_;
  CoinMatrix coin_;
  std::vector<cplx> phases_;
  std::vector<cplx> scratch_;
};

struct EvolveOptions {
  bool record_return_probability = true;
  bool record_sigma = false;
  int cadence = 1;  // record every cadence-th step (t = 0 always recorded)
  std::vector<long long> snapshot_times;
};

struct EvolveResult {
  TimeSeries return_probability;
  TimeSeries sigma;
  std::vector<std::pair<long long, PositionDistribution>> snapshots;
  double norm_drift = 0.0;  // max |1 - ||psi||^2| seen along the trajectory
  WalkState final_state;
};

/// Runs t_max steps, recording the requested observables. Deterministic:
/// identical inputs yield bit-identical trajectories. Throws
/// std::invalid_argument when sigma is requested and t_max >= N/2 (wraparound
/// corrupts line statistics, so sigma is undefined there).
EvolveResult evolve(const WalkConfig& config, long long t_max,
                    const EvolveOptions& options = {});

/// Callback flavor: on_state is invoked at every t in [0, t_max].
void evolve_with(const WalkConfig& config, long long t_max,
                 const std::function<void(const WalkState&)>& on_state);

/// Convenience: all t_max + 1 states of a trajectory.
std::vector<WalkState> run_trajectory(const WalkConfig& config, long long t_max);

}  // namespace gcqw
