#include "gcqw/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gcqw {

namespace {
constexpr double kNormTol = 1e-12;

double signed_displacement(int n, int origin, int N) {
  long long rep = (static_cast<long long>(n) - origin) % N;
  if (rep < 0) rep += N;
  if (2 * rep >= N) rep -= N;
  return static_cast<double>(rep);
}
}  // namespace

InitialState InitialState::localized(int site, cplx c0, cplx c1) {
  InitialState s;
  s.site = site;
  s.c0 = c0;
  s.c1 = c1;
  return s;
}

InitialState InitialState::full_vector(std::vector<cplx> amps) {
  InitialState s;
  s.custom = std::move(amps);
  return s;
}

InitialState InitialState::default_state() {
  const double r = 1.0 / std::sqrt(2.0);
  return localized(0, cplx(r, 0.0), cplx(r, 0.0));
}

void InitialState::validate(int N) const {
  if (is_custom()) {
    if (static_cast<int>(custom.size()) != 2 * N)
      throw std::domain_error("initial state: custom vector length " +
                              std::to_string(custom.size()) + " != 2N = " +
                              std::to_string(2 * N));
    double nrm = 0.0;
    for (const auto& a : custom) nrm += std::norm(a);
    if (std::abs(nrm - 1.0) > kNormTol)
      throw std::domain_error("initial state: norm^2 = " + std::to_string(nrm));
    return;
  }
  if (site < 0 || site >= N)
    throw std::domain_error("initial state: site out of range");
  const double nrm = std::norm(c0) + std::norm(c1);
  if (std::abs(nrm - 1.0) > kNormTol)
    throw std::domain_error("initial state: coin norm^2 = " + std::to_string(nrm));
}

void WalkConfig::validate() const {
  if (N < 2) throw std::domain_error("walk: N must be >= 2");
  coin.validate();
  phase.validate(N);
  initial.validate(N);
}

int cycle_length_for(int p, long long t_max) {
  if (p < 1) throw std::domain_error("cycle_length_for: p must be >= 1");
  if (t_max < 0) throw std::domain_error("cycle_length_for: t_max must be >= 0");
  const long long cells = (2 * t_max + 4 + p - 1) / p;
  const long long N = static_cast<long long>(p) * cells;
  if (N > 1'000'000'000LL)
    throw std::domain_error("cycle_length_for: required N exceeds 1e9");
  return static_cast<int>(N);
}

double WalkState::norm_sq() const {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

double return_probability(const WalkState& a, const WalkState& b) {
  if (a.amps.size() != b.amps.size())
    throw std::invalid_argument("return_probability: dimension mismatch");
  cplx ip(0.0, 0.0);
  for (std::size_t i = 0; i < a.amps.size(); ++i)
    ip += std::conj(a.amps[i]) * b.amps[i];
  return std::norm(ip);
}

PositionDistribution position_distribution(const WalkState& state, int origin_site) {
  const int N = state.N;
  PositionDistribution dist;
  dist.prob.resize(N);
  dist.displacement.resize(N);
  for (int n = 0; n < N; ++n) {
    dist.prob[n] = std::norm(state.at(0, n)) + std::norm(state.at(1, n));
    dist.displacement[n] = signed_displacement(n, origin_site, N);
  }
  return dist;
}

double sigma(const PositionDistribution& dist) {
  double mean = 0.0;
  for (std::size_t n = 0; n < dist.prob.size(); ++n)
    mean += dist.prob[n] * dist.displacement[n];
  double var = 0.0;
  for (std::size_t n = 0; n < dist.prob.size(); ++n) {
    const double dx = dist.displacement[n] - mean;
    var += dist.prob[n] * dx * dx;
  }
  return std::sqrt(std::max(0.0, var));
}

Walker::Walker(const WalkConfig& config) : config_(config) {
  config_.validate();
  coin_ = build_coin(config_.coin);
  phases_ = config_.phase.unit_phases(config_.N);
  scratch_.resize(2 * static_cast<std::size_t>(config_.N));
}

WalkState Walker::make_initial() const {
  const int N = config_.N;
  WalkState s;
  s.t = 0;
  s.N = N;
  if (config_.initial.is_custom()) {
    s.amps = config_.initial.custom;
  } else {
    s.amps.assign(2 * static_cast<std::size_t>(N), cplx(0.0, 0.0));
    s.at(0, config_.initial.site) = config_.initial.c0;
    s.at(1, config_.initial.site) = config_.initial.c1;
  }
  return s;
}

void Walker::step(WalkState& state) {
  const int N = config_.N;
  if (state.N != N || state.amps.size() != 2 * static_cast<std::size_t>(N))
    throw std::invalid_argument("walk: state dimensions do not match config");
  const cplx* a0 = state.amps.data();
  const cplx* a1 = a0 + N;
  cplx* b0 = scratch_.data();
  cplx* b1 = b0 + N;
  for (int m = 0; m < N; ++m) {
    const int src = (m == 0) ? N - 1 : m - 1;  // c = 0 came from m-1
    b0[m] = phases_[src] * (coin_.m00 * a0[src] + coin_.m01 * a1[src]);
  }
  for (int m = 0; m < N; ++m) {
    const int src = (m == N - 1) ? 0 : m + 1;  // c = 1 came from m+1
    b1[m] = phases_[src] * (coin_.m10 * a0[src] + coin_.m11 * a1[src]);
  }
  state.amps.swap(scratch_);
  ++state.t;
}

EvolveResult evolve(const WalkConfig& config, long long t_max,
                    const EvolveOptions& options) {
  if (t_max < 0) throw std::invalid_argument("evolve: t_max must be >= 0");
  if (options.cadence < 1) throw std::invalid_argument("evolve: cadence must be >= 1");
  if (options.record_sigma && 2 * t_max >= config.N)
    throw std::invalid_argument(
        "evolve: sigma undefined for t >= N/2 (wraparound corrupts line "
        "statistics); need N > 2*t_max, have N = " + std::to_string(config.N));

  Walker walker(config);
  WalkState state = walker.make_initial();
  const WalkState initial = state;
  const int origin = config.initial.is_custom() ? 0 : config.initial.site;

  EvolveResult result;
  auto snapshots_wanted = options.snapshot_times;
  std::sort(snapshots_wanted.begin(), snapshots_wanted.end());

  auto observe = [&](const WalkState& s) {
    const bool due = (s.t % options.cadence == 0) || s.t == t_max;
    if (due && options.record_return_probability)
      result.return_probability.push(static_cast<double>(s.t),
                                     return_probability(s, initial));
    if (due && options.record_sigma)
      result.sigma.push(static_cast<double>(s.t),
                        sigma(position_distribution(s, origin)));
    if (std::binary_search(snapshots_wanted.begin(), snapshots_wanted.end(), s.t))
      result.snapshots.emplace_back(s.t, position_distribution(s, origin));
    result.norm_drift = std::max(result.norm_drift, std::abs(1.0 - s.norm_sq()));
  };

  observe(state);
  for (long long t = 0; t < t_max; ++t) {
    walker.step(state);
    observe(state);
  }
  result.final_state = std::move(state);
  return result;
}

void evolve_with(const WalkConfig& config, long long t_max,
                 const std::function<void(const WalkState&)>& on_state) {
  Walker walker(config);
  WalkState state = walker.make_initial();
  on_state(state);
  for (long long t = 0; t < t_max; ++t) {
    walker.step(state);
    on_state(state);
  }
}

std::vector<WalkState> run_trajectory(const WalkConfig& config, long long t_max) {
  std::vector<WalkState> traj;
  traj.reserve(static_cast<std::size_t>(t_max) + 1);
  evolve_with(config, t_max, [&](const WalkState& s) { traj.push_back(s); });
  return traj;
}

}  // namespace gcqw
