// Deterministic experiment runner for the generalized coined quantum walk
// toolkit: every analysis is a subcommand emitting CSV/JSON tables.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gcqw/analytics.hpp"
#include "gcqw/bloch.hpp"
#include "gcqw/spectral.hpp"
#include "gcqw/table_writer.hpp"
#include "gcqw/walk.hpp"

namespace {

using gcqw::Cell;
using gcqw::cplx;
using gcqw::TableWriter;

constexpr int kExitValidation = 2;
constexpr long long kMaxSites = 8'000'000;  // memory budget for one trajectory

struct ValidationFailure {
  std::string check;
  double value;
  double limit;
};

void emit_diagnostic(const ValidationFailure& f) {
  nlohmann::ordered_json j;
  j["error"] = "validation";
  j["check"] = f.check;
  j["value"] = f.value;
  j["limit"] = f.limit;
  std::cerr << j.dump() << "\n";
}

struct CommonOpts {
  std::string out = "-";
  std::string format = "csv";
  std::string coin = "standard";
  std::string initial;

  gcqw::OutputFormat output_format() const {
    return format == "json" ? gcqw::OutputFormat::Json : gcqw::OutputFormat::Csv;
  }
  gcqw::CoinVariant coin_variant() const {
    return coin == "symmetric" ? gcqw::CoinVariant::Symmetric
                               : gcqw::CoinVariant::Standard;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--out", opts.out, "Output path ('-' for stdout)");
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--coin", opts.coin, "Coin variant")
      ->check(CLI::IsMember({"standard", "symmetric"}));
  cmd->add_option("--initial", opts.initial,
                  "Initial state as site:c0re,c0im,c1re,c1im");
}

gcqw::InitialState parse_initial(const std::string& text) {
  if (text.empty()) return gcqw::InitialState::default_state();
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("--initial", "expected site:c0re,c0im,c1re,c1im");
  const int site = std::stoi(text.substr(0, colon));
  std::vector<double> parts;
  std::stringstream ss(text.substr(colon + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) parts.push_back(std::stod(tok));
  if (parts.size() != 4)
    throw CLI::ValidationError("--initial", "expected four amplitudes");
  return gcqw::InitialState::localized(site, cplx(parts[0], parts[1]),
                                       cplx(parts[2], parts[3]));
}

std::vector<double> parse_grid(const std::string& text) {
  // "start:stop:count" inclusive linspace
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
  if (parts.size() != 3 || parts[2] < 1)
    throw CLI::ValidationError("grid", "expected start:stop:count");
  const int count = static_cast<int>(parts[2]);
  std::vector<double> grid;
  for (int i = 0; i < count; ++i)
    grid.push_back(count == 1 ? parts[0]
                              : parts[0] + (parts[1] - parts[0]) * i / (count - 1));
  return grid;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_initial_meta(TableWriter& w, const gcqw::InitialState& init) {
  if (init.is_custom()) {
    w.meta("initial", std::string("custom"));
    return;
  }
  std::string desc = std::to_string(init.site) + ":" +
                     TableWriter::format_double(init.c0.real()) + "," +
                     TableWriter::format_double(init.c0.imag()) + "," +
                     TableWriter::format_double(init.c1.real()) + "," +
                     TableWriter::format_double(init.c1.imag());
  w.meta("initial", desc);
}

// ---------------------------------------------------------------------------
// recurrence-sweep: P(T) vs D, simulation against the closed form.
// ---------------------------------------------------------------------------
struct RecurrenceSweepOpts {
  int p = 0;
  int q = 1;
  int N = 0;  // 0 = auto
  std::vector<double> D;
  std::string D_grid;
  CommonOpts common;
};

int run_recurrence_sweep(const RecurrenceSweepOpts& o) {
  std::vector<double> grid = o.D;
  if (!o.D_grid.empty()) {
    const auto g = parse_grid(o.D_grid);
    grid.insert(grid.end(), g.begin(), g.end());
  }
  if (grid.empty()) throw CLI::ValidationError("--D", "no D values given");

  const int T = gcqw::period_T(o.p);
  const int N = o.N > 0 ? o.N : gcqw::cycle_length_for(o.p, T);
  const gcqw::InitialState init = parse_initial(o.common.initial);

  Output out(o.common.out);
  TableWriter w(out.stream(), o.common.output_format());
  w.meta("command", std::string("recurrence-sweep"));
  w.meta("p", static_cast<long long>(o.p));
  w.meta("q", static_cast<long long>(o.q));
  w.meta("N", static_cast<long long>(N));
  w.meta("T", static_cast<long long>(T));
  w.meta("coin", o.common.coin);
  write_initial_meta(w, init);
  w.columns({"D", "P_T_simulated", "P_T_formula"});

  double worst_drift = 0.0;
  for (const double D : grid) {
    gcqw::WalkConfig config;
    config.N = N;
    config.coin = gcqw::CoinSpec::from_probability(D, o.common.coin_variant());
    config.phase = gcqw::PhaseProfile::harmonic(o.q, o.p);
    config.initial = init;
    const auto run = gcqw::evolve(config, T);
    worst_drift = std::max(worst_drift, run.norm_drift);
    w.row({D, run.return_probability.value.back(), gcqw::predict_PT(D, o.p)});
  }
  w.finish();
  if (worst_drift > 1e-10) {
    emit_diagnostic({"norm_drift", worst_drift, 1e-10});
    return kExitValidation;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// multi-recurrence: P(kT) vs k.
// ---------------------------------------------------------------------------
struct MultiRecurrenceOpts {
  int p = 0;
  int q = 1;
  int N = 0;
  int k_max = 30;
  double D = -1.0;
  CommonOpts common;
};

int run_multi_recurrence(const MultiRecurrenceOpts& o) {
  const int T = gcqw::period_T(o.p);
  const long long t_max = static_cast<long long>(o.k_max) * T;
  const int N = o.N > 0 ? o.N : gcqw::cycle_length_for(o.p, t_max);
  const gcqw::InitialState init = parse_initial(o.common.initial);

  gcqw::WalkConfig config;
  config.N = N;
  config.coin = gcqw::CoinSpec::from_probability(o.D, o.common.coin_variant());
  config.phase = gcqw::PhaseProfile::harmonic(o.q, o.p);
  config.initial = init;
  const auto run = gcqw::evolve(config, t_max);

  Output out(o.common.out);
  TableWriter w(out.stream(), o.common.output_format());
  w.meta("command", std::string("multi-recurrence"));
  w.meta("D", o.D);
  w.meta("p", static_cast<long long>(o.p));
  w.meta("q", static_cast<long long>(o.q));
  w.meta("N", static_cast<long long>(N));
  w.meta("T", static_cast<long long>(T));
  w.meta("k_max", static_cast<long long>(o.k_max));
  w.meta("coin", o.common.coin);
  write_initial_meta(w, init);
  w.columns({"k", "P_kT_simulated", "P_kT_formula"});
  for (int k = 0; k <= o.k_max; ++k)
    w.row({static_cast<long long>(k),
           run.return_probability.value[static_cast<std::size_t>(k) * T],
           gcqw::predict_PkT(o.D, o.p, k)});
  w.finish();
  if (run.norm_drift > 1e-10) {
    emit_diagnostic({"norm_drift", run.norm_drift, 1e-10});
    return kExitValidation;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sigma-dynamics: sigma(t) against the ballistic formula.
// ---------------------------------------------------------------------------
struct SigmaDynamicsOpts {
  int p = 0;
  int q = 1;
  int N = 0;
  long long t_max = 0;
  double D = -1.0;
  CommonOpts common;
};

int run_sigma_dynamics(const SigmaDynamicsOpts& o) {
  long long N = o.N > 0 ? o.N : gcqw::cycle_length_for(o.p, o.t_max);
  if (N > kMaxSites) {
    const long long suggested = (kMaxSites / o.p * o.p - 4) / 2 - o.p;
    throw std::runtime_error(
        "sigma-dynamics: t_max=" + std::to_string(o.t_max) + " needs N=" +
        std::to_string(N) + " sites, above the " + std::to_string(kMaxSites) +
        "-site budget; try --t-max <= " + std::to_string(suggested));
  }
  const gcqw::InitialState init = parse_initial(o.common.initial);

  gcqw::WalkConfig config;
  config.N = static_cast<int>(N);
  config.coin = gcqw::CoinSpec::from_probability(o.D, o.common.coin_variant());
  config.phase = gcqw::PhaseProfile::harmonic(o.q, o.p);
  config.initial = init;
  gcqw::EvolveOptions options;
  options.record_sigma = true;
  const auto run = gcqw::evolve(config, o.t_max, options);

  Output out(o.common.out);
  TableWriter w(out.stream(), o.common.output_format());
  w.meta("command", std::string("sigma-dynamics"));
  w.meta("D", o.D);
  w.meta("p", static_cast<long long>(o.p));
  w.meta("q", static_cast<long long>(o.q));
  w.meta("N", N);
  w.meta("t_max", o.t_max);
  w.meta("coin", o.common.coin);
  write_initial_meta(w, init);
  w.columns({"t", "sigma_simulated", "sigma_ballistic_formula"});
  for (std::size_t i = 0; i < run.sigma.size(); ++i)
    w.row({static_cast<long long>(run.sigma.t[i]), run.sigma.value[i],
           gcqw::predict_sigma(o.D, o.p, run.sigma.t[i])});
  w.finish();
  if (run.norm_drift > 1e-10) {
    emit_diagnostic({"norm_drift", run.norm_drift, 1e-10});
    return kExitValidation;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// spectrum: quasi-energy levels vs D_eff, closed form and numeric oracle.
// ---------------------------------------------------------------------------
struct SpectrumOpts {
  int p = 0;
  int q = 1;
  int N = 0;
  std::vector<double> d;
  std::string d_grid;
  CommonOpts common;
};

int run_spectrum(const SpectrumOpts& o) {
  std::vector<double> grid = o.d;
  if (!o.d_grid.empty()) {
    const auto g = parse_grid(o.d_grid);
    grid.insert(grid.end(), g.begin(), g.end());
  }
  if (grid.empty()) throw CLI::ValidationError("--d", "no d values given");
  if (o.N <= 0) throw CLI::ValidationError("--N", "spectrum requires --N");

  Output out(o.common.out);
  TableWriter w(out.stream(), o.common.output_format());
  w.meta("command", std::string("spectrum"));
  w.meta("p", static_cast<long long>(o.p));
  w.meta("q", static_cast<long long>(o.q));
  w.meta("N", static_cast<long long>(o.N));
  const bool odd_p = (o.p % 2 == 1);
  w.meta("closed_form_emitted", std::string(odd_p ? "true" : "false"));
  w.columns({"D_eff", "quasi_energy", "source"});

  std::optional<ValidationFailure> failure;
  for (const double d : grid) {
    gcqw::SpectralParams params{o.N, o.p, o.q, d};
    const double D_eff = params.D_eff();

    if (odd_p) {
      const auto validation = gcqw::validate_closed_form(params);
      if (!validation.accepted && !failure)
        failure = ValidationFailure{"closed_form_multiset_distance",
                                    validation.multiset_distance, 1e-8};
      auto closed = gcqw::closed_form_spectrum(params);
      std::sort(closed.begin(), closed.end(),
                [](const auto& a, const auto& b) {
                  return a.quasi_energy < b.quasi_energy;
                });
      for (const auto& e : closed)
        w.row({D_eff, e.quasi_energy, std::string("closed_form")});
    } else {
      // The direct even-p formula is off the unit circle; record how far and
      // emit the numeric spectrum as the authoritative one.
      const auto printed = gcqw::closed_form_spectrum(params);
      double worst = 0.0;
      for (const auto& e : printed)
        worst = std::max(worst, std::abs(std::abs(e.eigenvalue) - 1.0));
      w.meta("closed_form_unit_modulus_error_d_" + TableWriter::format_double(d),
             worst);
    }
    auto numeric = gcqw::numeric_spectrum(params);
    const double trace_resid =
        gcqw::max_trace_moment_residual(params, numeric, 4 * o.p);
    if (trace_resid > 1e-8 && !failure)
      failure = ValidationFailure{"numeric_trace_residual", trace_resid, 1e-8};
    std::sort(numeric.begin(), numeric.end(), [](const auto& a, const auto& b) {
      return a.quasi_energy < b.quasi_energy;
    });
    for (const auto& e : numeric)
      w.row({D_eff, e.quasi_energy, std::string("numeric")});
  }
  w.finish();
  if (failure) {
    emit_diagnostic(*failure);
    return kExitValidation;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bloch-compare: discrete walk vs coupled-mode ODE vs continuum closed form.
// ---------------------------------------------------------------------------
struct BlochCompareOpts {
  double D = -1.0;
  double phi = 0.0;
  int p = 0;
  int q = 1;
  long long t_max = 0;
  CommonOpts common;
};

int run_bloch_compare(const BlochCompareOpts& o) {
  // The discrete/continuum mapping is derived for the symmetric coin.
  if (o.common.coin != "symmetric" && !o.common.coin.empty() &&
      o.common.coin != "standard")
    throw CLI::ValidationError("--coin", "unknown coin");
  if (o.common.coin == "standard" && o.coin_was_set)
    throw CLI::ValidationError("--coin",
                               "bloch-compare runs with the symmetric coin");
  if (!o.common.initial.empty())
    throw CLI::ValidationError("--initial",
                               "bloch-compare uses the default initial state");
  gcqw::PhaseProfile phase = (o.p > 0)
                                 ? gcqw::PhaseProfile::harmonic(o.q, o.p)
                                 : gcqw::PhaseProfile::irrational(o.phi);
  if (!phase.has_period())
    throw CLI::ValidationError("--phi", "phase step must be nonzero");
  const double t_tilde = phase.t_tilde();
  const double d = std::sqrt(o.D);

  const auto cmp = gcqw::discrete_vs_continuum(o.D, phase, o.t_max);
  const double dt = std::min(0.01, t_tilde / 1000.0);
  const int n_max = gcqw::default_mode_truncation(d, t_tilde);
  const auto ode = gcqw::integrate_coupled_modes(phase.site_step(), d,
                                                 static_cast<double>(o.t_max),
                                                 dt, n_max);

  Output out(o.common.out);
  TableWriter w(out.stream(), o.common.output_format());
  w.meta("command", std::string("bloch-compare"));
  w.meta("D", o.D);
  w.meta("Phi", phase.site_step());
  w.meta("T_tilde", t_tilde);
  w.meta("t_max", o.t_max);
  w.meta("ode_dt", dt);
  w.meta("ode_n_max", static_cast<long long>(n_max));
  w.meta("coin", std::string("symmetric"));
  w.meta("note", std::string("odd t omitted: P vanishes there for localized starts"));
  w.columns({"t", "P_discrete", "P_ode", "P_closed_form"});
  for (long long t = 0; t <= o.t_max; t += 2)
    w.row({t, cmp.discrete_P.value[static_cast<std::size_t>(t)],
           ode.P.value[static_cast<std::size_t>(t)],
           gcqw::closed_form_bloch(d, t_tilde, static_cast<double>(t))});
  w.summary("max_discrete_continuum_deviation", cmp.max_deviation_even_t);
  w.summary("ode_step_doubling_delta", ode.step_doubling_delta);
  w.summary("ode_norm_drift", ode.norm_drift);
  for (std::size_t i = 0; i < cmp.peaks.size(); ++i) {
    const auto& pk = cmp.peaks[i];
    w.summary("peak_" + std::to_string(i + 1) + "_continuum_t", pk.continuum_t);
    w.summary("peak_" + std::to_string(i + 1) + "_discrete_t",
              static_cast<double>(pk.discrete_t));
    w.summary("peak_" + std::to_string(i + 1) + "_P", pk.P);
  }
  w.finish();
  if (ode.step_doubling_delta >= 1e-8) {
    emit_diagnostic({"ode_step_doubling", ode.step_doubling_delta, 1e-8});
    return kExitValidation;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// localization: sigma(t) under an incommensurate phase, bounded forever.
// ---------------------------------------------------------------------------
struct LocalizationOpts {
  double D = -1.0;
  double phi = 0.0;
  long long t_max = 0;
  CommonOpts common;
};

int run_localization(const LocalizationOpts& o) {
  if (o.phi == 0.0) throw CLI::ValidationError("--phi", "phi must be nonzero");
  const gcqw::InitialState init = parse_initial(o.common.initial);
  gcqw::WalkConfig config;
  config.N = gcqw::cycle_length_for(1, o.t_max);
  config.coin = gcqw::CoinSpec::from_probability(o.D, o.common.coin_variant());
  config.phase = gcqw::PhaseProfile::irrational(o.phi);
  config.initial = init;

  gcqw::EvolveOptions options;
  options.record_sigma = true;
  const auto run = gcqw::evolve(config, o.t_max, options);
  double max_sigma = 0.0;
  for (const double s : run.sigma.value) max_sigma = std::max(max_sigma, s);
  const double bound = gcqw::sigma_max(o.D, 2.0 * std::numbers::pi / o.phi);

  Output out(o.common.out);
  TableWriter w(out.stream(), o.common.output_format());
  w.meta("command", std::string("localization"));
  w.meta("D", o.D);
  w.meta("Phi", o.phi);
  w.meta("T_tilde", 2.0 * std::numbers::pi / o.phi);
  w.meta("t_max", o.t_max);
  w.meta("N", static_cast<long long>(config.N));
  w.meta("coin", o.common.coin);
  write_initial_meta(w, init);
  w.columns({"t", "sigma"});
  for (std::size_t i = 0; i < run.sigma.size(); ++i)
    w.row({static_cast<long long>(run.sigma.t[i]), run.sigma.value[i]});
  w.summary("max_sigma", max_sigma);
  w.summary("sigma_max_formula", bound);
  w.finish();
  if (run.norm_drift > 1e-10) {
    emit_diagnostic({"norm_drift", run.norm_drift, 1e-10});
    return kExitValidation;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// evolve: raw trajectory observables.
// ---------------------------------------------------------------------------
struct EvolveOpts {
  double D = -1.0;
  double d = -1.0;
  double phi = 0.0;
  double phi0 = 0.0;
  int p = 0;
  int q = 1;
  int N = 0;
  long long t_max = 0;
  CommonOpts common;
};

int run_evolve(const EvolveOpts& o) {
  double amp;
  if (o.d >= 0.0 && o.D >= 0.0)
    throw CLI::ValidationError("--d", "give either --d or --D, not both");
  if (o.d >= 0.0)
    amp = o.d;
  else if (o.D >= 0.0)
    amp = std::sqrt(o.D);
  else
    throw CLI::ValidationError("--d", "one of --d or --D is required");

  gcqw::PhaseProfile phase = gcqw::PhaseProfile::constant(o.phi0);
  if (o.p > 0)
    phase = gcqw::PhaseProfile::harmonic(o.q, o.p);
  else if (o.phi != 0.0)
    phase = gcqw::PhaseProfile::irrational(o.phi);

  const gcqw::InitialState init = parse_initial(o.common.initial);
  gcqw::WalkConfig config;
  config.N = o.N > 0 ? o.N
                     : gcqw::cycle_length_for(o.p > 0 ? o.p : 1, o.t_max);
  config.coin = gcqw::CoinSpec::from_amplitude(amp, o.common.coin_variant());
  config.phase = phase;
  config.initial = init;

  gcqw::EvolveOptions options;
  options.record_sigma = true;
  const auto run = gcqw::evolve(config, o.t_max, options);

  Output out(o.common.out);
  TableWriter w(out.stream(), o.common.output_format());
  w.meta("command", std::string("evolve"));
  w.meta("d", amp);
  w.meta("D", amp * amp);
  switch (phase.kind()) {
    case gcqw::PhaseProfile::Kind::Harmonic:
      w.meta("phase", std::string("harmonic"));
      w.meta("q", static_cast<long long>(o.q));
      w.meta("p", static_cast<long long>(o.p));
      break;
    case gcqw::PhaseProfile::Kind::Irrational:
      w.meta("phase", std::string("irrational"));
      w.meta("Phi", o.phi);
      break;
    default:
      w.meta("phase", std::string("constant"));
      w.meta("phi0", o.phi0);
      break;
  }
  w.meta("N", static_cast<long long>(config.N));
  w.meta("t_max", o.t_max);
  w.meta("coin", o.common.coin);
  write_initial_meta(w, init);
  w.columns({"t", "P", "sigma"});
  for (std::size_t i = 0; i < run.return_probability.size(); ++i)
    w.row({static_cast<long long>(run.return_probability.t[i]),
           run.return_probability.value[i], run.sigma.value[i]});
  w.finish();
  if (run.norm_drift > 1e-10) {
    emit_diagnostic({"norm_drift", run.norm_drift, 1e-10});
    return kExitValidation;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized coined quantum walk simulator and analytics"};
  app.require_subcommand(1);

  RecurrenceSweepOpts rs;
  auto* c_rs = app.add_subcommand("recurrence-sweep",
                                  "P(T) vs D: simulation and closed form");
  c_rs->add_option("--p", rs.p, "Phase denominator p")->required();
  c_rs->add_option("--q", rs.q, "Phase numerator q");
  c_rs->add_option("--N", rs.N, "Cycle length (default: auto)");
  c_rs->add_option("--D", rs.D, "Diabatic transition probability (repeatable)");
  c_rs->add_option("--D-grid", rs.D_grid, "D grid as start:stop:count");
  add_common(c_rs, rs.common);

  MultiRecurrenceOpts mr;
  auto* c_mr = app.add_subcommand("multi-recurrence",
                                  "P(kT) vs k: simulation and Bessel law");
  c_mr->add_option("--p", mr.p, "Phase denominator p")->required();
  c_mr->add_option("--q", mr.q, "Phase numerator q");
  c_mr->add_option("--N", mr.N, "Cycle length (default: auto)");
  c_mr->add_option("--D", mr.D, "Diabatic transition probability")->required();
  c_mr->add_option("--k-max", mr.k_max, "Largest multiple of T");
  add_common(c_mr, mr.common);

  SigmaDynamicsOpts sd;
  auto* c_sd = app.add_subcommand("sigma-dynamics",
                                  "sigma(t) vs the ballistic formula");
  c_sd->add_option("--p", sd.p, "Phase denominator p")->required();
  c_sd->add_option("--q", sd.q, "Phase numerator q");
  c_sd->add_option("--N", sd.N, "Cycle length (default: auto)");
  c_sd->add_option("--D", sd.D, "Diabatic transition probability")->required();
  c_sd->add_option("--t-max", sd.t_max, "Steps to evolve")->required();
  add_common(c_sd, sd.common);

  SpectrumOpts sp;
  auto* c_sp = app.add_subcommand("spectrum",
                                  "Quasi-energy levels vs D_eff");
  c_sp->add_option("--p", sp.p, "Phase denominator p")->required();
  c_sp->add_option("--q", sp.q, "Phase numerator q");
  c_sp->add_option("--N", sp.N, "Cycle length")->required();
  c_sp->add_option("--d", sp.d, "Coin amplitude d (repeatable)");
  c_sp->add_option("--d-grid", sp.d_grid, "d grid as start:stop:count");
  add_common(c_sp, sp.common);

  BlochCompareOpts bc;
  auto* c_bc = app.add_subcommand(
      "bloch-compare", "Discrete walk vs coupled-mode ODE vs closed form");
  c_bc->add_option("--D", bc.D, "Diabatic transition probability")->required();
  c_bc->add_option("--phi", bc.phi, "Phase step Phi in radians");
  c_bc->add_option("--p", bc.p, "Phase denominator p (with --q: Phi=2*pi*q/p)");
  c_bc->add_option("--q", bc.q, "Phase numerator q");
  c_bc->add_option("--t-max", bc.t_max, "Steps to evolve")->required();
  add_common(c_bc, bc.common);

  LocalizationOpts lo;
  auto* c_lo = app.add_subcommand("localization",
                                  "Bounded sigma(t) for incommensurate Phi");
  c_lo->add_option("--D", lo.D, "Diabatic transition probability")->required();
  c_lo->add_option("--phi", lo.phi, "Phase step Phi in radians")->required();
  c_lo->add_option("--t-max", lo.t_max, "Steps to evolve")->required();
  add_common(c_lo, lo.common);

  EvolveOpts ev;
  auto* c_ev = app.add_subcommand("evolve", "Raw trajectory dump (t, P, sigma)");
  c_ev->add_option("--D", ev.D, "Diabatic transition probability");
  c_ev->add_option("--d", ev.d, "Coin amplitude d");
  c_ev->add_option("--phi", ev.phi, "Irrational phase step in radians");
  c_ev->add_option("--phi0", ev.phi0, "Constant phase");
  c_ev->add_option("--p", ev.p, "Phase denominator p");
  c_ev->add_option("--q", ev.q, "Phase numerator q");
  c_ev->add_option("--N", ev.N, "Cycle length (default: auto)");
  c_ev->add_option("--t-max", ev.t_max, "Steps to evolve")->required();
  add_common(c_ev, ev.common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_rs->parsed()) return run_recurrence_sweep(rs);
    if (c_mr->parsed()) return run_multi_recurrence(mr);
    if (c_sd->parsed()) return run_sigma_dynamics(sd);
    if (c_sp->parsed()) return run_spectrum(sp);
    if (c_bc->parsed()) return run_bloch_compare(bc);
    if (c_lo->parsed()) return run_localization(lo);
    if (c_ev->parsed()) return run_evolve(ev);
  } catch (const std::exception& e) {
    nlohmann::ordered_json j;
    j["error"] = "exception";
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return 1;
  }
  return 0;
}
