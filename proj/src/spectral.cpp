#include "gcqw/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gcqw/walk.hpp"

namespace gcqw {

namespace {
constexpr double kUnitModulusTol = 1e-9;

double principal_angle(const cplx& z) { return std::arg(z); }

SpectrumEntry make_entry(int j, int u, int s, const cplx& r) {
  SpectrumEntry e;
  e.j = j;
  e.u = u;
  e.s = s;
  e.eigenvalue = r;
  e.quasi_energy = principal_angle(r);
  e.unit_modulus_ok = std::abs(std::abs(r) - 1.0) <= kUnitModulusTol;
  return e;
}

std::vector<double> sorted_angles(const Spectrum& sp) {
  std::vector<double> ang;
  ang.reserve(sp.size());
  for (const auto& e : sp) ang.push_back(principal_angle(e.eigenvalue));
  std::sort(ang.begin(), ang.end());
  return ang;
}
}  // namespace

int period_T(int p) {
  if (p < 1) throw std::domain_error("period_T: p must be >= 1");
  return (p % 2 == 0) ? p : 2 * p;
}

std::pair<double, double> effective(double d, int p) {
  if (!(d >= 0.0 && d <= 1.0))
    throw std::domain_error("effective: d must be in [0, 1]");
  const int T = period_T(p);
  const double d_eff = std::pow(d, T / 2);
  return {d_eff, d_eff * d_eff};
}

double SpectralParams::d_eff() const { return effective(d, p).first; }
double SpectralParams::D_eff() const { return effective(d, p).second; }

void SpectralParams::validate() const {
  if (p < 1) throw std::domain_error("spectral: p must be >= 1");
  if (N < p || N % p != 0)
    throw std::domain_error("spectral: N must be a positive multiple of p");
  if (q < 0 || q >= std::max(p, 1))
    throw std::domain_error("spectral: q must be in [0, p)");
  if (p > 1 && std::gcd(q, p) != 1)
    throw std::domain_error("spectral: q and p must be coprime");
  if (!(d >= 0.0 && d <= 1.0))
    throw std::domain_error("spectral: d must be in [0, 1]");
}

namespace {

// lambda_j = d_eff * sin(pi*T*j/N) and z_{ju} = ((-1)^u sqrt(1-l^2) - i l)^{1/p}
// shared by both closed forms.
struct BranchSeed {
  double lambda;
  cplx z;      // principal p-th root
  cplx z_pow;  // z^p, i.e. the radicand itself
};

BranchSeed branch_seed(const SpectralParams& params, int j, int u) {
  const double l =
      params.d_eff() * std::sin(std::numbers::pi * params.T() * j / params.N);
  const double re = ((u == 0) ? 1.0 : -1.0) * std::sqrt(std::max(0.0, 1.0 - l * l));
  const cplx w(re, -l);
  return {l, std::pow(w, 1.0 / params.p), w};
}

}  // namespace

Spectrum closed_form_spectrum(const SpectralParams& params) {
  params.validate();
  const int p = params.p;
  Spectrum out;
  out.reserve(2 * static_cast<std::size_t>(params.N));
  for (int j = 0; j < params.N / p; ++j) {
    for (int u = 0; u < 2; ++u) {
      const BranchSeed seed = branch_seed(params, j, u);
      for (int s = 0; s < p; ++s) {
        const cplx ws = std::polar(1.0, 2.0 * std::numbers::pi * s / p);
        const cplx r = (p % 2 == 1)
                           ? ws * seed.z
                           : ws * (cplx(0.0, 2.0 * seed.lambda) * seed.z - 1.0);
        out.push_back(make_entry(j, u, s, r));
      }
    }
  }
  return out;
}

Spectrum closed_form_spectrum_even_root(const SpectralParams& params) {
  params.validate();
  if (params.p % 2 != 0)
    throw std::domain_error("closed_form_spectrum_even_root: p must be even");
  const int p = params.p;
  Spectrum out;
  out.reserve(2 * static_cast<std::size_t>(params.N));
  for (int j = 0; j < params.N / p; ++j) {
    for (int u = 0; u < 2; ++u) {
      const BranchSeed seed = branch_seed(params, j, u);
      // Read the linear form as fixing r^p, then take the principal root.
      const cplx rp = cplx(0.0, 2.0 * seed.lambda) * seed.z_pow - 1.0;
      const cplx r0 = std::pow(rp, 1.0 / p);
      for (int s = 0; s < p; ++s) {
        const cplx ws = std::polar(1.0, 2.0 * std::numbers::pi * s / p);
        out.push_back(make_entry(j, u, s, ws * r0));
      }
    }
  }
  return out;
}

namespace {

Eigen::MatrixXcd build_unitary(const SpectralParams& params, CoinVariant variant) {
  const int N = params.N;
  const CoinMatrix C = build_coin(CoinSpec{params.d, variant});
  const auto phases = PhaseProfile::harmonic(params.q, params.p).unit_phases(N);
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
  // Column (c, n): coin mixes the coin index, then component c' shifts to
  // n + (-1)^{c'} carrying e^{i phi(n)}.
  for (int c = 0; c < 2; ++c) {
    for (int n = 0; n < N; ++n) {
      const int col = c * N + n;
      const cplx entries[2] = {(c == 0) ? C.m00 : C.m01, (c == 0) ? C.m10 : C.m11};
      U((n + 1) % N, col) += entries[0] * phases[n];          // c' = 0
      U(N + (n + N - 1) % N, col) += entries[1] * phases[n];  // c' = 1
    }
  }
  return U;
}

}  // namespace

Spectrum numeric_spectrum(const SpectralParams& params, CoinVariant variant) {
  params.validate();
  const int N = params.N;
  const int p = params.p;
  const int cells = N / p;
  const Eigen::MatrixXcd U = build_unitary(params, variant);

  Spectrum out;
  out.reserve(2 * static_cast<std::size_t>(N));
  const double inv_sqrt_cells = 1.0 / std::sqrt(static_cast<double>(cells));
  for (int j = 0; j < cells; ++j) {
    // Momentum-j combination over the translation cells, per coin component
    // and intra-cell offset: a 2N x 2p isometry.
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(2 * N, 2 * p);
    for (int c = 0; c < 2; ++c) {
      for (int m = 0; m < p; ++m) {
        for (int l = 0; l < cells; ++l) {
          const double theta = -2.0 * std::numbers::pi * j * l / cells;
          V(c * N + l * p + m, c * p + m) = std::polar(inv_sqrt_cells, theta);
        }
      }
    }
    Eigen::MatrixXcd B = V.adjoint() * U * V;
    const double unitary_err =
        (B.adjoint() * B - Eigen::MatrixXcd::Identity(2 * p, 2 * p))
            .cwiseAbs()
            .maxCoeff();
    if (unitary_err > 1e-10)
      throw std::runtime_error(
          "numeric_spectrum: translation block is not unitary (err = " +
          std::to_string(unitary_err) + "); profile is not p-periodic");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(B, false);
    std::vector<cplx> evs(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + 2 * p);
    std::sort(evs.begin(), evs.end(), [](const cplx& x, const cplx& y) {
      return principal_angle(x) < principal_angle(y);
    });
    for (const auto& r : evs) {
      SpectrumEntry e = make_entry(j, -1, -1, r);
      out.push_back(e);
    }
  }
  return out;
}

double spectral_distance(const Spectrum& a, const Spectrum& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("spectral_distance: size mismatch");
  if (a.empty()) return 0.0;
  const auto ang_a = sorted_angles(a);
  const auto ang_b = sorted_angles(b);

  // Place the circle cut inside the largest gap of the combined multiset so
  // both sorted sequences align index by index.
  std::vector<double> comb = ang_a;
  comb.insert(comb.end(), ang_b.begin(), ang_b.end());
  std::sort(comb.begin(), comb.end());
  const double two_pi = 2.0 * std::numbers::pi;
  double best_gap = comb.front() + two_pi - comb.back();
  double cut = comb.back() + best_gap / 2.0;
  for (std::size_t i = 1; i < comb.size(); ++i) {
    const double gap = comb[i] - comb[i - 1];
    if (gap > best_gap) {
      best_gap = gap;
      cut = comb[i - 1] + gap / 2.0;
    }
  }
  auto rebase = [&](std::vector<double> v) {
    for (auto& x : v) {
      x -= cut;
      while (x < 0.0) x += two_pi;
      while (x >= two_pi) x -= two_pi;
    }
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto ra = rebase(ang_a);
  const auto rb = rebase(ang_b);
  double worst = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    double diff = std::abs(ra[i] - rb[i]);
    diff = std::min(diff, two_pi - diff);
    worst = std::max(worst, diff);
  }
  return worst;
}

std::vector<double> trace_moment_residuals(const SpectralParams& params,
                                           const Spectrum& spectrum, int k_max,
                                           CoinVariant variant) {
  params.validate();
  if (k_max < 1) throw std::domain_error("trace_moments: k_max must be >= 1");
  const int N = params.N;

  // Tr(U^k) accumulated by pushing every basis vector through the walk.
  std::vector<cplx> traces(static_cast<std::size_t>(k_max) + 1, cplx(0.0, 0.0));
  WalkConfig config;
  config.N = N;
  config.coin = CoinSpec{params.d, variant};
  config.phase = PhaseProfile::harmonic(params.q, params.p);
  for (int b = 0; b < 2 * N; ++b) {
    std::vector<cplx> e(2 * static_cast<std::size_t>(N), cplx(0.0, 0.0));
    e[b] = cplx(1.0, 0.0);
    config.initial = InitialState::full_vector(std::move(e));
    Walker walker(config);
    WalkState state = walker.make_initial();
    for (int k = 1; k <= k_max; ++k) {
      walker.step(state);
      traces[k] += state.amps[b];
    }
  }

  std::vector<double> residuals(static_cast<std::size_t>(k_max) + 1, 0.0);
  std::vector<cplx> powers(spectrum.size(), cplx(1.0, 0.0));
  for (int k = 1; k <= k_max; ++k) {
    cplx sum(0.0, 0.0);
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
      powers[i] *= spectrum[i].eigenvalue;
      sum += powers[i];
    }
    residuals[k] = std::abs(sum - traces[k]);
  }
  residuals.erase(residuals.begin());  // k starts at 1
  return residuals;
}

double max_trace_moment_residual(const SpectralParams& params,
                                 const Spectrum& spectrum, int k_max,
                                 CoinVariant variant) {
  const auto r = trace_moment_residuals(params, spectrum, k_max, variant);
  return *std::max_element(r.begin(), r.end());
}

BandReport band_summary(const Spectrum& spectrum, int p, double d_eff) {
  if (spectrum.empty()) throw std::invalid_argument("band_summary: empty spectrum");
  (void)d_eff;
  const double two_pi = 2.0 * std::numbers::pi;
  auto ang = sorted_angles(spectrum);
  const std::size_t n = ang.size();

  std::vector<double> gaps(n);
  for (std::size_t i = 0; i + 1 < n; ++i) gaps[i] = ang[i + 1] - ang[i];
  gaps[n - 1] = ang.front() + two_pi - ang.back();

  std::vector<double> sorted_gaps = gaps;
  std::sort(sorted_gaps.begin(), sorted_gaps.end());
  const double median = sorted_gaps[n / 2];
  const double threshold = std::max(5.0 * median, 1e-9);

  // Start scanning just past the largest gap so no band straddles the cut.
  const std::size_t cut =
      std::distance(gaps.begin(), std::max_element(gaps.begin(), gaps.end()));

  BandReport report;
  report.expected_count = (p % 2 == 0) ? p : 2 * p;
  BandSummary cur;
  bool open = false;
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t i = (cut + 1 + step) % n;
    const double e = ang[i];
    if (!open) {
      cur = BandSummary{};
      cur.index = static_cast<int>(report.bands.size());
      cur.e_min = cur.e_max = e;
      cur.count = 1;
      open = true;
    } else {
      cur.e_max = e;
      ++cur.count;
    }
    const bool closes = (step == n - 1) || (gaps[i] > threshold);
    if (closes) {
      cur.width = cur.e_max - cur.e_min;
      if (cur.width < 0.0) cur.width += two_pi;  // band crossed the -pi seam
      report.bands.push_back(cur);
      open = false;
    }
  }
  report.ambiguous =
      static_cast<int>(report.bands.size()) != report.expected_count;
  return report;
}

ClosedFormValidation validate_closed_form(const SpectralParams& params) {
  const Spectrum closed = closed_form_spectrum(params);
  const Spectrum numeric = numeric_spectrum(params);
  ClosedFormValidation v;
  for (const auto& e : closed)
    v.max_unit_modulus_error =
        std::max(v.max_unit_modulus_error, std::abs(std::abs(e.eigenvalue) - 1.0));
  v.multiset_distance = spectral_distance(closed, numeric);
  v.trace_residual = max_trace_moment_residual(params, closed, 4 * params.p);
  v.accepted = v.max_unit_modulus_error <= kUnitModulusTol &&
               v.multiset_distance <= 1e-8 && v.trace_residual <= 1e-8;
  return v;
}

}  // namespace gcqw
