#pragma once

#include <vector>

#include "gcqw/coin.hpp"

namespace gcqw {

/// Returns p for even p, 2p for odd p. Throws std::domain_error for p < 1.
int period_T(int p);

/// (d_eff, D_eff) = (d^{T/2}, d^T).
std::pair<double, double> effective(double d, int p);

struct SpectralParams {
  int N = 0;
  int p = 1;
  int q = 1;
  double d = 0.0;

  int T() const { return period_T(p); }
  double d_eff() const;
  double D_eff() const;

  /// Throws unless N is a positive multiple of p, 0 <= q < p with
  /// gcd(q, p) = 1 (q = 0 only for p = 1), and d is in [0, 1].
  void validate() const;
};

/// One eigenvalue of the walk unitary with its (j, u, s) label. Numeric
/// entries carry the block index j but u = s = -1 (a dense eigensolver does
/// not label branches). quasi_energy = Arg(eigenvalue) in (-pi, pi].
struct SpectrumEntry {
  int j = 0;
  int u = 0;
  int s = 0;
  cplx eigenvalue;
  double quasi_energy = 0.0;
  bool unit_modulus_ok = true;  // | |r| - 1 | <= 1e-9
};

using Spectrum = std::vector<SpectrumEntry>;

/// Closed-form eigenvalues r_{jus} for a harmonic profile.
///
/// Odd p:  r = w_p^s * z_{ju},  z_{ju} = ((-1)^u sqrt(1-l^2) - i l)^{1/p}
/// (principal root; the s index supplies the remaining branches),
/// l = lambda_j = d_eff * sin(pi*T*j/N), w_p = e^{2 pi i / p}.
///
/// Even p: the linear form r = w_p^s (2 i lambda_j z_{ju} - 1). This form
/// does not lie on the unit circle in general; every entry is checked and
/// flagged via unit_modulus_ok rather than rejected, and callers should
/// treat the numeric spectrum as authoritative when flags appear.
Spectrum closed_form_spectrum(const SpectralParams& params);

/// Alternative even-p closed form obtained by reading the linear form as an
/// equation for r^p: r = w_p^s (2 i lambda_j z_{ju}^p - 1)^{1/p}. Lies on the
/// unit circle by construction and matches the numeric spectrum (see tests).
/// Throws std::domain_error for odd p.
Spectrum closed_form_spectrum_even_root(const SpectralParams& params);

/// Independent numeric oracle: the walk unitary commutes with translation by
/// p sites, so a DFT over the N/p cells block-diagonalizes it into N/p
/// unitary blocks of size 2p; each block is diagonalized densely. Intended
/// for small N.
Spectrum numeric_spectrum(const SpectralParams& params,
                          CoinVariant variant = CoinVariant::Standard);

/// Max over matched pairs of circular quasi-energy distance between two
/// spectra sorted as multisets (the cut is placed in the largest angular gap
/// of the combined set so the orderings align). Throws on size mismatch.
double spectral_distance(const Spectrum& a, const Spectrum& b);

/// Eigensolver-free cross-check: |Tr(U^k) - sum_e r_e^k| for k = 1..k_max,
/// with the trace computed by evolving every basis vector k steps through the
/// walk itself. Cost O(k_max * N^2).
std::vector<double> trace_moment_residuals(const SpectralParams& params,
                                           const Spectrum& spectrum, int k_max,
                                           CoinVariant variant = CoinVariant::Standard);
double max_trace_moment_residual(const SpectralParams& params,
                                 const Spectrum& spectrum, int k_max,
                                 CoinVariant variant = CoinVariant::Standard);

struct BandSummary {
  int index = 0;
  double e_min = 0.0;
  double e_max = 0.0;
  double width = 0.0;
  int count = 0;
};

struct BandReport {
  std::vector<BandSummary> bands;
  int expected_count = 0;  // 2p for odd p, p for even p
  bool ambiguous = false;  // clustering did not produce the expected count
};

/// Gap-based clustering of quasi-energies into bands: a circular gap larger
/// than 5x the median adjacent gap starts a new band.
BandReport band_summary(const Spectrum& spectrum, int p, double d_eff);

struct ClosedFormValidation {
  double max_unit_modulus_error = 0.0;
  double multiset_distance = 0.0;  // vs numeric spectrum
  double trace_residual = 0.0;     // closed form vs dynamics, k <= 4p
  bool accepted = false;
};

/// Validates closed_form_spectrum against the numeric oracle and the trace
/// moments. accepted requires unit modulus <= 1e-9, multiset distance and
/// trace residual <= 1e-8.
ClosedFormValidation validate_closed_form(const SpectralParams& params);

}  // namespace gcqw
