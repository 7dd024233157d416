#pragma once

#include <complex>

namespace gcqw {

using cplx = std::complex<double>;

/// Which 2x2 coin to use. Standard is the real reflection-type coin
/// [[d, a], [a, -d]]; Symmetric is [[i d, a], [a, i d]].
enum class CoinVariant { Standard, Symmetric };

/// Coin parameters. d is the direction-preserving amplitude, a = sqrt(1 - d^2)
/// the flip amplitude, D = d^2 the direction-preserving probability.
struct CoinSpec {
  double d = 0.0;
  CoinVariant variant = CoinVariant::Standard;

  double a() const;
  double D() const { return d * d; }

  static CoinSpec from_amplitude(double d, CoinVariant v = CoinVariant::Standard);
  static CoinSpec from_probability(double D, CoinVariant v = CoinVariant::Standard);

  /// Throws std::domain_error unless d is in [0, 1].
  void validate() const;
};

struct CoinMatrix {
  cplx m00, m01, m10, m11;
};

/// Builds the 2x2 unitary for the given spec. Standard: real symmetric with
/// eigenvalues +-1. Symmetric: eigenvalues i*d +- a, both on the unit circle.
CoinMatrix build_coin(const CoinSpec& spec);

}  // namespace gcqw
