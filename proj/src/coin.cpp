#include "gcqw/coin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gcqw {

double CoinSpec::a() const { return std::sqrt(std::max(0.0, 1.0 - d * d)); }

CoinSpec CoinSpec::from_amplitude(double d, CoinVariant v) {
  CoinSpec spec{d, v};
  spec.validate();
  return spec;
}

CoinSpec CoinSpec::from_probability(double D, CoinVariant v) {
  if (!(D >= 0.0 && D <= 1.0))
    throw std::domain_error("coin: D must be in [0, 1], got " + std::to_string(D));
  return from_amplitude(std::sqrt(D), v);
}

void CoinSpec::validate() const {
  if (!(d >= 0.0 && d <= 1.0))
    throw std::domain_error("coin: d must be in [0, 1], got " + std::to_string(d));
}

CoinMatrix build_coin(const CoinSpec& spec) {
  spec.validate();
  const double a = spec.a();
  if (spec.variant == CoinVariant::Standard)
    return {cplx(spec.d, 0.0), cplx(a, 0.0), cplx(a, 0.0), cplx(-spec.d, 0.0)};
  return {cplx(0.0, spec.d), cplx(a, 0.0), cplx(a, 0.0), cplx(0.0, spec.d)};
}

}  // namespace gcqw
