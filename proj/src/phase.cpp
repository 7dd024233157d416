#include "gcqw/phase.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gcqw {

PhaseProfile PhaseProfile::constant(double phi0) {
  PhaseProfile pr;
  pr.kind_ = Kind::Constant;
  pr.phi0_ = phi0;
  return pr;
}

PhaseProfile PhaseProfile::harmonic(int q, int p) {
  if (p < 1) throw std::domain_error("phase: p must be >= 1");
  if (q < 0 || q >= p)
    throw std::domain_error("phase: q must be in [0, p)");
  if (p > 1 && std::gcd(q, p) != 1)
    throw std::domain_error("phase: q and p must be coprime");
  PhaseProfile pr;
  pr.kind_ = Kind::Harmonic;
  pr.q_ = q;
  pr.p_ = p;
  return pr;
}

PhaseProfile PhaseProfile::irrational(double Phi) {
  PhaseProfile pr;
  pr.kind_ = Kind::Irrational;
  pr.Phi_ = Phi;
  return pr;
}

PhaseProfile PhaseProfile::table(std::vector<double> phi) {
  PhaseProfile pr;
  pr.kind_ = Kind::Table;
  pr.table_ = std::move(phi);
  return pr;
}

double PhaseProfile::site_step() const {
  switch (kind_) {
    case Kind::Harmonic:
      return 2.0 * std::numbers::pi * q_ / p_;
    case Kind::Irrational:
      return Phi_;
    default:
      throw std::logic_error("phase: profile has no per-site step");
  }
}

bool PhaseProfile::has_period() const {
  return (kind_ == Kind::Harmonic && q_ != 0) ||
         (kind_ == Kind::Irrational && Phi_ != 0.0);
}

double PhaseProfile::t_tilde() const {
  if (!has_period()) throw std::logic_error("phase: T_tilde undefined for zero step");
  return 2.0 * std::numbers::pi / site_step();
}

void PhaseProfile::validate(int N) const {
  if (N < 2) throw std::invalid_argument("phase: N must be >= 2");
  if (kind_ == Kind::Harmonic && N % p_ != 0)
    throw std::invalid_argument("phase: N must be a multiple of p (got N=" +
                                std::to_string(N) + ", p=" + std::to_string(p_) + ")");
  if (kind_ == Kind::Table && static_cast<int>(table_.size()) != N)
    throw std::invalid_argument("phase: table length " +
                                std::to_string(table_.size()) +
                                " does not match N=" + std::to_string(N));
}

std::vector<std::complex<double>> PhaseProfile::unit_phases(int N) const {
  validate(N);
  std::vector<std::complex<double>> tab(N);
  switch (kind_) {
    case Kind::Constant: {
      const auto v = std::polar(1.0, phi0_);
      for (auto& x : tab) x = v;
      break;
    }
    case Kind::Harmonic: {
      // (n*q mod p)/p keeps the table exactly periodic with period p.
      for (int n = 0; n < N; ++n) {
        const long long m = (static_cast<long long>(n) * q_) % p_;
        tab[n] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / p_);
      }
      break;
    }
    case Kind::Irrational: {
      for (int n = 0; n < N; ++n) {
        long long rep = n;
        if (2 * rep >= N) rep -= N;  // signed representative in [-N/2, N/2)
        tab[n] = std::polar(1.0, static_cast<double>(rep) * Phi_);
      }
      break;
    }
    case Kind::Table: {
      for (int n = 0; n < N; ++n) tab[n] = std::polar(1.0, table_[n]);
      break;
    }
  }
  return tab;
}

}  // namespace gcqw
