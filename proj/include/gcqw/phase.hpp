#pragma once

#include <complex>
#include <vector>

namespace gcqw {

/// Site-dependent phase profile phi(n) imprinted by the shift.
///
/// Harmonic means phi(n) = n * 2*pi*q/p with coprime q, p; the cycle length
/// must be a multiple of p so the profile closes around the ring. Irrational
/// takes an arbitrary step Phi in radians; sites are phased by their signed
/// displacement from n = 0 (the discontinuity sits at the antipode N/2, which
/// a walker started near 0 cannot reach before wraparound invalidates line
/// semantics anyway).
class PhaseProfile {
 public:
  enum class Kind { Constant, Harmonic, Irrational, Table };

  static PhaseProfile constant(double phi0);
  static PhaseProfile harmonic(int q, int p);
  static PhaseProfile irrational(double Phi);
  static PhaseProfile table(std::vector<double> phi);

  Kind kind() const { return kind_; }
  int p() const { return p_; }
  int q() const { return q_; }
  double phi0() const { return phi0_; }

  /// Phase increment per site (2*pi*q/p for harmonic, Phi for irrational).
  /// Throws for Constant/Table where no single increment exists.
  double site_step() const;

  /// True when the profile defines a finite continuum recurrence period
  /// T_tilde = 2*pi / site_step().
  bool has_period() const;
  double t_tilde() const;

  /// Throws std::invalid_argument if the profile cannot live on an N-cycle
  /// (harmonic: N % p != 0; table: wrong length; N < 2).
  void validate(int N) const;

  /// e^{i phi(n)} for n in [0, N). Harmonic phases are computed from
  /// (n*q mod p)/p so the table is exactly periodic with period p.
  std::vector<std::complex<double>> unit_phases(int N) const;

 private:
  PhaseProfile() = default;
  Kind kind_ = Kind::Constant;
  double phi0_ = 0.0;  // Constant
  int q_ = 0, p_ = 1;  // Harmonic
  double Phi_ = 0.0;   // Irrational
  std::vector<double> table_;
};

}  // namespace gcqw
