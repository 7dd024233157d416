// Test-only oracles, kept independent of the implementation paths they check.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracles {

using cplx = std::complex<double>;

// (1/pi) Int_0^pi cos(x sin theta) dtheta via composite Simpson; the panel
// count grows with |x| to keep the error well under 1e-11 for |x| <= 50.
inline double j0_quadrature(double x) {
  x = std::abs(x);
  const int n = 2 * (2048 + 512 * static_cast<int>(std::ceil(x)));
  const double h = std::numbers::pi / n;
  double sum = std::cos(x * std::sin(0.0)) + std::cos(x * std::sin(std::numbers::pi));
  for (int i = 1; i < n; ++i)
    sum += (i % 2 ? 4.0 : 2.0) * std::cos(x * std::sin(i * h));
  return sum * h / 3.0 / std::numbers::pi;
}

// Dense brute-force spectrum of the full 2N x 2N walk unitary, built from
// scratch (coin, phases, shift) without any translation-symmetry reduction.
// standard_coin = false selects the [[i d, a], [a, i d]] coin.
inline std::vector<cplx> dense_walk_spectrum(int N, int q, int p, double d,
                                             bool standard_coin = true) {
  const double a = std::sqrt(std::max(0.0, 1.0 - d * d));
  const cplx C[2][2] = {
      {standard_coin ? cplx(d, 0) : cplx(0, d), cplx(a, 0)},
      {cplx(a, 0), standard_coin ? cplx(-d, 0) : cplx(0, d)}};
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
  for (int c = 0; c < 2; ++c) {
    for (int n = 0; n < N; ++n) {
      const double phi =
          std::fmod(2.0 * std::numbers::pi * q * static_cast<double>(n) / p,
                    2.0 * std::numbers::pi);
      const cplx ph = std::polar(1.0, phi);
      U((n + 1) % N, c * N + n) += C[0][c] * ph;
      U(N + (n + N - 1) % N, c * N + n) += C[1][c] * ph;
    }
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(U, false);
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + 2 * N};
}

// Greedy nearest matching of two unit-circle multisets; returns the largest
// matched distance. O(n^2), fine for test sizes.
inline double multiset_match_distance(std::vector<cplx> a, std::vector<cplx> b) {
  double worst = 0.0;
  for (const auto& x : a) {
    std::size_t best = 0;
    double best_d = 1e300;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const double dist = std::abs(x - b[i]);
      if (dist < best_d) {
        best_d = dist;
        best = i;
      }
    }
    worst = std::max(worst, best_d);
    b.erase(b.begin() + static_cast<long>(best));
  }
  return worst;
}

}  // namespace oracles
