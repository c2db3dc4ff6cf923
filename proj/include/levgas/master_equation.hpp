#pragma once

#include "levgas/pechukas.hpp"
#include "levgas/types.hpp"

namespace levgas {

enum class WindowKind { kUnbounded, kIndex, kEnergy };

/// Restriction of the level-coupling sums to a neighborhood of each level:
/// an integer index half-width |n - m| <= epsilon (default reading) or an
/// energy radius |x_n - x_m| <= epsilon. Unbounded reproduces the full
/// equation bitwise.
struct WindowSpec {
  WindowKind kind = WindowKind::kUnbounded;
  double epsilon = 0.0;

  static WindowSpec unbounded() { return {WindowKind::kUnbounded, 0.0}; }
  static WindowSpec index(int eps) { return {WindowKind::kIndex, static_cast<double>(eps)}; }
  static WindowSpec energy(double eps) { return {WindowKind::kEnergy, eps}; }

  bool admits(int m, int n, const RealVector& x) const {
    switch (kind) {
      case WindowKind::kUnbounded:
        return true;
      case WindowKind::kIndex:
        return std::abs(m - n) <= epsilon;
      case WindowKind::kEnergy:
        return std::abs(x[m] - x[n]) <= epsilon;
    }
    return true;
  }
};

/// Generator of the density-matrix evolution in the moving eigenbasis,
///   A = G - i diag(x),
///   G_un = lambda_dot * (l_un / (x_u - x_n)^2 + D_un / (x_u - x_n)),  n != u,
/// restricted to window-admitted pairs. G is anti-Hermitian, so the
/// evolution d(rho)/dt = [A, rho] is unitary in the moving frame: trace,
/// Hermiticity and purity are conserved along any single noise path. The
/// sign of G is the one frozen by the diagonalization-oracle audit.
ComplexMatrix evolution_generator(const LevelState& s, double lambda_dot,
                                  const ComplexMatrix& noise_rate,
                                  const WindowSpec& window = {},
                                  const DenominatorPolicy& policy = {});

/// d(rho)/dt in the moving eigenbasis, closed evolution.
ComplexMatrix rho_rhs(const LevelState& s, const ComplexMatrix& rho,
                      double lambda_dot, const DenominatorPolicy& policy = {});

/// d(rho)/dt including the Hermitian noise rate D = d(dh)/d_lambda.
ComplexMatrix rho_rhs_noisy(const LevelState& s, const ComplexMatrix& rho,
                            double lambda_dot, const ComplexMatrix& noise_rate,
                            const DenominatorPolicy& policy = {});

/// d(rho)/dt with the coupling sums window-truncated. An unbounded window
/// reproduces rho_rhs_noisy bitwise; epsilon = 0 (index) leaves only the
/// -i(x_u - x_w) rho_uw dephasing term.
ComplexMatrix rho_rhs_windowed(const LevelState& s, const ComplexMatrix& rho,
                               double lambda_dot, const ComplexMatrix& noise_rate,
                               const WindowSpec& window,
                               const DenominatorPolicy& policy = {});

/// d(rho_ww)/dt for every level: the occupation flow. Real by construction
/// and summing to zero by pairwise cancellation; coincides with the diagonal
/// of rho_rhs_windowed.
RealVector occupation_rhs(const LevelState& s, const ComplexMatrix& rho,
                          double lambda_dot, const ComplexMatrix& noise_rate,
                          const WindowSpec& window,
                          const DenominatorPolicy& policy = {});

}  // namespace levgas
