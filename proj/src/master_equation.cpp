#include "levgas/master_equation.hpp"

#include <cmath>

namespace levgas {

namespace {

/// G entry for an admitted off-diagonal pair (u, n).
inline Complex coupling(const LevelState& s, const ComplexMatrix& d, double lambda_dot,
                        int u, int n, const DenominatorPolicy& policy) {
  const double g = policy.clamp(s.x[u] - s.x[n], std::numeric_limits<double>::quiet_NaN());
  const double inv = 1.0 / g;
  return lambda_dot * (s.l(u, n) * (inv * inv) + d(u, n) * inv);
}

void check_dims(const LevelState& s, const ComplexMatrix& rho, const ComplexMatrix& d) {
  const int n = s.dim();
  if (rho.rows() != n || rho.cols() != n) {
    throw DimensionMismatch("rho_rhs: density matrix dimension differs");
  }
  if (d.rows() != n || d.cols() != n) {
    throw DimensionMismatch("rho_rhs: noise dimension differs");
  }
}

}  // namespace

ComplexMatrix evolution_generator(const LevelState& s, double lambda_dot,
                                  const ComplexMatrix& noise_rate,
                                  const WindowSpec& window,
                                  const DenominatorPolicy& policy) {
  const int n = s.dim();
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    a(u, u) = Complex(0.0, -s.x[u]);
    for (int k = u + 1; k < n; ++k) {
      if (!window.admits(u, k, s.x)) continue;
      const Complex g = coupling(s, noise_rate, lambda_dot, u, k, policy);
      a(u, k) = g;
      a(k, u) = -std::conj(g);  // G is anti-Hermitian
    }
  }
  return a;
}

ComplexMatrix rho_rhs_windowed(const LevelState& s, const ComplexMatrix& rho,
                               double lambda_dot, const ComplexMatrix& noise_rate,
                               const WindowSpec& window,
                               const DenominatorPolicy& policy) {
  check_dims(s, rho, noise_rate);
  const int n = s.dim();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);

  // Off-diagonal entries: [G, rho]_uw plus dephasing, upper triangle
  // computed and conjugate-mirrored so out_uw = conj(out_wu) exactly.
  for (int u = 0; u < n; ++u) {
    for (int w = u + 1; w < n; ++w) {
      Complex acc(0.0, 0.0);
      for (int k = 0; k < n; ++k) {
        if (k != u && window.admits(u, k, s.x)) {
          acc += coupling(s, noise_rate, lambda_dot, u, k, policy) * rho(k, w);
        }
      }
      for (int k = 0; k < n; ++k) {
        if (k != w && window.admits(k, w, s.x)) {
          acc -= rho(u, k) * coupling(s, noise_rate, lambda_dot, k, w, policy);
        }
      }
      acc += Complex(0.0, -(s.x[u] - s.x[w])) * rho(u, w);
      out(u, w) = acc;
      out(w, u) = std::conj(acc);
    }
  }

  // Diagonal: each unordered pair contributes +c to one level and exactly -c
  // to its partner, so populations redistribute without leaking trace.
  for (int w = 0; w < n; ++w) {
    for (int k = w + 1; k < n; ++k) {
      if (!window.admits(w, k, s.x)) continue;
      const Complex z = coupling(s, noise_rate, lambda_dot, w, k, policy) * rho(k, w);
      const double c = 2.0 * z.real();
      out(w, w) += c;
      out(k, k) -= c;
    }
  }
  return out;
}

ComplexMatrix rho_rhs_noisy(const LevelState& s, const ComplexMatrix& rho,
                            double lambda_dot, const ComplexMatrix& noise_rate,
                            const DenominatorPolicy& policy) {
  return rho_rhs_windowed(s, rho, lambda_dot, noise_rate, WindowSpec::unbounded(),
                          policy);
}

ComplexMatrix rho_rhs(const LevelState& s, const ComplexMatrix& rho, double lambda_dot,
                      const DenominatorPolicy& policy) {
  return rho_rhs_noisy(s, rho, lambda_dot, ComplexMatrix::Zero(s.dim(), s.dim()),
                       policy);
}

RealVector occupation_rhs(const LevelState& s, const ComplexMatrix& rho,
                          double lambda_dot, const ComplexMatrix& noise_rate,
                          const WindowSpec& window, const DenominatorPolicy& policy) {
  check_dims(s, rho, noise_rate);
  const int n = s.dim();
  RealVector out = RealVector::Zero(n);
  for (int w = 0; w < n; ++w) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == w || !window.admits(w, k, s.x)) continue;
      acc += 2.0 * (coupling(s, noise_rate, lambda_dot, w, k, policy) * rho(k, w)).real();
    }
    out[w] = acc;
  }
  return out;
}

}  // namespace levgas
