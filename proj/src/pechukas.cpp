#include "levgas/pechukas.hpp"

#include <cmath>
#include <string>

namespace levgas {

double DenominatorPolicy::clamp(double gap, double when) const {
  const double mag = std::abs(gap);
  if (mag >= floor) return gap;
  if (mode == DegeneracyMode::kStrict) {
    throw DegenerateLevels("level gap " + std::to_string(mag) +
                               " below denominator floor " + std::to_string(floor),
                           when);
  }
  return std::copysign(floor, gap);
}

LevelInit init_levels_with_basis(const HamiltonianSpec& spec, double lambda0) {
  const ComplexMatrix h = hamiltonian_at(spec, lambda0);
  EigenSystem sys = eigh(h);
  const int n = sys.dim();

  const double scale = std::max(std::abs(sys.values[0]), std::abs(sys.values[n - 1]));
  double min_gap = std::numeric_limits<double>::infinity();
  for (int m = 0; m + 1 < n; ++m) {
    min_gap = std::min(min_gap, sys.values[m + 1] - sys.values[m]);
  }
  if (n > 1 && min_gap <= kInitGapFloor * std::max(scale, 1e-300)) {
    throw DegenerateLevels("init_levels: smallest gap " + std::to_string(min_gap) +
                           " at lambda = " + std::to_string(lambda0) +
                           " is below the degeneracy floor");
  }

  // Perturbation operator in the instantaneous eigenbasis.
  const ComplexMatrix w =
      sys.vectors.adjoint() * (spec.bias_scale * spec.hb) * sys.vectors;

  LevelState state;
  state.x = sys.values;
  state.v.resize(n);
  for (int m = 0; m < n; ++m) {
    state.v[m] = w(m, m).real();
  }
  state.l = ComplexMatrix::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = m + 1; k < n; ++k) {
      const Complex val = (state.x[m] - state.x[k]) * w(m, k);
      state.l(m, k) = val;
      state.l(k, m) = -std::conj(val);
    }
  }
  return LevelInit{std::move(state), std::move(sys)};
}

LevelState init_levels(const HamiltonianSpec& spec, double lambda0) {
  return init_levels_with_basis(spec, lambda0).state;
}

LevelDerivative stochastic_pechukas_rhs(const LevelState& s,
                                        const ComplexMatrix& noise_rate,
                                        const DenominatorPolicy& policy) {
  const int n = s.dim();
  if (noise_rate.rows() != n || noise_rate.cols() != n) {
    throw DimensionMismatch("stochastic_pechukas_rhs: noise dimension differs");
  }
  const ComplexMatrix& l = s.l;
  const ComplexMatrix& d = noise_rate;

  // Clamped pairwise gaps, shared by all three blocks.
  RealMatrix gap = RealMatrix::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      if (m == k) continue;
      gap(m, k) = policy.clamp(s.x[m] - s.x[k], std::numeric_limits<double>::quiet_NaN());
    }
  }

  LevelDerivative out;
  out.dx.resize(n);
  out.dv.resize(n);
  out.dl = ComplexMatrix::Zero(n, n);

  for (int m = 0; m < n; ++m) {
    out.dx[m] = s.v[m] + d(m, m).real();
  }

  for (int m = 0; m < n; ++m) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == m) continue;
      const double g = gap(m, k);
      const double inv = 1.0 / g;
      const double inv2 = inv * inv;
      acc += 2.0 * std::norm(l(m, k)) * inv2 * inv;
      // (l D - D l)_mm: real by the symmetry of l and Hermiticity of D.
      acc += (l(m, k) * d(k, m) - d(m, k) * l(k, m)).real() * inv2;
    }
    out.dv[m] = acc;
  }

  for (int m = 0; m < n; ++m) {
    for (int p = m + 1; p < n; ++p) {
      Complex acc(0.0, 0.0);
      const double gmp = gap(m, p);
      for (int k = 0; k < n; ++k) {
        if (k == m || k == p) continue;
        const double gmk = gap(m, k);
        const double gpk = gap(p, k);
        const double inv_mk = 1.0 / gmk;
        const double inv_pk = 1.0 / gpk;
        acc += l(m, k) * l(k, p) * (inv_mk * inv_mk - inv_pk * inv_pk);
        acc += gmp * (l(m, k) * d(k, p) - d(m, k) * l(k, p)) * (inv_mk * inv_pk);
      }
      acc -= d(m, p) * (s.v[m] - s.v[p]);
      acc += l(m, p) * ((d(m, m).real() - d(p, p).real()) / gmp);
      out.dl(m, p) = acc;
      out.dl(p, m) = -std::conj(acc);
    }
  }
  return out;
}

LevelDerivative pechukas_rhs(const LevelState& s, const DenominatorPolicy& policy) {
  return stochastic_pechukas_rhs(s, ComplexMatrix::Zero(s.dim(), s.dim()), policy);
}

double gas_hamiltonian(const LevelState& s, const DenominatorPolicy& policy) {
  const int n = s.dim();
  double kinetic = 0.0;
  for (int m = 0; m < n; ++m) {
    kinetic += s.v[m] * s.v[m];
  }
  double repulsion = 0.0;
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      if (k == m) continue;
      const double g = policy.clamp(s.x[m] - s.x[k], std::numeric_limits<double>::quiet_NaN());
      repulsion += std::norm(s.l(m, k)) / (g * g);
    }
  }
  return 0.5 * kinetic + 0.5 * repulsion;
}

double total_momentum(const LevelState& s) {
  return s.v.sum();
}

}  // namespace levgas
