#pragma once

#include "levgas/linalg.hpp"
#include "levgas/models.hpp"
#include "levgas/types.hpp"

namespace levgas {

/// Gas coordinates of the level dynamics: positions x (the instantaneous
/// eigenvalues, ascending at initialization), velocities v, and relative
/// angular momenta l with l_mn = -conj(l_nm) and zero diagonal.
struct LevelState {
  RealVector x;
  RealVector v;
  ComplexMatrix l;

  int dim() const { return static_cast<int>(x.size()); }
};

/// d/d_lambda of a LevelState. dl inherits the anti-conjugate symmetry of l
/// and keeps an exactly zero diagonal.
struct LevelDerivative {
  RealVector dx;
  RealVector dv;
  ComplexMatrix dl;
};

enum class DegeneracyMode { kStrict, kRegularized };

/// Policy for the 1/(x_m - x_n) denominators, which are singular at level
/// crossings. Strict mode refuses to evaluate below the floor; regularized
/// mode clamps the magnitude to the floor with the sign preserved.
struct DenominatorPolicy {
  DegeneracyMode mode = DegeneracyMode::kRegularized;
  double floor = 1e-8;

  double clamp(double gap, double when) const;
};

/// Gas coordinates from the Hamiltonian family at lambda0, in the ascending
/// eigenbasis of H(lambda0):
///   x_m = E_m,  v_m = <m|Z Hb|m>,  l_mn = (x_m - x_n) <m|Z Hb|n>.
/// Throws DegenerateLevels when the smallest gap is under 1e-10 * ||H||.
LevelState init_levels(const HamiltonianSpec& spec, double lambda0);

/// As init_levels, also returning the eigenbasis the coordinates were built
/// in (needed to seed gauge tracking and to place rho0).
struct LevelInit {
  LevelState state;
  EigenSystem basis;
};
LevelInit init_levels_with_basis(const HamiltonianSpec& spec, double lambda0);

/// Noiseless gas flow:
///   dx_m = v_m
///   dv_m = 2 sum_{n != m} |l_mn|^2 / (x_m - x_n)^3
///   dl_mn = sum_{k != m,n} l_mk l_kn (1/(x_m - x_k)^2 - 1/(x_k - x_n)^2)
LevelDerivative pechukas_rhs(const LevelState& s,
                             const DenominatorPolicy& policy = {});

/// Noise-driven gas flow. `noise_rate` is the Hermitian rate d(dh)/d_lambda
/// for the step (for an Ito step, the increment divided by d_lambda). With
/// D = noise_rate the flow gains, term for term,
///   dx_m += D_mm
///   dv_m += sum_{n != m} (l_mn D_nm - D_mn l_nm) / (x_m - x_n)^2
///   dl_mn += sum_{k != m,n} (x_m - x_n)(l_mk D_kn - D_mk l_kn)
///                            / ((x_m - x_k)(x_n - x_k))
///            - D_mn (v_m - v_n) + l_mn (D_mm - D_nn) / (x_m - x_n),
/// the unique reading under which the gas tracks the eigenvalues of
/// H0 + lambda Z Hb + dh(lambda) exactly (checked against the
/// diagonalization oracle) and which reduces to the noiseless flow when the
/// noise vanishes.
LevelDerivative stochastic_pechukas_rhs(const LevelState& s,
                                        const ComplexMatrix& noise_rate,
                                        const DenominatorPolicy& policy = {});

/// Conserved energy of the noiseless flow:
///   1/2 sum v_m^2 + 1/2 sum_{n != m} |l_mn|^2 / (x_m - x_n)^2.
double gas_hamiltonian(const LevelState& s, const DenominatorPolicy& policy = {});

/// sum_m v_m, conserved by the flow.
double total_momentum(const LevelState& s);

}  // namespace levgas
