#pragma once

#include <string>
#include <vector>

#include "levgas/integrator.hpp"
#include "levgas/linalg.hpp"
#include "levgas/models.hpp"

namespace levgas {

struct OracleSample {
  double t = 0.0;
  double lambda = 0.0;
  RealVector exact_levels;       // ascending eigenvalues of H(t)
  ComplexMatrix rho_fixed;       // rho in the fixed computational basis
  ComplexMatrix rho_eigenbasis;  // gauge-aligned moving-frame rho
};

struct OracleTrajectory {
  int dim = 0;
  std::vector<OracleSample> samples;
};

struct ComparisonReport {
  double max_abs_entry_diff = 0.0;
  double rms_diff = 0.0;
  double max_level_diff = 0.0;
  double worst_entry_t = 0.0;
  int worst_entry_u = 0;
  int worst_entry_w = 0;
  double worst_level_t = 0.0;
  int worst_level_index = 0;
};

std::string to_json(const ComparisonReport& report);

/// Direct integration of d(rho)/dt = -i [H(t), rho] in the fixed basis by
/// RK4, with H built from the Hamiltonian family (plus the replayed noise
/// path, piecewise linear over each step, when one is supplied). At each
/// sample the instantaneous eigenbasis is diagonalized fresh and chained to
/// the previous sample's gauge, giving the moving-frame rho this module
/// exists to cross-check. rho0_fixed must already be expressed in the fixed
/// basis.
OracleTrajectory direct_evolve(const HamiltonianSpec& spec, const Schedule& schedule,
                               const ComplexMatrix& rho0_fixed, const StepGrid& grid,
                               const std::vector<NoiseStepRecord>* noise_path = nullptr);

/// Ascending eigenvalues of H(lambda(t)) at each listed time; no dynamics.
std::vector<RealVector> eigen_levels(const HamiltonianSpec& spec,
                                     const Schedule& schedule,
                                     const std::vector<double>& times);

/// Entrywise and levelwise deviations between a gas-side trajectory and the
/// oracle on the same grid. Throws GridMismatch when the grids differ.
ComparisonReport compare(const Trajectory& a, const OracleTrajectory& b);

}  // namespace levgas
