#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levgas/config.hpp"
#include "levgas/master_equation.hpp"
#include "levgas/models.hpp"
#include "levgas/noise.hpp"
#include "levgas/pechukas.hpp"

namespace levgas {

/// Everything that advances together on the shared time grid. The levels
/// evolve in lambda and are chain-ruled onto the t grid; rho evolves in t.
struct CoupledState {
  double t = 0.0;
  LevelState levels;
  ComplexMatrix rho;
  NoiseProcess noise = NoiseProcess::zero(1);
};

/// Per-step noise bookkeeping, enough for an oracle to replay the same
/// realization: the value at the step start and the increment applied.
struct NoiseStepRecord {
  ComplexMatrix value_before;
  ComplexMatrix increment;
};

struct TrajectorySample {
  double t = 0.0;
  double lambda = 0.0;
  RealVector x;
  RealVector occupations;
  ComplexVector coherences;  // rho_uw for u < w, row-major pair order
  double purity = 0.0;
  double trace_error = 0.0;
};

struct TrajectoryMetadata {
  std::string config_json;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  std::string sign_convention = "oracle-matched-v1";
  std::string integrator;
  double dt = 0.0;
  int stride = 1;
  double j_value = 0.0;
};

struct Trajectory {
  int dim = 0;
  std::vector<TrajectorySample> samples;
  TrajectoryMetadata metadata;
  std::vector<NoiseStepRecord> noise_path;  // filled when recording is on

  /// Hermitian rho at a sample, rebuilt from occupations and coherences.
  ComplexMatrix rho_at(std::size_t sample_index) const;
};

/// Uniform step grid over the schedule range, with an optional shorter
/// final step when the span is not an integer multiple of dt.
struct StepGrid {
  double t0 = 0.0;
  double dt = 0.0;
  long n_steps = 0;      // number of full dt steps
  double dt_last = 0.0;  // 0 when the span divides evenly
  int stride = 1;

  long total_steps() const { return n_steps + (dt_last > 0.0 ? 1 : 0); }
  double step_size(long k) const { return k < n_steps ? dt : dt_last; }
  double time_at(long k) const;
  bool is_sample(long k) const;
};

StepGrid make_grid(const Schedule& schedule, double dt, int stride);

/// Classical RK4 on the combined deterministic system
///   d(levels)/dt = lambda_dot * gas flow,  d(rho)/dt = [A, rho],
/// with lambda, lambda_dot evaluated at each internal stage time. rho is
/// re-Hermitized after the step. Deterministic runs only.
void rk4_step(CoupledState& state, double dt, const Schedule& schedule,
              const WindowSpec& window = {}, const DenominatorPolicy& policy = {});

/// One stochastic step: d_lambda = lambda_dot * dt, a single Hermitian noise
/// increment drawn and shared by the level flow and the rho generator
/// (Ito convention: rate terms carry increment / d_lambda). Levels take an
/// explicit Euler update; rho is advanced by the Cayley transform of the
/// frozen generator, which is unitary to machine precision, so each
/// realization conserves purity exactly rather than to O(dt).
void euler_maruyama_step(CoupledState& state, double dt, const Schedule& schedule,
                         const WindowSpec& window = {},
                         const DenominatorPolicy& policy = {},
                         NoiseStepRecord* record = nullptr);

Trajectory run_trajectory(const RunConfig& config, bool record_noise = false);

}  // namespace levgas
