#include "levgas/integrator.hpp"

#include <cmath>
#include <utility>

namespace levgas {

namespace {

struct CoupledDerivative {
  LevelDerivative levels;
  ComplexMatrix rho;
};

CoupledDerivative deterministic_rhs(double t, const LevelState& levels,
                                    const ComplexMatrix& rho, const Schedule& schedule,
                                    const WindowSpec& window,
                                    const DenominatorPolicy& policy,
                                    const ComplexMatrix& zero) {
  const ScheduleSample sched = schedule_eval(schedule, t);
  CoupledDerivative d;
  d.levels = stochastic_pechukas_rhs(levels, zero, policy);
  d.levels.dx *= sched.lambda_dot;
  d.levels.dv *= sched.lambda_dot;
  d.levels.dl *= sched.lambda_dot;
  d.rho = rho_rhs_windowed(levels, rho, sched.lambda_dot, zero, window, policy);
  return d;
}

LevelState advance(const LevelState& s, double h, const LevelDerivative& d) {
  LevelState out;
  out.x = s.x + h * d.dx;
  out.v = s.v + h * d.dv;
  out.l = s.l + h * d.dl;
  return out;
}

}  // namespace

double StepGrid::time_at(long k) const {
  if (k <= n_steps) return t0 + static_cast<double>(k) * dt;
  return t0 + static_cast<double>(n_steps) * dt + dt_last;
}

bool StepGrid::is_sample(long k) const {
  return k % stride == 0 || k == total_steps();
}

StepGrid make_grid(const Schedule& schedule, double dt, int stride) {
  if (!(dt > 0.0)) throw NonPositiveStep("grid: dt must be positive");
  const double span = schedule.t1 - schedule.t0;
  StepGrid grid;
  grid.t0 = schedule.t0;
  grid.dt = dt;
  grid.stride = stride;
  const double ratio = span / dt;
  const long rounded = std::llround(ratio);
  if (rounded >= 1 && std::abs(ratio - static_cast<double>(rounded)) < 1e-9 * ratio + 1e-12) {
    grid.n_steps = rounded;
    grid.dt_last = 0.0;
  } else {
    grid.n_steps = static_cast<long>(std::floor(ratio));
    grid.dt_last = span - static_cast<double>(grid.n_steps) * dt;
  }
  return grid;
}

void rk4_step(CoupledState& state, double dt, const Schedule& schedule,
              const WindowSpec& window, const DenominatorPolicy& policy) {
  if (!(dt > 0.0)) throw NonPositiveStep("rk4_step: dt must be positive");
  const int n = state.levels.dim();
  const ComplexMatrix zero = ComplexMatrix::Zero(n, n);
  const double t = state.t;
  const double half = 0.5 * dt;

  const CoupledDerivative k1 =
      deterministic_rhs(t, state.levels, state.rho, schedule, window, policy, zero);
  const CoupledDerivative k2 =
      deterministic_rhs(t + half, advance(state.levels, half, k1.levels),
                        state.rho + half * k1.rho, schedule, window, policy, zero);
  const CoupledDerivative k3 =
      deterministic_rhs(t + half, advance(state.levels, half, k2.levels),
                        state.rho + half * k2.rho, schedule, window, policy, zero);
  const CoupledDerivative k4 =
      deterministic_rhs(t + dt, advance(state.levels, dt, k3.levels),
                        state.rho + dt * k3.rho, schedule, window, policy, zero);

  const double w = dt / 6.0;
  state.levels.x += w * (k1.levels.dx + 2.0 * k2.levels.dx + 2.0 * k3.levels.dx + k4.levels.dx);
  state.levels.v += w * (k1.levels.dv + 2.0 * k2.levels.dv + 2.0 * k3.levels.dv + k4.levels.dv);
  state.levels.l += w * (k1.levels.dl + 2.0 * k2.levels.dl + 2.0 * k3.levels.dl + k4.levels.dl);
  state.rho = hermitize(state.rho + w * (k1.rho + 2.0 * k2.rho + 2.0 * k3.rho + k4.rho));
  state.t = t + dt;
}

void euler_maruyama_step(CoupledState& state, double dt, const Schedule& schedule,
                         const WindowSpec& window, const DenominatorPolicy& policy,
                         NoiseStepRecord* record) {
  if (!(dt > 0.0)) throw NonPositiveStep("euler_maruyama_step: dt must be positive");
  const int n = state.levels.dim();
  const ScheduleSample sched = schedule_eval(schedule, state.t);
  const double d_lambda = sched.lambda_dot * dt;

  if (record != nullptr) {
    record->value_before = state.noise.current();
  }
  const NoiseIncrement inc = state.noise.step(d_lambda);
  if (record != nullptr) {
    record->increment = inc.d_dh;
  }

  // Levels: explicit Euler in lambda; rate terms times d_lambda reduce to
  // the raw increment.
  const LevelDerivative ld = stochastic_pechukas_rhs(state.levels, inc.dh_dot, policy);
  LevelState next = advance(state.levels, d_lambda, ld);

  // rho: Cayley transform of the frozen generator, exactly unitary.
  const ComplexMatrix a =
      evolution_generator(state.levels, sched.lambda_dot, inc.dh_dot, window, policy);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix u =
      (id - (0.5 * dt) * a).partialPivLu().solve(id + (0.5 * dt) * a);
  state.rho = hermitize(u * state.rho * u.adjoint());

  state.levels = std::move(next);
  state.t += dt;
}

ComplexMatrix Trajectory::rho_at(std::size_t sample_index) const {
  const TrajectorySample& s = samples.at(sample_index);
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  int pair = 0;
  for (int u = 0; u < dim; ++u) {
    rho(u, u) = Complex(s.occupations[u], 0.0);
    for (int w = u + 1; w < dim; ++w) {
      rho(u, w) = s.coherences[pair];
      rho(w, u) = std::conj(s.coherences[pair]);
      ++pair;
    }
  }
  return rho;
}

namespace {

TrajectorySample make_sample(double t, double lambda, const CoupledState& state) {
  const int n = state.levels.dim();
  TrajectorySample s;
  s.t = t;
  s.lambda = lambda;
  s.x = state.levels.x;
  s.occupations.resize(n);
  for (int u = 0; u < n; ++u) {
    s.occupations[u] = state.rho(u, u).real();
  }
  s.coherences.resize(n * (n - 1) / 2);
  int pair = 0;
  for (int u = 0; u < n; ++u) {
    for (int w = u + 1; w < n; ++w) {
      s.coherences[pair++] = state.rho(u, w);
    }
  }
  s.purity = purity(state.rho);
  s.trace_error = std::abs(state.rho.trace() - Complex(1.0, 0.0));
  return s;
}

}  // namespace

Trajectory run_trajectory(const RunConfig& config, bool record_noise) {
  validate_config(config);
  const HamiltonianSpec spec = build_model(config);
  const Schedule& schedule = config.schedule;
  const StepGrid grid = make_grid(schedule, config.integrator.dt, config.integrator.stride);

  const double lambda0 = schedule_eval(schedule, schedule.t0).lambda;
  LevelInit init;
  try {
    init = init_levels_with_basis(spec, lambda0);
  } catch (const DegenerateLevels& e) {
    throw DegenerateLevels(std::string(e.what()) + " (at t = " +
                               std::to_string(schedule.t0) + ")",
                           schedule.t0);
  }

  CoupledState state;
  state.t = schedule.t0;
  state.levels = std::move(init.state);
  state.rho = build_rho0(config, spec.dim());
  state.noise = build_noise(config);

  Trajectory traj;
  traj.dim = spec.dim();
  traj.metadata.config_json = serialize_config(config);
  traj.metadata.seed = config.seed;
  traj.metadata.config_hash = config_hash(config);
  traj.metadata.integrator =
      config.integrator.method == IntegratorMethod::kRk4 ? "rk4" : "euler_maruyama";
  traj.metadata.dt = config.integrator.dt;
  traj.metadata.stride = config.integrator.stride;
  traj.metadata.j_value = resolve_coupling(config);

  const long total = grid.total_steps();
  traj.samples.reserve(static_cast<std::size_t>(total / grid.stride + 2));
  traj.samples.push_back(make_sample(state.t, lambda0, state));
  if (record_noise) {
    traj.noise_path.reserve(static_cast<std::size_t>(total));
  }

  for (long k = 0; k < total; ++k) {
    const double h = grid.step_size(k);
    try {
      if (config.integrator.method == IntegratorMethod::kRk4) {
        rk4_step(state, h, schedule, config.window, config.integrator.policy);
      } else {
        NoiseStepRecord record;
        euler_maruyama_step(state, h, schedule, config.window, config.integrator.policy,
                            record_noise ? &record : nullptr);
        if (record_noise) {
          traj.noise_path.push_back(std::move(record));
        }
      }
    } catch (const DegenerateLevels& e) {
      throw DegenerateLevels(std::string(e.what()) + " (at t = " +
                                 std::to_string(grid.time_at(k)) + ")",
                             grid.time_at(k));
    }
    state.t = grid.time_at(k + 1);  // keep the grid arithmetic exact
    if (grid.is_sample(k + 1)) {
      traj.samples.push_back(
          make_sample(state.t, schedule_eval(schedule, state.t).lambda, state));
    }
  }
  return traj;
}

}  // namespace levgas
