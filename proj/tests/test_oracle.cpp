#include <doctest.h>

#include <cmath>

#include "levgas/oracle.hpp"

using namespace levgas;

namespace {

RunConfig ising_config(double t1 = 20.0) {
  RunConfig c;
  c.model.j.fixed = 1.0;
  c.model.h1 = 0.1;
  c.model.h2 = 0.2;
  c.model.z = 10.0;
  c.schedule.kind = ScheduleKind::kLog;
  c.schedule.a = 1e-3;
  c.schedule.b = 0.1;
  c.schedule.t0 = 10.1;
  c.schedule.t1 = t1;
  c.integrator.dt = 1e-3;
  c.integrator.stride = 100;
  c.seed = 7;
  return c;
}

ComplexMatrix rho0_fixed_basis(const RunConfig& c, const HamiltonianSpec& spec) {
  const double lambda0 = schedule_eval(c.schedule, c.schedule.t0).lambda;
  const EigenSystem basis = eigh(hamiltonian_at(spec, lambda0));
  return basis.vectors * uniform_rho0(4) * basis.vectors.adjoint();
}

}  // namespace

TEST_CASE("constant Hamiltonian: commuting rho stays put") {
  RunConfig c = ising_config();
  c.schedule.kind = ScheduleKind::kConstant;
  c.schedule.a = 0.5;
  c.schedule.t0 = 0.0;
  c.schedule.t1 = 1.0;
  const HamiltonianSpec spec = build_model(c);
  const StepGrid grid = make_grid(c.schedule, 1e-3, 100);

  // rho0 diagonal in the eigenbasis commutes with H
  const EigenSystem sys = eigh(hamiltonian_at(spec, 0.5));
  ComplexMatrix diag = ComplexMatrix::Zero(4, 4);
  diag(0, 0) = 0.4;
  diag(1, 1) = 0.3;
  diag(2, 2) = 0.2;
  diag(3, 3) = 0.1;
  const ComplexMatrix rho0 = sys.vectors * diag * sys.vectors.adjoint();

  const OracleTrajectory oracle = direct_evolve(spec, c.schedule, rho0, grid);
  for (const OracleSample& s : oracle.samples) {
    CHECK((s.rho_fixed - rho0).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("constant Hamiltonian: eigenbasis diagonal frozen, coherences rotate") {
  RunConfig c = ising_config();
  c.schedule.kind = ScheduleKind::kConstant;
  c.schedule.a = 0.5;
  c.schedule.t0 = 0.0;
  c.schedule.t1 = 1.0;
  const HamiltonianSpec spec = build_model(c);
  const StepGrid grid = make_grid(c.schedule, 1e-3, 100);
  const ComplexMatrix rho0 = rho0_fixed_basis(c, spec);
  const OracleTrajectory oracle = direct_evolve(spec, c.schedule, rho0, grid);

  const ComplexMatrix first = oracle.samples.front().rho_eigenbasis;
  for (const OracleSample& s : oracle.samples) {
    const double t = s.t;
    for (int u = 0; u < 4; ++u) {
      CHECK(std::abs(s.rho_eigenbasis(u, u) - first(u, u)) <= 1e-9);
      for (int w = u + 1; w < 4; ++w) {
        const Complex expected =
            first(u, w) *
            std::exp(Complex(0.0, -(s.exact_levels[u] - s.exact_levels[w]) * t));
        CHECK(std::abs(s.rho_eigenbasis(u, w) - expected) <= 1e-7);
      }
    }
  }
}

TEST_CASE("oracle conserves fixed-basis purity and spectrum across bases") {
  RunConfig c = ising_config(15.0);
  const HamiltonianSpec spec = build_model(c);
  const StepGrid grid = make_grid(c.schedule, c.integrator.dt, c.integrator.stride);
  const OracleTrajectory oracle =
      direct_evolve(spec, c.schedule, rho0_fixed_basis(c, spec), grid);

  const double p0 = purity(oracle.samples.front().rho_fixed);
  for (const OracleSample& s : oracle.samples) {
    CHECK(std::abs(purity(s.rho_fixed) - p0) <= 1e-8);
    // unitary basis change preserves the spectrum
    const RealVector spec_fixed = eigh(s.rho_fixed).values;
    const RealVector spec_eig = eigh(s.rho_eigenbasis).values;
    CHECK((spec_fixed - spec_eig).cwiseAbs().maxCoeff() <= 1e-10);
    // the instantaneous-basis rho is trace-1 and PSD up to rounding
    CHECK(std::abs(s.rho_eigenbasis.trace().real() - 1.0) <= 1e-9);
    CHECK(spec_eig.minCoeff() >= -1e-8);
  }
}

TEST_CASE("eigen_levels: flat when Hb = 0, closed form on the Ising path") {
  RunConfig c = ising_config();
  HamiltonianSpec flat = build_two_qubit_ising(1.0, 0.0, 0.0, 10.0);
  flat.h0(1, 1) = -1.5;  // lift the degeneracy
  flat.h0(2, 2) = -0.5;
  const std::vector<double> times{10.5, 20.0, 40.0};
  const std::vector<RealVector> curves = eigen_levels(flat, c.schedule, times);
  for (std::size_t i = 1; i < curves.size(); ++i) {
    CHECK((curves[i] - curves[0]).cwiseAbs().maxCoeff() <= 1e-14);
  }

  const HamiltonianSpec spec = build_model(c);
  const std::vector<RealVector> ising = eigen_levels(spec, c.schedule, {100.0});
  // closed form +-sqrt(J^2 + (lambda Z (h1 +- h2))^2) at lambda(100)
  const double lz = schedule_eval(c.schedule, 100.0).lambda * 10.0;
  const double outer = std::sqrt(1.0 + lz * lz * 0.09);
  const double inner = std::sqrt(1.0 + lz * lz * 0.01);
  CHECK(ising[0][0] == doctest::Approx(-outer).epsilon(1e-12));
  CHECK(ising[0][1] == doctest::Approx(-inner).epsilon(1e-12));
  CHECK(ising[0][2] == doctest::Approx(inner).epsilon(1e-12));
  CHECK(ising[0][3] == doctest::Approx(outer).epsilon(1e-12));
}

TEST_CASE("gas trajectory matches the oracle on a short run") {
  RunConfig c = ising_config(20.0);
  const Trajectory traj = run_trajectory(c);
  const HamiltonianSpec spec = build_model(c);
  const StepGrid grid = make_grid(c.schedule, c.integrator.dt, c.integrator.stride);
  const OracleTrajectory oracle =
      direct_evolve(spec, c.schedule, rho0_fixed_basis(c, spec), grid);
  const ComparisonReport report = compare(traj, oracle);
  CHECK(report.max_level_diff <= 1e-5);
  CHECK(report.max_abs_entry_diff <= 1e-4);
}

TEST_CASE("compare: a trajectory against itself is exactly zero") {
  RunConfig c = ising_config(12.0);
  const Trajectory traj = run_trajectory(c);
  OracleTrajectory self;
  self.dim = traj.dim;
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    OracleSample s;
    s.t = traj.samples[i].t;
    s.lambda = traj.samples[i].lambda;
    s.exact_levels = traj.samples[i].x;
    s.rho_eigenbasis = traj.rho_at(i);
    s.rho_fixed = s.rho_eigenbasis;
    self.samples.push_back(std::move(s));
  }
  const ComparisonReport report = compare(traj, self);
  CHECK(report.max_abs_entry_diff == 0.0);
  CHECK(report.rms_diff == 0.0);
  CHECK(report.max_level_diff == 0.0);
}

TEST_CASE("compare flags grid mismatches") {
  RunConfig c = ising_config(12.0);
  const Trajectory traj = run_trajectory(c);
  OracleTrajectory wrong;
  wrong.dim = traj.dim;
  CHECK_THROWS_AS(compare(traj, wrong), GridMismatch);
}

TEST_CASE("flipped coupling sign diverges from the oracle") {
  // Milder than a wrong global sign in production: evolve with the coupling
  // part of the generator negated and watch the mismatch grow well past the
  // tolerance the correct convention meets on the same grid.
  RunConfig c = ising_config(20.0);
  const HamiltonianSpec spec = build_model(c);
  const Schedule& schedule = c.schedule;
  const StepGrid grid = make_grid(schedule, c.integrator.dt, c.integrator.stride);

  const double lambda0 = schedule_eval(schedule, schedule.t0).lambda;
  const LevelInit init = init_levels_with_basis(spec, lambda0);

  CoupledState state;
  state.t = schedule.t0;
  state.levels = init.state;
  state.rho = uniform_rho0(4);

  const ComplexMatrix zero = ComplexMatrix::Zero(4, 4);
  double max_dev = 0.0;
  const OracleTrajectory oracle =
      direct_evolve(spec, schedule, rho0_fixed_basis(c, spec), grid);
  std::size_t sample_index = 1;
  for (long k = 0; k < grid.total_steps(); ++k) {
    const double h = grid.step_size(k);
    // rk4 on the deterministic system with the wrong coupling sign
    const auto rhs = [&](double t, const LevelState& lv, const ComplexMatrix& rho) {
      const ScheduleSample sched = schedule_eval(schedule, t);
      LevelDerivative ld = pechukas_rhs(lv);
      ld.dx *= sched.lambda_dot;
      ld.dv *= sched.lambda_dot;
      ld.dl *= sched.lambda_dot;
      // negate the level-coupling block of the generator
      ComplexMatrix a = evolution_generator(lv, -sched.lambda_dot, zero);
      for (int u = 0; u < 4; ++u) a(u, u) = Complex(0.0, -lv.x[u]);
      return std::make_pair(ld, ComplexMatrix(a * rho - rho * a));
    };
    const auto [k1l, k1r] = rhs(state.t, state.levels, state.rho);
    LevelState s2;
    s2.x = state.levels.x + 0.5 * h * k1l.dx;
    s2.v = state.levels.v + 0.5 * h * k1l.dv;
    s2.l = state.levels.l + 0.5 * h * k1l.dl;
    const auto [k2l, k2r] = rhs(state.t + 0.5 * h, s2, state.rho + 0.5 * h * k1r);
    LevelState s3;
    s3.x = state.levels.x + 0.5 * h * k2l.dx;
    s3.v = state.levels.v + 0.5 * h * k2l.dv;
    s3.l = state.levels.l + 0.5 * h * k2l.dl;
    const auto [k3l, k3r] = rhs(state.t + 0.5 * h, s3, state.rho + 0.5 * h * k2r);
    LevelState s4;
    s4.x = state.levels.x + h * k3l.dx;
    s4.v = state.levels.v + h * k3l.dv;
    s4.l = state.levels.l + h * k3l.dl;
    const auto [k4l, k4r] = rhs(state.t + h, s4, state.rho + h * k3r);
    state.levels.x += (h / 6.0) * (k1l.dx + 2 * k2l.dx + 2 * k3l.dx + k4l.dx);
    state.levels.v += (h / 6.0) * (k1l.dv + 2 * k2l.dv + 2 * k3l.dv + k4l.dv);
    state.levels.l += (h / 6.0) * (k1l.dl + 2 * k2l.dl + 2 * k3l.dl + k4l.dl);
    state.rho = hermitize(state.rho + (h / 6.0) * (k1r + 2 * k2r + 2 * k3r + k4r));
    state.t = grid.time_at(k + 1);
    if (grid.is_sample(k + 1)) {
      const ComplexMatrix& ref = oracle.samples[sample_index].rho_eigenbasis;
      max_dev = std::max(max_dev, (state.rho - ref).cwiseAbs().maxCoeff());
      ++sample_index;
    }
  }
  CHECK(max_dev > 1e-3);  // the correct sign stays under 1e-4 on this run
}

TEST_CASE("noisy per-path agreement with a replayed noise path") {
  RunConfig c = ising_config(13.0);
  c.integrator.method = IntegratorMethod::kEulerMaruyama;
  c.noise.kind = NoiseKind::kWiener;
  c.noise.sigma = 0.02;
  c.seed = 99;
  const Trajectory traj = run_trajectory(c, /*record_noise=*/true);
  REQUIRE(!traj.noise_path.empty());

  const HamiltonianSpec spec = build_model(c);
  const StepGrid grid = make_grid(c.schedule, c.integrator.dt, c.integrator.stride);
  const OracleTrajectory oracle =
      direct_evolve(spec, c.schedule, rho0_fixed_basis(c, spec), grid, &traj.noise_path);
  const ComparisonReport report = compare(traj, oracle);
  // first-order stepping against the piecewise-linear replay; loose bound
  CHECK(report.max_level_diff <= 5e-3);
  CHECK(report.max_abs_entry_diff <= 5e-2);
  CHECK(std::isfinite(report.rms_diff));
}

TEST_CASE("smooth linear-drift noise tracks the perturbed spectrum sharply") {
  // dh(lambda) = (lambda - lambda0) * D with constant Hermitian D gives a
  // differentiable path whose rate is exactly D: the noisy gas equations
  // must then track eigh(H0 + lambda Z Hb + dh) like the noiseless ones
  // track eigh(H0 + lambda Z Hb).
  RunConfig c = ising_config(40.0);
  const HamiltonianSpec spec = build_model(c);
  const Schedule& schedule = c.schedule;
  const double lambda0 = schedule_eval(schedule, schedule.t0).lambda;

  ComplexMatrix drift = ComplexMatrix::Zero(4, 4);
  drift(0, 0) = 0.8;
  drift(1, 1) = -0.3;
  drift(2, 2) = 0.1;
  drift(3, 3) = -0.6;
  drift(0, 1) = Complex(0.25, 0.15);
  drift(1, 0) = std::conj(drift(0, 1));
  drift(2, 3) = Complex(-0.2, 0.05);
  drift(3, 2) = std::conj(drift(2, 3));

  CoupledState state;
  state.t = schedule.t0;
  state.levels = init_levels(spec, lambda0);
  const StepGrid grid = make_grid(schedule, c.integrator.dt, 100);
  for (long k = 0; k < grid.total_steps(); ++k) {
    const double h = grid.step_size(k);
    // rk4 with the constant rate D in every stage
    const auto rhs = [&](double t, const LevelState& lv) {
      const ScheduleSample sched = schedule_eval(schedule, t);
      LevelDerivative ld = stochastic_pechukas_rhs(lv, drift);
      ld.dx *= sched.lambda_dot;
      ld.dv *= sched.lambda_dot;
      ld.dl *= sched.lambda_dot;
      return ld;
    };
    const LevelDerivative k1 = rhs(state.t, state.levels);
    LevelState s2{state.levels.x + 0.5 * h * k1.dx, state.levels.v + 0.5 * h * k1.dv,
                  state.levels.l + 0.5 * h * k1.dl};
    const LevelDerivative k2 = rhs(state.t + 0.5 * h, s2);
    LevelState s3{state.levels.x + 0.5 * h * k2.dx, state.levels.v + 0.5 * h * k2.dv,
                  state.levels.l + 0.5 * h * k2.dl};
    const LevelDerivative k3 = rhs(state.t + 0.5 * h, s3);
    LevelState s4{state.levels.x + h * k3.dx, state.levels.v + h * k3.dv,
                  state.levels.l + h * k3.dl};
    const LevelDerivative k4 = rhs(state.t + h, s4);
    state.levels.x += (h / 6.0) * (k1.dx + 2 * k2.dx + 2 * k3.dx + k4.dx);
    state.levels.v += (h / 6.0) * (k1.dv + 2 * k2.dv + 2 * k3.dv + k4.dv);
    state.levels.l += (h / 6.0) * (k1.dl + 2 * k2.dl + 2 * k3.dl + k4.dl);
    state.t = grid.time_at(k + 1);
  }

  const double lambda_end = schedule_eval(schedule, schedule.t1).lambda;
  const ComplexMatrix h_end =
      hamiltonian_at(spec, lambda_end, (lambda_end - lambda0) * drift);
  const RealVector exact = eigh(h_end).values;
  CHECK((state.levels.x - exact).cwiseAbs().maxCoeff() <= 1e-6);
}
