#include "levgas/oracle.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace levgas {

namespace {

Complex minus_i() { return Complex(0.0, -1.0); }

/// -i [H, rho]
ComplexMatrix von_neumann_rhs(const ComplexMatrix& h, const ComplexMatrix& rho) {
  return minus_i() * (h * rho - rho * h);
}

/// Noise value at offset tau inside step k, linear between the recorded
/// endpoint values.
class NoisePathView {
 public:
  NoisePathView(const std::vector<NoiseStepRecord>* path, int dim)
      : path_(path), zero_(ComplexMatrix::Zero(dim, dim)) {}

  ComplexMatrix value(long step, double frac) const {
    if (path_ == nullptr || path_->empty()) return zero_;
    const auto& rec = (*path_)[static_cast<std::size_t>(step)];
    return rec.value_before + frac * rec.increment;
  }

  bool active() const { return path_ != nullptr && !path_->empty(); }

 private:
  const std::vector<NoiseStepRecord>* path_;
  ComplexMatrix zero_;
};

}  // namespace

OracleTrajectory direct_evolve(const HamiltonianSpec& spec, const Schedule& schedule,
                               const ComplexMatrix& rho0_fixed, const StepGrid& grid,
                               const std::vector<NoiseStepRecord>* noise_path) {
  const int n = spec.dim();
  if (rho0_fixed.rows() != n || rho0_fixed.cols() != n) {
    throw DimensionMismatch("direct_evolve: rho0 dimension differs from the model");
  }
  if (noise_path != nullptr && !noise_path->empty() &&
      static_cast<long>(noise_path->size()) != grid.total_steps()) {
    throw GridMismatch("direct_evolve: noise path length differs from the grid");
  }
  NoisePathView noise(noise_path, n);

  const auto hamiltonian = [&](long step, double tau, double h_step) {
    const double t = grid.time_at(step) + tau;
    const double lambda = schedule_eval(schedule, t).lambda;
    if (noise.active()) {
      return hamiltonian_at(spec, lambda, noise.value(step, h_step > 0.0 ? tau / h_step : 0.0));
    }
    return hamiltonian_at(spec, lambda);
  };

  OracleTrajectory out;
  out.dim = n;
  ComplexMatrix rho = rho0_fixed;

  GaugeFrame frame;
  const auto sample_at = [&](long step_index) {
    const double t = grid.time_at(step_index);
    OracleSample s;
    s.t = t;
    s.lambda = schedule_eval(schedule, t).lambda;
    const ComplexMatrix h = hamiltonian(std::min(step_index, grid.total_steps() - 1),
                                        step_index == grid.total_steps()
                                            ? grid.step_size(grid.total_steps() - 1)
                                            : 0.0,
                                        grid.step_size(std::min(step_index, grid.total_steps() - 1)));
    EigenSystem sys = eigh(h);
    if (frame.vectors.size() == 0) {
      frame.vectors = sys.vectors;
    } else {
      try {
        sys = gauge_align(frame, sys);
      } catch (const AmbiguousAlignment& e) {
        throw AmbiguousAlignment(std::string(e.what()) + " (at t = " + std::to_string(t) + ")");
      }
      frame.vectors = sys.vectors;
    }
    s.exact_levels = sys.values;
    s.rho_fixed = rho;
    s.rho_eigenbasis = sys.vectors.adjoint() * rho * sys.vectors;
    out.samples.push_back(std::move(s));
  };

  sample_at(0);
  const long total = grid.total_steps();
  for (long k = 0; k < total; ++k) {
    const double h_step = grid.step_size(k);
    const double half = 0.5 * h_step;
    const ComplexMatrix h1 = hamiltonian(k, 0.0, h_step);
    const ComplexMatrix h2 = hamiltonian(k, half, h_step);
    const ComplexMatrix h4 = hamiltonian(k, h_step, h_step);

    const ComplexMatrix k1 = von_neumann_rhs(h1, rho);
    const ComplexMatrix k2 = von_neumann_rhs(h2, rho + half * k1);
    const ComplexMatrix k3 = von_neumann_rhs(h2, rho + half * k2);
    const ComplexMatrix k4 = von_neumann_rhs(h4, rho + h_step * k3);
    rho = hermitize(rho + (h_step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));

    if (grid.is_sample(k + 1)) {
      sample_at(k + 1);
    }
  }
  return out;
}

std::vector<RealVector> eigen_levels(const HamiltonianSpec& spec,
                                     const Schedule& schedule,
                                     const std::vector<double>& times) {
  std::vector<RealVector> out;
  out.reserve(times.size());
  for (double t : times) {
    const double lambda = schedule_eval(schedule, t).lambda;
    out.push_back(eigh(hamiltonian_at(spec, lambda)).values);
  }
  return out;
}

ComparisonReport compare(const Trajectory& a, const OracleTrajectory& b) {
  if (a.samples.size() != b.samples.size()) {
    throw GridMismatch("compare: trajectories have different sample counts (" +
                       std::to_string(a.samples.size()) + " vs " +
                       std::to_string(b.samples.size()) + ")");
  }
  if (a.dim != b.dim) {
    throw GridMismatch("compare: trajectories have different dimensions");
  }
  ComparisonReport report;
  double sq_sum = 0.0;
  long entry_count = 0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const TrajectorySample& sa = a.samples[i];
    const OracleSample& sb = b.samples[i];
    if (std::abs(sa.t - sb.t) > 1e-9 * (1.0 + std::abs(sa.t))) {
      throw GridMismatch("compare: sample times differ at index " + std::to_string(i));
    }
    const ComplexMatrix rho_a = a.rho_at(i);
    for (int u = 0; u < a.dim; ++u) {
      for (int w = 0; w < a.dim; ++w) {
        const double diff = std::abs(rho_a(u, w) - sb.rho_eigenbasis(u, w));
        sq_sum += diff * diff;
        ++entry_count;
        if (diff > report.max_abs_entry_diff) {
          report.max_abs_entry_diff = diff;
          report.worst_entry_t = sa.t;
          report.worst_entry_u = u;
          report.worst_entry_w = w;
        }
      }
      const double level_diff = std::abs(sa.x[u] - sb.exact_levels[u]);
      if (level_diff > report.max_level_diff) {
        report.max_level_diff = level_diff;
        report.worst_level_t = sa.t;
        report.worst_level_index = u;
      }
    }
  }
  report.rms_diff = entry_count > 0 ? std::sqrt(sq_sum / static_cast<double>(entry_count)) : 0.0;
  return report;
}

std::string to_json(const ComparisonReport& r) {
  nlohmann::json j;
  j["max_abs_entry_diff"] = r.max_abs_entry_diff;
  j["rms_diff"] = r.rms_diff;
  j["max_level_diff"] = r.max_level_diff;
  j["worst_entry"] = {{"t", r.worst_entry_t}, {"u", r.worst_entry_u}, {"w", r.worst_entry_w}};
  j["worst_level"] = {{"t", r.worst_level_t}, {"index", r.worst_level_index}};
  return j.dump(2);
}

}  // namespace levgas
