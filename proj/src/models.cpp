#include "levgas/models.hpp"

#include <cmath>
#include <string>

namespace levgas {

namespace {

constexpr double kLn10 = 2.30258509299404568402;

double range_slack(const Schedule& s) {
  return 1e-9 * (std::abs(s.t1 - s.t0) + std::abs(s.t1) + 1.0);
}

}  // namespace

void validate_schedule(const Schedule& s) {
  if (!(s.t0 < s.t1)) {
    throw InvalidSchedule("schedule: t0 must be smaller than t1");
  }
  if (s.kind == ScheduleKind::kLog) {
    if (!(s.b * s.t0 > 0.0)) {
      throw InvalidSchedule("schedule: log kind requires B*t0 > 0");
    }
    if (!(s.b * s.t1 > 0.0)) {
      throw InvalidSchedule("schedule: log kind requires B*t1 > 0");
    }
  }
}

ScheduleSample schedule_eval(const Schedule& s, double t) {
  const double slack = range_slack(s);
  if (t < s.t0 - slack || t > s.t1 + slack) {
    throw OutOfRange("schedule: t = " + std::to_string(t) + " outside [" +
                     std::to_string(s.t0) + ", " + std::to_string(s.t1) + "]");
  }
  switch (s.kind) {
    case ScheduleKind::kLog: {
      if (!(s.b * t > 0.0)) {
        throw InvalidSchedule("schedule: log kind evaluated where B*t <= 0");
      }
      if (s.log_base == LogBase::kNatural) {
        return {s.a * std::log(s.b * t), s.a / t};
      }
      return {s.a * std::log10(s.b * t), s.a / (t * kLn10)};
    }
    case ScheduleKind::kLinear:
      return {s.a * t, s.a};
    case ScheduleKind::kConstant:
      return {s.a, 0.0};
  }
  throw InvalidSchedule("schedule: unknown kind");
}

HamiltonianSpec build_two_qubit_ising(double j, double h1, double h2, double z) {
  HamiltonianSpec spec;
  spec.h0 = ComplexMatrix::Zero(4, 4);
  spec.h0(0, 0) = j;
  spec.h0(1, 1) = -j;
  spec.h0(2, 2) = -j;
  spec.h0(3, 3) = j;

  // h1 * (X x I) + h2 * (I x X)
  spec.hb = ComplexMatrix::Zero(4, 4);
  spec.hb(0, 2) = h1;
  spec.hb(2, 0) = h1;
  spec.hb(1, 3) = h1;
  spec.hb(3, 1) = h1;
  spec.hb(0, 1) = h2;
  spec.hb(1, 0) = h2;
  spec.hb(2, 3) = h2;
  spec.hb(3, 2) = h2;

  spec.bias_scale = z;
  return spec;
}

ComplexMatrix uniform_rho0(int n) {
  if (n < 1) {
    throw DimensionMismatch("uniform_rho0: dimension must be at least 1");
  }
  return ComplexMatrix::Constant(n, n, Complex(1.0 / n, 0.0));
}

ComplexMatrix hamiltonian_at(const HamiltonianSpec& spec, double lambda) {
  if (spec.h0.rows() != spec.hb.rows() || spec.h0.cols() != spec.hb.cols()) {
    throw DimensionMismatch("hamiltonian_at: H0 and Hb dimensions differ");
  }
  return spec.h0 + (lambda * spec.bias_scale) * spec.hb;
}

ComplexMatrix hamiltonian_at(const HamiltonianSpec& spec, double lambda,
                             const ComplexMatrix& dh) {
  ComplexMatrix h = hamiltonian_at(spec, lambda);
  if (dh.rows() != h.rows() || dh.cols() != h.cols()) {
    throw DimensionMismatch("hamiltonian_at: noise term dimension differs");
  }
  return h + dh;
}

}  // namespace levgas
