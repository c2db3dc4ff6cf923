#pragma once

#include "levgas/errors.hpp"
#include "levgas/types.hpp"

namespace levgas {

/// Parametric Hamiltonian family H(lambda) = H0 + lambda * Z * Hb.
struct HamiltonianSpec {
  ComplexMatrix h0;
  ComplexMatrix hb;
  double bias_scale = 1.0;  // Z

  int dim() const { return static_cast<int>(h0.rows()); }
};

enum class ScheduleKind { kLog, kLinear, kConstant };
enum class LogBase { kNatural, kBase10 };

/// lambda(t) over [t0, t1].
///   log:      lambda = A * log(B * t), lambda_dot = A / (t * ln_base)
///   linear:   lambda = A * t,          lambda_dot = A
///   constant: lambda = A,              lambda_dot = 0
struct Schedule {
  ScheduleKind kind = ScheduleKind::kConstant;
  double a = 0.0;
  double b = 0.0;
  double t0 = 0.0;
  double t1 = 1.0;
  LogBase log_base = LogBase::kNatural;
};

struct ScheduleSample {
  double lambda;
  double lambda_dot;
};

/// Throws InvalidSchedule if the schedule cannot produce finite values over
/// its whole range (e.g. log kind with B*t0 <= 0, or t0 >= t1).
void validate_schedule(const Schedule& s);

/// Throws OutOfRange if t falls outside [t0, t1] (small relative slack for
/// integrator stage arithmetic), InvalidSchedule for log kind with B*t <= 0.
ScheduleSample schedule_eval(const Schedule& s, double t);

/// Two-qubit Ising chain in a transverse bias:
///   H0 = J * sigma1^z sigma2^z,  Hb = h1 * sigma1^x + h2 * sigma2^x,
/// in the computational product basis |00>,|01>,|10>,|11>.
HamiltonianSpec build_two_qubit_ising(double j, double h1, double h2, double z);

/// N x N density matrix with every entry 1/N: the pure projector onto the
/// uniform superposition of basis states.
ComplexMatrix uniform_rho0(int n);

ComplexMatrix hamiltonian_at(const HamiltonianSpec& spec, double lambda);

/// As above plus an additive Hermitian perturbation dh.
ComplexMatrix hamiltonian_at(const HamiltonianSpec& spec, double lambda,
                             const ComplexMatrix& dh);

}  // namespace levgas
