#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "levgas/master_equation.hpp"
#include "levgas/models.hpp"
#include "levgas/noise.hpp"
#include "levgas/pechukas.hpp"
#include "levgas/types.hpp"

namespace levgas {

enum class IntegratorMethod { kRk4, kEulerMaruyama };

/// J either pinned (deterministic regression runs) or drawn from a Gaussian
/// per realization.
struct CouplingConfig {
  bool sampled = false;
  double fixed = 1.0;
  double mean = 0.0;
  double std = 1.0;
};

struct ModelConfig {
  std::string type = "two_qubit_ising";
  CouplingConfig j;
  double h1 = 0.1;
  double h2 = 0.2;
  double z = 10.0;
};

struct NoiseConfig {
  NoiseKind kind = NoiseKind::kNone;
  double sigma = 0.0;
  double gamma = 0.0;
};

struct IntegratorConfig {
  IntegratorMethod method = IntegratorMethod::kRk4;
  double dt = 1e-3;
  int stride = 100;
  DenominatorPolicy policy;
};

struct Rho0Config {
  bool uniform = true;
  ComplexMatrix matrix;  // used when uniform == false
};

struct OutputConfig {
  std::string csv;
  std::string svg_dir;
};

/// Full description of one run. Parsed from JSON with unknown keys
/// rejected; serialization round-trips every field.
struct RunConfig {
  ModelConfig model;
  Schedule schedule;
  NoiseConfig noise;
  IntegratorConfig integrator;
  Rho0Config rho0;
  WindowSpec window;
  std::uint64_t seed = 0;
  OutputConfig outputs;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

/// Cross-field checks (schedule validity, method/noise compatibility, rho0
/// shape). Throws ConfigError.
void validate_config(const RunConfig& config);

/// FNV-1a over the canonical serialization.
std::uint64_t config_hash(const RunConfig& config);

/// The J value a run with this config and seed uses.
double resolve_coupling(const RunConfig& config);

/// Hamiltonian family for the resolved J.
HamiltonianSpec build_model(const RunConfig& config);

/// Noise stream for this config seeded from the run seed.
NoiseProcess build_noise(const RunConfig& config);

/// Initial density matrix in the moving eigenbasis at t0.
ComplexMatrix build_rho0(const RunConfig& config, int dim);

}  // namespace levgas
