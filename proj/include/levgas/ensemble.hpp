#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levgas/config.hpp"
#include "levgas/integrator.hpp"

namespace levgas {

/// Per-time statistics over an ensemble of realizations with split seeds.
/// `mean_rho_purity` is the purity of the ensemble-averaged density matrix,
/// the quantity that decays under dephasing while each realization stays
/// unitary; `mean_purity`/`std_purity` describe the per-realization purities.
struct EnsembleStats {
  std::vector<double> t;
  std::vector<double> lambda;
  RealMatrix mean_occ;  // samples x N
  RealMatrix std_occ;   // samples x N
  std::vector<double> mean_purity;
  std::vector<double> std_purity;
  std::vector<double> mean_rho_purity;
  int realizations = 0;        // requested R
  int completed = 0;           // realizations that finished
  std::uint64_t master_seed = 0;

  struct Failure {
    int index = 0;
    double j = 0.0;
    double t_fail = 0.0;
    std::string message;
  };
  std::vector<Failure> failures;
  std::vector<double> j_values;  // per completed realization, by index
};

/// Run R independent realizations of `config` with seeds split from
/// `master_seed` (J resampled per realization when configured as Gaussian).
/// Realizations run concurrently; aggregation is a sequential reduce in
/// realization-index order, so thread scheduling never changes the output.
/// Failed realizations are recorded, not silently dropped.
EnsembleStats run_ensemble(const RunConfig& config, int realizations,
                           std::uint64_t master_seed, int threads = 0);

/// Stats CSV: t, lambda, mean_occ_*, std_occ_*, mean_purity, std_purity,
/// mean_rho_purity.
void write_ensemble_csv(const EnsembleStats& stats, const std::string& path);

/// Sidecar JSON: R, master seed, failures with their J and failure time.
void write_ensemble_metadata(const EnsembleStats& stats, const RunConfig& config,
                             const std::string& path);

}  // namespace levgas
