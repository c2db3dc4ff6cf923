#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "levgas/integrator.hpp"

namespace levgas {

struct EnsembleStats;  // ensemble.hpp

/// Column-oriented view of a parsed CSV file.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;  // one vector per header entry

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  int find(const std::string& name) const;           // -1 when absent
  const std::vector<double>& at(const std::string& name) const;  // throws SchemaMismatch
};

/// Fixed trajectory schema:
///   t, lambda, x_0..x_{N-1}, occ_0..occ_{N-1},
///   re_coh_u_w/im_coh_u_w for u < w, purity, trace_err
/// Numbers carry 17 significant digits so doubles round-trip losslessly.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// Reproduction metadata sidecar (JSON): config, seed, hashes, integrator.
void write_trajectory_metadata(const Trajectory& traj, const std::string& path);

CsvTable read_csv(const std::string& path);
CsvTable read_csv_text(const std::string& text);

std::string format_double(double v);

}  // namespace levgas
