#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "levgas/config.hpp"

namespace levgas {

/// Exit codes by error category: 0 ok, 1 comparison out of tolerance,
/// 2 config, 3 degeneracy, 4 io, 5 other.
enum ExitCode {
  kExitOk = 0,
  kExitToleranceFail = 1,
  kExitConfig = 2,
  kExitDegeneracy = 3,
  kExitIo = 4,
  kExitOther = 5,
};

/// Scalar overrides a flag may apply on top of the config file.
struct RunOverrides {
  std::optional<std::string> csv;
  std::optional<std::string> svg_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  std::optional<int> stride;
  std::optional<double> t0;
  std::optional<double> t1;
  std::optional<double> sigma;
};

void apply_overrides(RunConfig& config, const RunOverrides& overrides);

/// Default output directory for relative output paths: the LEVGAS_OUT_DIR
/// environment variable unless overridden here.
std::string resolve_output_path(const std::string& path,
                                const std::string& out_dir_override = "");

int cmd_run(const std::string& config_path, const RunOverrides& overrides = {},
            const std::string& out_dir = "");

int cmd_oracle_compare(const std::string& config_path, const std::string& report_path,
                       double tol_levels, double tol_rho,
                       const std::string& out_dir = "");

int cmd_ensemble(const std::string& config_path, int realizations,
                 std::uint64_t master_seed, const std::string& csv_path, int threads = 0,
                 const std::string& out_dir = "");

int cmd_emit_figures(const std::string& csv_path, const std::string& noisy_csv_path,
                     const std::string& out_dir, double segment_seconds = 0.0);

/// Full argv dispatch used by the binary; catches levgas errors and prints a
/// machine-readable {"error": {...}} line to stderr.
int cli_main(int argc, char** argv);

}  // namespace levgas
