#include "levgas/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "levgas/csv.hpp"
#include "levgas/ensemble.hpp"
#include "levgas/oracle.hpp"
#include "levgas/svg.hpp"

namespace levgas {

namespace {

void print_error(const Error& e) {
  nlohmann::json j;
  j["error"] = {{"category", e.category()}, {"message", e.what()}};
  std::cerr << j.dump() << std::endl;
}

int exit_code_for(const Error& e) {
  if (e.category() == "config" || e.category() == "invalid_schedule" ||
      e.category() == "out_of_range" || e.category() == "dimension_mismatch") {
    return kExitConfig;
  }
  if (e.category() == "degenerate_levels") return kExitDegeneracy;
  if (e.category() == "io") return kExitIo;
  return kExitOther;
}

ComplexMatrix rho0_in_fixed_basis(const RunConfig& config, const HamiltonianSpec& spec) {
  const double lambda0 = schedule_eval(config.schedule, config.schedule.t0).lambda;
  const EigenSystem basis = eigh(hamiltonian_at(spec, lambda0));
  const ComplexMatrix rho0 = build_rho0(config, spec.dim());
  return basis.vectors * rho0 * basis.vectors.adjoint();
}

}  // namespace

void apply_overrides(RunConfig& config, const RunOverrides& o) {
  if (o.csv) config.outputs.csv = *o.csv;
  if (o.svg_dir) config.outputs.svg_dir = *o.svg_dir;
  if (o.seed) config.seed = *o.seed;
  if (o.dt) config.integrator.dt = *o.dt;
  if (o.stride) config.integrator.stride = *o.stride;
  if (o.t0) config.schedule.t0 = *o.t0;
  if (o.t1) config.schedule.t1 = *o.t1;
  if (o.sigma) config.noise.sigma = *o.sigma;
  validate_config(config);
}

std::string resolve_output_path(const std::string& path, const std::string& out_dir_override) {
  if (path.empty() || path.front() == '/') return path;
  std::string dir = out_dir_override;
  if (dir.empty()) {
    const char* env = std::getenv("LEVGAS_OUT_DIR");
    if (env != nullptr) dir = env;
  }
  if (dir.empty()) return path;
  if (dir.back() != '/') dir += '/';
  return dir + path;
}

int cmd_run(const std::string& config_path, const RunOverrides& overrides,
            const std::string& out_dir) {
  RunConfig config = load_config(config_path);
  apply_overrides(config, overrides);
  const Trajectory traj = run_trajectory(config);

  const std::string csv_path =
      resolve_output_path(config.outputs.csv.empty() ? "run.csv" : config.outputs.csv, out_dir);
  write_trajectory_csv(traj, csv_path);
  write_trajectory_metadata(traj, csv_path + ".meta.json");

  if (!config.outputs.svg_dir.empty()) {
    const std::string dir = resolve_output_path(config.outputs.svg_dir, out_dir);
    const CsvTable table = read_csv(csv_path);
    emit_trajectory_figures(table, dir + "/levels.svg", dir + "/occupations.svg");
  }
  return kExitOk;
}

int cmd_oracle_compare(const std::string& config_path, const std::string& report_path,
                       double tol_levels, double tol_rho, const std::string& out_dir) {
  RunConfig config = load_config(config_path);
  const bool noisy = config.noise.kind != NoiseKind::kNone;
  const Trajectory traj = run_trajectory(config, /*record_noise=*/noisy);

  const HamiltonianSpec spec = build_model(config);
  const StepGrid grid =
      make_grid(config.schedule, config.integrator.dt, config.integrator.stride);
  const OracleTrajectory oracle =
      direct_evolve(spec, config.schedule, rho0_in_fixed_basis(config, spec), grid,
                    noisy ? &traj.noise_path : nullptr);

  const ComparisonReport report = compare(traj, oracle);
  const bool pass = report.max_level_diff <= tol_levels &&
                    report.max_abs_entry_diff <= tol_rho;

  nlohmann::json j = nlohmann::json::parse(to_json(report));
  j["tolerances"] = {{"levels", tol_levels}, {"rho_entry", tol_rho}};
  j["pass"] = pass;
  const std::string path =
      resolve_output_path(report_path.empty() ? "oracle_report.json" : report_path, out_dir);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  std::cout << j.dump(2) << std::endl;
  return pass ? kExitOk : kExitToleranceFail;
}

int cmd_ensemble(const std::string& config_path, int realizations,
                 std::uint64_t master_seed, const std::string& csv_path, int threads,
                 const std::string& out_dir) {
  const RunConfig config = load_config(config_path);
  const EnsembleStats stats = run_ensemble(config, realizations, master_seed, threads);
  const std::string path =
      resolve_output_path(csv_path.empty() ? "ensemble.csv" : csv_path, out_dir);
  write_ensemble_csv(stats, path);
  write_ensemble_metadata(stats, config, path + ".meta.json");
  if (!stats.failures.empty()) {
    std::cerr << stats.failures.size() << " of " << realizations
              << " realizations aborted on degeneracy; see " << path << ".meta.json"
              << std::endl;
  }
  return kExitOk;
}

int cmd_emit_figures(const std::string& csv_path, const std::string& noisy_csv_path,
                     const std::string& out_dir, double segment_seconds) {
  const std::string dir = out_dir.empty() ? "." : out_dir;
  const CsvTable table = read_csv(csv_path);
  emit_trajectory_figures(table, dir + "/levels.svg", dir + "/occupations.svg",
                          segment_seconds);
  if (!noisy_csv_path.empty()) {
    const CsvTable noisy = read_csv(noisy_csv_path);
    emit_trajectory_figures(noisy, dir + "/levels_noisy.svg",
                            dir + "/occupations_noisy.svg", segment_seconds);
  }
  return kExitOk;
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Parametric level dynamics and density-matrix evolution"};
  app.require_subcommand(1);

  std::string out_dir;
  app.add_option("--out-dir", out_dir,
                 "Directory for relative output paths (default: $LEVGAS_OUT_DIR)");

  // run
  auto* run = app.add_subcommand("run", "Integrate one trajectory and write CSV (+SVG)");
  std::string run_config;
  run->add_option("--config", run_config, "JSON config file")->required();
  RunOverrides overrides;
  double opt_dt = 0.0, opt_t0 = 0.0, opt_t1 = 0.0, opt_sigma = 0.0;
  std::uint64_t opt_seed = 0;
  int opt_stride = 0;
  std::string opt_csv, opt_svg;
  auto* f_csv = run->add_option("--csv", opt_csv, "Output CSV path");
  auto* f_svg = run->add_option("--svg-dir", opt_svg, "Directory for SVG figures");
  auto* f_seed = run->add_option("--seed", opt_seed, "Override seed");
  auto* f_dt = run->add_option("--dt", opt_dt, "Override step size");
  auto* f_stride = run->add_option("--stride", opt_stride, "Override sample stride");
  auto* f_t0 = run->add_option("--t0", opt_t0, "Override start time");
  auto* f_t1 = run->add_option("--t1", opt_t1, "Override end time");
  auto* f_sigma = run->add_option("--sigma", opt_sigma, "Override noise amplitude");

  // oracle-compare
  auto* cmp = app.add_subcommand(
      "oracle-compare", "Run both pipelines on one grid and report deviations");
  std::string cmp_config, cmp_report;
  double tol_levels = 1e-5, tol_rho = 1e-4;
  cmp->add_option("--config", cmp_config, "JSON config file")->required();
  cmp->add_option("--report", cmp_report, "Report JSON path");
  cmp->add_option("--tol-levels", tol_levels, "Max level deviation");
  cmp->add_option("--tol-rho", tol_rho, "Max per-entry rho deviation");

  // ensemble
  auto* ens = app.add_subcommand("ensemble", "Run R realizations and write statistics");
  std::string ens_config, ens_csv;
  int realizations = 1;
  std::uint64_t master_seed = 0;
  int threads = 0;
  ens->add_option("--config", ens_config, "JSON config file")->required();
  ens->add_option("--realizations,-R", realizations, "Number of realizations")->required();
  ens->add_option("--master-seed", master_seed, "Master seed for the split streams");
  ens->add_option("--csv", ens_csv, "Output CSV path");
  ens->add_option("--threads", threads, "Worker threads (0 = hardware)");

  // emit-figures
  auto* fig = app.add_subcommand("emit-figures", "Render SVG figures from trajectory CSV");
  std::string fig_csv, fig_noisy, fig_out = ".";
  double segment = 0.0;
  fig->add_option("--csv", fig_csv, "Trajectory CSV")->required();
  fig->add_option("--noisy-csv", fig_noisy, "Noisy-run CSV for the noisy counterparts");
  fig->add_option("--out", fig_out, "Output directory");
  fig->add_option("--segment-seconds", segment, "Per-segment occupation plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) {
      if (*f_csv) overrides.csv = opt_csv;
      if (*f_svg) overrides.svg_dir = opt_svg;
      if (*f_seed) overrides.seed = opt_seed;
      if (*f_dt) overrides.dt = opt_dt;
      if (*f_stride) overrides.stride = opt_stride;
      if (*f_t0) overrides.t0 = opt_t0;
      if (*f_t1) overrides.t1 = opt_t1;
      if (*f_sigma) overrides.sigma = opt_sigma;
      return cmd_run(run_config, overrides, out_dir);
    }
    if (*cmp) {
      return cmd_oracle_compare(cmp_config, cmp_report, tol_levels, tol_rho, out_dir);
    }
    if (*ens) {
      return cmd_ensemble(ens_config, realizations, master_seed, ens_csv, threads, out_dir);
    }
    if (*fig) {
      return cmd_emit_figures(fig_csv, fig_noisy, fig_out, segment);
    }
  } catch (const Error& e) {
    print_error(e);
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << R"({"error":{"category":"internal","message":")" << e.what() << "\"}}"
              << std::endl;
    return kExitOther;
  }
  return kExitOther;
}

}  // namespace levgas
